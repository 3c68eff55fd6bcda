#pragma once

// Finite realization of the compactness step that grows a structure with
// unbounded component sizes by new, pairwise isomorphic components: find a
// witness element deep inside a large component, extract a linked chain of
// relation tuples avoiding a finite obstacle set, and check the finite
// fragment conditions that the corresponding theory imposes.

#include <string>
#include <vector>

#include "json.hpp"
#include "macell/catalog.hpp"
#include "macell/structure.hpp"

namespace macell {

struct ChainConjunct {
    std::string relation;
    std::vector<std::string> tuple;
};

// A chain of n relation tuples inside one component: consecutive tuples
// intersect, tuples are pairwise distinct, and every entry avoids the
// obstacle set. Tuples shorter than the maximum arity r stand for initial
// subtuples; the skipped coordinates are read from `padding`, which lives in
// a different component.
struct ChainSpec {
    std::string witness;
    int n = 0;  // number of conjuncts
    int r = 0;  // maximum relation arity when built; longest tuple when loaded
    std::vector<ChainConjunct> conjuncts;
    std::vector<std::string> avoided;
    std::vector<std::string> padding;
};

nlohmann::json chain_spec_to_json(const ChainSpec& spec);
ChainSpec chain_spec_from_json(const nlohmann::json& j);
std::string serialize_chain_spec(const ChainSpec& spec);

// Element x with |[x]| > n*r and distance > n from every obstacle, where r
// is the maximum arity of the signature. Components are scanned in
// decreasing size (ties by first element), elements in universe order, so
// the components large enough for the counting argument are tried first and
// the scan is reproducible. Requires m to pass the presentation check.
// Throws DomainError, reporting the largest component size, when no element
// qualifies.
std::string find_witness(const Structure& m, const std::vector<std::string>& obstacles, int n);

// Chain of n pairwise distinct tuples within the witness component, each
// satisfying its relation, consecutive tuples intersecting, all entries
// avoiding the obstacle set. Witness search failures propagate. Tuples of
// arity below r are padded (in the spec only, not in the tuples) by an
// element of the largest component disjoint from the witness component and
// the obstacles.
ChainSpec build_chain(const Structure& m, const std::vector<std::string>& obstacles, int n);

struct FragmentCheck {
    int item = 0;
    bool pass = true;
    std::string detail;
};

// Finite shadow of the extension theory over a base substructure:
//   1. the atomic diagram of `base` holds verbatim in `m`;
//   2. chain elements (witness, tuple entries, padding) lie outside `base`;
//   3. every conjunct satisfies its relation in `m`;
//   4. consecutive tuples intersect;
//   5. tuples are pairwise distinct.
struct FragmentReport {
    bool pass = true;
    std::vector<FragmentCheck> items;

    std::string text() const;
    nlohmann::json to_json() const;
};

FragmentReport verify_fragment(const Structure& m, const Structure& base, const ChainSpec& spec);

// Appends `copies` entries, each one fresh copy of the smallest family
// template of size >= new_size. The new components are pairwise isomorphic
// and the base is untouched. Requires a non-cellular catalog (an unbounded
// family); throws DomainError otherwise, or when the family has no template
// of the requested size.
StructureCatalog synthesize_extension(const StructureCatalog& cat, int copies, long long new_size);

}  // namespace macell
