#pragma once

// Degree profiling and bounded-degree presentations.
//
// The central quantity is the degree of a relation (or of a quantifier-free
// formula): the largest number of satisfying tuples any single element
// appears in.  A structure is degree-presented when every relation stays
// within its declared degree bound.  An acceptable set of quantifier-free
// formulas induces a new presentation of the structure in which each member
// becomes a relation and each parameter becomes a named constant; when every
// original relation is a boolean combination of the members, the two
// structures define each other back and forth.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// Measured degrees, one entry per relation symbol.  `witness` holds an
// element attaining the maximum (smallest universe index wins; empty
// relations have no entry).  `within_bound` is true when the relation has no
// declared bound or the measured degree respects it.
struct DegreeProfile {
    std::map<std::string, long long> degree;
    std::map<std::string, std::string> witness;
    std::map<std::string, bool> within_bound;
    long long overall = 0;
};

DegreeProfile degree_profile(const Structure& m);

// Degree of a quantifier-free formula: satisfying assignments are tuples
// over the free variables in sorted order; the degree is the maximum over
// elements of the number of satisfying tuples the element occurs in.
// Throws InputError when theta has no free variables or is not
// quantifier-free, or when a parameter names no element.
long long formula_degree(const Structure& m, const FormulaPtr& theta);

// Per-relation verdicts of the declared-bound check.
struct RelationVerdict {
    std::string relation;
    long long degree = 0;
    std::optional<int> bound;
    bool pass = true;
};

struct PresentationReport {
    bool pass = true;
    bool all_bounds_declared = true;
    std::vector<RelationVerdict> relations;

    std::string text() const;
    nlohmann::json to_json() const;
};

// Checks deg(R) <= K_R for every relation with a declared bound. Relations
// without a declared bound pass trivially (a finite structure bounds them)
// and the report says so.
PresentationReport is_ma_presented(const Structure& m);

// A finite set of quantifier-free formulas with parameters.  Parameters must
// name elements of the structure the set is used against.
struct AcceptableMember {
    FormulaPtr formula;
    std::optional<int> degree_bound;
};

struct AcceptableSet {
    std::vector<AcceptableMember> members;

    // D(A): every parameter appearing in a member, sorted, deduplicated.
    std::vector<std::string> parameters() const;
};

// Parses `[{"formula": "...", "degree_bound": K}, ...]`; degree_bound is
// optional. Members must be quantifier-free.
AcceptableSet load_acceptable_set(const std::string& json_text, const Signature& sig);

struct DefinabilityResult {
    bool definable = false;
    // Disjunction over accepting fingerprints, over variables x1..xk; null
    // when not definable.
    FormulaPtr combination;
    // When not definable: two tuples with the same fingerprint, the first in
    // the target relation and the second outside it.
    std::vector<int> inside;
    std::vector<int> outside;
};

// Fingerprint of a k-tuple: the truth vector of every member of `a`
// evaluated under every injective placement of its free variables into the
// k target positions (members with fewer variables are padded this way;
// members with more variables than k are rejected).  The target relation is
// definable from `a` exactly when the fingerprint determines membership.
DefinabilityResult definability_fingerprint(const Structure& m, const std::string& target,
                                            const AcceptableSet& a);

// Builds the re-presented structure: universe kept, old constants kept, one
// relation A<i> per member (its satisfying tuples), one constant c_<d> per
// parameter d.  Declared bound of A<i> is the member's degree_bound when
// present, otherwise the measured degree.  Requires every original relation
// to be definable from `a` (DomainError naming the relation otherwise) and
// every member to respect its declared degree_bound (DomainError naming the
// formula otherwise).
Structure build_ma_presentation(const Structure& m, const AcceptableSet& a);

}  // namespace macell
