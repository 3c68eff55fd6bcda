#pragma once

#include <string>
#include <vector>

#include "macell/structure.hpp"

namespace macell {

// Canonical form of the substructure induced on `elements` (indices into m's
// universe; all tuples touching these elements must lie inside the set).
// `order` lists the elements in canonical position order; `encoding` is a
// complete invariant: two element sets get equal encodings iff the induced
// substructures are isomorphic (constants act as distinguished marks).
struct CanonicalForm {
    std::string encoding;
    std::vector<int> order;
};

// Colour refinement with individualization/backtracking. Exponential worst
// case; intended for the small components this tool works with.
CanonicalForm canonical_form(const Structure& m, const std::vector<int>& elements);

}  // namespace macell
