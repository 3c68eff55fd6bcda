#pragma once

#include <optional>

#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// An asserted or derived occurrence bound for a formula: no element occurs in
// more than this many satisfying assignments (over the formula's free
// variables plus its parameters treated as pinned coordinates).
using DegreeBound = std::optional<long long>;

// Syntactic classification of a formula relative to a bounded signature.
// Tags form a specificity order; shape_of reports the most specific one.
enum class ShapeTag {
    LinkedConjunction,  // conjunction of >= 2 relational atoms, consecutive blocks overlap
    EMember,            // (existential/counting)-prefix over a bounded q.f. matrix
    EStarMember,        // boolean combination of EMembers (plus counting closures)
    QuantifierFree,     // quantifier-free but with no derivable bound
    None,
};

const char* shape_tag_name(ShapeTag tag);

// Sound (not tight) degree-bound propagation:
//   - relation atoms use the relation's declared bound;
//   - equality atoms involving a variable or parameter are bounded by 1;
//   - a conjunction is bounded when its conjuncts are bounded and pairwise
//     connected through shared free variables or parameters; each fold step
//     multiplies by max(1, number of free variables and parameters so far);
//   - existential projection keeps the bound;
//   - E[=r] (r >= 1) keeps its body's bound, and !E[<r] (r >= 1) keeps its
//     body's bound (both carve subsets of the plain existential);
//   - negations, disjunctions and disconnected conjunctions propagate nothing.
DegreeBound derive_bound(const FormulaPtr& f, const Signature& sig);

ShapeTag shape_of(const FormulaPtr& f, const Signature& sig);

// Class membership test: true when f is a boolean combination of bounded
// existential members (counting forms included). Every formula whose
// shape_of is EMember or EStarMember is in the class; so are quantifier-free
// combinations over bounded atoms.
bool is_in_e_star(const FormulaPtr& f, const Signature& sig);

}  // namespace macell
