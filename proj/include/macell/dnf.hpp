#pragma once

#include <vector>

#include "macell/formula.hpp"

namespace macell {

struct SignedLeaf {
    FormulaPtr leaf;
    bool positive = true;
};

// Propositional DNF over opaque leaves. Leaves are atoms plus (when
// `quantifier_leaves`) quantified subformulas; boolean structure above them
// is flattened into clauses. Constants fold away; clauses containing a
// complementary pair are dropped; literals within a clause and the clauses
// themselves are sorted by print form and deduplicated. An empty clause list
// means false; an empty clause means true.
std::vector<std::vector<SignedLeaf>> dnf_clauses(const FormulaPtr& f, bool quantifier_leaves);

// Rebuilds a formula from clauses (empty list -> false, empty clause -> true).
FormulaPtr clauses_to_formula(const std::vector<std::vector<SignedLeaf>>& clauses);

// Disjunctive normal form of a quantifier-free formula. Throws InputError if
// f contains quantifiers (counting quantifiers included).
FormulaPtr to_dnf(const FormulaPtr& f);

}  // namespace macell
