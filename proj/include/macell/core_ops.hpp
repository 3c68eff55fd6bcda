#pragma once

#include <string>
#include <vector>

#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// A named quantifier-free definition. free variable order is the sorted
// order of the formula's free variables; arity may exceed the number of
// occurring variables (unused positions are genuine dummy coordinates only
// when vars lists them explicitly).
struct Definition {
    std::string name;
    std::vector<std::string> vars;  // argument order of the new relation
    FormulaPtr body;                // quantifier-free, params allowed
    std::optional<int> degree_bound;
};

using DefinitionSet = std::vector<Definition>;

// Expands m by the definitions: output keeps every original symbol and adds
// one relation per definition whose tuples are the satisfying assignments.
// Throws InputError on name clashes, non-quantifier-free bodies, or bodies
// whose free variables are not covered by vars.
Structure qf_expand(const Structure& m, const DefinitionSet& defs);

// Restriction to a sub-signature (named relations and constants must exist).
Structure reduct(const Structure& m, const std::vector<std::string>& relations,
                 const std::vector<std::string>& constants);

// Adds fresh unary relations; colors[i] lists the elements of the i-th one.
// Names are `name_prefix` + index, checked fresh against the signature.
Structure expand_with_unaries(const Structure& m,
                              const std::vector<std::vector<std::string>>& colors,
                              const std::string& name_prefix = "P");

}  // namespace macell
