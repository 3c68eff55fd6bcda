#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace macell {

// A term is a variable or an element parameter (written `#id` in formula text).
struct Term {
    enum class Kind { Variable, Parameter };
    Kind kind = Kind::Variable;
    std::string name;

    static Term var(std::string n) { return {Kind::Variable, std::move(n)}; }
    static Term param(std::string n) { return {Kind::Parameter, std::move(n)}; }
    bool is_var() const { return kind == Kind::Variable; }
    bool operator==(const Term& o) const { return kind == o.kind && name == o.name; }
    bool operator<(const Term& o) const {
        return kind != o.kind ? kind < o.kind : name < o.name;
    }
};

enum class CountOp { LessEq, Less, Eq };  // E[<=r], E[<r], E[=r]

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula node. Free variables are computed at construction and
// shared via the builders below; never mutate a node after building it.
struct Formula {
    enum class Kind {
        True,
        False,
        RelAtom,   // rel, args
        EqAtom,    // args[0] = args[1]
        Not,       // children[0]
        And,       // children (n-ary, possibly empty = true)
        Or,        // children (n-ary, possibly empty = false)
        Exists,    // var, children[0]
        Forall,    // var, children[0]
        Count,     // count_op, count_bound, var, children[0]
    };

    Kind kind = Kind::True;
    std::string rel;
    std::vector<Term> args;
    std::vector<FormulaPtr> children;
    std::string var;
    CountOp count_op = CountOp::LessEq;
    int count_bound = 0;

    std::vector<std::string> free_vars;  // sorted, unique
    bool has_params = false;

    const FormulaPtr& child() const { return children.at(0); }
    bool is_quantifier() const {
        return kind == Kind::Exists || kind == Kind::Forall || kind == Kind::Count;
    }
    bool is_atom() const { return kind == Kind::RelAtom || kind == Kind::EqAtom; }
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_rel(std::string rel, std::vector<Term> args);
FormulaPtr f_eq(Term lhs, Term rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> children);
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_exists(std::string var, FormulaPtr body);
FormulaPtr f_forall(std::string var, FormulaPtr body);
FormulaPtr f_count(CountOp op, int bound, std::string var, FormulaPtr body);

// Deterministic text form; parses back to an equal formula.
std::string print_formula(const FormulaPtr& f);

// Structural equality (modulo nothing: bound variable names matter).
bool formula_equal(const FormulaPtr& a, const FormulaPtr& b);

bool is_quantifier_free(const FormulaPtr& f);

// Simultaneous substitution of terms for free variables. Does not rename
// bound variables; callers substituting terms containing variables must
// ensure capture cannot occur (our callers substitute fresh variables or
// parameters only).
FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, Term>& subst);

// Rewrites every bound variable to a fresh name `prefix<n>`, numbering from
// `counter` (incremented as used). Output has pairwise distinct bound
// variables, all distinct from every free variable.
FormulaPtr rename_bound_apart(const FormulaPtr& f, const std::string& prefix, int& counter);

}  // namespace macell
