#pragma once

#include <map>
#include <unordered_map>
#include <vector>

#include "macell/formula.hpp"
#include "macell/structure.hpp"

namespace macell {

// Variable assignment: name -> element index.
using Env = std::map<std::string, int>;

// Tarskian evaluator over one structure. Results are memoized per node keyed
// by the values of that node's own free variables, so repeated evaluation
// under many assignments (equiv_on, satisfier counting) stays polynomial in
// practice. An Evaluator must not outlive its structure.
class Evaluator {
  public:
    explicit Evaluator(const Structure& m) : m_(m) {}

    const Structure& structure() const { return m_; }

    // Throws InputError for unbound free variables or unknown parameters.
    bool eval(const FormulaPtr& f, const Env& env);

    // Number of elements e with f true under env extended by var := e.
    int count_satisfiers(const FormulaPtr& f, const std::string& var, const Env& env);

  private:
    struct NodeState {
        // Pins the node: states_ is keyed by address, so a memoized formula
        // must not be freed (and its address recycled) while we are alive.
        FormulaPtr pin;
        std::vector<std::string> vars;  // the node's free vars, sorted
        std::unordered_map<std::string, bool> memo;
    };

    bool eval_raw(const FormulaPtr& f, const Env& env);
    NodeState& state(const FormulaPtr& f);

    const Structure& m_;
    std::unordered_map<const Formula*, NodeState> states_;
};

// One-shot evaluation helper.
bool eval(const Structure& m, const FormulaPtr& f, const Env& env);

// Exhaustive equivalence over all assignments of the union of the two
// formulas' free variables. Returns false as soon as a distinguishing
// assignment exists.
bool equiv_on(const Structure& m, const FormulaPtr& phi, const FormulaPtr& psi);

}  // namespace macell
