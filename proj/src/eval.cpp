#include "macell/eval.hpp"

#include <algorithm>
#include <set>

#include "macell/errors.hpp"

namespace macell {

Evaluator::NodeState& Evaluator::state(const FormulaPtr& f) {
    auto it = states_.find(f.get());
    if (it == states_.end())
        it = states_.emplace(f.get(), NodeState{f, f->free_vars, {}}).first;
    return it->second;
}

bool Evaluator::eval(const FormulaPtr& f, const Env& env) {
    // Leaf kinds are cheaper to evaluate than to memoize.
    if (f->is_atom() || f->kind == Formula::Kind::True || f->kind == Formula::Kind::False)
        return eval_raw(f, env);
    NodeState& st = state(f);
    std::string key;
    key.reserve(st.vars.size() * 4);
    for (const auto& v : st.vars) {
        auto it = env.find(v);
        if (it == env.end()) throw InputError("unbound free variable: " + v);
        key += std::to_string(it->second);
        key += ',';
    }
    auto hit = st.memo.find(key);
    if (hit != st.memo.end()) return hit->second;
    bool value = eval_raw(f, env);
    st.memo.emplace(std::move(key), value);
    return value;
}

static int term_value(const Structure& m, const Term& t, const Env& env) {
    if (t.is_var()) {
        auto it = env.find(t.name);
        if (it == env.end()) throw InputError("unbound free variable: " + t.name);
        return it->second;
    }
    return m.element_index(t.name);
}

bool Evaluator::eval_raw(const FormulaPtr& f, const Env& env) {
    switch (f->kind) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::RelAtom: {
            std::vector<int> tuple;
            tuple.reserve(f->args.size());
            for (const auto& t : f->args) tuple.push_back(term_value(m_, t, env));
            return m_.holds(f->rel, tuple);
        }
        case Formula::Kind::EqAtom:
            return term_value(m_, f->args[0], env) == term_value(m_, f->args[1], env);
        case Formula::Kind::Not:
            return !eval(f->child(), env);
        case Formula::Kind::And:
            for (const auto& c : f->children)
                if (!eval(c, env)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& c : f->children)
                if (eval(c, env)) return true;
            return false;
        case Formula::Kind::Exists: {
            Env inner = env;
            for (int e = 0; e < m_.size(); ++e) {
                inner[f->var] = e;
                if (eval(f->child(), inner)) return true;
            }
            return false;
        }
        case Formula::Kind::Forall: {
            Env inner = env;
            for (int e = 0; e < m_.size(); ++e) {
                inner[f->var] = e;
                if (!eval(f->child(), inner)) return false;
            }
            return true;
        }
        case Formula::Kind::Count: {
            int n = count_satisfiers(f->child(), f->var, env);
            switch (f->count_op) {
                case CountOp::LessEq:
                    return n <= f->count_bound;
                case CountOp::Less:
                    return n < f->count_bound;
                case CountOp::Eq:
                    return n == f->count_bound;
            }
            return false;
        }
    }
    throw Error("unreachable");
}

int Evaluator::count_satisfiers(const FormulaPtr& f, const std::string& var, const Env& env) {
    Env inner = env;
    int n = 0;
    for (int e = 0; e < m_.size(); ++e) {
        inner[var] = e;
        if (eval(f, inner)) ++n;
    }
    return n;
}

bool eval(const Structure& m, const FormulaPtr& f, const Env& env) {
    Evaluator ev(m);
    return ev.eval(f, env);
}

bool equiv_on(const Structure& m, const FormulaPtr& phi, const FormulaPtr& psi) {
    std::set<std::string> vars(phi->free_vars.begin(), phi->free_vars.end());
    vars.insert(psi->free_vars.begin(), psi->free_vars.end());
    std::vector<std::string> order(vars.begin(), vars.end());

    Evaluator ev_phi(m), ev_psi(m);
    if (order.empty()) return ev_phi.eval(phi, {}) == ev_psi.eval(psi, {});
    if (m.size() == 0) return true;  // no assignments exist

    std::vector<int> values(order.size(), 0);
    Env env;
    while (true) {
        for (std::size_t i = 0; i < order.size(); ++i) env[order[i]] = values[i];
        if (ev_phi.eval(phi, env) != ev_psi.eval(psi, env)) return false;
        std::size_t i = 0;
        for (; i < values.size(); ++i) {
            if (++values[i] < m.size()) break;
            values[i] = 0;
        }
        if (i == values.size()) return true;
    }
}

}  // namespace macell
