#include "macell/formula.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "macell/errors.hpp"

namespace macell {

namespace {

std::vector<std::string> merge_vars(const std::vector<FormulaPtr>& children) {
    std::set<std::string> all;
    for (const auto& c : children) all.insert(c->free_vars.begin(), c->free_vars.end());
    return {all.begin(), all.end()};
}

bool any_params(const std::vector<FormulaPtr>& children) {
    for (const auto& c : children)
        if (c->has_params) return true;
    return false;
}

void drop_var(std::vector<std::string>& vars, const std::string& v) {
    vars.erase(std::remove(vars.begin(), vars.end(), v), vars.end());
}

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_true() {
    static FormulaPtr t = make(Formula{});
    return t;
}

FormulaPtr f_false() {
    static FormulaPtr f = [] {
        Formula n;
        n.kind = Formula::Kind::False;
        return make(std::move(n));
    }();
    return f;
}

FormulaPtr f_rel(std::string rel, std::vector<Term> args) {
    Formula n;
    n.kind = Formula::Kind::RelAtom;
    n.rel = std::move(rel);
    n.args = std::move(args);
    std::set<std::string> vars;
    for (const auto& t : n.args) {
        if (t.is_var())
            vars.insert(t.name);
        else
            n.has_params = true;
    }
    n.free_vars.assign(vars.begin(), vars.end());
    return make(std::move(n));
}

FormulaPtr f_eq(Term lhs, Term rhs) {
    Formula n;
    n.kind = Formula::Kind::EqAtom;
    n.args = {std::move(lhs), std::move(rhs)};
    std::set<std::string> vars;
    for (const auto& t : n.args) {
        if (t.is_var())
            vars.insert(t.name);
        else
            n.has_params = true;
    }
    n.free_vars.assign(vars.begin(), vars.end());
    return make(std::move(n));
}

FormulaPtr f_not(FormulaPtr f) {
    Formula n;
    n.kind = Formula::Kind::Not;
    n.free_vars = f->free_vars;
    n.has_params = f->has_params;
    n.children = {std::move(f)};
    return make(std::move(n));
}

FormulaPtr f_and(std::vector<FormulaPtr> children) {
    Formula n;
    n.kind = Formula::Kind::And;
    n.free_vars = merge_vars(children);
    n.has_params = any_params(children);
    n.children = std::move(children);
    return make(std::move(n));
}

FormulaPtr f_or(std::vector<FormulaPtr> children) {
    Formula n;
    n.kind = Formula::Kind::Or;
    n.free_vars = merge_vars(children);
    n.has_params = any_params(children);
    n.children = std::move(children);
    return make(std::move(n));
}

static FormulaPtr quantified(Formula::Kind kind, std::string var, FormulaPtr body) {
    Formula n;
    n.kind = kind;
    n.var = std::move(var);
    n.free_vars = body->free_vars;
    drop_var(n.free_vars, n.var);
    n.has_params = body->has_params;
    n.children = {std::move(body)};
    return make(std::move(n));
}

FormulaPtr f_exists(std::string var, FormulaPtr body) {
    return quantified(Formula::Kind::Exists, std::move(var), std::move(body));
}

FormulaPtr f_forall(std::string var, FormulaPtr body) {
    return quantified(Formula::Kind::Forall, std::move(var), std::move(body));
}

FormulaPtr f_count(CountOp op, int bound, std::string var, FormulaPtr body) {
    if (bound < 0) throw InputError("negative counting bound");
    Formula n;
    n.kind = Formula::Kind::Count;
    n.count_op = op;
    n.count_bound = bound;
    n.var = std::move(var);
    n.free_vars = body->free_vars;
    drop_var(n.free_vars, n.var);
    n.has_params = body->has_params;
    n.children = {std::move(body)};
    return make(std::move(n));
}

// ---- printing ----

static std::string print_term(const Term& t) {
    return t.is_var() ? t.name : "#" + t.name;
}

static void print_rec(const FormulaPtr& f, std::string& out) {
    switch (f->kind) {
        case Formula::Kind::True:
            out += "true";
            return;
        case Formula::Kind::False:
            out += "false";
            return;
        case Formula::Kind::RelAtom: {
            out += f->rel;
            out += '(';
            for (std::size_t i = 0; i < f->args.size(); ++i) {
                if (i) out += ',';
                out += print_term(f->args[i]);
            }
            out += ')';
            return;
        }
        case Formula::Kind::EqAtom:
            out += print_term(f->args[0]);
            out += '=';
            out += print_term(f->args[1]);
            return;
        case Formula::Kind::Not:
            out += '!';
            out += '(';
            print_rec(f->child(), out);
            out += ')';
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            if (f->children.empty()) {
                out += f->kind == Formula::Kind::And ? "true" : "false";
                return;
            }
            out += '(';
            const char* sep = f->kind == Formula::Kind::And ? " & " : " | ";
            for (std::size_t i = 0; i < f->children.size(); ++i) {
                if (i) out += sep;
                print_rec(f->children[i], out);
            }
            out += ')';
            return;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            out += f->kind == Formula::Kind::Exists ? 'E' : 'A';
            out += f->var;
            out += ".(";
            print_rec(f->child(), out);
            out += ')';
            return;
        case Formula::Kind::Count: {
            out += "E[";
            out += f->count_op == CountOp::LessEq ? "<=" : f->count_op == CountOp::Less ? "<" : "=";
            out += std::to_string(f->count_bound);
            out += ']';
            out += f->var;
            out += ".(";
            print_rec(f->child(), out);
            out += ')';
            return;
        }
    }
}

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_rec(f, out);
    return out;
}

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind || a->rel != b->rel || a->var != b->var ||
        a->count_op != b->count_op || a->count_bound != b->count_bound ||
        !(a->args == b->args) || a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!formula_equal(a->children[i], b->children[i])) return false;
    return true;
}

bool is_quantifier_free(const FormulaPtr& f) {
    if (f->is_quantifier()) return false;
    for (const auto& c : f->children)
        if (!is_quantifier_free(c)) return false;
    return true;
}

FormulaPtr substitute(const FormulaPtr& f, const std::map<std::string, Term>& subst) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::RelAtom:
        case Formula::Kind::EqAtom: {
            std::vector<Term> args = f->args;
            bool changed = false;
            for (auto& t : args) {
                if (!t.is_var()) continue;
                auto it = subst.find(t.name);
                if (it != subst.end()) {
                    t = it->second;
                    changed = true;
                }
            }
            if (!changed) return f;
            if (f->kind == Formula::Kind::RelAtom) return f_rel(f->rel, std::move(args));
            return f_eq(args[0], args[1]);
        }
        case Formula::Kind::Not:
            return f_not(substitute(f->child(), subst));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> children;
            children.reserve(f->children.size());
            for (const auto& c : f->children) children.push_back(substitute(c, subst));
            return f->kind == Formula::Kind::And ? f_and(std::move(children))
                                                 : f_or(std::move(children));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::Count: {
            // The bound variable shadows any outer substitution of that name.
            std::map<std::string, Term> inner = subst;
            inner.erase(f->var);
            FormulaPtr body = substitute(f->child(), inner);
            if (f->kind == Formula::Kind::Exists) return f_exists(f->var, std::move(body));
            if (f->kind == Formula::Kind::Forall) return f_forall(f->var, std::move(body));
            return f_count(f->count_op, f->count_bound, f->var, std::move(body));
        }
    }
    throw Error("unreachable");
}

static FormulaPtr rename_rec(const FormulaPtr& f, const std::string& prefix, int& counter,
                             std::map<std::string, Term>& active) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::RelAtom:
        case Formula::Kind::EqAtom:
            return substitute(f, active);
        case Formula::Kind::Not:
            return f_not(rename_rec(f->child(), prefix, counter, active));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> children;
            children.reserve(f->children.size());
            for (const auto& c : f->children)
                children.push_back(rename_rec(c, prefix, counter, active));
            return f->kind == Formula::Kind::And ? f_and(std::move(children))
                                                 : f_or(std::move(children));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::Count: {
            std::string fresh = prefix + std::to_string(++counter);
            auto saved = active.find(f->var) != active.end()
                             ? std::optional<Term>(active[f->var])
                             : std::nullopt;
            active[f->var] = Term::var(fresh);
            FormulaPtr body = rename_rec(f->child(), prefix, counter, active);
            if (saved)
                active[f->var] = *saved;
            else
                active.erase(f->var);
            if (f->kind == Formula::Kind::Exists) return f_exists(fresh, std::move(body));
            if (f->kind == Formula::Kind::Forall) return f_forall(fresh, std::move(body));
            return f_count(f->count_op, f->count_bound, fresh, std::move(body));
        }
    }
    throw Error("unreachable");
}

FormulaPtr rename_bound_apart(const FormulaPtr& f, const std::string& prefix, int& counter) {
    std::map<std::string, Term> active;
    return rename_rec(f, prefix, counter, active);
}

}  // namespace macell
