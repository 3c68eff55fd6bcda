#include "macell/dnf.hpp"

#include <algorithm>
#include <map>

#include "macell/errors.hpp"

namespace macell {

namespace {

using Clause = std::vector<SignedLeaf>;
using Clauses = std::vector<Clause>;

constexpr std::size_t kClauseCap = 65536;

// Clause-set algebra: {} = false, {{}} = true.
Clauses clause_or(Clauses a, Clauses b) {
    for (auto& c : b) a.push_back(std::move(c));
    return a;
}

Clauses clause_and(const Clauses& a, const Clauses& b) {
    Clauses out;
    if (a.size() * b.size() > kClauseCap)
        throw Error("DNF conversion exceeds clause cap");
    for (const auto& ca : a)
        for (const auto& cb : b) {
            Clause c = ca;
            c.insert(c.end(), cb.begin(), cb.end());
            out.push_back(std::move(c));
        }
    return out;
}

Clauses build(const FormulaPtr& f, bool positive, bool quantifier_leaves) {
    switch (f->kind) {
        case Formula::Kind::True:
            return positive ? Clauses{{}} : Clauses{};
        case Formula::Kind::False:
            return positive ? Clauses{} : Clauses{{}};
        case Formula::Kind::RelAtom:
        case Formula::Kind::EqAtom:
            return {{SignedLeaf{f, positive}}};
        case Formula::Kind::Not:
            return build(f->child(), !positive, quantifier_leaves);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            bool conjunctive = (f->kind == Formula::Kind::And) == positive;
            Clauses acc = conjunctive ? Clauses{{}} : Clauses{};
            for (const auto& c : f->children) {
                Clauses part = build(c, positive, quantifier_leaves);
                acc = conjunctive ? clause_and(acc, part) : clause_or(std::move(acc), std::move(part));
            }
            return acc;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
        case Formula::Kind::Count:
            if (!quantifier_leaves)
                throw InputError("DNF requires a quantifier-free formula");
            return {{SignedLeaf{f, positive}}};
    }
    throw Error("unreachable");
}

// Sort + dedupe literals; detect complementary pairs. Returns false if the
// clause is contradictory and should be dropped.
bool normalize_clause(Clause& c) {
    std::map<std::string, SignedLeaf> seen;  // print form -> literal
    for (const auto& lit : c) {
        std::string key = print_formula(lit.leaf);
        auto it = seen.find(key);
        if (it == seen.end())
            seen.emplace(std::move(key), lit);
        else if (it->second.positive != lit.positive)
            return false;
    }
    c.clear();
    for (auto& [key, lit] : seen) c.push_back(lit);
    return true;
}

}  // namespace

std::vector<std::vector<SignedLeaf>> dnf_clauses(const FormulaPtr& f, bool quantifier_leaves) {
    Clauses raw = build(f, true, quantifier_leaves);
    Clauses out;
    for (auto& c : raw)
        if (normalize_clause(c)) out.push_back(std::move(c));

    // Deterministic clause order: lexicographic by literal print forms.
    auto clause_key = [](const Clause& c) {
        std::vector<std::string> key;
        key.reserve(c.size());
        for (const auto& lit : c)
            key.push_back((lit.positive ? "+" : "-") + print_formula(lit.leaf));
        return key;
    };
    std::sort(out.begin(), out.end(), [&](const Clause& a, const Clause& b) {
        return clause_key(a) < clause_key(b);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const Clause& a, const Clause& b) {
                              return clause_key(a) == clause_key(b);
                          }),
              out.end());
    // An empty clause subsumes everything.
    for (const auto& c : out)
        if (c.empty()) return {{}};
    return out;
}

FormulaPtr clauses_to_formula(const std::vector<std::vector<SignedLeaf>>& clauses) {
    if (clauses.empty()) return f_false();
    std::vector<FormulaPtr> disjuncts;
    for (const auto& c : clauses) {
        if (c.empty()) return f_true();
        std::vector<FormulaPtr> lits;
        lits.reserve(c.size());
        for (const auto& lit : c) lits.push_back(lit.positive ? lit.leaf : f_not(lit.leaf));
        disjuncts.push_back(lits.size() == 1 ? lits[0] : f_and(std::move(lits)));
    }
    return disjuncts.size() == 1 ? disjuncts[0] : f_or(std::move(disjuncts));
}

FormulaPtr to_dnf(const FormulaPtr& f) { return clauses_to_formula(dnf_clauses(f, false)); }

}  // namespace macell
