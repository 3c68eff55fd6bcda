#include "macell/qe.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "macell/dnf.hpp"
#include "macell/errors.hpp"
#include "macell/eval.hpp"
#include "macell/shape.hpp"

namespace macell {

namespace {

constexpr int kMaxCountingDisjuncts = 64;
constexpr int kMaxGuardLeaves = 10;
constexpr int kProbePoints = 6;
constexpr int kProbeLimit = 40;

FormulaPtr mk_not(FormulaPtr f) {
    if (f->kind == Formula::Kind::True) return f_false();
    if (f->kind == Formula::Kind::False) return f_true();
    if (f->kind == Formula::Kind::Not) return f->child();
    return f_not(std::move(f));
}

FormulaPtr mk_and(std::vector<FormulaPtr> cs) {
    std::vector<FormulaPtr> out;
    for (auto& c : cs) {
        if (c->kind == Formula::Kind::False) return f_false();
        if (c->kind == Formula::Kind::True) continue;
        if (c->kind == Formula::Kind::And)
            out.insert(out.end(), c->children.begin(), c->children.end());
        else
            out.push_back(std::move(c));
    }
    if (out.empty()) return f_true();
    if (out.size() == 1) return out[0];
    return f_and(std::move(out));
}

FormulaPtr mk_or(std::vector<FormulaPtr> cs) {
    std::vector<FormulaPtr> out;
    for (auto& c : cs) {
        if (c->kind == Formula::Kind::True) return f_true();
        if (c->kind == Formula::Kind::False) continue;
        if (c->kind == Formula::Kind::Or)
            out.insert(out.end(), c->children.begin(), c->children.end());
        else
            out.push_back(std::move(c));
    }
    if (out.empty()) return f_false();
    if (out.size() == 1) return out[0];
    return f_or(std::move(out));
}

// "At least k satisfiers", the bounded polarity of a counting literal.
FormulaPtr at_least(int k, const std::string& var, FormulaPtr body) {
    if (k <= 0) return f_true();
    return f_not(f_count(CountOp::Less, k, var, std::move(body)));
}

// Rewrites every counting node into a combination of at-least literals
// (E[<k] under negation, k >= 1), so a DNF over opaque leaves sees counting
// constraints with one bounded polarity. Exact at every size.
FormulaPtr normalize_counts(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::RelAtom:
        case Formula::Kind::EqAtom:
            return f;
        case Formula::Kind::Not:
            return mk_not(normalize_counts(f->child()));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> cs;
            cs.reserve(f->children.size());
            for (const auto& c : f->children) cs.push_back(normalize_counts(c));
            return f->kind == Formula::Kind::And ? mk_and(std::move(cs)) : mk_or(std::move(cs));
        }
        case Formula::Kind::Exists:
            return f_exists(f->var, normalize_counts(f->child()));
        case Formula::Kind::Forall:
            return f_forall(f->var, normalize_counts(f->child()));
        case Formula::Kind::Count: {
            FormulaPtr body = normalize_counts(f->child());
            const int r = f->count_bound;
            switch (f->count_op) {
                case CountOp::LessEq:
                    return mk_not(at_least(r + 1, f->var, body));
                case CountOp::Less:
                    return mk_not(at_least(r, f->var, body));
                case CountOp::Eq:
                    if (r == 0) return mk_not(at_least(1, f->var, body));
                    return mk_and({at_least(r, f->var, body),
                                   mk_not(at_least(r + 1, f->var, body))});
            }
            throw Error("unreachable");
        }
    }
    throw Error("unreachable");
}

// Replaces whole leaves (atoms and quantified subformulas), keyed by print
// form, then folds constants.
FormulaPtr replace_leaves(const FormulaPtr& f, const std::map<std::string, FormulaPtr>& repl) {
    switch (f->kind) {
        case Formula::Kind::Not:
            return mk_not(replace_leaves(f->child(), repl));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> cs;
            cs.reserve(f->children.size());
            for (const auto& c : f->children) cs.push_back(replace_leaves(c, repl));
            return f->kind == Formula::Kind::And ? mk_and(std::move(cs)) : mk_or(std::move(cs));
        }
        default: {
            auto it = repl.find(print_formula(f));
            return it != repl.end() ? it->second : f;
        }
    }
}

void collect_leaves(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    switch (f->kind) {
        case Formula::Kind::Not:
            collect_leaves(f->child(), out);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
            for (const auto& c : f->children) collect_leaves(c, out);
            return;
        default:
            out.push_back(f);
    }
}

bool mentions(const FormulaPtr& f, const std::string& var) {
    return std::binary_search(f->free_vars.begin(), f->free_vars.end(), var);
}

// Semantic side conditions: satisfier counts of one-variable formulas over a
// growing schedule of catalog realizations. The schedule adds one copy of
// every omega template plus the next family member per step, so counts of an
// eventually-fixed set stabilize while unbounded sets keep growing past any
// target. Counts between schedule points are assumed to behave like their
// neighbors; the reported thresholds are schedule sizes.
class Prober {
  public:
    explicit Prober(const StructureCatalog* cat) : cat_(cat) {
        if (!cat_) return;
        base_ = cat_->base.size();
        for (const auto& e : cat_->entries) {
            if (e.is_omega())
                round_ += e.tmpl.size();
            else
                finite_ += *e.multiplicity * e.tmpl.size();
        }
        for (const auto& t : cat_->family) family_.push_back(t.size());
    }

    bool available() const { return cat_ != nullptr; }

    long long budget_at(int k) const {
        long long fam = 0;
        for (int i = 0; i < k && i < static_cast<int>(family_.size()); ++i) fam += family_[i];
        return base_ + finite_ + static_cast<long long>(k) * std::max<long long>(1, round_) + fam;
    }

    long long count_at(const FormulaPtr& chi, const std::string& x, int k) {
        const std::string key = x + "|" + print_formula(chi);
        auto& per = counts_[key];
        auto it = per.find(k);
        if (it != per.end()) return it->second;
        const Structure& m = realization(budget_at(k));
        Evaluator ev(m);
        long long c = 0;
        Env env;
        for (int e = 0; e < m.size(); ++e) {
            env[x] = e;
            if (ev.eval(chi, env)) ++c;
        }
        per[k] = c;
        return c;
    }

    struct Profile {
        bool stable = false;
        long long value = 0;         // stable count
        long long stable_from = 0;   // realization size from which the count held
    };

    Profile profile(const FormulaPtr& chi, const std::string& x) {
        std::vector<long long> cs;
        for (int k = 1; k <= kProbePoints; ++k) cs.push_back(count_at(chi, x, k));
        Profile p;
        if (cs[kProbePoints - 1] != cs[kProbePoints - 2]) return p;
        p.stable = true;
        p.value = cs.back();
        int from = kProbePoints;
        while (from > 1 && cs[from - 2] == p.value) --from;
        p.stable_from = budget_at(from);
        return p;
    }

    // Smallest schedule size whose realization has >= need satisfiers.
    long long size_reaching(const FormulaPtr& chi, const std::string& x, long long need) {
        for (int k = 1; k <= kProbeLimit; ++k)
            if (count_at(chi, x, k) >= need) return budget_at(k);
        throw DomainError("semantic probe never reached " + std::to_string(need) +
                          " satisfiers of " + print_formula(chi));
    }

  private:
    const Structure& realization(long long budget) {
        auto it = cache_.find(budget);
        if (it == cache_.end()) it = cache_.emplace(budget, realize(*cat_, budget)).first;
        return it->second;
    }

    const StructureCatalog* cat_;
    long long base_ = 0, finite_ = 0, round_ = 0;
    std::vector<long long> family_;
    std::map<long long, Structure> cache_;
    std::map<std::string, std::map<int, long long>> counts_;
};

// One literal on the eliminated variable, normalized so `bounded` is the
// polarity expected to carry a degree bound (for counting leaves that is the
// at-least form). Only anchored literals must actually have one; closed
// literals are resolved semantically.
struct XLiteral {
    FormulaPtr bounded;
    bool positive = true;  // sign of the literal relative to `bounded`
    bool anchored = false;
    DegreeBound bound;
};

class Rewriter {
  public:
    Rewriter(const Signature& sig, const StructureCatalog* cat) : sig_(sig), prober_(cat) {}

    FormulaPtr rewrite(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::True:
            case Formula::Kind::False:
            case Formula::Kind::RelAtom:
            case Formula::Kind::EqAtom:
                return f;
            case Formula::Kind::Not:
                return mk_not(rewrite(f->child()));
            case Formula::Kind::And:
            case Formula::Kind::Or: {
                std::vector<FormulaPtr> cs;
                cs.reserve(f->children.size());
                for (const auto& c : f->children) cs.push_back(rewrite(c));
                return f->kind == Formula::Kind::And ? mk_and(std::move(cs))
                                                     : mk_or(std::move(cs));
            }
            case Formula::Kind::Exists:
                return eliminate(f->var, rewrite(f->child()));
            case Formula::Kind::Forall:
                return mk_not(eliminate(f->var, mk_not(rewrite(f->child()))));
            case Formula::Kind::Count:
                return rewrite_count(f->count_op, f->count_bound, f->var, f->child());
        }
        throw Error("unreachable");
    }

    long long consumed() const { return consumed_; }
    long long semantic_threshold() const { return semantic_threshold_; }
    std::vector<std::string>& notes() { return notes_; }

  private:
    // A counting node survives as output when its matrix is a boolean
    // combination of bounded leaves that all mention the counted variable.
    // Leaves free of that variable are cased out first; a matrix reduced to
    // "true" counts the whole universe, which outgrows any fixed bound.
    FormulaPtr rewrite_count(CountOp op, int r, const std::string& var, const FormulaPtr& raw) {
        FormulaPtr matrix = normalize_counts(rewrite(raw));
        if (matrix->kind == Formula::Kind::True) {
            semantic_threshold_ = std::max<long long>(semantic_threshold_, r + 1);
            notes_.push_back("counting over a universal matrix is false once the universe "
                             "exceeds " + std::to_string(r) + " elements");
            return f_false();
        }
        if (matrix->kind == Formula::Kind::False) {
            bool holds = (op == CountOp::LessEq) || (op == CountOp::Less && r >= 1) ||
                         (op == CountOp::Eq && r == 0);
            return holds ? f_true() : f_false();
        }

        std::vector<FormulaPtr> leaves;
        collect_leaves(matrix, leaves);
        std::map<std::string, FormulaPtr> guards;
        for (const auto& leaf : leaves)
            if (!mentions(leaf, var)) guards.emplace(print_formula(leaf), leaf);

        if (guards.empty()) {
            FormulaPtr out = f_count(op, r, var, matrix);
            if (!is_in_e_star(out, sig_))
                throw DomainError("cannot bound the counting matrix: " + print_formula(matrix));
            return out;
        }
        if (guards.size() > kMaxGuardLeaves)
            throw DomainError("too many variable-free leaves under a counting quantifier");

        std::vector<std::pair<std::string, FormulaPtr>> guard_list(guards.begin(), guards.end());
        std::vector<FormulaPtr> cases;
        for (unsigned mask = 0; mask < (1u << guard_list.size()); ++mask) {
            std::map<std::string, FormulaPtr> repl;
            std::vector<FormulaPtr> guard;
            for (std::size_t i = 0; i < guard_list.size(); ++i) {
                bool truth = mask & (1u << i);
                repl[guard_list[i].first] = truth ? f_true() : f_false();
                guard.push_back(truth ? guard_list[i].second : mk_not(guard_list[i].second));
            }
            FormulaPtr branch = rewrite_count(op, r, var, replace_leaves(matrix, repl));
            cases.push_back(mk_and({mk_and(std::move(guard)), std::move(branch)}));
        }
        return mk_or(std::move(cases));
    }

    FormulaPtr eliminate(const std::string& x, const FormulaPtr& body) {
        FormulaPtr psi = normalize_counts(body);
        std::vector<FormulaPtr> results;
        for (const auto& clause : dnf_clauses(psi, true))
            results.push_back(eliminate_clause(x, clause));
        return mk_or(std::move(results));
    }

    FormulaPtr eliminate_clause(const std::string& x, const std::vector<SignedLeaf>& clause) {
        std::vector<FormulaPtr> guards;
        std::vector<XLiteral> lits;
        for (const auto& sl : clause) {
            if (!mentions(sl.leaf, x)) {
                guards.push_back(sl.positive ? sl.leaf : mk_not(sl.leaf));
                continue;
            }
            XLiteral lit;
            lit.bounded = sl.leaf;
            lit.positive = sl.positive;
            if (sl.leaf->kind == Formula::Kind::Count) {
                // Post-normalization counting leaves are E[<k]; their bounded
                // polarity is the at-least form.
                lit.bounded = f_not(sl.leaf);
                lit.positive = !lit.positive;
            }
            lit.anchored = lit.bounded->free_vars.size() > 1 || lit.bounded->has_params;
            lit.bound = derive_bound(lit.bounded, sig_);
            if (lit.anchored && !lit.bound)
                throw DomainError("no derivable degree bound for " +
                                  print_formula(lit.bounded));
            lits.push_back(std::move(lit));
        }

        guards.push_back(eliminate_literals(x, lits));
        return mk_and(std::move(guards));
    }

    FormulaPtr eliminate_literals(const std::string& x, const std::vector<XLiteral>& lits) {
        if (lits.empty()) return f_true();  // any element witnesses the quantifier

        bool plain_positive = true;
        for (const auto& l : lits) {
            if (!l.positive || l.bounded->kind == Formula::Kind::Count ||
                l.bounded->kind == Formula::Kind::Not) {
                plain_positive = false;
                break;
            }
            FormulaPtr matrix = l.bounded;
            while (matrix->kind == Formula::Kind::Exists) matrix = matrix->child();
            if (!is_quantifier_free(matrix)) {
                plain_positive = false;
                break;
            }
        }
        if (plain_positive) return merge_positives(x, lits);

        long long min_anchored_bound = -1;
        for (const auto& l : lits)
            if (l.positive && l.anchored)
                if (min_anchored_bound < 0 || *l.bound < min_anchored_bound)
                    min_anchored_bound = *l.bound;

        std::vector<FormulaPtr> alpha_parts, betas;
        for (const auto& l : lits)
            if (l.positive)
                alpha_parts.push_back(l.bounded);
            else
                betas.push_back(l.bounded);

        if (min_anchored_bound >= 0) {
            // An anchored positive caps the satisfier count at every size, so
            // the exact count-and-subtract form applies unconditionally.
            notes_.push_back("eliminated " + x + " exactly: an anchored positive bounds its "
                             "satisfiers by " + std::to_string(min_anchored_bound));
            return counting_form(x, min_anchored_bound, mk_and(alpha_parts), betas);
        }

        // No anchored positive: split off the part of the clause that only
        // sees x. Its satisfier set is one fixed set of the catalog's
        // structure, so its size is a semantic question.
        std::vector<FormulaPtr> closed_parts;
        std::vector<const XLiteral*> anchored_negs;
        for (const auto& l : lits) {
            if (!l.anchored)
                closed_parts.push_back(l.positive ? l.bounded : mk_not(l.bounded));
            else
                anchored_negs.push_back(&l);
        }
        long long negative_budget = 0;
        for (const XLiteral* l : anchored_negs) negative_budget += *l->bound;

        if (closed_parts.empty()) {
            // Only anchored negatives: each forbids boundedly many elements,
            // so any universe larger than their combined budget has a witness.
            consumed_ += negative_budget;
            notes_.push_back("eliminated " + x + ": only excluded sets remain, together "
                             "covering at most " + std::to_string(negative_budget) +
                             " elements per assignment");
            return f_true();
        }

        FormulaPtr chi = mk_and(closed_parts);
        if (!prober_.available())
            throw InputError("a semantic side condition needs a catalog: satisfier set of " +
                             print_formula(chi));
        Prober::Profile pr = prober_.profile(chi, x);
        if (pr.stable) {
            semantic_threshold_ = std::max(semantic_threshold_, pr.stable_from);
            notes_.push_back("probe: " + print_formula(chi) + " has a stable count of " +
                             std::to_string(pr.value) + " from size " +
                             std::to_string(pr.stable_from));
            if (pr.value == 0) return f_false();
            if (anchored_negs.empty()) return f_true();
            std::vector<FormulaPtr> neg_forms;
            for (const XLiteral* l : anchored_negs) neg_forms.push_back(l->bounded);
            return counting_form(x, pr.value, chi, neg_forms);
        }

        long long need = negative_budget + 1;
        long long size = prober_.size_reaching(chi, x, need);
        semantic_threshold_ = std::max(semantic_threshold_, size);
        consumed_ += negative_budget;
        notes_.push_back("probe: " + print_formula(chi) + " keeps growing; its count reaches " +
                         std::to_string(need) + " from size " + std::to_string(size));
        return f_true();
    }

    // Exact elimination by counting: some element satisfies alpha and avoids
    // every beta iff, for the exact satisfier count r of alpha, fewer than r
    // satisfiers of alpha meet some beta. Sound for any cap >= the satisfier
    // count of alpha under every assignment.
    FormulaPtr counting_form(const std::string& x, long long cap, FormulaPtr alpha,
                             const std::vector<FormulaPtr>& betas) {
        if (cap < 1) return f_false();
        if (cap > kMaxCountingDisjuncts)
            throw DomainError("derived bound " + std::to_string(cap) +
                              " is too large to enumerate counting disjuncts");
        std::vector<FormulaPtr> gammas;
        for (const auto& b : betas) gammas.push_back(mk_and({alpha, b}));
        FormulaPtr bad = mk_or(std::move(gammas));
        std::vector<FormulaPtr> disjuncts;
        for (int r = 1; r <= cap; ++r) {
            FormulaPtr exact = f_count(CountOp::Eq, r, x, alpha);
            if (betas.empty())
                disjuncts.push_back(std::move(exact));
            else
                disjuncts.push_back(
                    mk_and({std::move(exact), f_count(CountOp::Less, r, x, bad)}));
        }
        return mk_or(std::move(disjuncts));
    }

    // All-positive clauses of plain leaves collapse into one existential
    // member: hoist each leaf's quantifier prefix (bound names are already
    // pairwise distinct) over the conjunction of the matrices. Exact at
    // every size, and bounded because every matrix mentions x.
    FormulaPtr merge_positives(const std::string& x, const std::vector<XLiteral>& lits) {
        std::vector<std::string> prefix;
        std::vector<FormulaPtr> matrices;
        for (const auto& l : lits) {
            FormulaPtr leaf = l.bounded;
            while (leaf->kind == Formula::Kind::Exists) {
                prefix.push_back(leaf->var);
                leaf = leaf->child();
            }
            matrices.push_back(leaf);
        }
        FormulaPtr out = mk_and(std::move(matrices));
        for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
            out = f_exists(*it, std::move(out));
        notes_.push_back("eliminated " + x + " exactly by merging positive members");
        return f_exists(x, std::move(out));
    }

    const Signature& sig_;
    Prober prober_;
    long long consumed_ = 0;
    long long semantic_threshold_ = 1;
    std::vector<std::string> notes_;
};

void collect_var_names(const FormulaPtr& f, std::set<std::string>& out) {
    for (const auto& v : f->free_vars) out.insert(v);
    if (!f->var.empty()) out.insert(f->var);
    for (const auto& c : f->children) collect_var_names(c, out);
}

}  // namespace

RewriteResult qe_rewrite(const FormulaPtr& phi, const Signature& sig,
                         const StructureCatalog* cat) {
    for (const auto& r : sig.relations)
        if (!r.degree_bound)
            throw InputError("relation " + r.name + " has no degree bound");

    std::set<std::string> names;
    collect_var_names(phi, names);
    std::string prefix = "q";
    auto clashes = [&] {
        for (const auto& n : names)
            if (n.compare(0, prefix.size(), prefix) == 0) return true;
        return false;
    };
    while (clashes()) prefix += "q";
    int counter = 0;
    FormulaPtr renamed = rename_bound_apart(phi, prefix, counter);

    Rewriter rw(sig, cat);
    RewriteResult result;
    result.formula = rw.rewrite(renamed);
    result.threshold = std::max(rw.consumed() + 1, rw.semantic_threshold());
    result.notes = std::move(rw.notes());
    if (!is_in_e_star(result.formula, sig))
        throw DomainError("rewrite left the bounded counting fragment: " +
                          print_formula(result.formula));
    return result;
}

RewriteResult qe_rewrite(const FormulaPtr& phi, const StructureCatalog& cat) {
    return qe_rewrite(phi, cat.signature(), &cat);
}

}  // namespace macell
