#include "macell/shape.hpp"

#include <set>
#include <string>

#include "macell/components.hpp"

namespace macell {

const char* shape_tag_name(ShapeTag tag) {
    switch (tag) {
        case ShapeTag::LinkedConjunction:
            return "LinkedConjunction";
        case ShapeTag::EMember:
            return "EMember";
        case ShapeTag::EStarMember:
            return "EStarMember";
        case ShapeTag::QuantifierFree:
            return "QuantifierFree";
        case ShapeTag::None:
            return "None";
    }
    return "None";
}

namespace {

// Free variables plus parameter names: the coordinates that pin satisfying
// tuples for the sharing/anchoring analysis.
void anchor_tokens(const FormulaPtr& f, std::set<std::string>& out) {
    for (const auto& v : f->free_vars) out.insert("v:" + v);
    if (!f->has_params) return;
    if (f->is_atom()) {
        for (const auto& t : f->args)
            if (!t.is_var()) out.insert("p:" + t.name);
        return;
    }
    for (const auto& c : f->children) {
        std::set<std::string> inner;
        anchor_tokens(c, inner);
        for (auto& tok : inner) {
            // A bound variable of f is not an anchor of f.
            if (tok[0] == 'v' && !f->var.empty() && tok.substr(2) == f->var &&
                f->is_quantifier())
                continue;
            out.insert(tok);
        }
    }
}

std::set<std::string> anchor_tokens(const FormulaPtr& f) {
    std::set<std::string> out;
    anchor_tokens(f, out);
    return out;
}

constexpr long long kBoundCap = 1'000'000'000;

DegreeBound bounded_mul(long long a, long long b) {
    if (a > kBoundCap / (b > 0 ? b : 1)) return std::nullopt;
    return a * b;
}

}  // namespace

DegreeBound derive_bound(const FormulaPtr& f, const Signature& sig) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return std::nullopt;
        case Formula::Kind::RelAtom: {
            const RelationInfo* info = sig.find_relation(f->rel);
            if (!info || !info->degree_bound) return std::nullopt;
            return static_cast<long long>(*info->degree_bound);
        }
        case Formula::Kind::EqAtom:
            return 1;
        case Formula::Kind::And: {
            if (f->children.empty()) return std::nullopt;
            // Fold children in a BFS order over the sharing graph; every
            // child must connect to the accumulated anchor set.
            std::vector<std::set<std::string>> anchors;
            std::vector<DegreeBound> bounds;
            for (const auto& c : f->children) {
                DegreeBound b = derive_bound(c, sig);
                if (!b) return std::nullopt;
                bounds.push_back(b);
                anchors.push_back(anchor_tokens(c));
            }
            std::vector<bool> used(f->children.size(), false);
            used[0] = true;
            std::set<std::string> acc = anchors[0];
            long long bound = *bounds[0];
            for (std::size_t step = 1; step < f->children.size(); ++step) {
                std::size_t pick = f->children.size();
                for (std::size_t i = 0; i < f->children.size(); ++i) {
                    if (used[i]) continue;
                    for (const auto& tok : anchors[i])
                        if (acc.count(tok)) {
                            pick = i;
                            break;
                        }
                    if (pick != f->children.size()) break;
                }
                if (pick == f->children.size()) return std::nullopt;  // disconnected
                used[pick] = true;
                acc.insert(anchors[pick].begin(), anchors[pick].end());
                DegreeBound m = bounded_mul(bound, *bounds[pick]);
                if (!m) return std::nullopt;
                m = bounded_mul(*m, std::max<long long>(1, static_cast<long long>(acc.size())));
                if (!m) return std::nullopt;
                bound = *m;
            }
            return bound;
        }
        case Formula::Kind::Or:
        case Formula::Kind::Forall:
            return std::nullopt;
        case Formula::Kind::Not: {
            // !E[<k]x.body is "at least k", a subset of Ex.body when k >= 1.
            const FormulaPtr& c = f->child();
            if (c->kind == Formula::Kind::Count && c->count_op == CountOp::Less &&
                c->count_bound >= 1)
                return derive_bound(c->child(), sig);
            return std::nullopt;
        }
        case Formula::Kind::Exists:
            return derive_bound(f->child(), sig);
        case Formula::Kind::Count:
            if (f->count_op == CountOp::Eq && f->count_bound >= 1)
                return derive_bound(f->child(), sig);
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// EMember: a (possibly empty) prefix of existential/counting quantifiers over
// a quantifier-free matrix with a derivable bound.
bool is_e_member(const FormulaPtr& f, const Signature& sig) {
    FormulaPtr matrix = f;
    while (matrix->kind == Formula::Kind::Exists || matrix->kind == Formula::Kind::Count)
        matrix = matrix->child();
    if (!is_quantifier_free(matrix)) return false;
    return derive_bound(matrix, sig).has_value();
}

// A leaf of a counting-quantifier matrix: must mention the counted variable
// and be bounded in one polarity.
bool counting_leaf_ok(const FormulaPtr& leaf, const std::string& var, const Signature& sig) {
    bool mentions = false;
    for (const auto& v : leaf->free_vars)
        if (v == var) mentions = true;
    if (!mentions) return false;
    if (derive_bound(leaf, sig)) return true;
    return derive_bound(f_not(leaf), sig).has_value();
}

// Walks the boolean structure of a counting matrix; leaves are atoms and
// quantified subformulas.
bool counting_matrix_ok(const FormulaPtr& f, const std::string& var, const Signature& sig) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return false;  // constants fold away before shape matters
        case Formula::Kind::Not:
            return counting_matrix_ok(f->child(), var, sig);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            if (f->children.empty()) return false;
            for (const auto& c : f->children)
                if (!counting_matrix_ok(c, var, sig)) return false;
            return true;
        }
        default:
            return counting_leaf_ok(f, var, sig);
    }
}

bool is_e_star(const FormulaPtr& f, const Signature& sig) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return true;
        case Formula::Kind::RelAtom:
        case Formula::Kind::EqAtom:
            return is_e_member(f, sig);
        case Formula::Kind::Not:
            return is_e_star(f->child(), sig);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            for (const auto& c : f->children)
                if (!is_e_star(c, sig)) return false;
            return true;
        }
        case Formula::Kind::Exists:
            return is_e_member(f, sig);
        case Formula::Kind::Count:
            if (is_e_member(f, sig)) return true;
            return counting_matrix_ok(f->child(), f->var, sig);
        case Formula::Kind::Forall:
            return false;
    }
    return false;
}

}  // namespace

bool is_in_e_star(const FormulaPtr& f, const Signature& sig) { return is_e_star(f, sig); }

ShapeTag shape_of(const FormulaPtr& f, const Signature& sig) {
    if (is_linked_conjunction(f) && f->kind == Formula::Kind::And && f->children.size() >= 2)
        return ShapeTag::LinkedConjunction;
    if (is_e_member(f, sig)) return ShapeTag::EMember;
    if (is_e_star(f, sig)) return ShapeTag::EStarMember;
    if (is_quantifier_free(f)) return ShapeTag::QuantifierFree;
    return ShapeTag::None;
}

}  // namespace macell
