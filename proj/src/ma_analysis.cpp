#include "macell/ma_analysis.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "macell/errors.hpp"
#include "macell/eval.hpp"
#include "macell/parser.hpp"

namespace macell {

DegreeProfile degree_profile(const Structure& m) {
    DegreeProfile out;
    for (const auto& r : m.signature().relations) {
        std::vector<long long> count(m.size(), 0);
        for (const auto& t : m.tuples(r.name)) {
            std::set<int> seen(t.begin(), t.end());
            for (int e : seen) ++count[e];
        }
        long long best = 0;
        int who = -1;
        for (int e = 0; e < m.size(); ++e)
            if (count[e] > best) {
                best = count[e];
                who = e;
            }
        out.degree[r.name] = best;
        if (who >= 0) out.witness[r.name] = m.universe()[who];
        out.within_bound[r.name] = !r.degree_bound || best <= *r.degree_bound;
        out.overall = std::max(out.overall, best);
    }
    return out;
}

long long formula_degree(const Structure& m, const FormulaPtr& theta) {
    if (!is_quantifier_free(theta)) throw InputError("formula_degree needs a quantifier-free formula");
    const std::vector<std::string>& vars = theta->free_vars;
    if (vars.empty()) throw InputError("formula_degree needs at least one free variable");
    if (m.size() == 0) return 0;

    Evaluator ev(m);
    std::vector<long long> count(m.size(), 0);
    std::vector<int> tuple(vars.size(), 0);
    Env env;
    while (true) {
        for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = tuple[i];
        if (ev.eval(theta, env)) {
            std::set<int> seen(tuple.begin(), tuple.end());
            for (int e : seen) ++count[e];
        }
        std::size_t i = 0;
        for (; i < tuple.size(); ++i) {
            if (++tuple[i] < m.size()) break;
            tuple[i] = 0;
        }
        if (i == tuple.size()) break;
    }
    return *std::max_element(count.begin(), count.end());
}

std::string PresentationReport::text() const {
    std::ostringstream os;
    os << "presentation check: " << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& v : relations) {
        os << "  " << v.relation << ": degree " << v.degree;
        if (v.bound)
            os << ", bound " << *v.bound << ", " << (v.pass ? "pass" : "FAIL");
        else
            os << ", no declared bound (finite, hence trivially bounded)";
        os << "\n";
    }
    if (!all_bounds_declared)
        os << "  note: relations without a declared bound pass trivially on a finite structure\n";
    return os.str();
}

nlohmann::json PresentationReport::to_json() const {
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& v : relations) {
        nlohmann::json r;
        r["relation"] = v.relation;
        r["degree"] = v.degree;
        if (v.bound)
            r["bound"] = *v.bound;
        else
            r["bound"] = nullptr;
        r["pass"] = v.pass;
        rels.push_back(std::move(r));
    }
    return nlohmann::json{{"pass", pass},
                          {"all_bounds_declared", all_bounds_declared},
                          {"relations", std::move(rels)}};
}

PresentationReport is_ma_presented(const Structure& m) {
    DegreeProfile profile = degree_profile(m);
    PresentationReport report;
    for (const auto& r : m.signature().relations) {
        RelationVerdict v;
        v.relation = r.name;
        v.degree = profile.degree.at(r.name);
        v.bound = r.degree_bound;
        v.pass = profile.within_bound.at(r.name);
        if (!v.bound) report.all_bounds_declared = false;
        if (!v.pass) report.pass = false;
        report.relations.push_back(std::move(v));
    }
    return report;
}

namespace {

void collect_parameters(const FormulaPtr& f, std::set<std::string>& out) {
    for (const auto& t : f->args)
        if (!t.is_var()) out.insert(t.name);
    for (const auto& c : f->children) collect_parameters(c, out);
}

}  // namespace

std::vector<std::string> AcceptableSet::parameters() const {
    std::set<std::string> names;
    for (const auto& mem : members) collect_parameters(mem.formula, names);
    return {names.begin(), names.end()};
}

AcceptableSet load_acceptable_set(const std::string& json_text, const Signature& sig) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!doc.is_array()) throw InputError("acceptable set document must be a JSON array");
    AcceptableSet a;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("formula") || !item["formula"].is_string())
            throw InputError("acceptable set entry needs a \"formula\" string");
        AcceptableMember mem;
        mem.formula = parse_formula(item["formula"].get<std::string>(), sig);
        if (!is_quantifier_free(mem.formula))
            throw InputError("acceptable set member is not quantifier-free: " +
                             print_formula(mem.formula));
        if (item.contains("degree_bound")) {
            if (!item["degree_bound"].is_number_integer() || item["degree_bound"].get<long long>() < 0)
                throw InputError("degree_bound must be a nonnegative integer");
            mem.degree_bound = item["degree_bound"].get<int>();
        }
        a.members.push_back(std::move(mem));
    }
    return a;
}

namespace {

// Every injective map from `n` member variables into `k` target positions,
// in lexicographic order of the position vector.
std::vector<std::vector<int>> injections(int n, int k) {
    std::vector<std::vector<int>> out;
    if (n > k) return out;
    std::vector<int> pick;
    std::vector<bool> used(k, false);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(pick.size()) == n) {
            out.push_back(pick);
            return;
        }
        for (int p = 0; p < k; ++p) {
            if (used[p]) continue;
            used[p] = true;
            pick.push_back(p);
            self(self);
            pick.pop_back();
            used[p] = false;
        }
    };
    rec(rec);
    return out;
}

std::string target_var(int position) { return "x" + std::to_string(position + 1); }

// The feature formulas of the fingerprint: each member under each injective
// placement of its variables into the target positions x1..xk.
std::vector<FormulaPtr> feature_formulas(const AcceptableSet& a, int arity) {
    std::vector<FormulaPtr> features;
    for (const auto& mem : a.members) {
        const auto& vars = mem.formula->free_vars;
        if (static_cast<int>(vars.size()) > arity)
            throw InputError("member has more free variables than the target arity: " +
                             print_formula(mem.formula));
        for (const auto& pos : injections(static_cast<int>(vars.size()), arity)) {
            std::map<std::string, Term> sub;
            for (std::size_t i = 0; i < vars.size(); ++i)
                sub[vars[i]] = Term::var(target_var(pos[i]));
            features.push_back(substitute(mem.formula, sub));
        }
    }
    return features;
}

}  // namespace

DefinabilityResult definability_fingerprint(const Structure& m, const std::string& target,
                                            const AcceptableSet& a) {
    const RelationInfo* info = m.signature().find_relation(target);
    if (!info) throw InputError("unknown relation: " + target);
    const int k = info->arity;

    std::vector<FormulaPtr> features = feature_formulas(a, k);
    Evaluator ev(m);

    struct Bucket {
        bool has_in = false, has_out = false;
        std::vector<int> in, out;
    };
    std::map<std::string, Bucket> buckets;

    DefinabilityResult result;
    result.definable = true;
    if (m.size() > 0) {
        std::vector<int> tuple(k, 0);
        Env env;
        while (true) {
            for (int i = 0; i < k; ++i) env[target_var(i)] = tuple[i];
            std::string print(features.size(), '0');
            for (std::size_t i = 0; i < features.size(); ++i)
                if (ev.eval(features[i], env)) print[i] = '1';
            Bucket& b = buckets[print];
            if (m.holds(target, tuple)) {
                if (!b.has_in) {
                    b.has_in = true;
                    b.in = tuple;
                }
            } else if (!b.has_out) {
                b.has_out = true;
                b.out = tuple;
            }
            if (b.has_in && b.has_out && result.definable) {
                result.definable = false;
                result.inside = b.in;
                result.outside = b.out;
            }
            // Lexicographic tuple order keeps the failure witness stable.
            int i = k - 1;
            for (; i >= 0; --i) {
                if (++tuple[i] < m.size()) break;
                tuple[i] = 0;
            }
            if (i < 0) break;
        }
    }
    if (!result.definable) return result;

    std::vector<FormulaPtr> accepted;
    for (const auto& [print, b] : buckets) {
        if (!b.has_in) continue;
        std::vector<FormulaPtr> lits;
        for (std::size_t i = 0; i < features.size(); ++i)
            lits.push_back(print[i] == '1' ? features[i] : f_not(features[i]));
        accepted.push_back(f_and(std::move(lits)));
    }
    result.combination = f_or(std::move(accepted));
    return result;
}

Structure build_ma_presentation(const Structure& m, const AcceptableSet& a) {
    for (const auto& mem : a.members) {
        if (mem.formula->free_vars.empty())
            throw InputError("member without free variables cannot become a relation: " +
                             print_formula(mem.formula));
        if (mem.degree_bound && formula_degree(m, mem.formula) > *mem.degree_bound)
            throw DomainError("member exceeds its degree bound: " + print_formula(mem.formula));
    }
    for (const auto& r : m.signature().relations)
        if (!definability_fingerprint(m, r.name, a).definable)
            throw DomainError("relation " + r.name + " is not definable from the member set");

    Signature sig;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < a.members.size(); ++i) {
        const auto& mem = a.members[i];
        int arity = static_cast<int>(mem.formula->free_vars.size());
        int bound = mem.degree_bound ? *mem.degree_bound
                                     : static_cast<int>(formula_degree(m, mem.formula));
        names.push_back("A" + std::to_string(i));
        sig.relations.push_back({names.back(), arity, bound});
    }
    sig.constants = m.signature().constants;
    std::vector<std::string> params = a.parameters();
    for (const auto& d : params) {
        std::string name = "c_" + d;
        if (sig.has_constant(name)) throw InputError("constant name clashes: " + name);
        sig.constants.push_back(name);
    }

    Structure out(sig, m.universe());
    for (const auto& [name, e] : m.constant_map()) out.assign_constant(name, e);
    for (const auto& d : params) out.assign_constant("c_" + d, m.element_index(d));

    Evaluator ev(m);
    for (std::size_t mi = 0; mi < a.members.size(); ++mi) {
        const auto& vars = a.members[mi].formula->free_vars;
        if (m.size() == 0) continue;
        std::vector<int> tuple(vars.size(), 0);
        Env env;
        while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = tuple[i];
            if (ev.eval(a.members[mi].formula, env)) out.add_tuple(names[mi], tuple);
            std::size_t i = 0;
            for (; i < tuple.size(); ++i) {
                if (++tuple[i] < m.size()) break;
                tuple[i] = 0;
            }
            if (i == tuple.size()) break;
        }
    }
    out.validate();
    return out;
}

}  // namespace macell
