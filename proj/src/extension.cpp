#include "macell/extension.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "macell/components.hpp"
#include "macell/errors.hpp"
#include "macell/eval.hpp"
#include "macell/formula.hpp"
#include "macell/ma_analysis.hpp"

namespace macell {

namespace {

int max_arity(const Signature& sig) {
    int r = 0;
    for (const auto& rel : sig.relations) r = std::max(r, rel.arity);
    return r;
}

// Component indices in decreasing size, ties by first element: the witness
// scan then visits every component large enough for the counting argument
// before falling back to the rest.
std::vector<int> by_decreasing_size(const Decomposition& dec) {
    std::vector<int> order(dec.components.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return dec.components[a].elements.size() > dec.components[b].elements.size();
    });
    return order;
}

}  // namespace

std::string find_witness(const Structure& m, const std::vector<std::string>& obstacles, int n) {
    if (n < 0) throw InputError("chain length must be nonnegative");
    if (!is_ma_presented(m).pass)
        throw InputError("structure fails the presentation check");
    for (const auto& f : obstacles) m.element_index(f);

    const long long need = static_cast<long long>(n) * max_arity(m.signature());
    Decomposition dec = decompose(m);
    long long largest = 0;
    for (const auto& c : dec.components)
        largest = std::max(largest, static_cast<long long>(c.elements.size()));

    for (int ci : by_decreasing_size(dec)) {
        const ComponentInfo& comp = dec.components[ci];
        if (static_cast<long long>(comp.elements.size()) <= need) break;
        for (int e : comp.elements) {
            const std::string& name = m.element_name(e);
            bool far_enough = true;
            for (const auto& f : obstacles) {
                std::optional<int> d = gaifman_distance(m, name, f);
                if (d && *d <= n) {
                    far_enough = false;
                    break;
                }
            }
            if (far_enough) return name;
        }
    }
    throw DomainError("no witness: need a component of more than " + std::to_string(need) +
                      " elements at distance over " + std::to_string(n) +
                      " from the obstacle set; largest component has " +
                      std::to_string(largest) + " elements");
}

ChainSpec build_chain(const Structure& m, const std::vector<std::string>& obstacles, int n) {
    const std::string witness = find_witness(m, obstacles, n);
    const int xi = m.element_index(witness);
    Decomposition dec = decompose(m);
    const int home = dec.component_of[xi];

    std::set<int> blocked;
    for (const auto& f : obstacles) blocked.insert(m.element_index(f));

    struct Candidate {
        std::string rel;
        std::vector<int> tuple;
    };
    std::vector<Candidate> cands;
    for (const auto& rel : m.signature().relations)
        for (const auto& t : m.tuples(rel.name)) {
            bool usable = true;
            for (int e : t)
                if (dec.component_of[e] != home || blocked.count(e)) {
                    usable = false;
                    break;
                }
            if (usable) cands.push_back({rel.name, t});
        }

    auto intersects = [](const std::vector<int>& a, const std::vector<int>& b) {
        for (int e : a)
            for (int f : b)
                if (e == f) return true;
        return false;
    };

    // Depth-first chain search; first tuple must contain the witness, later
    // tuples must meet their predecessor, and tuple vectors never repeat.
    std::vector<int> path;
    std::set<std::vector<int>> used;
    std::function<bool()> extend = [&]() {
        if (static_cast<int>(path.size()) == n) return true;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (used.count(cands[i].tuple)) continue;
            if (path.empty()) {
                if (std::find(cands[i].tuple.begin(), cands[i].tuple.end(), xi) ==
                    cands[i].tuple.end())
                    continue;
            } else if (!intersects(cands[i].tuple, cands[path.back()].tuple)) {
                continue;
            }
            path.push_back(static_cast<int>(i));
            used.insert(cands[i].tuple);
            if (extend()) return true;
            used.erase(cands[i].tuple);
            path.pop_back();
        }
        return false;
    };
    if (n > 0 && !extend())
        throw DomainError("no linked chain of " + std::to_string(n) +
                          " distinct tuples through " + witness + " avoids the obstacle set");

    ChainSpec spec;
    spec.witness = witness;
    spec.n = n;
    spec.r = max_arity(m.signature());
    for (int i : path) {
        ChainConjunct c;
        c.relation = cands[i].rel;
        for (int e : cands[i].tuple) c.tuple.push_back(m.element_name(e));
        spec.conjuncts.push_back(std::move(c));
    }
    std::set<std::string> avoided(obstacles.begin(), obstacles.end());
    spec.avoided.assign(avoided.begin(), avoided.end());

    bool needs_padding = false;
    for (int i : path)
        if (static_cast<int>(cands[i].tuple.size()) < spec.r) needs_padding = true;
    if (needs_padding) {
        // Coordinates beyond a conjunct's tuple are interpreted in another
        // component; one spare element serves every such coordinate.
        int spare = -1;
        for (int ci : by_decreasing_size(dec)) {
            if (ci == home) continue;
            const ComponentInfo& comp = dec.components[ci];
            bool clean = true;
            for (int e : comp.elements)
                if (blocked.count(e)) clean = false;
            if (clean) {
                spare = comp.elements.front();
                break;
            }
        }
        if (spare < 0)
            throw DomainError("no spare component available to pad tuples to arity " +
                              std::to_string(spec.r));
        spec.padding.push_back(m.element_name(spare));
    }

    if (n > 0) {
        // The chain must realize a linked atomic conjunction; build it with
        // one variable per distinct element and evaluate.
        std::map<int, std::string> var_of;
        Env env;
        std::vector<FormulaPtr> atoms;
        for (int i : path) {
            std::vector<Term> args;
            for (int e : cands[i].tuple) {
                auto it = var_of.find(e);
                if (it == var_of.end()) {
                    std::string v = "u" + std::to_string(var_of.size());
                    it = var_of.emplace(e, v).first;
                    env[v] = e;
                }
                args.push_back(Term::var(it->second));
            }
            atoms.push_back(f_rel(cands[i].rel, std::move(args)));
        }
        FormulaPtr conj = atoms.size() == 1 ? atoms[0] : f_and(std::move(atoms));
        if (!is_linked_conjunction(conj)) throw Error("constructed chain is not linked");
        Evaluator ev(m);
        if (!ev.eval(conj, env)) throw Error("constructed chain conjunction does not hold");
    }
    return spec;
}

namespace {

void push_check(FragmentReport& rep, int item, bool ok, const std::string& detail) {
    rep.items.push_back({item, ok, ok ? std::string() : detail});
    if (!ok) rep.pass = false;
}

std::string tuple_text(const std::string& rel, const std::vector<std::string>& tuple) {
    std::string out = rel + "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) out += ",";
        out += tuple[i];
    }
    return out + ")";
}

}  // namespace

FragmentReport verify_fragment(const Structure& m, const Structure& base,
                               const ChainSpec& spec) {
    m.element_index(spec.witness);
    for (const auto& c : spec.conjuncts)
        for (const auto& e : c.tuple) m.element_index(e);
    for (const auto& e : spec.padding) m.element_index(e);

    FragmentReport rep;

    // Item 1: atomic diagram of the base, positive and negative, plus its
    // constants, reproduced inside m.
    bool ok1 = true;
    std::string d1;
    for (int i = 0; i < base.size() && ok1; ++i)
        if (!m.has_element(base.element_name(i))) {
            ok1 = false;
            d1 = "base element " + base.element_name(i) + " is missing";
        }
    for (const auto& rel : base.signature().relations) {
        if (!ok1) break;
        const RelationInfo* info = m.signature().find_relation(rel.name);
        if (!info || info->arity != rel.arity) {
            ok1 = false;
            d1 = "relation " + rel.name + " is missing or has a different arity";
            break;
        }
        if (base.size() == 0) continue;
        std::vector<int> idx(rel.arity, 0);
        while (true) {
            std::vector<int> in_m(rel.arity);
            std::vector<std::string> names(rel.arity);
            for (int j = 0; j < rel.arity; ++j) {
                names[j] = base.element_name(idx[j]);
                in_m[j] = m.element_index(names[j]);
            }
            if (base.holds(rel.name, idx) != m.holds(rel.name, in_m)) {
                ok1 = false;
                d1 = tuple_text(rel.name, names) + " holds in exactly one of base and m";
                break;
            }
            int j = 0;
            for (; j < rel.arity; ++j) {
                if (++idx[j] < base.size()) break;
                idx[j] = 0;
            }
            if (j == rel.arity) break;
        }
    }
    for (const auto& [cname, cidx] : base.constant_map()) {
        if (!ok1) break;
        const std::string& target = base.element_name(cidx);
        if (!m.constant_map().count(cname) ||
            m.element_name(m.constant_element(cname)) != target) {
            ok1 = false;
            d1 = "constant " + cname + " does not name " + target + " in m";
        }
    }
    push_check(rep, 1, ok1, d1);

    // Item 2: chain elements are new.
    bool ok2 = true;
    std::string d2;
    std::vector<std::string> fresh{spec.witness};
    for (const auto& c : spec.conjuncts)
        fresh.insert(fresh.end(), c.tuple.begin(), c.tuple.end());
    fresh.insert(fresh.end(), spec.padding.begin(), spec.padding.end());
    for (const auto& e : fresh)
        if (base.has_element(e)) {
            ok2 = false;
            d2 = "element " + e + " lies in the base";
            break;
        }
    push_check(rep, 2, ok2, d2);

    // Item 3: every conjunct holds.
    bool ok3 = true;
    std::string d3;
    for (const auto& c : spec.conjuncts) {
        const RelationInfo* info = m.signature().find_relation(c.relation);
        if (!info) {
            ok3 = false;
            d3 = "unknown relation " + c.relation;
            break;
        }
        if (static_cast<int>(c.tuple.size()) != info->arity) {
            ok3 = false;
            d3 = tuple_text(c.relation, c.tuple) + " has the wrong arity";
            break;
        }
        std::vector<int> idx;
        for (const auto& e : c.tuple) idx.push_back(m.element_index(e));
        if (!m.holds(c.relation, idx)) {
            ok3 = false;
            d3 = tuple_text(c.relation, c.tuple) + " does not hold";
            break;
        }
    }
    push_check(rep, 3, ok3, d3);

    // Item 4: consecutive tuples intersect.
    bool ok4 = true;
    std::string d4;
    for (std::size_t i = 0; i + 1 < spec.conjuncts.size(); ++i) {
        std::set<std::string> left(spec.conjuncts[i].tuple.begin(),
                                   spec.conjuncts[i].tuple.end());
        bool meet = false;
        for (const auto& e : spec.conjuncts[i + 1].tuple)
            if (left.count(e)) meet = true;
        if (!meet) {
            ok4 = false;
            d4 = "conjuncts " + std::to_string(i) + " and " + std::to_string(i + 1) +
                 " share no element";
            break;
        }
    }
    push_check(rep, 4, ok4, d4);

    // Item 5: tuples pairwise distinct.
    bool ok5 = true;
    std::string d5;
    for (std::size_t i = 0; i < spec.conjuncts.size() && ok5; ++i)
        for (std::size_t j = i + 1; j < spec.conjuncts.size(); ++j)
            if (spec.conjuncts[i].tuple == spec.conjuncts[j].tuple) {
                ok5 = false;
                d5 = "conjuncts " + std::to_string(i) + " and " + std::to_string(j) +
                     " use the same tuple";
                break;
            }
    push_check(rep, 5, ok5, d5);

    return rep;
}

std::string FragmentReport::text() const {
    std::ostringstream os;
    os << "fragment check: " << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : items) {
        os << "  item " << c.item << ": " << (c.pass ? "pass" : "FAIL");
        if (!c.pass) os << " (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

nlohmann::json FragmentReport::to_json() const {
    nlohmann::json items_json = nlohmann::json::array();
    for (const auto& c : items)
        items_json.push_back({{"item", c.item}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"pass", pass}, {"items", items_json}};
}

StructureCatalog synthesize_extension(const StructureCatalog& cat, int copies,
                                      long long new_size) {
    if (copies < 0) throw InputError("copies must be nonnegative");
    if (new_size < 1) throw InputError("new component size must be positive");
    CellularityDecision decision = catalog_is_cellular(cat);
    if (decision.cellular)
        throw DomainError("the construction needs unbounded component sizes: " +
                          decision.reason);
    if (copies == 0) return cat;

    const Structure* chosen = nullptr;
    long long largest = 0;
    for (const auto& t : cat.family) {
        largest = std::max(largest, static_cast<long long>(t.size()));
        if (t.size() >= new_size) {
            chosen = &t;
            break;
        }
    }
    if (!chosen)
        throw DomainError("family exhausted below size " + std::to_string(new_size) +
                          "; largest template has " + std::to_string(largest) + " elements");

    StructureCatalog out = cat;
    for (int i = 0; i < copies; ++i) out.entries.push_back({*chosen, 1});
    return out;
}

nlohmann::json chain_spec_to_json(const ChainSpec& spec) {
    nlohmann::json conjuncts = nlohmann::json::array();
    for (const auto& c : spec.conjuncts)
        conjuncts.push_back({{"relation", c.relation}, {"tuple", c.tuple}});
    return {{"witness", spec.witness},
            {"conjuncts", conjuncts},
            {"avoided", spec.avoided},
            {"padding", spec.padding}};
}

ChainSpec chain_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("chain document must be a JSON object");
    if (!j.contains("witness") || !j.at("witness").is_string())
        throw InputError("chain document needs a string field 'witness'");
    if (!j.contains("conjuncts") || !j.at("conjuncts").is_array())
        throw InputError("chain document needs an array field 'conjuncts'");

    ChainSpec spec;
    spec.witness = j.at("witness").get<std::string>();
    for (const auto& c : j.at("conjuncts")) {
        if (!c.is_object() || !c.contains("relation") || !c.at("relation").is_string() ||
            !c.contains("tuple") || !c.at("tuple").is_array())
            throw InputError("each conjunct needs a 'relation' string and a 'tuple' array");
        ChainConjunct conj;
        conj.relation = c.at("relation").get<std::string>();
        for (const auto& e : c.at("tuple")) {
            if (!e.is_string()) throw InputError("tuple entries must be element names");
            conj.tuple.push_back(e.get<std::string>());
        }
        spec.r = std::max(spec.r, static_cast<int>(conj.tuple.size()));
        spec.conjuncts.push_back(std::move(conj));
    }
    spec.n = static_cast<int>(spec.conjuncts.size());
    for (const char* key : {"avoided", "padding"}) {
        if (!j.contains(key)) continue;
        if (!j.at(key).is_array()) throw InputError(std::string(key) + " must be an array");
        auto& target = std::string(key) == "avoided" ? spec.avoided : spec.padding;
        for (const auto& e : j.at(key)) {
            if (!e.is_string()) throw InputError(std::string(key) + " entries must be names");
            target.push_back(e.get<std::string>());
        }
    }
    return spec;
}

std::string serialize_chain_spec(const ChainSpec& spec) {
    return chain_spec_to_json(spec).dump(2) + "\n";
}

}  // namespace macell
