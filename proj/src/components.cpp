#include "macell/components.hpp"

#include <algorithm>
#include <set>

#include "macell/canonical.hpp"
#include "macell/errors.hpp"
#include "macell/ma_analysis.hpp"

namespace macell {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// (relation name, tuple) incidence per element.
struct Incidence {
    std::vector<std::pair<std::string, std::vector<int>>> tuples;
    std::vector<std::vector<int>> of_element;  // element -> tuple indices

    explicit Incidence(const Structure& m) : of_element(m.size()) {
        for (const auto& r : m.signature().relations)
            for (const auto& t : m.tuples(r.name)) {
                int id = static_cast<int>(tuples.size());
                tuples.emplace_back(r.name, t);
                std::set<int> members(t.begin(), t.end());
                for (int e : members) of_element[e].push_back(id);
            }
    }
};

// First level (in tuple steps) at which each element becomes reachable from
// start; -1 where unreachable. first[start] stays 0 unless start occurs in a
// tuple, in which case its own distance is 1 (recorded separately).
struct TupleBfs {
    std::vector<int> first;        // element -> level of first membership, -1 none
    std::vector<int> parent_tuple; // element -> tuple that first reached it
    std::vector<int> parent_elem;  // element -> frontier element that reached that tuple

    TupleBfs(const Structure& m, const Incidence& inc, int start)
        : first(m.size(), -1), parent_tuple(m.size(), -1), parent_elem(m.size(), -1) {
        std::vector<bool> tuple_used(inc.tuples.size(), false);
        std::vector<int> frontier{start};
        std::vector<bool> expanded(m.size(), false);
        expanded[start] = true;
        int level = 0;
        while (!frontier.empty()) {
            ++level;
            std::vector<int> next;
            for (int e : frontier) {
                for (int ti : inc.of_element[e]) {
                    if (tuple_used[ti]) continue;
                    tuple_used[ti] = true;
                    for (int y : inc.tuples[ti].second) {
                        if (first[y] == -1) {
                            first[y] = level;
                            parent_tuple[y] = ti;
                            parent_elem[y] = e;
                        }
                        if (!expanded[y]) {
                            expanded[y] = true;
                            next.push_back(y);
                        }
                    }
                }
            }
            frontier = std::move(next);
        }
    }
};

}  // namespace

Decomposition decompose(const Structure& m) {
    const int n = m.size();
    UnionFind uf(n);
    for (const auto& r : m.signature().relations)
        for (const auto& t : m.tuples(r.name))
            for (std::size_t i = 1; i < t.size(); ++i) uf.unite(t[0], t[i]);

    std::map<int, std::vector<int>> groups;  // root -> elements, keyed by min element
    for (int e = 0; e < n; ++e) groups[uf.find(e)].push_back(e);

    Decomposition d;
    d.component_of.assign(n, -1);
    std::vector<std::vector<int>> comps;
    for (auto& [root, elems] : groups) comps.push_back(std::move(elems));
    std::sort(comps.begin(), comps.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });

    std::map<std::string, int> class_of_encoding;
    for (auto& elems : comps) {
        int ci = static_cast<int>(d.components.size());
        for (int e : elems) d.component_of[e] = ci;
        CanonicalForm cf = canonical_form(m, elems);
        auto [it, inserted] =
            class_of_encoding.emplace(cf.encoding, static_cast<int>(d.classes.size()));
        if (inserted)
            d.classes.push_back({cf.encoding, static_cast<int>(elems.size()), {}});
        d.classes[it->second].members.push_back(ci);
        d.components.push_back({std::move(elems), it->second});
        d.canonical_order.push_back(std::move(cf.order));
    }
    return d;
}

std::optional<int> gaifman_distance(const Structure& m, const std::string& x,
                                    const std::string& y) {
    int xi = m.element_index(x), yi = m.element_index(y);
    Incidence inc(m);
    TupleBfs bfs(m, inc, xi);
    if (bfs.first[yi] == -1) return std::nullopt;
    return bfs.first[yi];
}

std::vector<std::string> ball(const Structure& m, const std::string& center, int radius) {
    if (radius < 0) throw InputError("negative ball radius");
    int ci = m.element_index(center);
    std::vector<std::string> out;
    if (radius == 0) return {center};
    Incidence inc(m);
    TupleBfs bfs(m, inc, ci);
    for (int e = 0; e < m.size(); ++e)
        if (e == ci || (bfs.first[e] != -1 && bfs.first[e] <= radius))
            out.push_back(m.element_name(e));
    return out;
}

LinkedWitness find_linked_witness(const Structure& m, const std::string& x,
                                  const std::string& y) {
    int xi = m.element_index(x), yi = m.element_index(y);
    Incidence inc(m);
    TupleBfs bfs(m, inc, xi);
    if (bfs.first[yi] == -1)
        throw DomainError("no linked witness: " + x + " and " + y +
                          " are not connected by tuples");

    // Recover the tuple chain from y back to x; parent levels strictly
    // decrease, so this terminates at x with exactly first[y] tuples.
    std::vector<int> chain;
    int cur = yi;
    while (true) {
        int ti = bfs.parent_tuple[cur];
        if (ti < 0 || static_cast<int>(chain.size()) > static_cast<int>(inc.tuples.size()))
            throw Error("linked witness chain reconstruction failed");
        chain.push_back(ti);
        cur = bfs.parent_elem[cur];
        if (cur == xi) break;
    }
    std::reverse(chain.begin(), chain.end());

    // One variable per distinct element across the chain; consecutive tuples
    // share an element, hence a variable.
    std::map<int, std::string> var_of;
    auto var_for = [&](int e) {
        auto it = var_of.find(e);
        if (it != var_of.end()) return it->second;
        std::string v = "x" + std::to_string(var_of.size());
        var_of.emplace(e, v);
        return v;
    };
    std::vector<FormulaPtr> conjuncts;
    LinkedWitness w;
    w.first_var = var_for(xi);
    for (int ti : chain) {
        const auto& [rel, tuple] = inc.tuples[ti];
        std::vector<Term> args;
        args.reserve(tuple.size());
        for (int e : tuple) args.push_back(Term::var(var_for(e)));
        conjuncts.push_back(f_rel(rel, std::move(args)));
    }
    w.last_var = var_for(yi);
    w.conjunction = conjuncts.size() == 1 ? conjuncts[0] : f_and(std::move(conjuncts));
    for (const auto& [e, v] : var_of) w.assignment[v] = m.element_name(e);
    return w;
}

bool is_linked_conjunction(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::RelAtom) return true;
    if (f->kind != Formula::Kind::And || f->children.empty()) return false;
    std::vector<std::set<std::string>> blocks;
    for (const auto& c : f->children) {
        if (c->kind != Formula::Kind::RelAtom) return false;
        std::set<std::string> vars;
        for (const auto& t : c->args)
            if (t.is_var()) vars.insert(t.name);
        blocks.push_back(std::move(vars));
    }
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        bool shared = false;
        for (const auto& v : blocks[i])
            if (blocks[i - 1].count(v)) shared = true;
        if (!shared) return false;
    }
    return true;
}

namespace {

// Validates totality/bijectivity and returns the map as indices.
std::vector<int> as_permutation(const Structure& m,
                                const std::map<std::string, std::string>& f) {
    if (static_cast<int>(f.size()) != m.size())
        throw InputError("map is not total on the universe");
    std::vector<int> perm(m.size(), -1);
    std::vector<bool> hit(m.size(), false);
    for (const auto& [from, to] : f) {
        int a = m.element_index(from), b = m.element_index(to);
        perm[a] = b;
        if (hit[b]) throw InputError("map is not a bijection");
        hit[b] = true;
    }
    return perm;
}

std::vector<int> permute_tuple(const std::vector<int>& perm, const std::vector<int>& t) {
    std::vector<int> out;
    out.reserve(t.size());
    for (int e : t) out.push_back(perm[e]);
    return out;
}

}  // namespace

bool is_automorphism(const Structure& m, const std::map<std::string, std::string>& f) {
    std::vector<int> perm = as_permutation(m, f);
    for (const auto& [name, e] : m.constant_map())
        if (perm[e] != e) return false;
    for (const auto& r : m.signature().relations) {
        const auto& tuples = m.tuples(r.name);
        for (const auto& t : tuples)
            if (!tuples.count(permute_tuple(perm, t))) return false;
        // Bijectivity plus finiteness makes the image the whole set, so the
        // forward check suffices for the inverse direction as well.
    }
    return true;
}

bool is_component_map(const Structure& m, const std::map<std::string, std::string>& f) {
    std::vector<int> perm = as_permutation(m, f);
    Decomposition d = decompose(m);

    // Setwise: each component's image is exactly one component's element set.
    for (const auto& comp : d.components) {
        std::set<int> image;
        for (int e : comp.elements) image.insert(perm[e]);
        int target = d.component_of[*image.begin()];
        std::set<int> target_set(d.components[target].elements.begin(),
                                 d.components[target].elements.end());
        if (image != target_set) return false;
    }

    // Constants are part of each induced substructure.
    for (const auto& [name, e] : m.constant_map())
        if (perm[e] != e) return false;

    // Per-component restriction preserves tuples both ways. Tuples never
    // cross components, so iterating all tuples covers every restriction;
    // the inverse direction follows by finiteness as above.
    for (const auto& r : m.signature().relations) {
        const auto& tuples = m.tuples(r.name);
        for (const auto& t : tuples)
            if (!tuples.count(permute_tuple(perm, t))) return false;
    }
    return true;
}

long long branching_constant(const Structure& m) {
    DegreeProfile profile = degree_profile(m);
    long long k = 1;
    for (const auto& r : m.signature().relations)
        k += static_cast<long long>(profile.degree.at(r.name)) * (r.arity - 1);
    return std::max<long long>(2, k);
}

}  // namespace macell
