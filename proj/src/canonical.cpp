#include "macell/canonical.hpp"

#include <algorithm>
#include <map>

#include "macell/errors.hpp"

namespace macell {

namespace {

struct LocalView {
    std::vector<int> elements;               // local -> universe index
    std::map<int, int> local_of;             // universe index -> local
    // (relation index, tuple of local indices), flattened once.
    std::vector<std::pair<int, std::vector<int>>> tuples;
    std::vector<std::string> marks;          // per local element: constant marks
};

LocalView make_view(const Structure& m, const std::vector<int>& elements) {
    LocalView v;
    v.elements = elements;
    std::sort(v.elements.begin(), v.elements.end());
    for (int i = 0; i < static_cast<int>(v.elements.size()); ++i)
        v.local_of[v.elements[i]] = i;
    const auto& rels = m.signature().relations;
    for (int r = 0; r < static_cast<int>(rels.size()); ++r) {
        for (const auto& t : m.tuples(rels[r].name)) {
            std::size_t hits = 0;
            for (int e : t)
                if (v.local_of.count(e)) ++hits;
            if (hits == 0) continue;
            if (hits != t.size())
                throw Error("canonical_form: tuple crosses the element set");
            std::vector<int> local;
            local.reserve(t.size());
            for (int e : t) local.push_back(v.local_of.at(e));
            v.tuples.emplace_back(r, std::move(local));
        }
    }
    v.marks.assign(v.elements.size(), "");
    for (const auto& [name, e] : m.constant_map()) {
        auto it = v.local_of.find(e);
        if (it != v.local_of.end()) v.marks[it->second] += name + ";";
    }
    return v;
}

using Coloring = std::vector<int>;  // local element -> colour id (0..k, order-significant)

// Class labels normalized by first occurrence; two colourings induce the same
// partition iff these agree.
std::vector<int> partition_labels(const Coloring& colors) {
    std::map<int, int> remap;
    std::vector<int> out(colors.size());
    for (std::size_t e = 0; e < colors.size(); ++e)
        out[e] = remap.emplace(colors[e], static_cast<int>(remap.size())).first->second;
    return out;
}

// One refinement round: new colour key = old colour + constant marks + sorted
// occurrence signatures (relation, position, colours of the whole tuple).
// Ids are ranks in sorted key order, so they are isomorphism-invariant.
// Terminates when the induced partition stops changing (ids may renumber).
Coloring refine(const LocalView& v, Coloring colors) {
    const int n = static_cast<int>(v.elements.size());
    while (true) {
        std::vector<std::vector<std::string>> occ(n);
        for (const auto& [r, t] : v.tuples) {
            std::string tuple_colors;
            for (int e : t) tuple_colors += std::to_string(colors[e]) + ".";
            for (int pos = 0; pos < static_cast<int>(t.size()); ++pos)
                occ[t[pos]].push_back(std::to_string(r) + "@" + std::to_string(pos) + ":" +
                                      tuple_colors);
        }
        std::vector<std::string> keys(n);
        for (int e = 0; e < n; ++e) {
            std::sort(occ[e].begin(), occ[e].end());
            keys[e] = std::to_string(colors[e]) + "|" + v.marks[e] + "|";
            for (const auto& s : occ[e]) keys[e] += s + "/";
        }
        std::map<std::string, int> ids;
        for (const auto& k : keys) ids.emplace(k, 0);
        int next = 0;
        for (auto& [k, id] : ids) id = next++;
        Coloring refined(n);
        for (int e = 0; e < n; ++e) refined[e] = ids[keys[e]];
        if (partition_labels(refined) == partition_labels(colors)) return refined;
        colors = std::move(refined);
    }
}

std::string encode(const LocalView& v, const std::vector<int>& order_local) {
    // order_local: canonical position -> local element.
    const int n = static_cast<int>(order_local.size());
    std::vector<int> pos(n);
    for (int p = 0; p < n; ++p) pos[order_local[p]] = p;
    std::vector<std::string> lines;
    for (const auto& [r, t] : v.tuples) {
        std::string line = "r" + std::to_string(r) + "(";
        for (int e : t) line += std::to_string(pos[e]) + ",";
        line += ")";
        lines.push_back(std::move(line));
    }
    for (int e = 0; e < n; ++e)
        if (!v.marks[e].empty())
            lines.push_back("c" + std::to_string(pos[e]) + "=" + v.marks[e]);
    std::sort(lines.begin(), lines.end());
    std::string out = "n" + std::to_string(n) + ";";
    for (const auto& l : lines) out += l + ";";
    return out;
}

void search(const LocalView& v, Coloring colors, std::string& best,
            std::vector<int>& best_order) {
    colors = refine(v, std::move(colors));
    const int n = static_cast<int>(colors.size());
    // First colour class with more than one member (smallest colour id).
    int target = -1;
    {
        std::map<int, std::vector<int>> classes;
        for (int e = 0; e < n; ++e) classes[colors[e]].push_back(e);
        for (const auto& [c, members] : classes)
            if (members.size() > 1) {
                target = c;
                break;
            }
        if (target == -1) {
            // Discrete: colours are a permutation of 0..n-1.
            std::vector<int> order(n);
            for (int e = 0; e < n; ++e) order[colors[e]] = e;
            std::string enc = encode(v, order);
            if (best.empty() || enc < best) {
                best = std::move(enc);
                best_order = std::move(order);
            }
            return;
        }
        for (int e : classes[target]) {
            Coloring branched = colors;
            // Individualize: give e a colour just below its class, shift others.
            for (int& c : branched)
                if (c >= target) ++c;
            branched[e] = target;
            search(v, std::move(branched), best, best_order);
        }
    }
}

}  // namespace

CanonicalForm canonical_form(const Structure& m, const std::vector<int>& elements) {
    LocalView v = make_view(m, elements);
    const int n = static_cast<int>(v.elements.size());
    if (n == 0) return {"n0;", {}};
    std::string best;
    std::vector<int> best_order;
    search(v, Coloring(n, 0), best, best_order);
    CanonicalForm out;
    out.encoding = std::move(best);
    out.order.reserve(n);
    for (int p = 0; p < n; ++p) out.order.push_back(v.elements[best_order[p]]);
    return out;
}

}  // namespace macell
