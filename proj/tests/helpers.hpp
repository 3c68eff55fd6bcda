// Shared builders for the test suites. Structures used as oracles are
// assembled by hand here, element by element, so the tests do not lean on the
// generators they are meant to check.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "macell/structure.hpp"

namespace helpers {

inline macell::Signature one_binary(const std::string& name = "E", int bound = 2) {
    macell::Signature sig;
    sig.relations.push_back({name, 2, bound});
    return sig;
}

// Directed path e0 -> e1 -> ... -> e{n-1}.
inline macell::Structure path(int n, const std::string& prefix = "e", int bound = 2) {
    std::vector<std::string> universe;
    for (int i = 0; i < n; ++i) universe.push_back(prefix + std::to_string(i));
    macell::Structure m(one_binary("E", bound), universe);
    for (int i = 0; i + 1 < n; ++i) m.add_tuple("E", {i, i + 1});
    return m;
}

// Equivalence relation with `blocks` blocks of `size` elements: every ordered
// pair within a block, loops included.
inline macell::Structure eqrel(int blocks, int size, const std::string& prefix = "e") {
    std::vector<std::string> universe;
    for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < size; ++i)
            universe.push_back(prefix + std::to_string(b) + "_" + std::to_string(i));
    macell::Structure m(one_binary("E", 2 * size - 1), universe);
    for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m.add_tuple("E", {b * size + i, b * size + j});
    return m;
}

inline std::string fixture(const std::string& name) {
    return std::string(FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// All permutations of {0..n-1} as maps, for oracle sweeps over small universes.
inline std::vector<std::vector<int>> permutations(int n) {
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

inline std::map<std::string, std::string> as_name_map(const macell::Structure& m,
                                                      const std::vector<int>& perm) {
    std::map<std::string, std::string> f;
    for (int i = 0; i < m.size(); ++i) f[m.element_name(i)] = m.element_name(perm[i]);
    return f;
}

}  // namespace helpers
