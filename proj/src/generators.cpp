#include "macell/generators.hpp"

#include <string>
#include <vector>

#include "macell/errors.hpp"

namespace macell {

namespace {

Signature one_relation(const std::string& name, int arity, int bound) {
    Signature sig;
    sig.relations.push_back({name, arity, bound});
    return sig;
}

}  // namespace

Structure gen_paths(int min_size, int max_size) {
    if (min_size < 1 || max_size < min_size)
        throw InputError("path sizes must satisfy 1 <= min <= max");
    Structure m(one_relation("E", 2, 2), {});
    for (int s = min_size; s <= max_size; ++s) {
        int first = -1;
        for (int i = 0; i < s; ++i) {
            int e = m.add_element("p" + std::to_string(s) + "_" + std::to_string(i));
            if (i == 0) first = e;
        }
        for (int i = 0; i + 1 < s; ++i) m.add_tuple("E", {first + i, first + i + 1});
    }
    m.validate();
    return m;
}

Structure gen_matching(int count) {
    if (count < 0) throw InputError("edge count must be nonnegative");
    Structure m(one_relation("E", 2, 1), {});
    for (int i = 0; i < count; ++i) {
        int a = m.add_element("m" + std::to_string(i) + "_0");
        int b = m.add_element("m" + std::to_string(i) + "_1");
        m.add_tuple("E", {a, b});
    }
    m.validate();
    return m;
}

Structure gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InputError("grid dimensions must be positive");
    Structure m(one_relation("E", 2, 4), {});
    auto id = [&](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.add_element("g" + std::to_string(r) + "_" + std::to_string(c));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) m.add_tuple("E", {id(r, c), id(r, c + 1)});
            if (r + 1 < rows) m.add_tuple("E", {id(r, c), id(r + 1, c)});
        }
    m.validate();
    return m;
}

Structure gen_eqrel(int blocks, int block_size) {
    if (blocks < 0 || block_size < 1)
        throw InputError("need nonnegative blocks of positive size");
    Structure m(one_relation("E", 2, 2 * block_size - 1), {});
    for (int b = 0; b < blocks; ++b) {
        int first = b * block_size;
        for (int j = 0; j < block_size; ++j)
            m.add_element("b" + std::to_string(b) + "_" + std::to_string(j));
        for (int i = 0; i < block_size; ++i)
            for (int j = 0; j < block_size; ++j)
                m.add_tuple("E", {first + i, first + j});
    }
    m.validate();
    return m;
}

Structure gen_chain_deleted(int length, int chains) {
    if (length < 2 || chains < 1)
        throw InputError("need chains of length at least 2");
    Signature sig;
    sig.relations.push_back({"R1", 2, 2});
    sig.relations.push_back({"R2", 2, 2});
    Structure m(sig, {});
    const int skip = length / 2;  // R2 omits c0_{skip-1} -> c0_{skip}
    for (int c = 0; c < chains; ++c) {
        int first = c * length;
        for (int j = 0; j < length; ++j)
            m.add_element("c" + std::to_string(c) + "_" + std::to_string(j));
        for (int j = 0; j + 1 < length; ++j) {
            m.add_tuple("R1", {first + j, first + j + 1});
            if (c == 0 && j + 1 == skip) continue;
            m.add_tuple("R2", {first + j, first + j + 1});
        }
    }
    m.validate();
    return m;
}

Structure gen_random(int elements, std::uint64_t seed) {
    if (elements < 0) throw InputError("element count must be nonnegative");
    Signature sig;
    sig.relations.push_back({"E", 2, 3});
    sig.relations.push_back({"U", 1, 1});
    Structure m(sig, {});
    for (int i = 0; i < elements; ++i) m.add_element("r" + std::to_string(i));

    SplitMix64 rng(seed);
    if (elements > 1) {
        std::vector<int> degree(elements, 0);
        const int attempts = 2 * elements;
        for (int t = 0; t < attempts; ++t) {
            int a = static_cast<int>(rng.below(elements));
            int b = static_cast<int>(rng.below(elements));
            if (a == b || degree[a] >= 3 || degree[b] >= 3) continue;
            if (m.holds("E", {a, b})) continue;
            m.add_tuple("E", {a, b});
            ++degree[a];
            ++degree[b];
        }
    }
    for (int i = 0; i < elements; ++i)
        if (rng.next() & 1) m.add_tuple("U", {i});
    m.validate();
    return m;
}

}  // namespace macell
