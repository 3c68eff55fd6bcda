#pragma once

// Deterministic fixture generators. Identical parameters (and seed, for the
// random family) produce identical structures; randomness comes from
// SplitMix64 only.

#include <cstdint>

#include "macell/structure.hpp"

namespace macell {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, one add and three
// xor-multiply mixes per draw. Small, fast, and stable across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw from [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

// Disjoint directed paths of every size in [min_size, max_size], elements
// p{size}_{i}, edges E with declared bound 2.
Structure gen_paths(int min_size, int max_size);

// count disjoint directed edges m{i}_0 -> m{i}_1; E bound 1.
Structure gen_matching(int count);

// rows x cols grid g{r}_{c} with E edges rightward and downward; bound 4.
Structure gen_grid(int rows, int cols);

// blocks equivalence classes of block_size elements b{i}_{j}; E holds on all
// pairs within a block, loops included; bound 2*block_size - 1.
Structure gen_eqrel(int blocks, int block_size);

// chains directed chains c{i}_{j} of the given length with edges in both R1
// and R2, except that R2 omits the middle edge of chain 0, splitting its
// component in the R2 reduct. Models two associated structures on one
// universe differing by one deleted edge.
Structure gen_chain_deleted(int length, int chains);

// elements named r{i}; a random binary relation E of degree at most 3 and a
// random unary color U. All draws come from SplitMix64(seed).
Structure gen_random(int elements, std::uint64_t seed);

}  // namespace macell
