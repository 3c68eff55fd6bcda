#pragma once

// Cellular partitions: a finite exceptional kernel K plus bands of
// equal-length cells that can be permuted freely by automorphisms. A
// partition certifies that the structure is a finite kernel together with
// interchangeable repeated parts.

#include <string>
#include <vector>

#include "json.hpp"
#include "macell/structure.hpp"

namespace macell {

struct Band {
    int k = 0;                            // common cell length
    std::vector<std::vector<int>> cells;  // tuples of element indices
};

struct CellularPartition {
    std::vector<int> k_elements;  // the kernel K, ascending element indices
    std::vector<Band> bands;
};

// Document form: {"K": ["x"], "bands": [{"k": 2, "cells": [["a","b"], ...]}]}
CellularPartition partition_from_json(const nlohmann::json& j, const Structure& m);
nlohmann::json partition_to_json(const CellularPartition& p, const Structure& m);
CellularPartition load_partition(const std::string& json_text, const Structure& m);
std::string serialize_partition(const CellularPartition& p, const Structure& m);

// Components whose isomorphism class occurs fewer than `threshold` times go
// to K; every class occurring >= threshold times becomes one band whose
// cells are the member components enumerated by canonical labeling, so the
// coordinatewise maps between cells are isomorphisms by construction. Bands
// are sorted by (cell length, class encoding), cells lexicographically.
// threshold must be >= 2 (InputError).
CellularPartition cellular_decompose(const Structure& m, int threshold);

struct CellularReport {
    bool pass = true;
    int condition = 0;      // first violated condition (1..3) when failed
    std::string violation;  // witness description

    std::string text() const;
    nlohmann::json to_json() const;
};

// Checks, in order:
//  (1) the kernel and the cell entries partition the universe and every cell
//      in a band has the band's length;
//  (2) within each band the cells are pairwise isomorphic over K (some
//      bijection of the cell sets fixing K preserves the induced relations;
//      constants are deferred to condition 3);
//  (3) for every band and every pair of its cells, the coordinatewise swap
//      via the given enumerations, fixing everything else, is an
//      automorphism. Transpositions generate every finite permutation and
//      automorphisms compose, so pair swaps suffice.
// The report carries the first violation with a concrete witness.
CellularReport verify_cellular(const Structure& m, const CellularPartition& p);

// Splits band cells into a nonempty prefix and suffix whenever the split
// partition still verifies, until no split applies. Cell lengths strictly
// decrease with each split, so this terminates. Throws DomainError when the
// input fails verification. Returns the input unchanged when nothing splits.
CellularPartition refine_indecomposable(const Structure& m, const CellularPartition& p);

// The grid view of a verified partition: constants c_<id> naming K, unaries
// U<i>_<l> collecting coordinate l of band i's cells, and one k_i-ary
// relation R<i> holding exactly the cell tuples of band i (bands and
// coordinates numbered from 1). The result is degree-presented with bound 1
// on the unaries and bound k_i on R<i>. Throws DomainError when the
// partition fails verification.
Structure grid_expansion(const Structure& m, const CellularPartition& p);

}  // namespace macell
