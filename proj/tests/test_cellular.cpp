#include "doctest.h"

#include "macell/cellular.hpp"
#include "macell/errors.hpp"
#include "macell/structure.hpp"

#include "helpers.hpp"

using namespace macell;

namespace {

// Five directed edges plus one directed triangle.
Structure edges_and_triangle() {
    std::vector<std::string> universe;
    for (int i = 0; i < 5; ++i) {
        universe.push_back("m" + std::to_string(i) + "_0");
        universe.push_back("m" + std::to_string(i) + "_1");
    }
    universe.insert(universe.end(), {"t0", "t1", "t2"});
    Structure m(helpers::one_binary(), universe);
    for (int i = 0; i < 5; ++i) m.add_tuple("E", {2 * i, 2 * i + 1});
    m.add_tuple("E", {10, 11});
    m.add_tuple("E", {11, 12});
    m.add_tuple("E", {12, 10});
    return m;
}

}  // namespace

TEST_CASE("cellular_decompose bands plentiful classes and pools the rest") {
    Structure m = load_structure_file(helpers::fixture("matching5.json"));
    CellularPartition p = cellular_decompose(m, 3);
    CHECK(p.k_elements.empty());
    REQUIRE(p.bands.size() == 1);
    CHECK(p.bands[0].k == 2);
    CHECK(p.bands[0].cells ==
          std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}});
    CHECK(verify_cellular(m, p).pass);

    // A class below the threshold is swept into K.
    Structure mt = edges_and_triangle();
    CellularPartition pt = cellular_decompose(mt, 3);
    CHECK(pt.k_elements == std::vector<int>{10, 11, 12});
    REQUIRE(pt.bands.size() == 1);
    CHECK(pt.bands[0].cells.size() == 5);
    CHECK(verify_cellular(mt, pt).pass);

    // Raising the threshold pools everything.
    CellularPartition all_k = cellular_decompose(m, 10);
    CHECK(all_k.bands.empty());
    CHECK(static_cast<int>(all_k.k_elements.size()) == m.size());
    CHECK(verify_cellular(m, all_k).pass);

    CHECK_THROWS_AS(cellular_decompose(m, 1), InputError);
}

TEST_CASE("verify_cellular condition 1: exact cover with declared lengths") {
    Structure m = load_structure_file(helpers::fixture("matching5.json"));
    CellularPartition p = cellular_decompose(m, 3);

    CellularPartition missing = p;
    missing.bands[0].cells.pop_back();
    CellularReport r1 = verify_cellular(m, missing);
    CHECK_FALSE(r1.pass);
    CHECK(r1.condition == 1);
    CHECK(r1.violation.find("not covered") != std::string::npos);

    CellularPartition doubled = p;
    doubled.k_elements.push_back(0);
    CellularReport r2 = verify_cellular(m, doubled);
    CHECK_FALSE(r2.pass);
    CHECK(r2.condition == 1);
    CHECK(r2.violation.find("covered twice") != std::string::npos);

    CellularPartition ragged = p;
    ragged.bands[0].cells[0].pop_back();
    CHECK(verify_cellular(m, ragged).condition == 1);
}

TEST_CASE("verify_cellular condition 2: cells must be isomorphic over K") {
    Structure m(helpers::one_binary(), {"a0", "a1", "z0", "z1"});
    m.add_tuple("E", {0, 1});
    CellularPartition p;
    p.bands.push_back({2, {{0, 1}, {2, 3}}});
    CellularReport r = verify_cellular(m, p);
    CHECK_FALSE(r.pass);
    CHECK(r.condition == 2);
    CHECK(r.violation.find("not isomorphic over K") != std::string::npos);
}

TEST_CASE("verify_cellular condition 3: coordinatewise swaps must be automorphisms") {
    Structure m = load_structure_file(helpers::fixture("matching5.json"));
    CellularPartition p = cellular_decompose(m, 3);
    // Reverse one cell: each pair is still isomorphic over K, but the
    // coordinate alignment now crosses the orientation.
    std::swap(p.bands[0].cells[1][0], p.bands[0].cells[1][1]);
    CellularReport r = verify_cellular(m, p);
    CHECK_FALSE(r.pass);
    CHECK(r.condition == 3);
    CHECK(r.violation.find("does not hold") != std::string::npos);

    // A constant inside a swapped cell also violates condition 3.
    Signature sig = helpers::one_binary();
    sig.constants.push_back("d");
    Structure mc(sig, {"a0", "a1", "b0", "b1"});
    mc.add_tuple("E", {0, 1});
    mc.add_tuple("E", {2, 3});
    mc.assign_constant("d", 0);
    CellularPartition pc;
    pc.bands.push_back({2, {{0, 1}, {2, 3}}});
    CellularReport rc = verify_cellular(mc, pc);
    CHECK_FALSE(rc.pass);
    CHECK(rc.condition == 3);
    CHECK(rc.violation.find("moves the constant") != std::string::npos);
}

TEST_CASE("refine_indecomposable splits separable cells") {
    // Four isolated elements grouped into two length-2 cells: the partition
    // verifies, but each cell splits into singletons.
    Structure m(helpers::one_binary(), {"z0", "z1", "z2", "z3"});
    CellularPartition coarse;
    coarse.bands.push_back({2, {{0, 1}, {2, 3}}});
    REQUIRE(verify_cellular(m, coarse).pass);
    CellularPartition fine = refine_indecomposable(m, coarse);
    REQUIRE(fine.bands.size() == 2);  // prefix and suffix become singleton bands
    CHECK(fine.bands[0].k == 1);
    CHECK(fine.bands[1].k == 1);
    CHECK(fine.bands[0].cells == std::vector<std::vector<int>>{{0}, {2}});
    CHECK(fine.bands[1].cells == std::vector<std::vector<int>>{{1}, {3}});
    CHECK(verify_cellular(m, fine).pass);

    // Directed edges do not split: the halves would not swap independently.
    Structure edges = load_structure_file(helpers::fixture("matching5.json"));
    CellularPartition p = cellular_decompose(edges, 3);
    CellularPartition same = refine_indecomposable(edges, p);
    CHECK(same.bands.size() == 1);
    CHECK(same.bands[0].k == 2);
    CHECK(same.bands[0].cells == p.bands[0].cells);

    CellularPartition broken = p;
    broken.bands[0].cells.pop_back();
    CHECK_THROWS_AS(refine_indecomposable(edges, broken), DomainError);
}

TEST_CASE("grid_expansion names rows, slots, and kernel constants") {
    Structure m = edges_and_triangle();
    CellularPartition p = cellular_decompose(m, 3);
    Structure g = grid_expansion(m, p);

    CHECK(g.universe() == m.universe());
    CHECK(g.tuples("R1").size() == 5);
    CHECK(g.holds("R1", {0, 1}));
    CHECK(g.holds("U1_1", {0}));
    CHECK(g.holds("U1_2", {1}));
    CHECK_FALSE(g.holds("U1_1", {1}));
    CHECK(g.signature().find_relation("R1")->arity == 2);
    CHECK(g.constant_element("c_t0") == 10);
    CHECK(g.constant_element("c_t2") == 12);
    // The original relation is not part of the expansion signature.
    CHECK(g.signature().find_relation("E") == nullptr);

    CellularPartition bad = p;
    bad.k_elements.clear();
    CHECK_THROWS_AS(grid_expansion(m, bad), DomainError);
}

TEST_CASE("partition json round trip") {
    Structure m = load_structure_file(helpers::fixture("matching5.json"));
    CellularPartition p = cellular_decompose(m, 3);
    std::string text = serialize_partition(p, m);
    CellularPartition back = load_partition(text, m);
    CHECK(back.k_elements == p.k_elements);
    REQUIRE(back.bands.size() == p.bands.size());
    CHECK(back.bands[0].cells == p.bands[0].cells);
    CHECK(serialize_partition(back, m) == text);

    CHECK_THROWS_AS(load_partition("{]", m), ParseError);
    CHECK_THROWS_AS(load_partition("{}", m), InputError);
    CHECK_THROWS_AS(load_partition(R"({"K":[],"bands":[{"k":0,"cells":[]}]})", m), InputError);
    CHECK_THROWS_AS(load_partition(R"({"K":[],"bands":[{"k":2,"cells":[["m0_0"]]}]})", m),
                    InputError);
    CHECK_THROWS_AS(load_partition(R"({"K":["nope"],"bands":[]})", m), InputError);
    CHECK_THROWS_AS(load_partition(R"({"K":[0],"bands":[]})", m), InputError);
}
