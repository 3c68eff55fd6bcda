#include "doctest.h"

#include "macell/errors.hpp"
#include "macell/structure.hpp"

#include "helpers.hpp"

using namespace macell;

TEST_CASE("signature validation") {
    Signature sig;
    sig.relations.push_back({"E", 2, 2});
    sig.constants.push_back("d");
    CHECK_NOTHROW(sig.validate());
    CHECK(sig.find_relation("E") != nullptr);
    CHECK(sig.find_relation("F") == nullptr);
    CHECK(sig.has_constant("d"));
    CHECK_FALSE(sig.has_constant("e"));

    Signature bad_arity;
    bad_arity.relations.push_back({"E", 0, 1});
    CHECK_THROWS_AS(bad_arity.validate(), InputError);

    Signature bad_bound;
    bad_bound.relations.push_back({"E", 2, -1});
    CHECK_THROWS_AS(bad_bound.validate(), InputError);

    Signature dup;
    dup.relations.push_back({"E", 2, 1});
    dup.relations.push_back({"E", 1, 1});
    CHECK_THROWS_AS(dup.validate(), InputError);

    Signature clash;
    clash.relations.push_back({"E", 2, 1});
    clash.constants.push_back("E");
    CHECK_THROWS_AS(clash.validate(), InputError);
}

TEST_CASE("structure basics") {
    Structure m = helpers::path(3);
    CHECK(m.size() == 3);
    CHECK(m.has_element("e1"));
    CHECK_FALSE(m.has_element("zz"));
    CHECK(m.element_index("e2") == 2);
    CHECK(m.element_name(0) == "e0");
    CHECK(m.holds("E", {0, 1}));
    CHECK_FALSE(m.holds("E", {1, 0}));
    CHECK(m.tuples("E").size() == 2);
    CHECK_THROWS_AS(m.element_index("zz"), InputError);
    CHECK_THROWS_AS(m.holds("F", {0, 1}), InputError);
    CHECK_THROWS_AS(m.add_tuple("E", {0}), InputError);
    CHECK_THROWS_AS(m.add_tuple("E", {0, 9}), InputError);
    CHECK_THROWS_AS(m.add_element("e0"), InputError);
    CHECK_NOTHROW(m.validate());
}

TEST_CASE("constants") {
    Signature sig = helpers::one_binary();
    sig.constants.push_back("d");
    Structure m(sig, {"a", "b"});
    CHECK_THROWS_AS(m.constant_element("d"), InputError);
    CHECK_THROWS_AS(m.validate(), InputError);  // declared but unassigned
    m.assign_constant("d", 1);
    CHECK(m.constant_element("d") == 1);
    CHECK_NOTHROW(m.validate());
    CHECK_THROWS_AS(m.assign_constant("q", 0), InputError);
    CHECK_THROWS_AS(m.assign_constant("d", 7), InputError);
}

TEST_CASE("json round trip is lossless and deterministic") {
    std::string text = helpers::read_file(helpers::fixture("matching5.json"));
    Structure m = load_structure(text);
    CHECK(m.size() == 10);
    std::string once = serialize(m);
    Structure again = load_structure(once);
    CHECK(m == again);
    CHECK(once == serialize(again));

    Structure hand = helpers::eqrel(2, 3);
    CHECK(load_structure(serialize(hand)) == hand);
}

TEST_CASE("json error reporting") {
    CHECK_THROWS_AS(load_structure("{nope"), InputError);
    CHECK_THROWS_AS(load_structure("[]"), InputError);
    CHECK_THROWS_AS(load_structure("{}"), InputError);  // missing signature
    // Duplicate element.
    CHECK_THROWS_AS(load_structure(R"({"universe":["a","a"],
        "signature":{"relations":[],"constants":[]}})"),
                    InputError);
    // Tuple over an undeclared relation.
    CHECK_THROWS_AS(load_structure(R"({"universe":["a"],
        "signature":{"relations":[],"constants":[]},
        "relations":{"E":[["a","a"]]}})"),
                    InputError);
    // Arity mismatch.
    CHECK_THROWS_AS(load_structure(R"({"universe":["a"],
        "signature":{"relations":[{"name":"E","arity":2,"degree_bound":1}],"constants":[]},
        "relations":{"E":[["a"]]}})"),
                    InputError);
    // Tuple names an element outside the universe.
    CHECK_THROWS_AS(load_structure(R"({"universe":["a"],
        "signature":{"relations":[{"name":"E","arity":2,"degree_bound":1}],"constants":[]},
        "relations":{"E":[["a","b"]]}})"),
                    InputError);
    // Constant assigned to a missing element.
    CHECK_THROWS_AS(load_structure(R"({"universe":["a"],
        "signature":{"relations":[],"constants":["d"]},
        "constants":{"d":"zz"}})"),
                    InputError);
    CHECK_THROWS_AS(load_structure_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("degree bound may be absent") {
    Structure m = load_structure(R"({"universe":["a","b"],
        "signature":{"relations":[{"name":"E","arity":2}],"constants":[]},
        "relations":{"E":[["a","b"]]}})");
    CHECK_FALSE(m.signature().relations[0].degree_bound.has_value());
    std::string text = serialize(m);
    CHECK(load_structure(text).signature() == m.signature());
}
