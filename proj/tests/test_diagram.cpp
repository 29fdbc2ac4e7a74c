// test_diagram.cpp -- PD parsing, signs, sites, twist surgery.

#include "doctest.h"

#include "twistkh/diagram.hpp"
#include "twistkh/kauffman.hpp"

using namespace twistkh;

namespace {
LaurentQ unknot_jones() {
    LaurentQ j;
    j.add_term(1, Rational(1));
    j.add_term(-1, Rational(1));
    return j;
}
} // namespace

TEST_CASE("empty PD code is the 0-crossing unknot") {
    PlanarDiagram d = parse_pd("PD[]");
    CHECK(d.crossings.empty());
    CHECK(d.n_edges == 1);
    validate_diagram(d);
    auto cs = crossing_signs(d);
    CHECK(cs.c_plus == 0);
    CHECK(cs.c_minus == 0);
}

TEST_CASE("trefoil parses with consistent orientations and signs") {
    PlanarDiagram d = parse_pd("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]");
    validate_diagram(d);
    auto cs = crossing_signs(d);
    CHECK(cs.c_plus == 0);
    CHECK(cs.c_minus == 3);
    PlanarDiagram m = mirror(d);
    validate_diagram(m);
    auto cs2 = crossing_signs(m);
    CHECK(cs2.c_plus == 3); // right-handed input convention of the docs
    CHECK(cs2.c_minus == 0);
}

TEST_CASE("figure-eight has signs (2,2)") {
    PlanarDiagram d = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
    auto cs = crossing_signs(d);
    CHECK(cs.c_plus == 2);
    CHECK(cs.c_minus == 2);
    CHECK(writhe(d) == 0);
}

TEST_CASE("edge multiplicity violations are rejected") {
    CHECK_THROWS_AS(parse_pd("PD[X(1,1,1,2), X(2,3,3,4)]"), ValidationError);
    CHECK_THROWS_AS(parse_pd("PD[X(1,2,3,4), X(4,3,2,5)]"), ValidationError);
}

TEST_CASE("malformed syntax is a parse error with position info") {
    try {
        parse_pd("PD[X(1,2,3]");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("inconsistent orientation is rejected") {
    // Under-strand must continue from a to its successor.
    CHECK_THROWS_AS(parse_pd("PD[X(1,3,4,2), X(4,1,3,2)]"), ValidationError);
}

TEST_CASE("inserting zero twists returns the diagram unchanged") {
    PlanarDiagram u = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u.sites.push_back({1, 3});
    PlanarDiagram same = insert_twists(u, 0, 0);
    CHECK(pd_to_string(same) == pd_to_string(u));
}

TEST_CASE("fold site on the unknot gives the 2-crossing positive clasp") {
    PlanarDiagram circ = parse_pd("PD[]");
    circ.sites.push_back({1, 1});
    PlanarDiagram clasp = insert_twists(circ, 0, 1);
    CHECK(clasp.crossings.size() == 2);
    auto cs = crossing_signs(clasp);
    CHECK(cs.c_plus == 2);
    CHECK(cs.c_minus == 0);
    CHECK(jones_unnormalized(clasp) == unknot_jones());
}

TEST_CASE("insert_twists changes signs by (2k,0) or (0,-2k)") {
    PlanarDiagram u = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u.sites.push_back({1, 3});
    auto base = crossing_signs(u);
    for (int k : {1, 2, 3, -1, -2}) {
        PlanarDiagram d = insert_twists(u, 0, k);
        auto cs = crossing_signs(d);
        if (k > 0) {
            CHECK(cs.c_plus == base.c_plus + 2 * k);
            CHECK(cs.c_minus == base.c_minus);
        } else {
            CHECK(cs.c_minus == base.c_minus - 2 * k);
            CHECK(cs.c_plus == base.c_plus);
        }
    }
}

TEST_CASE("U_fig8 with one twist is the figure-eight (Jones oracle)") {
    PlanarDiagram u = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u.sites.push_back({1, 3});
    PlanarDiagram k1 = insert_twists(u, 0, 1);
    PlanarDiagram fig8 = parse_pd("PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]");
    CHECK(jones_unnormalized(k1) == jones_unnormalized(fig8));
}

TEST_CASE("composed insertions match a single insertion up to isotopy") {
    PlanarDiagram u = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u.sites.push_back({1, 3});
    for (auto [k, l] : {std::pair{1, 1}, {2, -1}, {-1, 2}, {1, 2}}) {
        PlanarDiagram two = insert_twists(insert_twists(u, 0, k), 0, l);
        PlanarDiagram one = insert_twists(u, 0, k + l);
        CHECK(jones_unnormalized(two) == jones_unnormalized(one));
    }
}

TEST_CASE("site validation rejects parallel strands") {
    // In the left-handed torus diagram the braid strands run parallel.
    PlanarDiagram t = parse_pd("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]");
    bool some_valid = false;
    bool some_rejected = false;
    for (int e1 = 1; e1 <= t.n_edges; ++e1)
        for (int e2 = e1 + 1; e2 <= t.n_edges; ++e2) {
            try {
                validate_site(t, {e1, e2});
                some_valid = true;
            } catch (const ValidationError&) {
                some_rejected = true;
            }
        }
    CHECK(some_rejected);
    CHECK(some_valid);
    // Consecutive braid edges run parallel across their only shared face.
    CHECK_THROWS_AS(validate_site(t, {1, 2}), ValidationError);
    // Same-strand segments admit an anti-parallel disk through the outer face.
    CHECK_NOTHROW(validate_site(t, {1, 3}));
}

TEST_CASE("catalog loading validates names and diagrams") {
    CHECK_THROWS_AS(parse_catalog("[{\"name\":\"a\",\"pd\":\"PD[]\"},"
                                  "{\"name\":\"a\",\"pd\":\"PD[]\"}]"),
                    ValidationError);
    auto empty = parse_catalog("[]");
    CHECK(empty.empty());
    auto one = parse_catalog("[{\"name\":\"u\",\"pd\":\"PD[]\",\"sites\":[{\"edges\":[1,1]}]}]");
    REQUIRE(one.size() == 1);
    CHECK(one[0].sites.size() == 1);
}

TEST_CASE("bundled catalog carries the named fixtures") {
    auto catalog = load_catalog(TWISTKH_DEFAULT_CATALOG);
    for (const char* name : {"unknot", "trefoil_rh", "fig8", "conway", "kinoshita_terasaka",
                             "U_fig8", "U_lefttref", "U_righttref", "trivial"})
        CHECK_NOTHROW(catalog_get(catalog, name));
    for (const auto& d : catalog)
        CHECK_NOTHROW(validate_diagram(d));
}
