// test_algebra.cpp -- exact arithmetic, ranks, Smith reduction, homology of
// one degree.

#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "twistkh/algebra.hpp"

using namespace twistkh;

namespace {

GradedSparseMatrix make(Ring ring, std::vector<int> row_q, std::vector<int> col_q,
                        std::vector<std::tuple<int, int, Rational, int>> entries) {
    GradedSparseMatrix m;
    m.ring = ring;
    m.row_q = std::move(row_q);
    m.col_q = std::move(col_q);
    m.cols.resize(m.ncols());
    for (auto& [r, c, v, ap] : entries)
        m.set_entry(r, c, Coef(v, ap));
    m.check_homogeneous();
    return m;
}

} // namespace

TEST_CASE("rational arithmetic normalizes and checks overflow") {
    Rational a(2, 4);
    CHECK(a == Rational(1, 2));
    CHECK((a + a).is_one());
    CHECK((a - a).is_zero());
    CHECK((Rational(3) / Rational(6)) == Rational(1, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), InternalError);
}

TEST_CASE("rank of simple matrices") {
    GradedSparseMatrix zero = make(Ring::Rationals, {0, 0}, {0, 0}, {});
    CHECK(rank_rational(zero) == 0);

    std::vector<std::tuple<int, int, Rational, int>> id5;
    for (int i = 0; i < 5; ++i)
        id5.push_back({i, i, Rational(1), 0});
    GradedSparseMatrix identity = make(Ring::Rationals, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, id5);
    CHECK(rank_rational(identity) == 5);

    GradedSparseMatrix prop = make(Ring::Rationals, {0, 0}, {0, 0},
                                   {{0, 0, Rational(1), 0},
                                    {0, 1, Rational(2), 0},
                                    {1, 0, Rational(2), 0},
                                    {1, 1, Rational(4), 0}});
    CHECK(rank_rational(prop) == 1);
}

TEST_CASE("smith form of monomial matrices") {
    // diag(a^2, a) -> factors a, a^2.  (deg a = -4, so an a^k entry's
    // target generator sits 4k above its source.)
    GradedSparseMatrix d = make(Ring::PolyA, {8, 4}, {0, 0},
                                {{0, 0, Rational(1), 2}, {1, 1, Rational(1), 1}});
    CHECK(smith_over_poly(d) == std::vector<int>{1, 2});

    GradedSparseMatrix zero = make(Ring::PolyA, {0}, {0}, {});
    CHECK(smith_over_poly(zero).empty());

    // [[a, a^2],[0, a^3]]: factors a, a^3 (checked against the brute oracle).
    GradedSparseMatrix m = make(Ring::PolyA, {8, 12}, {4, 0},
                                {{0, 0, Rational(1), 1},
                                 {0, 1, Rational(1), 2},
                                 {1, 1, Rational(1), 3}});
    auto factors = smith_over_poly(m);
    CHECK(factors == std::vector<int>{1, 3});
    auto brute = oracles::brute_smith_exponents(
        {{{Rational(1), 1}, {Rational(1), 2}}, {{Rational(0), 0}, {Rational(1), 3}}});
    CHECK(factors == brute);
}

TEST_CASE("smith form agrees with the brute oracle on random homogeneous matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        int nr = 1 + rng() % 5, nc = 1 + rng() % 5;
        std::vector<int> rq(nr), cq(nc);
        for (int& q : rq)
            q = 4 * (rng() % 4);
        for (int& q : cq)
            q = 4 * (rng() % 2);
        GradedSparseMatrix m;
        m.ring = Ring::PolyA;
        m.row_q = rq;
        m.col_q = cq;
        m.cols.resize(nc);
        std::vector<std::vector<std::pair<Rational, int>>> dense(
            nr, std::vector<std::pair<Rational, int>>(nc, {Rational(0), 0}));
        for (int r = 0; r < nr; ++r)
            for (int c = 0; c < nc; ++c) {
                if (rng() % 2)
                    continue;
                int ap = (rq[r] - cq[c]) / 4;
                if (ap < 0)
                    continue;
                Rational v(static_cast<long long>(1 + rng() % 5) * (rng() % 2 ? 1 : -1));
                m.set_entry(r, c, Coef(v, ap));
                dense[r][c] = {v, ap};
            }
        CHECK(smith_over_poly(m) == oracles::brute_smith_exponents(dense));
        // Minors of homogeneous monomial matrices are single monomials, so
        // the rank after a -> 1 equals the number of invariant factors.
        CHECK(rank_rational(m) == static_cast<int>(smith_over_poly(m).size()));
    }
}

TEST_CASE("homology of a pair: free, torsion, and three-term examples") {
    // d_in = d_out = 0 with three generators: free of rank 3.
    GradedSparseMatrix no_in = make(Ring::PolyA, {1, 1, 3}, {}, {});
    GradedSparseMatrix no_out = make(Ring::PolyA, {}, {1, 1, 3}, {});
    ModuleDecomposition md = homology_of_pair(no_in, no_out);
    CHECK(md.total_free() == 3);
    CHECK(md.free_by_q[1] == 2);
    CHECK(md.free_by_q[3] == 1);
    CHECK(md.total_torsion() == 0);

    // Multiplication by a on one generator: torsion R/(a) at the target
    // generator's degree.
    GradedSparseMatrix a_in = make(Ring::PolyA, {4}, {0}, {{0, 0, Rational(1), 1}});
    GradedSparseMatrix out0 = make(Ring::PolyA, {}, {4}, {});
    md = homology_of_pair(a_in, out0);
    CHECK(md.total_free() == 0);
    CHECK(md.torsion_by_qk[{4, 1}] == 1);

    // R --a--> R --0--> R: middle homology R/(a).
    GradedSparseMatrix mid_out = make(Ring::PolyA, {0}, {4}, {});
    md = homology_of_pair(a_in, mid_out);
    CHECK(md.total_free() == 0);
    CHECK(md.torsion_by_qk.size() == 1);
    CHECK(md.torsion_by_qk[{4, 1}] == 1);
}

TEST_CASE("composition must vanish") {
    GradedSparseMatrix d_in = make(Ring::Rationals, {0}, {0}, {{0, 0, Rational(1), 0}});
    GradedSparseMatrix d_out = make(Ring::Rationals, {0}, {0}, {{0, 0, Rational(1), 0}});
    CHECK_THROWS_AS(homology_of_pair(d_in, d_out), InternalError);
}

TEST_CASE("rank over Q(a) sees through torsion") {
    GradedSparseMatrix m = make(Ring::PolyA, {4, 8}, {0, 4},
                                {{0, 0, Rational(1), 1},
                                 {1, 0, Rational(1), 2},
                                 {0, 1, Rational(2), 0},
                                 {1, 1, Rational(2), 1}});
    // Columns proportional over Q(a): rank 1.
    CHECK(rank_fraction_field(m) == 1);
}

TEST_CASE("homogeneity violations are caught") {
    GradedSparseMatrix m;
    m.ring = Ring::PolyA;
    m.row_q = {0};
    m.col_q = {0};
    m.cols.resize(1);
    m.cols[0].push_back({0, Coef(Rational(1), 1)}); // a where a unit belongs
    CHECK_THROWS_AS(m.check_homogeneous(), InternalError);
}
