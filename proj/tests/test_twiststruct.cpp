// test_twiststruct.cpp -- family verification machinery.

#include "doctest.h"

#include "twistkh/twiststruct.hpp"

using namespace twistkh;

namespace {

PlanarDiagram u_fig8(std::optional<int> bp = std::nullopt) {
    PlanarDiagram u = parse_pd("PD[X(1,4,2,1), X(3,2,4,3)]");
    u.sites.push_back({1, 3});
    u.basepoint = bp;
    u.name = "U_fig8";
    return u;
}

PlanarDiagram trivial_base() {
    PlanarDiagram circ = parse_pd("PD[]");
    circ.sites.push_back({1, 1});
    circ.name = "trivial";
    return circ;
}

} // namespace

TEST_CASE("trivial family: zero delta, splitting passes vacuously") {
    Theory unr;
    TwistFamily fam(trivial_base(), 0, unr);
    CHECK(fam.base_is_unknot());
    DeltaSummand delta = extract_delta(fam);
    CHECK(delta.groups.free_ranks.empty());
    CHECK(delta.groups.torsion.empty());
    CheckReport rep = verify_splitting(fam, 5);
    CHECK(rep.pass);
    CheckReport s = check_sn_constancy(fam, 4);
    CHECK(s.pass);
}

TEST_CASE("delta of the figure-eight family per flavor") {
    Theory unr;
    TwistFamily fam(u_fig8(), 0, unr);
    DeltaSummand d = extract_delta(fam);
    CHECK(d.groups.total_free_rank() == 4); // 6 - 2
    Theory red;
    red.flavor = Flavor::Reduced;
    TwistFamily fam_r(u_fig8(2), 0, red);
    DeltaSummand dr = extract_delta(fam_r);
    CHECK(dr.groups.total_free_rank() == 4); // 5 - 1
    Theory eq;
    eq.flavor = Flavor::Equivariant;
    TwistFamily fam_e(u_fig8(), 0, eq);
    DeltaSummand de = extract_delta(fam_e);
    CHECK(de.groups.total_free_rank() == 0);
    int torsion = 0;
    for (auto& [hqk, c] : de.groups.torsion)
        torsion += c;
    CHECK(torsion == 2);
}

TEST_CASE("extract_delta preconditions") {
    Theory unr;
    // Base with nonzero s_2(K_1): the right-trefoil family.
    PlanarDiagram ur = parse_pd("PD[X(4,2,1,1), X(2,4,3,3)]");
    ur.sites.push_back({1, 3});
    TwistFamily fam(ur, 0, unr);
    CHECK(fam.base_is_unknot());
    CHECK(fam.s2_at(1) == -2);
    CHECK_THROWS_AS(extract_delta(fam), ValidationError);
}

TEST_CASE("predict: p = 1 returns H(K_1) unchanged") {
    Theory unr;
    TwistFamily fam(u_fig8(), 0, unr);
    DeltaSummand d = extract_delta(fam);
    CHECK(predict(fam, d, 1) == fam.homology_at(1));
    // One more twist adds the translated summand.
    BigradedHomology p2 = predict(fam, d, 2);
    CHECK(p2 == fam.homology_at(1).direct_sum(d.groups.shifted(2, 4)));
}

TEST_CASE("splitting verification passes for the figure-eight family in all flavors") {
    for (Flavor fl : {Flavor::Unreduced, Flavor::Reduced, Flavor::Equivariant}) {
        Theory t;
        t.flavor = fl;
        TwistFamily fam(u_fig8(fl == Flavor::Reduced ? std::optional<int>(2) : std::nullopt), 0, t,
                        2);
        CheckReport rep = verify_splitting(fam, 3);
        CHECK(rep.pass);
    }
}

TEST_CASE("stabilization ranges hold (reduced flavor, stated bounds)") {
    Theory red;
    red.flavor = Flavor::Reduced;
    TwistFamily fam(u_fig8(2), 0, red, 2);
    for (int i = 1; i <= 3; ++i) {
        CheckReport rep = verify_stab_ranges(fam, i, i + 1);
        CHECK(rep.pass);
    }
    // Monotonicity: the F range grows with i; realized as: checked window
    // for i+1 strictly contains the one for i.  (The bound is 2i - c_- - 2.)
    CheckReport lo = verify_stab_ranges(fam, 1, 2);
    CheckReport hi = verify_stab_ranges(fam, 2, 3);
    CHECK(lo.pass);
    CHECK(hi.pass);
}

TEST_CASE("unreduced G map: stated boundary degree genuinely fails, corrected range holds") {
    // The zig-zag cone of G reaches local degree -1, so the long exact
    // sequence only forces G to be an isomorphism for h >= c_+ + 1 (it is
    // onto at h = c_+).  The unreduced U_fig8 family realizes the failure
    // at (0,-1), while every bidegree with h >= c_+ + 1 passes.
    Theory unr;
    PlanarDiagram u = u_fig8();
    CrossingSigns cs = crossing_signs(u);
    for (int i = 1; i <= 2; ++i) {
        SplicedPair g = map_G(u, 0, i, i + 1, unr);
        RationalHomologyClasses hs(g.source), ht(g.target);
        bool boundary_failure = false;
        for (auto& [hq, dim] : hs.all_dims()) {
            auto [h, q] = hq;
            InducedBlock blk = induced_map(g.map, hs, ht, h, q);
            if (h >= cs.c_plus + 1)
                CHECK(blk.is_iso());
            if (h >= cs.c_plus && !blk.is_iso())
                boundary_failure = true;
            if (h >= cs.c_plus)
                CHECK(blk.rank() == ht.dim(h + g.map.shift_h, q + g.map.shift_q)); // onto
        }
        CHECK(boundary_failure);
    }
}

TEST_CASE("ladder checks pass on the figure-eight family") {
    Theory unr;
    TwistFamily fam(u_fig8(), 0, unr, 2);
    CheckReport rep = verify_ladders(fam, 3);
    CHECK(rep.pass);
    Theory eq;
    eq.flavor = Flavor::Equivariant;
    TwistFamily fam_e(u_fig8(), 0, eq, 2);
    CheckReport rep_e = verify_ladders(fam_e, 2);
    CHECK(rep_e.pass); // includes: M and N are all torsion
}

TEST_CASE("s-constancy on both family types") {
    Theory unr;
    TwistFamily fam(u_fig8(), 0, unr, 2);
    CheckReport a = check_sn_constancy(fam, 3);
    CHECK(a.pass);
    PlanarDiagram ur = parse_pd("PD[X(4,2,1,1), X(2,4,3,3)]");
    ur.sites.push_back({1, 3});
    TwistFamily fam2(ur, 0, unr, 2);
    CheckReport b = check_sn_constancy(fam2, 3);
    CHECK(b.pass);
    CHECK(fam2.s2_at(1) == -2);
    CHECK(fam2.s2_at(3) == -2);
}

TEST_CASE("nonvanishing: strict drop confirmed and H^{2p} nonzero") {
    Theory unr;
    TwistFamily fam(u_fig8(), 0, unr, 2);
    CHECK(fam.s2_at(-1) == 2);
    CHECK(fam.s2_at(0) == 0);
    CheckReport rep = check_nonvanishing(fam, 3);
    CHECK(rep.pass);
    CHECK(!rep.vacuous);
}

TEST_CASE("nonvanishing guard: equality reports vacuously") {
    Theory unr;
    TwistFamily fam(trivial_base(), 0, unr);
    CheckReport rep = check_nonvanishing(fam, 2);
    CHECK(rep.pass);
    CHECK(rep.vacuous);
}

TEST_CASE("pair check: identical families trivially agree") {
    Theory unr;
    TwistFamily a(u_fig8(), 0, unr, 2);
    TwistFamily b(u_fig8(), 0, unr, 2);
    CheckReport rep = isomorphic_pair_check(a, b, 2);
    CHECK(rep.pass);
}
