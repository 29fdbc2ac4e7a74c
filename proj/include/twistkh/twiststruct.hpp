// twiststruct.hpp -- twist-family verification: Delta-splitting,
// stabilization ranges, exact-sequence ladders, s-constancy and the
// nonvanishing criterion.

#pragma once

#include <optional>

#include "twistkh/khovanov.hpp"

namespace twistkh {

// A family K_p of knots obtained by twisting the base diagram: K_p is
// insert_twists(base, site, p); K_0 is the base itself.  Homologies are
// memoized; positive p go through the spliced zig-zag complex, negative p
// through diagram surgery.
class TwistFamily {
  public:
    TwistFamily(PlanarDiagram base, std::size_t site_index, Theory theory, int threads = 1);

    const PlanarDiagram& base() const { return base_; }
    std::size_t site_index() const { return site_index_; }
    const Theory& theory() const { return theory_; }
    int threads() const { return threads_; }
    const CrossingSigns& base_signs() const { return signs_; }

    const PlanarDiagram& diagram(int p) const;        // expanded diagram
    const BigradedHomology& homology_at(int p) const; // spliced for p >= 0
    int s2_at(int p) const;                           // s_2 of K_p

    // Homology of the expanded diagram computed from scratch (the direct
    // cross-check route); empty when the diagram exceeds the size cap.
    std::optional<BigradedHomology> direct_homology(int p) const;
    int direct_cap() const;

    bool base_is_unknot() const;

  private:
    PlanarDiagram base_;
    std::size_t site_index_;
    Theory theory_;
    int threads_;
    CrossingSigns signs_;
    mutable std::map<int, PlanarDiagram> diagrams_;
    mutable std::map<int, BigradedHomology> homologies_;
    mutable std::map<int, int> s2_;
};

// The repeating summand of the splitting theorem, per flavor:
// reduced: H(K_1) minus the rank-1 unknot summand at (0,0);
// unreduced: minus rank 1 at (0,-1) and (0,1);
// equivariant: the torsion part of H(K_1).
struct DeltaSummand {
    BigradedHomology groups;
};

DeltaSummand extract_delta(const TwistFamily& fam);

// Predicted H(K_p) = H(K_1) (+) sum_{r=2}^{p} Delta[2r]{4(r-1)} (realized
// quantum convention).
BigradedHomology predict(const TwistFamily& fam, const DeltaSummand& delta, int p);

struct CheckReport {
    std::string name;
    bool pass = true;
    bool vacuous = false;
    std::vector<std::string> details;
    std::vector<std::pair<std::string, std::string>> data;

    void fail(const std::string& msg) {
        pass = false;
        details.push_back("FAIL: " + msg);
    }
    void note(const std::string& msg) { details.push_back(msg); }
};

// Predicted vs computed homology for 2 <= p <= p_max, with a direct
// expanded-diagram cross-check within the size cap.
CheckReport verify_splitting(const TwistFamily& fam, int p_max);

// F_{i,j} induced map bijective in homological degrees <= 2i - c_- - 2 and
// the shifted G_{i,j} in degrees >= c_+ (c_+- measured on the base).
CheckReport verify_stab_ranges(const TwistFamily& fam, int i, int j);

// Ladder checks for rows 0..rows-1: cone translation identity, rank-level
// exactness of each row's long exact sequence, and (equivariantly) that M
// and N are all-torsion.
CheckReport verify_ladders(const TwistFamily& fam, int rows);

// s_2(K_p) = s_2(K_1) for 1 <= p <= p_max (base must be an unknot).
CheckReport check_sn_constancy(const TwistFamily& fam, int p_max);

// With the strict drop s_2(K_0) < s_2(K_{-1}) verified first, confirms
// H^{2p}(K_p) != 0 for 1 <= p <= p_max and reports the implied lower bound
// of 2p positive crossings.
CheckReport check_nonvanishing(const TwistFamily& fam, int p_max);

// H(K^A_p) = H(K^B_p) for p <= p_max, both by prediction and by direct
// computation where feasible.
CheckReport isomorphic_pair_check(const TwistFamily& fam_a, const TwistFamily& fam_b, int p_max);

} // namespace twistkh
