// complex.hpp -- bigraded chain complexes, chain maps, cones, Gaussian
// simplification, homology and exact-ladder verification.

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>

#include "twistkh/algebra.hpp"
#include "twistkh/laurent.hpp"

namespace twistkh {

// Finitely generated complex of graded free modules with degree-(1,0)
// differentials.  Level i holds the generators of homological degree
// h_min + i; diff[i] maps level i to level i+1.
struct ChainComplex {
    Ring ring = Ring::Rationals;
    int h_min = 0;
    std::vector<std::vector<int>> gen_q;
    std::vector<GradedSparseMatrix> diff;

    int levels() const { return static_cast<int>(gen_q.size()); }
    int h_of_level(int i) const { return h_min + i; }
    int level_of_h(int h) const { return h - h_min; }
    int generators_at(int i) const { return static_cast<int>(gen_q[i].size()); }
    long long total_generators() const {
        long long n = 0;
        for (auto& g : gen_q)
            n += static_cast<long long>(g.size());
        return n;
    }

    // Structural invariants: matrix shapes, homogeneity, d o d = 0.
    void check() const;
};

ChainComplex shift(const ChainComplex& c, int dh, int dq);

// Homotopy-equivalent reduction: cancels every differential entry that is a
// unit of the ring (over Q[a] only rational units; entries divisible by a
// carry torsion and stay).  Deterministic for fixed input.
ChainComplex simplify(const ChainComplex& c);

// Homology as a bigraded decomposition.
struct BigradedHomology {
    std::map<std::pair<int, int>, int> free_ranks;          // (h,q) -> rank
    std::map<std::tuple<int, int, int>, int> torsion;       // (h,q,k) -> count of R/(a^k)

    bool operator==(const BigradedHomology& o) const {
        return free_ranks == o.free_ranks && torsion == o.torsion;
    }
    bool operator!=(const BigradedHomology& o) const { return !(*this == o); }

    BigradedHomology shifted(int dh, int dq) const;
    BigradedHomology direct_sum(const BigradedHomology& o) const;
    // Exact subtraction: fails (returns false) unless `part` embeds
    // bidegree-by-bidegree.
    bool try_subtract(const BigradedHomology& part, BigradedHomology& out) const;

    int total_free_rank() const;
    int free_rank_at(int h, int q) const {
        auto it = free_ranks.find({h, q});
        return it == free_ranks.end() ? 0 : it->second;
    }
    // Ranks of one homological degree across quantum degrees.
    std::map<int, int> free_ranks_at_h(int h) const;
    bool torsion_empty_at_h(int h) const;
    std::string poincare() const; // free part as a polynomial in t, q
};

BigradedHomology homology(const ChainComplex& c, int threads = 1);

// Graded Euler characteristic of the generators (equals the homology-level
// Euler characteristic); Laurent polynomial in q.
LaurentQ euler_characteristic(const ChainComplex& c);

// A chain map recorded as displacement: the component at source level of
// homological degree h lands in target degree h + shift_h, raising quantum
// degree by shift_q.
struct ChainMap {
    std::shared_ptr<const ChainComplex> source;
    std::shared_ptr<const ChainComplex> target;
    int shift_h = 0;
    int shift_q = 0;
    // components[i]: from source level i into the matching target level;
    // empty matrix where either side has no generators.
    std::vector<GradedSparseMatrix> components;

    void check() const; // homogeneity + commutation with differentials
};

// Mapping cone with differential [[d_target, f], [0, -d_source]].  The
// target is re-graded by (-shift_h, -shift_q) so that f is degree (0,0);
// cone level m = target'^m (+) source^{m+1}.
ChainComplex cone(const ChainMap& f);

// Homology classes over the rationals with reduction machinery, for
// computing induced maps.  Only valid for Ring::Rationals complexes.
class RationalHomologyClasses {
  public:
    explicit RationalHomologyClasses(std::shared_ptr<const ChainComplex> c);

    int dim(int h, int q) const;
    std::map<std::pair<int, int>, int> all_dims() const;

    // Coordinates of a cycle (given as a sparse vector over the generators
    // of level h) in the homology basis at (h, q).
    std::vector<Rational> coordinates(int h, int q, const std::map<int, Rational>& cycle) const;
    // The stored representative cycles at (h, q).
    const std::vector<std::map<int, Rational>>& representatives(int h, int q) const;

    struct EchelonRow {
        int pivot;
        std::map<int, Rational> vec; // normalized, vec[pivot] == 1
        int h_index;                 // -1 for boundary rows
    };
    struct Bidegree {
        std::vector<EchelonRow> echelon; // ascending pivot
        std::vector<std::map<int, Rational>> reps;
    };

  private:
    std::shared_ptr<const ChainComplex> c_;
    std::map<std::pair<int, int>, Bidegree> data_;
    static const Bidegree& empty_bidegree();
    const Bidegree& at(int h, int q) const;
};

// Dense rational matrix of the map induced by f on homology from source
// bidegree (h, q) to (h + shift_h, q + shift_q).
struct InducedBlock {
    int rows = 0, cols = 0;
    std::vector<std::vector<Rational>> m;
    int rank() const;
    bool is_iso() const;
};

InducedBlock induced_map(const ChainMap& f, const RationalHomologyClasses& src_h,
                         const RationalHomologyClasses& tgt_h, int h, int q);

// Rank-level verification of the long exact sequence of a mapping cone.
struct LadderReport {
    // (h,q) -> [dim H(source), dim H(target'), dim H(cone)]
    std::map<std::pair<int, int>, std::array<int, 3>> ranks;
    bool exact = true;
    std::vector<std::string> failures;
};

// Full node-by-node exactness check of ... -> H^{m-1}(Co) -> H^m(A) ->
// H^m(B') -> H^m(Co) -> ... over the rationals.
LadderReport les_ranks(const ChainMap& f);

} // namespace twistkh
