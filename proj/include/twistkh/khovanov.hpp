// khovanov.hpp -- the sl(2) Khovanov cube in unreduced, reduced and
// equivariant flavors, twist-region zig-zag complexes, splicing, the
// stabilization maps F and G, and the concordance invariant s_2.
//
// Grading conventions (docs/formats.md): realized complexes use the
// standard convention in which the right trefoil is supported at
// (0,1),(0,3),(2,5),(3,9).  The TwistComplex bookkeeping type records the
// zig-zag shifts in the source convention, whose quantum grading is the
// negative of the realized one; splicing negates them.

#pragma once

#include <memory>

#include "twistkh/complex.hpp"
#include "twistkh/diagram.hpp"

namespace twistkh {

enum class Flavor { Unreduced, Reduced, Equivariant };

struct Theory {
    Flavor flavor = Flavor::Unreduced;
    int n = 2;

    Ring ring() const { return flavor == Flavor::Equivariant ? Ring::PolyA : Ring::Rationals; }
};

Flavor flavor_from_string(const std::string& s);
std::string flavor_to_string(Flavor f);

// Frobenius algebra R[X]/(X^2 - a) on basis {1, X}; a = 0 away from the
// equivariant flavor.  deg 1 = +1, deg X = -1, deg a = -4.
struct FrobeniusData {
    // mult[i][j] -> list of (basis index, coefficient)
    std::vector<std::pair<int, Coef>> mult[2][2];
    std::vector<std::pair<int, Coef>> comult[2]; // Delta(e_i) -> pairs ((j,k), coef) flattened as j*2+k
    std::vector<std::pair<int, Coef>> dot[2];    // multiplication by X
    Coef counit[2];                              // eps(1) = 0, eps(X) = 1
};
FrobeniusData frobenius_data(const Theory& t);

// The Krasner zig-zag presentation of T_k: object list
//   V[0]{1-n} -> V[1]{-1-n} -> ... -> V[2k-1]{(1-2k)n-1} -> Z[2k]{-2kn}
// with maps alternating x2 - x4, A, ..., ending in the saddle S; T_0 is the
// single object Z[0]{0} (the identity tangle of the site).
struct TwistObject {
    bool is_z = false;
    int h = 0;
    int q = 0; // source-convention shift
};
enum class TwistMapLabel { XDiff, AMap, Saddle };
struct TwistComplex {
    int k = 0;
    int n = 2;
    std::vector<TwistObject> objects;
    std::vector<TwistMapLabel> maps;
};
TwistComplex krasner_twist_complex(int k, int n);

// Khovanov complex of a diagram (normalized: homological degrees in
// [-c_-, c_+], quantum shift c_+ - 2c_-).
ChainComplex cube(const PlanarDiagram& d, const Theory& t);

// Complex of the diagram with T_k spliced at the site: the external cube
// tensored with the realized zig-zag.  Homology equals
// cube(insert_twists(d, site, k)) homology.
ChainComplex splice(const PlanarDiagram& d, std::size_t site_index, const TwistComplex& tc,
                    const Theory& t);

// A stabilization map together with the two spliced complexes it runs
// between (source T_i, target T_j).
struct SplicedPair {
    std::shared_ptr<const ChainComplex> source;
    std::shared_ptr<const ChainComplex> target;
    ChainMap map;
};

// F_{i,j}: identity below local degree 2i, reverse saddle at 2i; degree
// (0,0).  Chain-map equation verified on construction.
SplicedPair map_F(const PlanarDiagram& d, std::size_t site_index, int i, int j, const Theory& t);

// G_{i,j}: identity on every object of T_i into the shifted T_j; induced
// displacement (+2(j-i), +4(j-i)) in realized gradings.
SplicedPair map_G(const PlanarDiagram& d, std::size_t site_index, int i, int j, const Theory& t);

// Homology after Gaussian reduction.
BigradedHomology khovanov_homology(const PlanarDiagram& d, const Theory& t, int threads = 1);
BigradedHomology homology_of(const ChainComplex& c, int threads = 1);

// The concordance invariant s_2 (negative of the Rasmussen invariant in the
// realized grading): the equivariant free part must be two generators in
// homological degree 0 with quantum degrees s-1, s+1 where s = -s_2.
int s_invariant(const PlanarDiagram& d, int threads = 1);

// Windowed stable homology H(D_infinity): computes the spliced complex at
// i = max(0, ceil((h_max + c_- + 2)/2)) + 1 and restricts to the window.
struct StableHomology {
    BigradedHomology groups;
    int i_used = 0;
    int certified_up_to = 0; // isomorphism range bound 2i - c_- - 2
};
StableHomology stable_homology(const PlanarDiagram& d, std::size_t site_index, const Theory& t,
                               int h_min, int h_max, int threads = 1);

} // namespace twistkh
