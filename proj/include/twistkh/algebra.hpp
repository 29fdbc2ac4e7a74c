// algebra.hpp -- sparse graded linear algebra over Q and over Q[a].
//
// The polynomial variable a carries quantum degree -4 in the realized
// grading convention (see docs/formats.md), so homogeneity forces every
// matrix entry to be a single monomial c * a^k.  That keeps Smith reduction
// over Q[a] down to rational arithmetic plus exponent bookkeeping.

#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "twistkh/rational.hpp"

namespace twistkh {

enum class Ring { Rationals, PolyA };

constexpr int kDegA = -4; // quantum degree of a (n = 2)

// A monomial coefficient c * a^ap; ap == 0 over the rationals.
struct Coef {
    Rational c;
    int ap = 0;

    Coef() = default;
    Coef(Rational cc, int p) : c(cc), ap(p) {
        if (c.is_zero())
            ap = 0;
    }
    static Coef rational(Rational cc) { return Coef(cc, 0); }
    bool is_zero() const { return c.is_zero(); }
    bool is_rational_unit() const { return !c.is_zero() && ap == 0; }

    Coef operator-() const { return Coef(-c, ap); }
    friend Coef operator*(const Coef& x, const Coef& y) { return Coef(x.c * y.c, x.ap + y.ap); }
    // Exact division; requires x.ap >= y.ap.
    friend Coef operator/(const Coef& x, const Coef& y) {
        if (x.ap < y.ap)
            throw InternalError("inexact monomial division");
        return Coef(x.c / y.c, x.ap - y.ap);
    }
    // Sum of same-degree monomials only (enforced by graded callers).
    friend Coef add_same_degree(const Coef& x, const Coef& y) {
        if (x.is_zero())
            return y;
        if (y.is_zero())
            return x;
        if (x.ap != y.ap)
            throw InternalError("adding monomials of different a-exponent");
        return Coef(x.c + y.c, x.ap);
    }
    friend bool operator==(const Coef& x, const Coef& y) { return x.c == y.c && (x.is_zero() || x.ap == y.ap); }
};

// Column-major sparse matrix between graded free modules.  Rows index the
// target generators, columns the source generators; every nonzero entry at
// (r, s) must satisfy ap == (row_q[r] - col_q[s]) / 4 over PolyA and
// row_q[r] == col_q[s] over the rationals.
struct GradedSparseMatrix {
    Ring ring = Ring::Rationals;
    std::vector<int> row_q;
    std::vector<int> col_q;
    std::vector<std::vector<std::pair<int, Coef>>> cols; // (row, coef), sorted by row

    int nrows() const { return static_cast<int>(row_q.size()); }
    int ncols() const { return static_cast<int>(col_q.size()); }

    void set_entry(int row, int col, const Coef& v);
    Coef get_entry(int row, int col) const;
    void check_homogeneous() const; // throws ValidationError on violation
};

// Exact rank over the rationals (entries' a-exponents must be 0).
int rank_rational(const GradedSparseMatrix& m);

// Rank of the rational block of the matrix whose rows and columns sit in
// quantum degree q (used for per-degree homology over Q).
int rank_rational_at_q(const GradedSparseMatrix& m, int q);

// Rank over the fraction field Q(a): fraction-free elimination on the
// polynomials obtained by expanding monomial entries.  Intended for the
// small complexes produced by twist splicing.
int rank_fraction_field(const GradedSparseMatrix& m);

// Invariant factors a^{k_1} | a^{k_2} | ... of a homogeneous monomial
// matrix over Q[a]; unit factors appear as exponent 0.
std::vector<int> smith_over_poly(const GradedSparseMatrix& m);

// Decomposition of one graded module: quantum degrees of free generators
// plus (quantum degree, order) pairs for torsion summands R/(a^k).
struct ModuleDecomposition {
    std::map<int, int> free_by_q;                  // q -> rank
    std::map<std::pair<int, int>, int> torsion_by_qk; // (q, k) -> count, k >= 1

    int total_free() const {
        int n = 0;
        for (auto& [q, r] : free_by_q)
            n += r;
        return n;
    }
    int total_torsion() const {
        int n = 0;
        for (auto& [qk, c] : torsion_by_qk)
            n += c;
        return n;
    }
    bool operator==(const ModuleDecomposition& o) const {
        return free_by_q == o.free_by_q && torsion_by_qk == o.torsion_by_qk;
    }
};

// Homology ker(d_out) / im(d_in) of one degree of a graded free complex.
// Requires d_out o d_in = 0 (checked).
ModuleDecomposition homology_of_pair(const GradedSparseMatrix& d_in, const GradedSparseMatrix& d_out);

} // namespace twistkh
