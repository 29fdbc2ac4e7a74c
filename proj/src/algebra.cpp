// algebra.cpp -- exact rank, Smith reduction and graded homology.

#include "twistkh/algebra.hpp"

#include <algorithm>

#include "twistkh/laurent.hpp"

namespace twistkh {

namespace {
struct ValidationFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};
} // namespace

void GradedSparseMatrix::set_entry(int row, int col, const Coef& v) {
    auto& c = cols.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const std::pair<int, Coef>& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row) {
        if (v.is_zero())
            c.erase(it);
        else
            it->second = v;
    } else if (!v.is_zero()) {
        c.insert(it, {row, v});
    }
}

Coef GradedSparseMatrix::get_entry(int row, int col) const {
    const auto& c = cols.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row,
                               [](const std::pair<int, Coef>& e, int r) { return e.first < r; });
    if (it != c.end() && it->first == row)
        return it->second;
    return Coef();
}

void GradedSparseMatrix::check_homogeneous() const {
    if (static_cast<int>(cols.size()) != ncols())
        throw InternalError("matrix column count mismatch");
    for (int s = 0; s < ncols(); ++s) {
        for (auto& [r, v] : cols[s]) {
            if (v.is_zero())
                continue;
            int dq = row_q.at(r) - col_q.at(s);
            if (ring == Ring::Rationals) {
                if (dq != 0 || v.ap != 0)
                    throw InternalError("non-homogeneous entry over Q at (" + std::to_string(r) + "," +
                                        std::to_string(s) + ")");
            } else {
                if (dq % 4 != 0 || v.ap != dq / 4 || v.ap < 0)
                    throw InternalError("non-homogeneous entry over Q[a] at (" + std::to_string(r) + "," +
                                        std::to_string(s) + ")");
            }
        }
    }
}

namespace {

// Dense-map working copy of the columns for elimination.
struct WorkCols {
    std::vector<std::map<int, Coef>> cols;

    explicit WorkCols(const GradedSparseMatrix& m) {
        cols.resize(m.cols.size());
        for (std::size_t s = 0; s < m.cols.size(); ++s)
            for (auto& [r, v] : m.cols[s])
                if (!v.is_zero())
                    cols[s][r] = v;
    }
};

} // namespace

int rank_rational(const GradedSparseMatrix& m) {
    WorkCols w(m);
    std::map<int, std::map<int, Coef>> pivots; // pivot row -> reduced column
    int rank = 0;
    for (auto& col : w.cols) {
        // Reduce against established pivots.
        for (auto it = col.begin(); it != col.end();) {
            auto p = pivots.find(it->first);
            if (p == pivots.end()) {
                ++it;
                continue;
            }
            Rational factor = it->second.c; // pivot normalized to 1
            int row = it->first;
            for (auto& [r, v] : p->second) {
                auto at = col.find(r);
                Rational nv = (at == col.end() ? Rational() : at->second.c) - factor * v.c;
                if (nv.is_zero()) {
                    if (at != col.end())
                        col.erase(at);
                } else {
                    col[r] = Coef(nv, 0);
                }
            }
            it = col.upper_bound(row);
        }
        if (col.empty())
            continue;
        // New pivot: normalize to leading 1.
        int prow = col.begin()->first;
        Rational lead = col.begin()->second.c;
        std::map<int, Coef> norm;
        for (auto& [r, v] : col)
            norm[r] = Coef(v.c / lead, 0);
        pivots[prow] = std::move(norm);
        ++rank;
    }
    return rank;
}

int rank_rational_at_q(const GradedSparseMatrix& m, int q) {
    GradedSparseMatrix sub;
    sub.ring = Ring::Rationals;
    std::vector<int> rmap(m.nrows(), -1);
    for (int r = 0; r < m.nrows(); ++r)
        if (m.row_q[r] == q) {
            rmap[r] = static_cast<int>(sub.row_q.size());
            sub.row_q.push_back(q);
        }
    for (int s = 0; s < m.ncols(); ++s) {
        if (m.col_q[s] != q)
            continue;
        std::vector<std::pair<int, Coef>> col;
        for (auto& [r, v] : m.cols[s])
            if (rmap[r] >= 0)
                col.push_back({rmap[r], v});
        sub.col_q.push_back(q);
        sub.cols.push_back(std::move(col));
    }
    return rank_rational(sub);
}

int rank_fraction_field(const GradedSparseMatrix& m) {
    // Fraction-free Gaussian elimination over Q[a] (Bareiss-style without
    // the division step: we only need the rank, so plain cross-multiply
    // elimination with polynomial entries is enough at these sizes).
    int nr = m.nrows(), nc = m.ncols();
    std::vector<std::vector<LaurentQ>> a(nr, std::vector<LaurentQ>(nc));
    for (int s = 0; s < nc; ++s)
        for (auto& [r, v] : m.cols[s])
            a[r][s] = LaurentQ::monomial(v.c, v.ap);
    int rank = 0;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int pr = -1;
        for (int r = row; r < nr; ++r)
            if (!a[r][col].is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0)
            continue;
        std::swap(a[row], a[pr]);
        for (int r = row + 1; r < nr; ++r) {
            if (a[r][col].is_zero())
                continue;
            LaurentQ f = a[r][col];
            LaurentQ p = a[row][col];
            for (int s = col; s < nc; ++s)
                a[r][s] = a[r][s] * p - a[row][s] * f;
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace {

// Monomial matrix with full row/column transform tracking, the workhorse
// behind kernel computation and Smith reduction over Q[a].
struct MonoMat {
    int nr = 0, nc = 0;
    std::vector<std::map<int, Coef>> cols;

    static MonoMat from(const GradedSparseMatrix& m) {
        MonoMat w;
        w.nr = m.nrows();
        w.nc = m.ncols();
        w.cols.resize(w.nc);
        for (int s = 0; s < w.nc; ++s)
            for (auto& [r, v] : m.cols[s])
                if (!v.is_zero())
                    w.cols[s][r] = v;
        return w;
    }
    static MonoMat identity(int n) {
        MonoMat w;
        w.nr = w.nc = n;
        w.cols.resize(n);
        for (int i = 0; i < n; ++i)
            w.cols[i][i] = Coef(Rational::one(), 0);
        return w;
    }

    Coef get(int r, int s) const {
        auto it = cols[s].find(r);
        return it == cols[s].end() ? Coef() : it->second;
    }
    void set(int r, int s, const Coef& v) {
        if (v.is_zero())
            cols[s].erase(r);
        else
            cols[s][r] = v;
    }
    // col_j -= f * col_i
    void col_axpy(int j, int i, const Coef& f) {
        for (auto& [r, v] : cols[i]) {
            Coef cur = get(r, j);
            Coef delta = f * v;
            Coef nv = cur.is_zero() ? -delta : add_same_degree(cur, -delta);
            set(r, j, nv);
        }
    }
    // row_j -= f * row_i
    void row_axpy(int j, int i, const Coef& f) {
        for (int s = 0; s < nc; ++s) {
            Coef vi = get(i, s);
            if (vi.is_zero())
                continue;
            Coef cur = get(j, s);
            Coef delta = f * vi;
            Coef nv = cur.is_zero() ? -delta : add_same_degree(cur, -delta);
            set(j, s, nv);
        }
    }
    void swap_cols(int i, int j) {
        if (i != j)
            std::swap(cols[i], cols[j]);
    }
    void swap_rows(int i, int j) {
        if (i == j)
            return;
        for (auto& col : cols) {
            auto ii = col.find(i);
            auto jj = col.find(j);
            Coef vi = ii == col.end() ? Coef() : ii->second;
            Coef vj = jj == col.end() ? Coef() : jj->second;
            if (ii != col.end())
                col.erase(ii);
            if ((jj = col.find(j)) != col.end())
                col.erase(jj);
            if (!vi.is_zero())
                col[j] = vi;
            if (!vj.is_zero())
                col[i] = vj;
        }
    }
};

// Column reduction of d_out tracking V (source basis change) and W = V^-1.
// After reduction every column is either a pivot column or identically
// zero; zero columns of the reduced matrix give a homogeneous kernel basis
// (the corresponding columns of V).
struct ColReduction {
    MonoMat reduced;
    MonoMat v;
    MonoMat w;
    std::vector<int> kernel_cols;

    static ColReduction run(const GradedSparseMatrix& m) {
        ColReduction cr;
        cr.reduced = MonoMat::from(m);
        cr.v = MonoMat::identity(m.ncols());
        cr.w = MonoMat::identity(m.ncols());
        std::vector<bool> is_pivot(m.ncols(), false);
        for (int r = 0; r < m.nrows(); ++r) {
            // Pivot: non-pivot column with entry at row r of minimal
            // a-exponent (lowest column index on ties).
            int pc = -1;
            for (int s = 0; s < m.ncols(); ++s) {
                if (is_pivot[s])
                    continue;
                Coef e = cr.reduced.get(r, s);
                if (e.is_zero())
                    continue;
                if (pc < 0 || e.ap < cr.reduced.get(r, pc).ap)
                    pc = s;
            }
            if (pc < 0)
                continue;
            Coef pivot = cr.reduced.get(r, pc);
            for (int s = 0; s < m.ncols(); ++s) {
                if (s == pc || is_pivot[s])
                    continue;
                Coef e = cr.reduced.get(r, s);
                if (e.is_zero())
                    continue;
                Coef f = e / pivot;
                // col_s -= f * col_pc is right-multiplication by E with
                // E[pc][s] = -f, so W = V^-1 picks up row_pc += f * row_s.
                cr.reduced.col_axpy(s, pc, f);
                cr.v.col_axpy(s, pc, f);
                cr.w.row_axpy(pc, s, -f);
            }
            is_pivot[pc] = true;
        }
        for (int s = 0; s < m.ncols(); ++s)
            if (cr.reduced.cols[s].empty())
                cr.kernel_cols.push_back(s);
        return cr;
    }
};

// Smith reduction of a monomial matrix whose rows carry quantum degrees.
// Row operations performed here never change the degree attached to a row
// slot (the implied basis change is K_i' = K_i - f K_j with deg f matched),
// so row_degrees stays valid throughout up to the row swaps we apply to it.
struct SmithResult {
    std::vector<std::pair<int, int>> diagonal; // (row slot degree, exponent k)
    std::vector<int> free_degrees;             // degrees of untouched row slots
};

SmithResult smith_with_degrees(MonoMat m, std::vector<int> row_degrees) {
    SmithResult out;
    int k = 0;
    int nr = m.nr, nc = m.nc;
    while (true) {
        // Minimal a-exponent entry in the remaining submatrix.
        int br = -1, bc = -1;
        for (int s = k; s < nc; ++s)
            for (auto& [r, v] : m.cols[s]) {
                if (r < k || v.is_zero())
                    continue;
                if (br < 0 || v.ap < m.get(br, bc).ap || (v.ap == m.get(br, bc).ap && (r < br || (r == br && s < bc)))) {
                    br = r;
                    bc = s;
                }
            }
        if (br < 0)
            break;
        m.swap_rows(k, br);
        std::swap(row_degrees[k], row_degrees[br]);
        m.swap_cols(k, bc);
        Coef pivot = m.get(k, k);
        // Clear row k and column k (all divisions exact by minimality).
        for (int s = k + 1; s < nc; ++s) {
            Coef e = m.get(k, s);
            if (!e.is_zero())
                m.col_axpy(s, k, e / pivot);
        }
        std::vector<int> rows_to_clear;
        for (auto& [r, v] : m.cols[k])
            if (r > k && !v.is_zero())
                rows_to_clear.push_back(r);
        for (int r : rows_to_clear) {
            Coef e = m.get(r, k);
            m.row_axpy(r, k, e / pivot);
        }
        out.diagonal.push_back({row_degrees[k], pivot.ap});
        ++k;
    }
    for (int r = k; r < nr; ++r)
        out.free_degrees.push_back(row_degrees[r]);
    std::sort(out.diagonal.begin(), out.diagonal.end(),
              [](auto& a, auto& b) { return a.second < b.second; });
    return out;
}

} // namespace

std::vector<int> smith_over_poly(const GradedSparseMatrix& m) {
    if (m.ring != Ring::PolyA)
        throw InternalError("smith_over_poly requires the polynomial ring");
    m.check_homogeneous();
    std::vector<int> degrees(m.row_q.begin(), m.row_q.end());
    SmithResult sr = smith_with_degrees(MonoMat::from(m), degrees);
    std::vector<int> factors;
    for (auto& [q, k] : sr.diagonal)
        factors.push_back(k);
    std::sort(factors.begin(), factors.end());
    return factors;
}

namespace {

void check_composition_zero(const GradedSparseMatrix& d_in, const GradedSparseMatrix& d_out) {
    if (d_in.ncols() == 0 || d_out.nrows() == 0)
        return;
    for (int s = 0; s < d_in.ncols(); ++s) {
        std::map<int, Coef> acc;
        for (auto& [mid, v] : d_in.cols[s]) {
            for (auto& [r, w] : d_out.cols[mid]) {
                Coef add = v * w;
                auto it = acc.find(r);
                if (it == acc.end())
                    acc[r] = add;
                else
                    it->second = add_same_degree(it->second, add);
            }
        }
        for (auto& [r, v] : acc)
            if (!v.is_zero())
                throw InternalError("composition d_out o d_in is nonzero");
    }
}

} // namespace

ModuleDecomposition homology_of_pair(const GradedSparseMatrix& d_in, const GradedSparseMatrix& d_out) {
    if (d_in.nrows() != d_out.ncols())
        throw InternalError("homology_of_pair: middle dimensions disagree");
    d_in.check_homogeneous();
    d_out.check_homogeneous();
    check_composition_zero(d_in, d_out);

    ModuleDecomposition out;
    if (d_in.ring == Ring::Rationals) {
        // Per quantum degree: free rank = dim - rank(out) - rank(in).
        std::map<int, int> dims;
        for (int g = 0; g < d_out.ncols(); ++g)
            ++dims[d_out.col_q[g]];
        for (auto& [q, dim] : dims) {
            int rk_out = rank_rational_at_q(d_out, q);
            int rk_in = rank_rational_at_q(d_in, q);
            int free = dim - rk_out - rk_in;
            if (free < 0)
                throw InternalError("negative homology rank");
            if (free > 0)
                out.free_by_q[q] = free;
        }
        return out;
    }

    // Over Q[a]: homogeneous kernel basis of d_out, image of d_in expressed
    // in that basis, then Smith reduction with degree tracking.
    ColReduction cr = ColReduction::run(d_out);
    int nk = static_cast<int>(cr.kernel_cols.size());
    std::vector<int> kernel_degrees;
    std::vector<int> kernel_slot(d_out.ncols(), -1);
    for (int i = 0; i < nk; ++i) {
        kernel_slot[cr.kernel_cols[i]] = i;
        kernel_degrees.push_back(d_out.col_q[cr.kernel_cols[i]]);
    }

    // Coordinates of d_in's columns: y = W * v must vanish outside kernel slots.
    MonoMat y;
    y.nr = nk;
    y.nc = d_in.ncols();
    y.cols.resize(y.nc);
    for (int s = 0; s < d_in.ncols(); ++s) {
        std::map<int, Coef> coords;
        for (auto& [mid, v] : d_in.cols[s]) {
            // coords += v * (column mid of W read as rows): w_{i,mid}
            for (int i = 0; i < d_out.ncols(); ++i) {
                Coef wim = cr.w.get(i, mid);
                if (wim.is_zero())
                    continue;
                Coef add = wim * v;
                auto it = coords.find(i);
                if (it == coords.end())
                    coords[i] = add;
                else
                    it->second = add_same_degree(it->second, add);
            }
        }
        for (auto& [i, v] : coords) {
            if (v.is_zero())
                continue;
            if (kernel_slot[i] < 0)
                throw InternalError("image of d_in escapes ker(d_out)");
            if (v.ap < 0)
                throw InternalError("kernel coordinate with negative exponent");
            y.cols[s][kernel_slot[i]] = v;
        }
    }

    SmithResult sr = smith_with_degrees(std::move(y), kernel_degrees);
    for (auto& [q, k] : sr.diagonal)
        if (k >= 1)
            ++out.torsion_by_qk[{q, k}];
    for (int q : sr.free_degrees)
        ++out.free_by_q[q];
    // Normalize empty entries away.
    for (auto it = out.free_by_q.begin(); it != out.free_by_q.end();)
        it = it->second == 0 ? out.free_by_q.erase(it) : std::next(it);
    return out;
}

} // namespace twistkh
