// complex.cpp -- simplification, homology, cones, induced maps, ladders.

#include "twistkh/complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "twistkh/parallel.hpp"

namespace twistkh {

void ChainComplex::check() const {
    if (levels() == 0)
        return;
    if (static_cast<int>(diff.size()) != std::max(0, levels() - 1))
        throw InternalError("chain complex differential count mismatch");
    for (int i = 0; i + 1 < levels(); ++i) {
        const GradedSparseMatrix& d = diff[i];
        if (d.ncols() != generators_at(i) || d.nrows() != generators_at(i + 1))
            throw InternalError("differential shape mismatch at level " + std::to_string(i));
        if (d.ring != ring)
            throw InternalError("differential ring mismatch");
        d.check_homogeneous();
    }
    // d o d = 0.
    for (int i = 0; i + 2 < levels(); ++i) {
        const GradedSparseMatrix& d0 = diff[i];
        const GradedSparseMatrix& d1 = diff[i + 1];
        for (int s = 0; s < d0.ncols(); ++s) {
            std::map<int, Coef> acc;
            for (auto& [mid, v] : d0.cols[s])
                for (auto& [r, w] : d1.cols[mid]) {
                    auto it = acc.find(r);
                    Coef add = v * w;
                    if (it == acc.end())
                        acc[r] = add;
                    else
                        it->second = add_same_degree(it->second, add);
                }
            for (auto& [r, v] : acc)
                if (!v.is_zero())
                    throw InternalError("d o d != 0 at level " + std::to_string(i) + " column " +
                                        std::to_string(s));
        }
    }
}

ChainComplex shift(const ChainComplex& c, int dh, int dq) {
    ChainComplex out = c;
    out.h_min += dh;
    for (auto& level : out.gen_q)
        for (int& q : level)
            q += dq;
    for (auto& d : out.diff) {
        for (int& q : d.row_q)
            q += dq;
        for (int& q : d.col_q)
            q += dq;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian simplification

namespace {

struct Eliminator {
    const ChainComplex& in;
    std::vector<std::vector<char>> alive;
    // Block i: level i -> level i+1.
    std::vector<std::vector<std::map<int, Coef>>> cols; // [i][src] -> {tgt: coef}
    std::vector<std::vector<std::set<int>>> rows;       // [i][tgt] -> {src}

    explicit Eliminator(const ChainComplex& c) : in(c) {
        alive.resize(c.levels());
        for (int i = 0; i < c.levels(); ++i)
            alive[i].assign(c.generators_at(i), 1);
        cols.resize(std::max(0, c.levels() - 1));
        rows.resize(cols.size());
        for (std::size_t i = 0; i < cols.size(); ++i) {
            cols[i].resize(c.generators_at(static_cast<int>(i)));
            rows[i].resize(c.generators_at(static_cast<int>(i) + 1));
            const GradedSparseMatrix& d = c.diff[i];
            for (int s = 0; s < d.ncols(); ++s)
                for (auto& [r, v] : d.cols[s]) {
                    cols[i][s][r] = v;
                    rows[i][r].insert(s);
                }
        }
    }

    bool unit(const Coef& v, Ring ring) const {
        if (v.is_zero())
            return false;
        return ring == Ring::Rationals ? true : v.ap == 0;
    }

    void erase_entry(std::size_t i, int r, int s) {
        cols[i][s].erase(r);
        rows[i][r].erase(s);
    }

    void run() {
        for (std::size_t i = 0; i < cols.size(); ++i)
            run_level(i);
    }

    void run_level(std::size_t i) {
        using Key = std::tuple<long long, int, int>; // (fill score, src, tgt)
        std::set<Key> queue;
        auto score = [&](int s, int r) {
            return static_cast<long long>(cols[i][s].size() - 1) *
                   static_cast<long long>(rows[i][r].size() - 1);
        };
        for (int s = 0; s < static_cast<int>(cols[i].size()); ++s)
            for (auto& [r, v] : cols[i][s])
                if (unit(v, in.ring))
                    queue.insert({score(s, r), s, r});
        while (!queue.empty()) {
            auto [sc, s, r] = *queue.begin();
            queue.erase(queue.begin());
            if (!alive[i][s] || !alive[i + 1][r])
                continue;
            auto it = cols[i][s].find(r);
            if (it == cols[i][s].end() || !unit(it->second, in.ring))
                continue;
            Coef u = it->second;

            // Gather the pivot row and column without the pivot itself.
            std::vector<std::pair<int, Coef>> row_entries; // (src j, b_j)
            for (int j : rows[i][r])
                if (j != s)
                    row_entries.push_back({j, cols[i][j].at(r)});
            std::vector<std::pair<int, Coef>> col_entries; // (tgt t, g_t)
            for (auto& [t, g] : cols[i][s])
                if (t != r)
                    col_entries.push_back({t, g});

            // delta -= col * u^-1 * row
            for (auto& [t, g] : col_entries) {
                Coef gu = g / u;
                for (auto& [j, b] : row_entries) {
                    Coef delta = gu * b;
                    auto at = cols[i][j].find(t);
                    Coef nv = (at == cols[i][j].end()) ? -delta : add_same_degree(at->second, -delta);
                    if (nv.is_zero()) {
                        if (at != cols[i][j].end())
                            erase_entry(i, t, j);
                    } else {
                        cols[i][j][t] = nv;
                        rows[i][t].insert(j);
                        if (unit(nv, in.ring))
                            queue.insert({score(j, t), j, t});
                    }
                }
            }

            // Kill the pivot generators and their incident entries.
            alive[i][s] = 0;
            alive[i + 1][r] = 0;
            for (auto& [t, g] : col_entries)
                erase_entry(i, t, s);
            for (auto& [j, b] : row_entries)
                erase_entry(i, r, j);
            erase_entry(i, r, s);
            if (i > 0) {
                std::vector<int> srcs(rows[i - 1][s].begin(), rows[i - 1][s].end());
                for (int p : srcs)
                    erase_entry(i - 1, s, p);
            }
            if (i + 1 < cols.size()) {
                std::vector<std::pair<int, Coef>> outs(cols[i + 1][r].begin(), cols[i + 1][r].end());
                for (auto& [t, v] : outs)
                    erase_entry(i + 1, t, r);
            }
        }
    }

    ChainComplex extract() const {
        ChainComplex out;
        out.ring = in.ring;
        out.h_min = in.h_min;
        std::vector<std::vector<int>> renum(in.levels());
        out.gen_q.resize(in.levels());
        for (int i = 0; i < in.levels(); ++i) {
            renum[i].assign(in.generators_at(i), -1);
            for (int g = 0; g < in.generators_at(i); ++g)
                if (alive[i][g]) {
                    renum[i][g] = static_cast<int>(out.gen_q[i].size());
                    out.gen_q[i].push_back(in.gen_q[i][g]);
                }
        }
        for (std::size_t i = 0; i < cols.size(); ++i) {
            GradedSparseMatrix d;
            d.ring = in.ring;
            for (int g = 0; g < in.generators_at(static_cast<int>(i)); ++g)
                if (alive[i][g])
                    d.col_q.push_back(in.gen_q[i][g]);
            for (int g = 0; g < in.generators_at(static_cast<int>(i) + 1); ++g)
                if (alive[i + 1][g])
                    d.row_q.push_back(in.gen_q[i + 1][g]);
            d.cols.resize(d.ncols());
            for (int s = 0; s < in.generators_at(static_cast<int>(i)); ++s) {
                if (!alive[i][s])
                    continue;
                auto& col = d.cols[renum[i][s]];
                for (auto& [r, v] : cols[i][s])
                    col.push_back({renum[i + 1][r], v});
                std::sort(col.begin(), col.end(),
                          [](auto& a, auto& b) { return a.first < b.first; });
            }
            out.diff.push_back(std::move(d));
        }
        // Trim empty boundary levels so gradings stay tight.
        return out;
    }
};

} // namespace

ChainComplex simplify(const ChainComplex& c) {
    if (c.levels() <= 1)
        return c;
    Eliminator e(c);
    e.run();
    ChainComplex out = e.extract();
    out.check();
    return out;
}

// ---------------------------------------------------------------------------
// Homology

BigradedHomology BigradedHomology::shifted(int dh, int dq) const {
    BigradedHomology out;
    for (auto& [hq, r] : free_ranks)
        out.free_ranks[{hq.first + dh, hq.second + dq}] = r;
    for (auto& [hqk, c] : torsion)
        out.torsion[{std::get<0>(hqk) + dh, std::get<1>(hqk) + dq, std::get<2>(hqk)}] = c;
    return out;
}

BigradedHomology BigradedHomology::direct_sum(const BigradedHomology& o) const {
    BigradedHomology out = *this;
    for (auto& [hq, r] : o.free_ranks)
        out.free_ranks[hq] += r;
    for (auto& [hqk, c] : o.torsion)
        out.torsion[hqk] += c;
    return out;
}

bool BigradedHomology::try_subtract(const BigradedHomology& part, BigradedHomology& out) const {
    out = *this;
    for (auto& [hq, r] : part.free_ranks) {
        auto it = out.free_ranks.find(hq);
        if (it == out.free_ranks.end() || it->second < r)
            return false;
        it->second -= r;
        if (it->second == 0)
            out.free_ranks.erase(it);
    }
    for (auto& [hqk, c] : part.torsion) {
        auto it = out.torsion.find(hqk);
        if (it == out.torsion.end() || it->second < c)
            return false;
        it->second -= c;
        if (it->second == 0)
            out.torsion.erase(it);
    }
    return true;
}

int BigradedHomology::total_free_rank() const {
    int n = 0;
    for (auto& [hq, r] : free_ranks)
        n += r;
    return n;
}

std::map<int, int> BigradedHomology::free_ranks_at_h(int h) const {
    std::map<int, int> out;
    for (auto& [hq, r] : free_ranks)
        if (hq.first == h)
            out[hq.second] = r;
    return out;
}

bool BigradedHomology::torsion_empty_at_h(int h) const {
    for (auto& [hqk, c] : torsion)
        if (std::get<0>(hqk) == h && c > 0)
            return false;
    return true;
}

std::string BigradedHomology::poincare() const {
    if (free_ranks.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [hq, r] : free_ranks) {
        if (r == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        bool printed = false;
        if (r != 1) {
            os << r;
            printed = true;
        }
        if (hq.first != 0) {
            if (printed)
                os << "*";
            os << "t^" << hq.first;
            printed = true;
        }
        if (hq.second != 0) {
            if (printed)
                os << "*";
            os << "q^" << hq.second;
            printed = true;
        }
        if (!printed)
            os << "1";
    }
    return first ? "0" : os.str();
}

namespace {

GradedSparseMatrix empty_matrix(Ring ring, const std::vector<int>& row_q, const std::vector<int>& col_q) {
    GradedSparseMatrix m;
    m.ring = ring;
    m.row_q = row_q;
    m.col_q = col_q;
    m.cols.resize(m.ncols());
    return m;
}

} // namespace

BigradedHomology homology(const ChainComplex& c, int threads) {
    BigradedHomology out;
    if (c.levels() == 0)
        return out;
    const std::vector<int> none;
    if (c.ring == Ring::Rationals) {
        struct Task {
            int level;
            int q;
            int dim;
        };
        std::vector<Task> tasks;
        for (int i = 0; i < c.levels(); ++i) {
            std::map<int, int> dims;
            for (int q : c.gen_q[i])
                ++dims[q];
            for (auto& [q, dim] : dims)
                tasks.push_back({i, q, dim});
        }
        std::vector<int> result(tasks.size());
        parallel_for(static_cast<int>(tasks.size()), threads, [&](int t) {
            const Task& task = tasks[t];
            int rk_out = 0, rk_in = 0;
            if (task.level + 1 < c.levels())
                rk_out = rank_rational_at_q(c.diff[task.level], task.q);
            if (task.level > 0)
                rk_in = rank_rational_at_q(c.diff[task.level - 1], task.q);
            result[t] = task.dim - rk_out - rk_in;
        });
        for (std::size_t t = 0; t < tasks.size(); ++t) {
            if (result[t] < 0)
                throw InternalError("negative homology rank");
            if (result[t] > 0)
                out.free_ranks[{c.h_of_level(tasks[t].level), tasks[t].q}] = result[t];
        }
        return out;
    }
    for (int i = 0; i < c.levels(); ++i) {
        GradedSparseMatrix d_in =
            i > 0 ? c.diff[i - 1] : empty_matrix(c.ring, c.gen_q[i], none);
        GradedSparseMatrix d_out =
            i + 1 < c.levels() ? c.diff[i] : empty_matrix(c.ring, none, c.gen_q[i]);
        ModuleDecomposition md = homology_of_pair(d_in, d_out);
        for (auto& [q, r] : md.free_by_q)
            if (r > 0)
                out.free_ranks[{c.h_of_level(i), q}] = r;
        for (auto& [qk, n] : md.torsion_by_qk)
            if (n > 0)
                out.torsion[{c.h_of_level(i), qk.first, qk.second}] = n;
    }
    return out;
}

LaurentQ euler_characteristic(const ChainComplex& c) {
    LaurentQ chi;
    for (int i = 0; i < c.levels(); ++i) {
        Rational sign((c.h_of_level(i) % 2 == 0) ? 1 : -1);
        for (int q : c.gen_q[i])
            chi.add_term(q, sign);
    }
    return chi;
}

// ---------------------------------------------------------------------------
// Chain maps and cones

void ChainMap::check() const {
    if (!source || !target)
        throw InternalError("chain map without complexes");
    if (source->ring != target->ring)
        throw InternalError("chain map between different rings");
    if (static_cast<int>(components.size()) != source->levels())
        throw InternalError("chain map component count mismatch");
    Ring ring = source->ring;
    auto tgt_level = [&](int i) { return target->level_of_h(source->h_of_level(i) + shift_h); };
    // Homogeneity of components.
    for (int i = 0; i < source->levels(); ++i) {
        const GradedSparseMatrix& f = components[i];
        int tl = tgt_level(i);
        bool tgt_exists = tl >= 0 && tl < target->levels();
        if (f.ncols() != source->generators_at(i))
            throw InternalError("chain map component columns mismatch");
        if (f.nrows() != (tgt_exists ? target->generators_at(tl) : 0))
            throw InternalError("chain map component rows mismatch");
        for (int s = 0; s < f.ncols(); ++s)
            for (auto& [r, v] : f.cols[s]) {
                if (v.is_zero())
                    continue;
                int dq = target->gen_q[tl][r] - (source->gen_q[i][s] + shift_q);
                bool ok = ring == Ring::Rationals ? (dq == 0 && v.ap == 0)
                                                  : (dq % 4 == 0 && v.ap == dq / 4 && v.ap >= 0);
                if (!ok)
                    throw InternalError("chain map component not homogeneous of the declared shift");
            }
    }
    // Commutation d_target o f = f o d_source.
    for (int i = 0; i + 1 < source->levels(); ++i) {
        int tl = tgt_level(i);
        std::map<std::pair<int, int>, Coef> lhs, rhs;
        if (tl >= 0 && tl + 1 < target->levels()) {
            for (int s = 0; s < source->generators_at(i); ++s)
                for (auto& [mid, v] : components[i].cols[s])
                    for (auto& [r, w] : target->diff[tl].cols[mid]) {
                        auto key = std::make_pair(r, s);
                        auto it = lhs.find(key);
                        Coef add = v * w;
                        if (it == lhs.end())
                            lhs[key] = add;
                        else
                            it->second = add_same_degree(it->second, add);
                    }
        }
        for (int s = 0; s < source->generators_at(i); ++s)
            for (auto& [mid, v] : source->diff[i].cols[s])
                for (auto& [r, w] : components[i + 1].cols[mid]) {
                    auto key = std::make_pair(r, s);
                    auto it = rhs.find(key);
                    Coef add = v * w;
                    if (it == rhs.end())
                        rhs[key] = add;
                    else
                        it->second = add_same_degree(it->second, add);
                }
        for (auto& [key, v] : lhs) {
            auto it = rhs.find(key);
            Coef other = it == rhs.end() ? Coef() : it->second;
            Coef dd = v.is_zero() ? -other : add_same_degree(v, -other);
            if (!dd.is_zero())
                throw InternalError("chain map does not commute with differentials");
        }
        for (auto& [key, v] : rhs)
            if (!lhs.count(key) && !v.is_zero())
                throw InternalError("chain map does not commute with differentials");
    }
}

ChainComplex cone(const ChainMap& f) {
    f.check();
    const ChainComplex& a = *f.source;
    ChainComplex b = shift(*f.target, -f.shift_h, -f.shift_q); // f becomes degree (0,0)

    int h_lo = std::min(b.h_min, a.h_min - 1);
    int h_hi = std::max(b.h_min + b.levels() - 1, a.h_min + a.levels() - 2);
    ChainComplex out;
    out.ring = a.ring;
    out.h_min = h_lo;
    int n_levels = h_hi - h_lo + 1;
    if (a.levels() == 0 && b.levels() == 0)
        return out;
    out.gen_q.resize(n_levels);

    auto b_gens = [&](int h) -> const std::vector<int>* {
        int l = h - b.h_min;
        return (l >= 0 && l < b.levels()) ? &b.gen_q[l] : nullptr;
    };
    auto a_gens = [&](int h) -> const std::vector<int>* {
        int l = h + 1 - a.h_min;
        return (l >= 0 && l < a.levels()) ? &a.gen_q[l] : nullptr;
    };

    for (int h = h_lo; h <= h_hi; ++h) {
        auto& gq = out.gen_q[h - h_lo];
        if (auto* bg = b_gens(h))
            gq.insert(gq.end(), bg->begin(), bg->end());
        if (auto* ag = a_gens(h))
            gq.insert(gq.end(), ag->begin(), ag->end());
    }

    for (int h = h_lo; h < h_hi; ++h) {
        GradedSparseMatrix d;
        d.ring = out.ring;
        d.col_q = out.gen_q[h - h_lo];
        d.row_q = out.gen_q[h + 1 - h_lo];
        d.cols.resize(d.ncols());
        int b_src = b_gens(h) ? static_cast<int>(b_gens(h)->size()) : 0;
        int b_tgt = b_gens(h + 1) ? static_cast<int>(b_gens(h + 1)->size()) : 0;
        // d_B block.
        if (b_gens(h) && b_gens(h + 1)) {
            const GradedSparseMatrix& db = b.diff[h - b.h_min];
            for (int s = 0; s < db.ncols(); ++s)
                for (auto& [r, v] : db.cols[s])
                    d.cols[s].push_back({r, v});
        }
        // f block: A^{h+1} -> B^{h+1}.
        if (a_gens(h) && b_gens(h + 1)) {
            const GradedSparseMatrix& fc = f.components[h + 1 - a.h_min];
            for (int s = 0; s < fc.ncols(); ++s)
                for (auto& [r, v] : fc.cols[s])
                    d.cols[b_src + s].push_back({r, v});
        }
        // -d_A block: A^{h+1} -> A^{h+2}.
        if (a_gens(h) && a_gens(h + 1)) {
            const GradedSparseMatrix& da = a.diff[h + 1 - a.h_min];
            for (int s = 0; s < da.ncols(); ++s)
                for (auto& [r, v] : da.cols[s])
                    d.cols[b_src + s].push_back({b_tgt + r, -v});
        }
        for (auto& col : d.cols)
            std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.first < y.first; });
        out.diff.push_back(std::move(d));
    }
    out.check();
    return out;
}

// ---------------------------------------------------------------------------
// Rational homology classes and induced maps

namespace {

using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& v, const Rational& f, const SparseVec& w) {
    for (auto& [i, x] : w) {
        auto it = v.find(i);
        Rational nv = (it == v.end() ? Rational() : it->second) + f * x;
        if (nv.is_zero()) {
            if (it != v.end())
                v.erase(it);
        } else {
            v[i] = nv;
        }
    }
}

} // namespace

RationalHomologyClasses::RationalHomologyClasses(std::shared_ptr<const ChainComplex> c) : c_(std::move(c)) {
    if (c_->ring != Ring::Rationals)
        throw InternalError("homology classes require rational coefficients");
    const ChainComplex& cc = *c_;
    for (int i = 0; i < cc.levels(); ++i) {
        std::set<int> qs(cc.gen_q[i].begin(), cc.gen_q[i].end());
        for (int q : qs) {
            Bidegree bd;
            auto reduce = [&](SparseVec& v) -> SparseVec {
                SparseVec coords;
                for (auto& row : bd.echelon) {
                    auto it = v.find(row.pivot);
                    if (it == v.end())
                        continue;
                    Rational f = it->second;
                    if (row.h_index >= 0)
                        coords[row.h_index] = f;
                    axpy(v, -f, row.vec);
                }
                return coords;
            };
            auto add_echelon = [&](SparseVec v, int h_index) -> bool {
                reduce(v);
                if (v.empty())
                    return false;
                Rational lead = v.begin()->second;
                if (!lead.is_one())
                    for (auto& [i2, x] : v)
                        x = x / lead;
                EchelonRow row{v.begin()->first, v, h_index};
                auto pos = std::lower_bound(bd.echelon.begin(), bd.echelon.end(), row.pivot,
                                            [](const EchelonRow& r, int p) { return r.pivot < p; });
                bd.echelon.insert(pos, std::move(row));
                return true;
            };

            // Boundary space: columns of the incoming differential at q.
            if (i > 0) {
                const GradedSparseMatrix& din = cc.diff[i - 1];
                for (int s = 0; s < din.ncols(); ++s) {
                    if (din.col_q[s] != q || din.cols[s].empty())
                        continue;
                    SparseVec v;
                    for (auto& [r, x] : din.cols[s])
                        v[r] = x.c;
                    add_echelon(std::move(v), -1);
                }
            }

            // Kernel of the outgoing differential restricted to degree q.
            std::vector<SparseVec> kernel;
            {
                std::vector<int> gens;
                for (int g = 0; g < cc.generators_at(i); ++g)
                    if (cc.gen_q[i][g] == q)
                        gens.push_back(g);
                struct Pivot {
                    int row;
                    SparseVec col;
                    SparseVec trans;
                };
                std::vector<Pivot> pivots;
                for (int g : gens) {
                    SparseVec v;
                    if (i + 1 < cc.levels())
                        for (auto& [r, x] : cc.diff[i].cols[g])
                            v[r] = x.c;
                    SparseVec t;
                    t[g] = Rational::one();
                    for (auto& p : pivots) {
                        auto it = v.find(p.row);
                        if (it == v.end())
                            continue;
                        Rational f = it->second;
                        axpy(v, -f, p.col);
                        axpy(t, -f, p.trans);
                    }
                    if (v.empty()) {
                        kernel.push_back(std::move(t));
                    } else {
                        Rational lead = v.begin()->second;
                        for (auto& [r, x] : v)
                            x = x / lead;
                        for (auto& [r, x] : t)
                            x = x / lead;
                        pivots.push_back({v.begin()->first, std::move(v), std::move(t)});
                    }
                }
            }

            for (SparseVec& z : kernel) {
                SparseVec copy = z;
                // Residue after reduction is the stored representative.
                SparseVec residue = copy;
                for (auto& row : bd.echelon) {
                    auto it = residue.find(row.pivot);
                    if (it == residue.end())
                        continue;
                    Rational f = it->second;
                    axpy(residue, -f, row.vec);
                }
                if (residue.empty())
                    continue;
                int idx = static_cast<int>(bd.reps.size());
                Rational lead = residue.begin()->second;
                SparseVec norm = residue;
                if (!lead.is_one())
                    for (auto& [i2, x] : norm)
                        x = x / lead;
                EchelonRow row{norm.begin()->first, norm, idx};
                auto pos = std::lower_bound(bd.echelon.begin(), bd.echelon.end(), row.pivot,
                                            [](const EchelonRow& r, int p) { return r.pivot < p; });
                bd.echelon.insert(pos, std::move(row));
                bd.reps.push_back(std::move(norm));
            }
            // Keep zero-homology bidegrees too: their boundary echelon is
            // still needed to reduce images of induced maps.
            data_[{cc.h_of_level(i), q}] = std::move(bd);
        }
    }
}

const RationalHomologyClasses::Bidegree& RationalHomologyClasses::empty_bidegree() {
    static const Bidegree empty;
    return empty;
}

const RationalHomologyClasses::Bidegree& RationalHomologyClasses::at(int h, int q) const {
    auto it = data_.find({h, q});
    return it == data_.end() ? empty_bidegree() : it->second;
}

int RationalHomologyClasses::dim(int h, int q) const { return static_cast<int>(at(h, q).reps.size()); }

std::map<std::pair<int, int>, int> RationalHomologyClasses::all_dims() const {
    std::map<std::pair<int, int>, int> out;
    for (auto& [hq, bd] : data_)
        if (!bd.reps.empty())
            out[hq] = static_cast<int>(bd.reps.size());
    return out;
}

std::vector<Rational> RationalHomologyClasses::coordinates(int h, int q,
                                                           const std::map<int, Rational>& cycle) const {
    const Bidegree& bd = at(h, q);
    SparseVec v = cycle;
    std::vector<Rational> coords(bd.reps.size());
    for (auto& row : bd.echelon) {
        auto it = v.find(row.pivot);
        if (it == v.end())
            continue;
        Rational f = it->second;
        if (row.h_index >= 0)
            coords[row.h_index] = f;
        axpy(v, -f, row.vec);
    }
    if (!v.empty())
        throw InternalError("vector is not a cycle class at the requested bidegree");
    return coords;
}

const std::vector<std::map<int, Rational>>& RationalHomologyClasses::representatives(int h, int q) const {
    return at(h, q).reps;
}

int InducedBlock::rank() const {
    std::vector<std::vector<Rational>> a = m;
    int rk = 0;
    int nr = rows, nc = cols;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int pr = -1;
        for (int i = r; i < nr; ++i)
            if (!a[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0)
            continue;
        std::swap(a[r], a[pr]);
        for (int i = r + 1; i < nr; ++i) {
            if (a[i][c].is_zero())
                continue;
            Rational f = a[i][c] / a[r][c];
            for (int j = c; j < nc; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
        }
        ++r;
        ++rk;
    }
    return rk;
}

bool InducedBlock::is_iso() const { return rows == cols && rank() == rows; }

InducedBlock induced_map(const ChainMap& f, const RationalHomologyClasses& src_h,
                         const RationalHomologyClasses& tgt_h, int h, int q) {
    InducedBlock out;
    int th = h + f.shift_h;
    int tq = q + f.shift_q;
    out.cols = src_h.dim(h, q);
    out.rows = tgt_h.dim(th, tq);
    out.m.assign(out.rows, std::vector<Rational>(out.cols));
    if (out.cols == 0)
        return out;
    int sl = f.source->level_of_h(h);
    const auto& reps = src_h.representatives(h, q);
    for (int j = 0; j < out.cols; ++j) {
        std::map<int, Rational> image;
        if (sl >= 0 && sl < f.source->levels()) {
            const GradedSparseMatrix& comp = f.components[sl];
            for (auto& [g, x] : reps[j]) {
                if (g >= comp.ncols())
                    throw InternalError("induced map: representative outside component");
                for (auto& [r, v] : comp.cols[g]) {
                    Rational nv = image[r] + x * v.c;
                    if (nv.is_zero())
                        image.erase(r);
                    else
                        image[r] = nv;
                }
            }
        }
        std::vector<Rational> coords = tgt_h.coordinates(th, tq, image);
        for (int i = 0; i < out.rows; ++i)
            out.m[i][j] = coords[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Long exact sequence verification

namespace {

// Builds the degree-(0,0) map A -> B' (target re-graded) with f's components.
ChainMap regrade_to_zero_shift(const ChainMap& f, std::shared_ptr<const ChainComplex> bp) {
    ChainMap g;
    g.source = f.source;
    g.target = std::move(bp);
    g.shift_h = 0;
    g.shift_q = 0;
    g.components = f.components;
    return g;
}

} // namespace

LadderReport les_ranks(const ChainMap& f) {
    f.check();
    LadderReport report;
    auto a = f.source;
    auto bp = std::make_shared<const ChainComplex>(shift(*f.target, -f.shift_h, -f.shift_q));
    auto co = std::make_shared<const ChainComplex>(cone(f));

    ChainMap f0 = regrade_to_zero_shift(f, bp);

    // Inclusion B' -> Cone and projection Cone -> A[1] at chain level.
    ChainMap incl;
    incl.source = bp;
    incl.target = co;
    incl.shift_h = 0;
    incl.shift_q = 0;
    incl.components.resize(bp->levels());
    for (int i = 0; i < bp->levels(); ++i) {
        int h = bp->h_of_level(i);
        int cl = co->level_of_h(h);
        GradedSparseMatrix m;
        m.ring = bp->ring;
        m.col_q = bp->gen_q[i];
        if (cl >= 0 && cl < co->levels())
            m.row_q = co->gen_q[cl];
        m.cols.resize(m.ncols());
        for (int s = 0; s < m.ncols(); ++s)
            m.cols[s].push_back({s, Coef(Rational::one(), 0)}); // B-part comes first in cone levels
        incl.components[i] = std::move(m);
    }

    ChainMap proj;
    proj.source = co;
    proj.target = a;
    proj.shift_h = 1;
    proj.shift_q = 0;
    proj.components.resize(co->levels());
    for (int i = 0; i < co->levels(); ++i) {
        int h = co->h_of_level(i);
        int al = a->level_of_h(h + 1);
        GradedSparseMatrix m;
        m.ring = co->ring;
        m.col_q = co->gen_q[i];
        if (al >= 0 && al < a->levels())
            m.row_q = a->gen_q[al];
        m.cols.resize(m.ncols());
        int bl = bp->level_of_h(h);
        int nb = (bl >= 0 && bl < bp->levels()) ? bp->generators_at(bl) : 0;
        for (int s = nb; s < m.ncols(); ++s)
            m.cols[s].push_back({s - nb, Coef(Rational::one(), 0)});
        proj.components[i] = std::move(m);
    }

    RationalHomologyClasses ha(a), hb(bp), hc(co);

    // All bidegrees where anything lives.
    std::set<std::pair<int, int>> bidegs;
    for (auto& [hq, d] : ha.all_dims())
        bidegs.insert(hq);
    for (auto& [hq, d] : hb.all_dims())
        bidegs.insert(hq);
    for (auto& [hq, d] : hc.all_dims())
        bidegs.insert(hq);

    auto fail = [&](const std::string& msg) {
        report.exact = false;
        report.failures.push_back(msg);
    };

    for (auto [h, q] : bidegs) {
        int da = ha.dim(h, q), db = hb.dim(h, q), dc = hc.dim(h, q);
        report.ranks[{h, q}] = {da, db, dc};
    }

    // Node checks: ker(outgoing) = im(incoming) at every spot, which needs
    // the maps at neighboring degrees too.
    std::set<std::pair<int, int>> check_spots = bidegs;
    for (auto [h, q] : bidegs) {
        check_spots.insert({h - 1, q});
        check_spots.insert({h + 1, q});
    }
    for (auto [h, q] : check_spots) {
        // delta: H^{h-1}(Co) -> H^h(A) is induced by proj.
        InducedBlock delta = induced_map(proj, hc, ha, h - 1, q);
        InducedBlock fstar = induced_map(f0, ha, hb, h, q);
        InducedBlock istar = induced_map(incl, hb, hc, h, q);
        InducedBlock delta_next = induced_map(proj, hc, ha, h, q);

        auto compose_rank_zero = [&](const InducedBlock& second, const InducedBlock& first) {
            // second o first must vanish.
            for (int j = 0; j < first.cols; ++j)
                for (int i = 0; i < second.rows; ++i) {
                    Rational acc;
                    for (int k = 0; k < first.rows; ++k)
                        acc += second.m[i][k] * first.m[k][j];
                    if (!acc.is_zero())
                        return false;
                }
            return true;
        };

        int dim_a = ha.dim(h, q), dim_b = hb.dim(h, q), dim_c = hc.dim(h, q);
        char buf[128];
        if (dim_a - fstar.rank() != delta.rank()) {
            std::snprintf(buf, sizeof(buf), "exactness at H(source) h=%d q=%d", h, q);
            fail(buf);
        }
        if (dim_b - istar.rank() != fstar.rank()) {
            std::snprintf(buf, sizeof(buf), "exactness at H(target) h=%d q=%d", h, q);
            fail(buf);
        }
        if (dim_c - delta_next.rank() != istar.rank()) {
            std::snprintf(buf, sizeof(buf), "exactness at H(cone) h=%d q=%d", h, q);
            fail(buf);
        }
        if (fstar.cols > 0 && delta.cols > 0 && !compose_rank_zero(fstar, delta)) {
            std::snprintf(buf, sizeof(buf), "composite f* o delta nonzero h=%d q=%d", h, q);
            fail(buf);
        }
        if (istar.cols > 0 && fstar.cols > 0 && !compose_rank_zero(istar, fstar)) {
            std::snprintf(buf, sizeof(buf), "composite incl* o f* nonzero h=%d q=%d", h, q);
            fail(buf);
        }
        if (delta_next.cols > 0 && istar.cols > 0 && !compose_rank_zero(delta_next, istar)) {
            std::snprintf(buf, sizeof(buf), "composite delta o incl* nonzero h=%d q=%d", h, q);
            fail(buf);
        }
    }
    return report;
}

} // namespace twistkh
