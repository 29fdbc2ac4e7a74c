// khovanov.cpp -- cube construction, twist splicing, stabilization maps.

#include "twistkh/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>

namespace twistkh {

Flavor flavor_from_string(const std::string& s) {
    if (s == "unreduced")
        return Flavor::Unreduced;
    if (s == "reduced")
        return Flavor::Reduced;
    if (s == "equivariant")
        return Flavor::Equivariant;
    throw ValidationError("unknown flavor '" + s + "' (expected unreduced|reduced|equivariant)");
}

std::string flavor_to_string(Flavor f) {
    switch (f) {
    case Flavor::Unreduced:
        return "unreduced";
    case Flavor::Reduced:
        return "reduced";
    case Flavor::Equivariant:
        return "equivariant";
    }
    return "?";
}

FrobeniusData frobenius_data(const Theory& t) {
    if (t.n != 2)
        throw ValidationError("only n = 2 is realized");
    bool eq = t.flavor == Flavor::Equivariant;
    Coef one(Rational::one(), 0);
    Coef a(Rational::one(), 1);
    FrobeniusData f;
    // basis: 0 = "1", 1 = "X"; X*X = a.
    f.mult[0][0] = {{0, one}};
    f.mult[0][1] = {{1, one}};
    f.mult[1][0] = {{1, one}};
    f.mult[1][1] = eq ? std::vector<std::pair<int, Coef>>{{0, a}} : std::vector<std::pair<int, Coef>>{};
    f.comult[0] = {{0 * 2 + 1, one}, {1 * 2 + 0, one}};
    f.comult[1] = eq ? std::vector<std::pair<int, Coef>>{{1 * 2 + 1, one}, {0 * 2 + 0, a}}
                     : std::vector<std::pair<int, Coef>>{{1 * 2 + 1, one}};
    f.dot[0] = {{1, one}};
    f.dot[1] = eq ? std::vector<std::pair<int, Coef>>{{0, a}} : std::vector<std::pair<int, Coef>>{};
    f.counit[0] = Coef();
    f.counit[1] = one;
    return f;
}

TwistComplex krasner_twist_complex(int k, int n) {
    if (k < 0)
        throw ValidationError("negative twist complexes are not realized; use diagram surgery");
    if (n < 2)
        throw ValidationError("twist complex requires n >= 2");
    TwistComplex tc;
    tc.k = k;
    tc.n = n;
    if (k == 0) {
        tc.objects.push_back({true, 0, 0});
        return tc;
    }
    for (int j = 0; j < 2 * k; ++j) {
        int m = j / 2;
        int q = (j % 2 == 0) ? 1 - (2 * m + 1) * n : -1 - (2 * m + 1) * n;
        tc.objects.push_back({false, j, q});
    }
    tc.objects.push_back({true, 2 * k, -2 * k * n});
    for (int j = 0; j + 1 < 2 * k; ++j)
        tc.maps.push_back(j % 2 == 0 ? TwistMapLabel::XDiff : TwistMapLabel::AMap);
    tc.maps.push_back(TwistMapLabel::Saddle);
    return tc;
}

// ---------------------------------------------------------------------------
// Shared build machinery

namespace {

struct CircleStructure {
    std::vector<int> circle_of_elem; // 1-based elements
    int n = 0;
};

// Elements are the diagram edges plus, when a site is active, the post-cut
// halves of the two site strands.
struct SiteContext {
    const PlanarDiagram* d = nullptr;
    Theory theory;
    bool has_site = false;
    bool fold = false;
    int e1 = 0, e2 = 0;
    int elem_a_out = 0; // strand A beyond the disk (fold: the tip arc)
    int elem_b_out = 0; // strand B beyond the disk (fold: the return half)
    int n_elements = 0;
    int nc = 0;
    int c_plus = 0, c_minus = 0;
    int bp_edge = 0; // 0 when not reduced

    std::vector<CircleStructure> through;
    std::vector<CircleStructure> cross;

    static SiteContext make(const PlanarDiagram& d, const Theory& t,
                            const TwistSite* site) {
        SiteContext ctx;
        ctx.d = &d;
        ctx.theory = t;
        if (t.n != 2)
            throw ValidationError("only n = 2 is realized");
        validate_diagram(d);
        ctx.nc = static_cast<int>(d.crossings.size());
        CrossingSigns cs = crossing_signs(d);
        ctx.c_plus = cs.c_plus;
        ctx.c_minus = cs.c_minus;
        if (t.flavor == Flavor::Reduced) {
            if (!d.basepoint)
                throw ValidationError("reduced flavor requires a basepoint");
            ctx.bp_edge = *d.basepoint;
        }
        if (site) {
            validate_site(d, *site);
            ctx.has_site = true;
            ctx.e1 = site->e1;
            ctx.e2 = site->e2;
            ctx.fold = site->e1 == site->e2;
            ctx.elem_a_out = d.n_edges + 1;
            ctx.elem_b_out = d.n_edges + 2;
            ctx.n_elements = d.n_edges + 2;
            if (ctx.bp_edge && (ctx.bp_edge == ctx.e1 || ctx.bp_edge == ctx.e2))
                throw ValidationError("basepoint must not lie on the twist-site strands");
        } else {
            ctx.n_elements = d.n_edges;
        }
        ctx.through.resize(std::size_t(1) << ctx.nc);
        if (ctx.has_site)
            ctx.cross.resize(std::size_t(1) << ctx.nc);
        for (unsigned v = 0; v < (1u << ctx.nc); ++v) {
            ctx.through[v] = ctx.compute(v, false);
            if (ctx.has_site)
                ctx.cross[v] = ctx.compute(v, true);
        }
        return ctx;
    }

    int element_at(int ci, int pos) const {
        const Crossing& x = d->crossings[ci];
        int e = x.e[pos];
        if (!has_site)
            return e;
        bool is_in = (pos == 0) || (pos == (x.over_in_at_d ? 3 : 1));
        if (!is_in)
            return e; // start slot: the pre-cut half keeps the edge label
        if (fold) {
            if (e == e1)
                return elem_b_out; // the edge's end lies beyond both cuts
            return e;
        }
        if (e == e1)
            return elem_a_out;
        if (e == e2)
            return elem_b_out;
        return e;
    }

    CircleStructure compute(unsigned v, bool cross_wiring) const {
        int n = n_elements;
        std::vector<int> parent(n + 1);
        for (int i = 0; i <= n; ++i)
            parent[i] = i;
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

        for (int ci = 0; ci < nc; ++ci) {
            int ea = element_at(ci, 0), eb = element_at(ci, 1);
            int ec = element_at(ci, 2), ed = element_at(ci, 3);
            if (((v >> ci) & 1) == 0) {
                unite(ea, eb);
                unite(ec, ed);
            } else {
                unite(ea, ed);
                unite(eb, ec);
            }
        }
        if (has_site) {
            if (!fold) {
                if (cross_wiring) {
                    unite(e1, elem_b_out);
                    unite(e2, elem_a_out);
                } else {
                    unite(e1, elem_a_out);
                    unite(e2, elem_b_out);
                }
            } else {
                // pre = e1, mid = elem_a_out, post = elem_b_out.
                if (cross_wiring) {
                    unite(e1, elem_b_out);
                } else {
                    unite(e1, elem_a_out);
                    unite(elem_a_out, elem_b_out);
                }
            }
            if (d->crossings.empty())
                unite(e1, elem_b_out); // 0-crossing circle: pre and post are one arc
        }
        CircleStructure out;
        out.circle_of_elem.assign(n + 1, -1);
        std::map<int, int> reps;
        for (int e = 1; e <= n; ++e) {
            int r = find(e);
            auto [it, inserted] = reps.insert({r, out.n});
            if (inserted)
                ++out.n;
            out.circle_of_elem[e] = it->second;
        }
        return out;
    }

    const CircleStructure& circles(unsigned v, bool cross_wiring) const {
        return cross_wiring ? cross[v] : through[v];
    }
};

// Local data of one realized twist object.
struct LocalObject {
    bool cross_wiring = false; // true for V (the transverse smoothing)
    int h = 0;
    int q = 0; // realized shift
};

std::vector<LocalObject> realize_objects(const TwistComplex& tc) {
    std::vector<LocalObject> out;
    for (std::size_t o = 0; o < tc.objects.size(); ++o) {
        const TwistObject& obj = tc.objects[o];
        if (obj.h != static_cast<int>(o))
            throw InternalError("twist complex object out of position");
        out.push_back({!obj.is_z, obj.h, -obj.q});
    }
    return out;
}

// Saddle between two circle structures differing by one band surgery.
struct SaddleData {
    bool merge = false;
    std::vector<int> bitpos;    // source circle -> target circle (merge) or scratch
    int c1 = -1, c2 = -1;       // merge: source circles joining
    int tm = -1;                // merge: their common target circle
    int cs = -1, t1 = -1, t2 = -1; // split: source circle and its two targets
    std::vector<int> s_of_t;    // split: target circle -> source circle

    static SaddleData analyze(const CircleStructure& S, const CircleStructure& T, int n_elements) {
        SaddleData sd;
        if (T.n == S.n - 1) {
            sd.merge = true;
            sd.bitpos.assign(S.n, -1);
            for (int e = 1; e <= n_elements; ++e) {
                int s = S.circle_of_elem[e], t = T.circle_of_elem[e];
                if (sd.bitpos[s] == -1)
                    sd.bitpos[s] = t;
                else if (sd.bitpos[s] != t)
                    throw InternalError("saddle correspondence not well defined");
            }
            std::vector<int> seen(T.n, -1);
            for (int s = 0; s < S.n; ++s) {
                int t = sd.bitpos[s];
                if (seen[t] < 0)
                    seen[t] = s;
                else {
                    sd.c1 = seen[t];
                    sd.c2 = s;
                    sd.tm = t;
                }
            }
            if (sd.c1 < 0)
                throw InternalError("merge saddle without a merged pair");
        } else if (T.n == S.n + 1) {
            sd.merge = false;
            sd.s_of_t.assign(T.n, -1);
            for (int e = 1; e <= n_elements; ++e) {
                int s = S.circle_of_elem[e], t = T.circle_of_elem[e];
                if (sd.s_of_t[t] == -1)
                    sd.s_of_t[t] = s;
                else if (sd.s_of_t[t] != s)
                    throw InternalError("saddle correspondence not well defined");
            }
            std::vector<int> first(S.n, -1);
            for (int t = 0; t < T.n; ++t) {
                int s = sd.s_of_t[t];
                if (first[s] < 0)
                    first[s] = t;
                else {
                    sd.cs = s;
                    sd.t1 = first[s];
                    sd.t2 = t;
                }
            }
            if (sd.cs < 0)
                throw InternalError("split saddle without a split circle");
        } else {
            throw InternalError("saddle must change the circle count by one");
        }
        return sd;
    }

    // Applies the TQFT band map to a labeling mask (bit set = X); `eq` keeps
    // the a-multiples, otherwise they vanish.
    void apply(uint32_t mask, bool eq, std::vector<std::pair<uint32_t, Coef>>& out) const {
        out.clear();
        Coef one(Rational::one(), 0);
        Coef a(Rational::one(), 1);
        if (merge) {
            uint32_t base = 0;
            for (std::size_t s = 0; s < bitpos.size(); ++s) {
                if (static_cast<int>(s) == c1 || static_cast<int>(s) == c2)
                    continue;
                if ((mask >> s) & 1)
                    base |= 1u << bitpos[s];
            }
            bool x1 = (mask >> c1) & 1, x2 = (mask >> c2) & 1;
            if (!x1 && !x2)
                out.push_back({base, one});
            else if (x1 != x2)
                out.push_back({base | (1u << tm), one});
            else if (eq)
                out.push_back({base, a});
        } else {
            uint32_t base = 0;
            for (std::size_t t = 0; t < s_of_t.size(); ++t) {
                if (static_cast<int>(t) == t1 || static_cast<int>(t) == t2)
                    continue;
                if ((mask >> s_of_t[t]) & 1)
                    base |= 1u << t;
            }
            if (!((mask >> cs) & 1)) {
                out.push_back({base | (1u << t2), one});
                out.push_back({base | (1u << t1), one});
            } else {
                out.push_back({base | (1u << t1) | (1u << t2), one});
                if (eq)
                    out.push_back({base, a});
            }
        }
    }
};

void finalize_columns(GradedSparseMatrix& m);

struct BuiltComplex {
    std::shared_ptr<ChainComplex> complex;
    std::vector<LocalObject> objects;
    // layout[v * n_objects + o] = (level, first generator offset); -1 level
    // marks an impossible slot.
    std::vector<std::pair<int, int>> layout;
    int n_objects = 0;

    std::pair<int, int> slot(unsigned v, int o) const { return layout[v * n_objects + o]; }
};

class Builder {
  public:
    Builder(const SiteContext& ctx, const TwistComplex& tc) : ctx_(ctx), tc_(tc) {
        if (tc.n != 2)
            throw ValidationError("only n = 2 twist complexes can be spliced");
        objects_ = realize_objects(tc);
        eq_ = ctx.theory.flavor == Flavor::Equivariant;
        reduced_ = ctx.theory.flavor == Flavor::Reduced;
    }

    BuiltComplex build() {
        const int nobj = static_cast<int>(objects_.size());
        const int nc = ctx_.nc;
        const unsigned nvert = 1u << nc;
        int max_local_h = objects_.back().h;
        int h_min = -ctx_.c_minus;
        int n_levels = nc + max_local_h + 1;

        BuiltComplex out;
        out.objects = objects_;
        out.n_objects = nobj;
        out.layout.assign(static_cast<std::size_t>(nvert) * nobj, {-1, -1});
        out.complex = std::make_shared<ChainComplex>();
        ChainComplex& c = *out.complex;
        c.ring = ctx_.theory.ring();
        c.h_min = h_min;
        c.gen_q.resize(n_levels);

        // Layout pass: vertices ascending, then local objects.
        for (unsigned v = 0; v < nvert; ++v) {
            int w = std::popcount(v);
            for (int o = 0; o < nobj; ++o) {
                int level = w + objects_[o].h;
                auto& gq = c.gen_q[level];
                int offset = static_cast<int>(gq.size());
                out.layout[v * static_cast<std::size_t>(nobj) + o] = {level, offset};
                const CircleStructure& cs = ctx_.circles(v, objects_[o].cross_wiring);
                int nfree = cs.n - (reduced_ ? 1 : 0);
                if (nfree < 0 || cs.n > 30)
                    throw InternalError("circle count out of range");
                int count = 1 << nfree;
                int base_q = w + ctx_.c_plus - 2 * ctx_.c_minus + objects_[o].q + (reduced_ ? 1 : 0);
                int bp = bp_circle(v, o, cs);
                for (int cm = 0; cm < count; ++cm) {
                    uint32_t mask = expand_mask(cm, bp);
                    gq.push_back(base_q + cs.n - 2 * std::popcount(mask));
                }
            }
        }

        // Differentials.
        c.diff.resize(std::max(0, n_levels - 1));
        for (int l = 0; l + 1 < n_levels; ++l) {
            GradedSparseMatrix& m = c.diff[l];
            m.ring = c.ring;
            m.col_q = c.gen_q[l];
            m.row_q = c.gen_q[l + 1];
            m.cols.resize(m.ncols());
        }

        std::vector<std::pair<uint32_t, Coef>> terms;
        for (unsigned v = 0; v < nvert; ++v) {
            int w = std::popcount(v);
            for (int o = 0; o < nobj; ++o) {
                auto [level, offset] = out.slot(v, o);
                const CircleStructure& src = ctx_.circles(v, objects_[o].cross_wiring);
                int bp_src = bp_circle(v, o, src);
                int nfree = src.n - (reduced_ ? 1 : 0);
                GradedSparseMatrix* m = level + 1 < n_levels ? &c.diff[level] : nullptr;
                if (!m)
                    continue;

                // External cube edges (same local object).
                for (int ci = 0; ci < nc; ++ci) {
                    if ((v >> ci) & 1)
                        continue;
                    unsigned v2 = v | (1u << ci);
                    const CircleStructure& tgt = ctx_.circles(v2, objects_[o].cross_wiring);
                    SaddleData sd = SaddleData::analyze(src, tgt, ctx_.n_elements);
                    int bp_tgt = bp_circle(v2, o, tgt);
                    auto [tl, toff] = out.slot(v2, o);
                    if (tl != level + 1)
                        throw InternalError("cube edge level mismatch");
                    Rational sgn(std::popcount(v & ((1u << ci) - 1)) % 2 == 0 ? 1 : -1);
                    for (int cm = 0; cm < (1 << nfree); ++cm) {
                        uint32_t mask = expand_mask(cm, bp_src);
                        sd.apply(mask, eq_, terms);
                        int col = offset + cm;
                        for (auto& [tmask, coef] : terms)
                            add_entry(*m, toff, bp_tgt, tmask, col, Coef(coef.c * sgn, coef.ap));
                    }
                }

                // Local zig-zag map to object o+1.
                if (o + 1 < nobj) {
                    const LocalObject& nxt = objects_[o + 1];
                    const CircleStructure& tgt = ctx_.circles(v, nxt.cross_wiring);
                    int bp_tgt = bp_circle(v, o + 1, tgt);
                    auto [tl, toff] = out.slot(v, o + 1);
                    if (tl != level + 1)
                        throw InternalError("local edge level mismatch");
                    Rational sgn(w % 2 == 0 ? 1 : -1);
                    TwistMapLabel label = tc_.maps[o];
                    int cx2 = src.circle_of_elem[ctx_.elem_a_out];
                    int cx4 = src.circle_of_elem[ctx_.elem_b_out];
                    for (int cm = 0; cm < (1 << nfree); ++cm) {
                        uint32_t mask = expand_mask(cm, bp_src);
                        int col = offset + cm;
                        if (label == TwistMapLabel::Saddle) {
                            SaddleData sd = SaddleData::analyze(src, tgt, ctx_.n_elements);
                            sd.apply(mask, eq_, terms);
                            for (auto& [tmask, coef] : terms)
                                add_entry(*m, toff, bp_tgt, tmask, col, Coef(coef.c * sgn, coef.ap));
                        } else {
                            Rational s4 = label == TwistMapLabel::XDiff ? Rational(-1) : Rational(1);
                            emit_dot(mask, cx2, sgn, *m, toff, bp_tgt, col);
                            emit_dot(mask, cx4, sgn * s4, *m, toff, bp_tgt, col);
                        }
                    }
                }
            }
        }

        for (auto& d : c.diff)
            finalize_columns(d);
        c.check();
        return out;
    }

  private:
    int bp_circle(unsigned v, int o, const CircleStructure& cs) const {
        if (!reduced_)
            return -1;
        (void)v;
        (void)o;
        return cs.circle_of_elem[ctx_.bp_edge];
    }

    uint32_t expand_mask(int compressed, int bp) const {
        if (bp < 0)
            return static_cast<uint32_t>(compressed);
        uint32_t low = compressed & ((1u << bp) - 1);
        uint32_t high = static_cast<uint32_t>(compressed) >> bp;
        return low | (1u << bp) | (high << (bp + 1));
    }
    int compress_mask(uint32_t mask, int bp) const {
        if (bp < 0)
            return static_cast<int>(mask);
        if (!((mask >> bp) & 1))
            throw InternalError("basepoint circle lost its X label");
        uint32_t low = mask & ((1u << bp) - 1);
        uint32_t high = mask >> (bp + 1);
        return static_cast<int>(low | (high << bp));
    }

    void add_entry(GradedSparseMatrix& m, int toff, int bp_tgt, uint32_t tmask, int col, Coef coef) {
        if (coef.is_zero())
            return;
        if (bp_tgt >= 0 && !((tmask >> bp_tgt) & 1))
            return; // leaves the reduced subcomplex only with coefficient a = 0
        int row = toff + compress_mask(tmask, bp_tgt);
        m.cols[col].push_back({row, coef});
    }

    void emit_dot(uint32_t mask, int circle, Rational sgn, GradedSparseMatrix& m, int toff, int bp_tgt,
                  int col) {
        if (!((mask >> circle) & 1)) {
            add_entry(m, toff, bp_tgt, mask | (1u << circle), col, Coef(sgn, 0));
        } else if (eq_) {
            add_entry(m, toff, bp_tgt, mask & ~(1u << circle), col, Coef(sgn, 1));
        }
    }

    const SiteContext& ctx_;
    const TwistComplex& tc_;
    std::vector<LocalObject> objects_;
    bool eq_ = false;
    bool reduced_ = false;
};

// The identity-sized component matrices for F and G between two built
// complexes sharing a SiteContext.
GradedSparseMatrix empty_component(Ring ring, const std::vector<int>& row_q,
                                   const std::vector<int>& col_q) {
    GradedSparseMatrix m;
    m.ring = ring;
    m.row_q = row_q;
    m.col_q = col_q;
    m.cols.resize(m.ncols());
    return m;
}

// Sorts columns by row and merges duplicate entries (two dots may land on
// the same labeling when the site endpoints share a circle).
void finalize_columns(GradedSparseMatrix& m) {
    for (auto& col : m.cols) {
        std::sort(col.begin(), col.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, Coef>> merged;
        for (auto& [r, v] : col) {
            if (!merged.empty() && merged.back().first == r)
                merged.back().second = add_same_degree(merged.back().second, v);
            else
                merged.push_back({r, v});
        }
        col.clear();
        for (auto& [r, v] : merged)
            if (!v.is_zero())
                col.push_back({r, v});
    }
}

} // namespace

ChainComplex cube(const PlanarDiagram& d, const Theory& t) {
    SiteContext ctx = SiteContext::make(d, t, nullptr);
    TwistComplex trivial = krasner_twist_complex(0, 2);
    Builder b(ctx, trivial);
    return *b.build().complex;
}

ChainComplex splice(const PlanarDiagram& d, std::size_t site_index, const TwistComplex& tc,
                    const Theory& t) {
    if (site_index >= d.sites.size())
        throw ValidationError("diagram has no twist site with index " + std::to_string(site_index));
    SiteContext ctx = SiteContext::make(d, t, &d.sites[site_index]);
    Builder b(ctx, tc);
    return *b.build().complex;
}

namespace {

struct TwoComplexes {
    SiteContext ctx;
    TwistComplex tci, tcj;
    BuiltComplex bi, bj;
};

TwoComplexes build_pair(const PlanarDiagram& d, std::size_t site_index, int i, int j, const Theory& t) {
    if (i < 0 || j <= i)
        throw ValidationError("stabilization maps require 0 <= i < j");
    if (site_index >= d.sites.size())
        throw ValidationError("diagram has no twist site with index " + std::to_string(site_index));
    TwoComplexes tc;
    tc.ctx = SiteContext::make(d, t, &d.sites[site_index]);
    tc.tci = krasner_twist_complex(i, 2);
    tc.tcj = krasner_twist_complex(j, 2);
    Builder bi(tc.ctx, tc.tci), bj(tc.ctx, tc.tcj);
    tc.bi = bi.build();
    tc.bj = bj.build();
    return tc;
}

} // namespace

SplicedPair map_F(const PlanarDiagram& d, std::size_t site_index, int i, int j, const Theory& t) {
    TwoComplexes tc = build_pair(d, site_index, i, j, t);
    bool eq = t.flavor == Flavor::Equivariant;
    bool reduced = t.flavor == Flavor::Reduced;

    SplicedPair out;
    out.source = tc.bi.complex;
    out.target = tc.bj.complex;
    out.map.source = tc.bi.complex;
    out.map.target = tc.bj.complex;
    out.map.shift_h = 0;
    out.map.shift_q = 0;

    const ChainComplex& src = *tc.bi.complex;
    const ChainComplex& tgt = *tc.bj.complex;
    out.map.components.resize(src.levels());
    for (int l = 0; l < src.levels(); ++l) {
        int tl = tgt.level_of_h(src.h_of_level(l));
        out.map.components[l] =
            empty_component(src.ring, (tl >= 0 && tl < tgt.levels()) ? tgt.gen_q[tl] : std::vector<int>{},
                            src.gen_q[l]);
    }

    const unsigned nvert = 1u << tc.ctx.nc;
    std::vector<std::pair<uint32_t, Coef>> terms;
    for (unsigned v = 0; v < nvert; ++v) {
        for (int o = 0; o <= 2 * i; ++o) {
            auto [sl, soff] = tc.bi.slot(v, o);
            auto [tl, toff] = tc.bj.slot(v, o);
            if (sl < 0)
                continue;
            GradedSparseMatrix& m = out.map.components[sl];
            const CircleStructure& scs = tc.ctx.circles(v, tc.bi.objects[o].cross_wiring);
            int bp_src = reduced ? scs.circle_of_elem[tc.ctx.bp_edge] : -1;
            int nfree = scs.n - (reduced ? 1 : 0);
            if (o < 2 * i) {
                // Identity on the shared V objects.
                for (int cm = 0; cm < (1 << nfree); ++cm)
                    m.cols[soff + cm].push_back({toff + cm, Coef(Rational::one(), 0)});
            } else {
                // S' at local degree 2i: reverse saddle from the identity
                // tangle Z into V[2i] of the target zig-zag.
                const CircleStructure& tcs = tc.ctx.circles(v, tc.bj.objects[o].cross_wiring);
                int bp_tgt = reduced ? tcs.circle_of_elem[tc.ctx.bp_edge] : -1;
                SaddleData sd = SaddleData::analyze(scs, tcs, tc.ctx.n_elements);
                for (int cm = 0; cm < (1 << nfree); ++cm) {
                    uint32_t mask =
                        bp_src < 0 ? static_cast<uint32_t>(cm)
                                   : ((cm & ((1u << bp_src) - 1)) | (1u << bp_src) |
                                      ((static_cast<uint32_t>(cm) >> bp_src) << (bp_src + 1)));
                    sd.apply(mask, eq, terms);
                    for (auto& [tmask, coef] : terms) {
                        if (bp_tgt >= 0 && !((tmask >> bp_tgt) & 1))
                            continue;
                        uint32_t ctm = tmask;
                        if (bp_tgt >= 0) {
                            uint32_t low = ctm & ((1u << bp_tgt) - 1);
                            uint32_t high = ctm >> (bp_tgt + 1);
                            ctm = low | (high << bp_tgt);
                        }
                        m.cols[soff + cm].push_back({toff + static_cast<int>(ctm), coef});
                    }
                }
            }
        }
    }
    for (auto& comp : out.map.components)
        finalize_columns(comp);
    out.map.check();
    return out;
}

SplicedPair map_G(const PlanarDiagram& d, std::size_t site_index, int i, int j, const Theory& t) {
    TwoComplexes tc = build_pair(d, site_index, i, j, t);
    bool reduced = t.flavor == Flavor::Reduced;

    SplicedPair out;
    out.source = tc.bi.complex;
    out.target = tc.bj.complex;
    out.map.source = tc.bi.complex;
    out.map.target = tc.bj.complex;
    out.map.shift_h = 2 * (j - i);
    out.map.shift_q = 4 * (j - i);

    const ChainComplex& src = *tc.bi.complex;
    const ChainComplex& tgt = *tc.bj.complex;
    out.map.components.resize(src.levels());
    for (int l = 0; l < src.levels(); ++l) {
        int tl = tgt.level_of_h(src.h_of_level(l) + out.map.shift_h);
        out.map.components[l] =
            empty_component(src.ring, (tl >= 0 && tl < tgt.levels()) ? tgt.gen_q[tl] : std::vector<int>{},
                            src.gen_q[l]);
    }

    const unsigned nvert = 1u << tc.ctx.nc;
    for (unsigned v = 0; v < nvert; ++v) {
        for (int o = 0; o <= 2 * i; ++o) {
            int o2 = o + 2 * (j - i);
            auto [sl, soff] = tc.bi.slot(v, o);
            auto [tl, toff] = tc.bj.slot(v, o2);
            if (sl < 0)
                continue;
            const CircleStructure& scs = tc.ctx.circles(v, tc.bi.objects[o].cross_wiring);
            if (tc.bi.objects[o].cross_wiring != tc.bj.objects[o2].cross_wiring)
                throw InternalError("G component between different wirings");
            int nfree = scs.n - (reduced ? 1 : 0);
            GradedSparseMatrix& m = out.map.components[sl];
            for (int cm = 0; cm < (1 << nfree); ++cm)
                m.cols[soff + cm].push_back({toff + cm, Coef(Rational::one(), 0)});
        }
    }
    for (auto& comp : out.map.components)
        finalize_columns(comp);
    out.map.check();
    return out;
}

BigradedHomology homology_of(const ChainComplex& c, int threads) {
    ChainComplex reduced = simplify(c);
    return homology(reduced, threads);
}

BigradedHomology khovanov_homology(const PlanarDiagram& d, const Theory& t, int threads) {
    return homology_of(cube(d, t), threads);
}

int s_invariant(const PlanarDiagram& d, int threads) {
    Theory t;
    t.flavor = Flavor::Equivariant;
    BigradedHomology h = khovanov_homology(d, t, threads);
    std::vector<std::pair<int, int>> free_gens; // (q, rank)
    for (auto& [hq, r] : h.free_ranks) {
        if (r == 0)
            continue;
        if (hq.first != 0)
            throw InternalError("equivariant free part outside homological degree 0");
        free_gens.push_back({hq.second, r});
    }
    int total = 0;
    for (auto& [q, r] : free_gens)
        total += r;
    if (total != 2 || free_gens.size() != 2 || free_gens[1].first - free_gens[0].first != 2)
        throw InternalError("equivariant free part is not two generators at s -+ 1");
    int s = (free_gens[0].first + free_gens[1].first) / 2; // Rasmussen normalization
    return -s;                                             // s_2 = -s
}

StableHomology stable_homology(const PlanarDiagram& d, std::size_t site_index, const Theory& t,
                               int h_min, int h_max, int threads) {
    if (h_min > h_max)
        throw ValidationError("empty stability window");
    CrossingSigns cs = crossing_signs(d);
    auto ceil_div = [](int x, int y) { return x / y + ((x % y > 0) ? 1 : 0); };
    int i = std::max(0, ceil_div(h_max + cs.c_minus + 2, 2)) + 1;
    StableHomology out;
    out.i_used = i;
    out.certified_up_to = 2 * i - cs.c_minus - 2;
    TwistComplex tc = krasner_twist_complex(i, 2);
    BigradedHomology h = homology_of(splice(d, site_index, tc, t), threads);
    for (auto& [hq, r] : h.free_ranks)
        if (hq.first >= h_min && hq.first <= h_max)
            out.groups.free_ranks[hq] = r;
    for (auto& [hqk, c] : h.torsion)
        if (std::get<0>(hqk) >= h_min && std::get<0>(hqk) <= h_max)
            out.groups.torsion[hqk] = c;
    return out;
}

} // namespace twistkh
