// diagram.cpp -- PD parsing, validation, faces, twist surgery.

#include "twistkh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace twistkh {

namespace {

struct Tokenizer {
    const std::string& s;
    std::size_t pos = 0;

    explicit Tokenizer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const std::string& w) {
        skip_ws();
        if (s.compare(pos, w.size(), w) == 0) {
            pos += w.size();
            return true;
        }
        return false;
    }
    int read_int() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))
            ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos == start)
            fail("expected integer");
        return std::stoi(s.substr(start, pos - start));
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("PD parse error at position " + std::to_string(pos) + ": " + msg);
    }
};

// Resolves the over-strand direction of each crossing from edge succession;
// annotated indicates Xp/Xm crossings whose sign was given explicitly.
void orient_crossings(PlanarDiagram& d, const std::vector<int>& annotated) {
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        Crossing& x = d.crossings[i];
        if (d.succ(x.e[0]) != x.e[2])
            throw ValidationError("inconsistent orientation: under-strand of crossing " +
                                  std::to_string(i + 1) + " does not follow edge numbering");
        bool d_to_b = d.succ(x.e[3]) == x.e[1];
        bool b_to_d = d.succ(x.e[1]) == x.e[3];
        if (annotated[i] != 0) {
            bool want_positive = annotated[i] > 0;
            if ((want_positive && !d_to_b) || (!want_positive && !b_to_d))
                throw ValidationError("crossing sign annotation contradicts edge numbering at crossing " +
                                      std::to_string(i + 1));
            x.over_in_at_d = want_positive;
        } else if (d_to_b && b_to_d) {
            throw ValidationError("ambiguous over-strand orientation at crossing " + std::to_string(i + 1) +
                                  " (use Xp/Xm)");
        } else if (d_to_b) {
            x.over_in_at_d = true;
        } else if (b_to_d) {
            x.over_in_at_d = false;
        } else {
            throw ValidationError("inconsistent orientation: over-strand of crossing " +
                                  std::to_string(i + 1) + " does not follow edge numbering");
        }
    }
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(n) {
        for (int i = 0; i < n; ++i)
            parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Slot bookkeeping for traversals and faces.  Slot p of crossing i holds
// edge e[p]; slots a (p=0) and over-in are edge ends, the rest edge starts.
struct SlotIndex {
    // For each edge: the (crossing, position) pairs where it occurs.
    std::map<int, std::vector<std::pair<int, int>>> occ;

    explicit SlotIndex(const PlanarDiagram& d) {
        for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i)
            for (int p = 0; p < 4; ++p)
                occ[d.crossings[i].e[p]].push_back({i, p});
    }
};

bool slot_is_in(const Crossing& x, int p) {
    if (p == 0)
        return true;
    if (p == 2)
        return false;
    return x.over_in_at_d ? (p == 3) : (p == 1);
}

} // namespace

PlanarDiagram parse_pd(const std::string& text) {
    Tokenizer t(text);
    if (!t.eat_word("PD"))
        t.fail("expected 'PD'");
    t.expect('[');
    PlanarDiagram d;
    std::vector<int> annotated;
    t.skip_ws();
    if (!t.eat(']')) {
        while (true) {
            int ann = 0;
            if (t.eat_word("Xp"))
                ann = +1;
            else if (t.eat_word("Xm"))
                ann = -1;
            else if (!t.eat_word("X"))
                t.fail("expected crossing 'X'");
            t.expect('(');
            Crossing x;
            for (int p = 0; p < 4; ++p) {
                x.e[p] = t.read_int();
                if (p < 3)
                    t.expect(',');
            }
            t.expect(')');
            d.crossings.push_back(x);
            annotated.push_back(ann);
            if (t.eat(']'))
                break;
            t.expect(',');
        }
    }
    t.skip_ws();
    if (t.pos != t.s.size())
        t.fail("trailing characters after PD code");

    d.n_edges = d.crossings.empty() ? 1 : 2 * static_cast<int>(d.crossings.size());

    // Edge multiplicity before orientation: every label in 1..2n twice.
    std::map<int, int> count;
    for (const Crossing& x : d.crossings)
        for (int p = 0; p < 4; ++p)
            ++count[x.e[p]];
    for (auto& [e, c] : count) {
        if (e < 1 || e > d.n_edges)
            throw ValidationError("edge label " + std::to_string(e) + " out of range 1.." +
                                  std::to_string(d.n_edges));
        if (c != 2)
            throw ValidationError("edge multiplicity: label " + std::to_string(e) + " occurs " +
                                  std::to_string(c) + " times (expected 2)");
    }
    if (!d.crossings.empty() && static_cast<int>(count.size()) != d.n_edges)
        throw ValidationError("edge labels are not consecutive 1.." + std::to_string(d.n_edges));

    orient_crossings(d, annotated);
    return d;
}

std::string pd_to_string(const PlanarDiagram& d) {
    std::ostringstream os;
    os << "PD[";
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& x = d.crossings[i];
        if (i)
            os << ", ";
        os << "X(" << x.e[0] << "," << x.e[1] << "," << x.e[2] << "," << x.e[3] << ")";
    }
    os << "]";
    return os.str();
}

void validate_diagram(const PlanarDiagram& d) {
    if (d.crossings.empty()) {
        if (d.n_edges != 1)
            throw ValidationError("0-crossing diagram must have a single closed edge");
        return;
    }
    std::map<int, int> ends, starts;
    for (const Crossing& x : d.crossings) {
        ++ends[x.under_in()];
        ++starts[x.under_out()];
        ++ends[x.over_in()];
        ++starts[x.over_out()];
    }
    for (int e = 1; e <= d.n_edges; ++e)
        if (ends[e] != 1 || starts[e] != 1)
            throw ValidationError("inconsistent orientation: edge " + std::to_string(e) +
                                  " does not have exactly one head and one tail");
    if (d.basepoint && (*d.basepoint < 1 || *d.basepoint > d.n_edges))
        throw ValidationError("basepoint edge out of range");
    for (const TwistSite& s : d.sites)
        validate_site(d, s);
}

namespace {

struct FaceWalk {
    // Each face is a list of (edge, coherent) in boundary order.
    std::vector<std::vector<std::pair<int, bool>>> faces;
};

FaceWalk trace_faces(const PlanarDiagram& d) {
    FaceWalk fw;
    int n = static_cast<int>(d.crossings.size());
    if (n == 0)
        return fw;
    SlotIndex idx(d);
    // A dart is (crossing, slot) regarded as leaving the crossing along the
    // edge in that slot.  After traveling the edge we arrive at its other
    // occurrence (i', p') and turn left: leave along slot (p' + 1) % 4.
    std::set<std::pair<int, int>> used;
    for (int i0 = 0; i0 < n; ++i0) {
        for (int p0 = 0; p0 < 4; ++p0) {
            if (used.count({i0, p0}))
                continue;
            std::vector<std::pair<int, bool>> face;
            int i = i0, p = p0;
            while (!used.count({i, p})) {
                used.insert({i, p});
                int e = d.crossings[i].e[p];
                // Travel coherently iff we leave from the edge's start slot.
                bool coherent = !slot_is_in(d.crossings[i], p);
                face.push_back({e, coherent});
                const auto& occ = idx.occ.at(e);
                int ni, np;
                if (occ[0] == std::make_pair(i, p)) {
                    ni = occ[1].first;
                    np = occ[1].second;
                } else {
                    ni = occ[0].first;
                    np = occ[0].second;
                }
                i = ni;
                p = (np + 1) % 4;
            }
            fw.faces.push_back(std::move(face));
        }
    }
    return fw;
}

} // namespace

void validate_site(const PlanarDiagram& d, const TwistSite& s) {
    auto in_range = [&](int e) { return e >= 1 && e <= d.n_edges; };
    if (!in_range(s.e1) || !in_range(s.e2))
        throw ValidationError("twist site references edge outside the diagram");
    if (s.e1 == s.e2)
        return; // fold site: the edge crosses the disk once each way
    if (d.crossings.empty())
        throw ValidationError("twist site on the 0-crossing unknot must be a fold site (e,e)");
    // Anti-parallel test: some face must carry both edges with equal
    // boundary coherence (see docs/formats.md for the local picture).
    FaceWalk fw = trace_faces(d);
    for (const auto& face : fw.faces) {
        bool has1c = false, has1i = false, has2c = false, has2i = false;
        for (auto& [e, coh] : face) {
            if (e == s.e1)
                (coh ? has1c : has1i) = true;
            if (e == s.e2)
                (coh ? has2c : has2i) = true;
        }
        if ((has1c && has2c) || (has1i && has2i))
            return;
    }
    throw ValidationError("parallel-oriented strands at twist site (" + std::to_string(s.e1) + "," +
                          std::to_string(s.e2) + ")");
}

CrossingSigns crossing_signs(const PlanarDiagram& d) {
    CrossingSigns cs;
    for (const Crossing& x : d.crossings)
        (x.sign() > 0 ? cs.c_plus : cs.c_minus)++;
    return cs;
}

int writhe(const PlanarDiagram& d) {
    CrossingSigns cs = crossing_signs(d);
    return cs.c_plus - cs.c_minus;
}

PlanarDiagram mirror(const PlanarDiagram& d) {
    PlanarDiagram m;
    m.n_edges = d.n_edges;
    m.basepoint = d.basepoint;
    m.sites = d.sites;
    m.name = d.name.empty() ? "" : d.name + "_mirror";
    for (const Crossing& x : d.crossings) {
        Crossing y;
        if (x.over_in_at_d) {
            // Positive: over-in at position d; re-read CCW starting there.
            y.e = {x.e[3], x.e[0], x.e[1], x.e[2]};
            y.over_in_at_d = false;
        } else {
            y.e = {x.e[1], x.e[2], x.e[3], x.e[0]};
            y.over_in_at_d = true;
        }
        m.crossings.push_back(y);
    }
    return m;
}

namespace {

// Internal mutable form used by the surgery: crossings over symbolic edge
// ids plus explicit over-in flags (positions preserved).
struct SymCrossing {
    std::array<int, 4> e;
    bool over_in_at_d;
};

// Walks the knot and relabels edges 1..2n in traversal order, starting from
// the lowest symbolic id.  Returns the relabeling map.
std::map<int, int> canonical_relabel(std::vector<SymCrossing>& xs) {
    if (xs.empty())
        return {};
    // end slot of each edge: (crossing, position) where the edge comes in.
    std::map<int, std::pair<int, int>> end_slot;
    std::set<int> all;
    for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
        const SymCrossing& x = xs[i];
        int over_in_pos = x.over_in_at_d ? 3 : 1;
        end_slot[x.e[0]] = {i, 0};
        end_slot[x.e[over_in_pos]] = {i, over_in_pos};
        for (int p = 0; p < 4; ++p)
            all.insert(x.e[p]);
    }
    std::map<int, int> relabel;
    int start = *all.begin();
    int cur = start;
    int next_label = 1;
    do {
        relabel[cur] = next_label++;
        auto [ci, cp] = end_slot.at(cur);
        const SymCrossing& x = xs[ci];
        if (cp == 0)
            cur = x.e[2];
        else
            cur = x.over_in_at_d ? x.e[1] : x.e[3];
    } while (cur != start);
    if (relabel.size() != all.size())
        throw InternalError("twist surgery produced a multi-component diagram");
    for (SymCrossing& x : xs)
        for (int p = 0; p < 4; ++p)
            x.e[p] = relabel.at(x.e[p]);
    return relabel;
}

} // namespace

namespace {

// Euler check V - E + F = 2 on the 4-valent graph; the rotation system of a
// valid classical PD must have exactly n + 2 faces.
bool is_planar(const PlanarDiagram& d) {
    if (d.crossings.empty())
        return true;
    int n = static_cast<int>(d.crossings.size());
    return static_cast<int>(trace_faces(d).faces.size()) == n + 2;
}

PlanarDiagram insert_twists_oriented(const PlanarDiagram& d, std::size_t site_index,
                                     const TwistSite& site, int k);

} // namespace

PlanarDiagram insert_twists(const PlanarDiagram& d, std::size_t site_index, int k) {
    if (site_index >= d.sites.size())
        throw ValidationError("diagram has no twist site with index " + std::to_string(site_index));
    TwistSite site = d.sites[site_index];
    validate_site(d, site);
    if (k == 0) {
        PlanarDiagram copy = d;
        return copy;
    }
    // The block template fixes one local orientation of the disk; the
    // mirrored picture is reached by listing the strands the other way
    // around.  Exactly one of the two is planar-realizable at the site.
    PlanarDiagram first = insert_twists_oriented(d, site_index, site, k);
    if (is_planar(first))
        return first;
    if (site.e1 != site.e2) {
        TwistSite swapped_site{site.e2, site.e1};
        PlanarDiagram swapped = insert_twists_oriented(d, site_index, swapped_site, k);
        if (is_planar(swapped)) {
            std::swap(swapped.sites[site_index].e1, swapped.sites[site_index].e2);
            return swapped;
        }
    }
    throw ValidationError("twist insertion is not planar-realizable at this site");
}

namespace {

PlanarDiagram insert_twists_oriented(const PlanarDiagram& d, std::size_t site_index,
                                     const TwistSite& site, int k) {
    std::vector<SymCrossing> xs;
    for (const Crossing& x : d.crossings)
        xs.push_back({x.e, x.over_in_at_d});

    int fresh = d.n_edges + 1;
    auto new_edge = [&]() { return fresh++; };

    // Cut the site edges.  The part of an edge before the cut keeps its
    // label; the part after gets a fresh one (rewired at the edge's end
    // slot).  a_in/a_out and b_in/b_out are the four loose strand ends
    // around the twist disk; strand A runs forward, strand B backward.
    int a_in, a_out_label, b_in_label, b_out;
    auto replace_end = [&](int old_label, int new_label) {
        // Rewires the end occurrence of old_label (its in-slot) to new_label.
        for (SymCrossing& x : xs) {
            int over_in_pos = x.over_in_at_d ? 3 : 1;
            if (x.e[0] == old_label) {
                x.e[0] = new_label;
                return;
            }
            if (x.e[over_in_pos] == old_label) {
                x.e[over_in_pos] = new_label;
                return;
            }
        }
        throw InternalError("edge end not found during surgery");
    };

    if (site.e1 != site.e2) {
        a_in = site.e1;
        a_out_label = new_edge();
        replace_end(site.e1, a_out_label);
        b_in_label = site.e2;
        b_out = new_edge();
        replace_end(site.e2, b_out);
        // B enters the disk on the far side: strand B's incoming segment is
        // the original e2 (before its cut), outgoing the fresh label.
    } else if (d.crossings.empty()) {
        // Fold site on the 0-crossing unknot: the circle is cut twice into
        // an outer arc O and a tip arc M with A: O->M, B: M->O.
        a_in = 1;      // outer arc
        a_out_label = 2; // tip arc
        b_in_label = 2;
        b_out = 1;
        fresh = 3;
    } else {
        // Fold site on a general diagram: the edge passes the disk twice.
        a_in = site.e1;
        int mid = new_edge();
        int post = new_edge();
        replace_end(site.e1, post);
        a_out_label = mid;
        b_in_label = mid;
        b_out = post;
    }

    // Build |k| full-twist blocks between the loose ends.  Block layout for
    // one positive full twist between A: p->q and B: r->s (fresh m1, m2):
    //   X(p, s, m1, m2), X(r, q, m2, m1)
    // and its mirror for negative twists.
    int nblocks = k > 0 ? k : -k;
    std::vector<int> alpha(nblocks + 1), beta(nblocks + 1);
    alpha[0] = a_in;
    alpha[nblocks] = a_out_label;
    beta[nblocks] = b_in_label;
    beta[0] = b_out;
    for (int j = 1; j < nblocks; ++j)
        alpha[j] = new_edge();
    for (int j = 1; j < nblocks; ++j)
        beta[j] = new_edge();

    for (int j = 1; j <= nblocks; ++j) {
        int p = alpha[j - 1], q = alpha[j];
        int r = beta[j], s = beta[j - 1];
        int m1 = new_edge(), m2 = new_edge();
        if (k > 0) {
            xs.push_back({{p, s, m1, m2}, true});
            xs.push_back({{r, q, m2, m1}, true});
        } else {
            xs.push_back({{m2, p, s, m1}, false});
            xs.push_back({{m1, r, q, m2}, false});
        }
    }

    std::map<int, int> relabel = canonical_relabel(xs);

    PlanarDiagram out;
    out.name = d.name;
    out.n_edges = 2 * static_cast<int>(xs.size());
    for (const SymCrossing& x : xs) {
        Crossing c;
        c.e = x.e;
        c.over_in_at_d = x.over_in_at_d;
        out.crossings.push_back(c);
    }
    if (d.basepoint) {
        auto it = relabel.find(*d.basepoint);
        if (it == relabel.end())
            throw ValidationError("basepoint lies on a twist-site strand");
        out.basepoint = it->second;
    }
    // Inherited site sits beyond the last block; other sites are relabeled.
    for (std::size_t i = 0; i < d.sites.size(); ++i) {
        TwistSite ns;
        if (i == site_index) {
            if (site.e1 != site.e2) {
                ns.e1 = relabel.at(alpha[nblocks]);
                ns.e2 = relabel.at(beta[nblocks]);
            } else {
                ns.e1 = ns.e2 = relabel.at(a_out_label);
            }
        } else {
            auto i1 = relabel.find(d.sites[i].e1);
            auto i2 = relabel.find(d.sites[i].e2);
            if (i1 == relabel.end() || i2 == relabel.end())
                throw ValidationError("twist surgery cut an edge referenced by another site");
            ns.e1 = i1->second;
            ns.e2 = i2->second;
        }
        out.sites.push_back(ns);
    }

    validate_diagram(out);
    std::size_t expected = d.crossings.size() + 2 * static_cast<std::size_t>(nblocks);
    if (out.crossings.size() != expected)
        throw InternalError("twist surgery crossing count mismatch");
    CrossingSigns before = crossing_signs(d);
    CrossingSigns after = crossing_signs(out);
    if (k > 0 && !(after.c_plus == before.c_plus + 2 * k && after.c_minus == before.c_minus))
        throw InternalError("inserted twists are not all positive");
    if (k < 0 && !(after.c_minus == before.c_minus - 2 * k && after.c_plus == before.c_plus))
        throw InternalError("inserted twists are not all negative");
    return out;
}

PlanarDiagram insert_parallel_twists_oriented(const PlanarDiagram& d, int e1, int e2, int k);

} // namespace

PlanarDiagram insert_parallel_twists(const PlanarDiagram& d, int e1, int e2, int k) {
    PlanarDiagram first = insert_parallel_twists_oriented(d, e1, e2, k);
    if (is_planar(first))
        return first;
    PlanarDiagram swapped = insert_parallel_twists_oriented(d, e2, e1, k);
    if (is_planar(swapped))
        return swapped;
    throw ValidationError("parallel twist insertion is not planar-realizable at this site");
}

namespace {

PlanarDiagram insert_parallel_twists_oriented(const PlanarDiagram& d, int e1, int e2, int k) {
    if (e1 == e2 || e1 < 1 || e2 < 1 || e1 > d.n_edges || e2 > d.n_edges)
        throw ValidationError("parallel twist site must be two distinct edges of the diagram");
    if (d.crossings.empty())
        throw ValidationError("parallel twists need a diagram with crossings");
    {
        // Opposite boundary coherence on a common face = parallel strands.
        FaceWalk fw = trace_faces(d);
        bool ok = false;
        for (const auto& face : fw.faces) {
            bool c1 = false, i1 = false, c2 = false, i2 = false;
            for (auto& [e, coh] : face) {
                if (e == e1)
                    (coh ? c1 : i1) = true;
                if (e == e2)
                    (coh ? c2 : i2) = true;
            }
            if ((c1 && i2) || (i1 && c2))
                ok = true;
        }
        if (!ok)
            throw ValidationError("edges are not parallel across a common face");
    }
    if (k == 0)
        return d;

    std::vector<SymCrossing> xs;
    for (const Crossing& x : d.crossings)
        xs.push_back({x.e, x.over_in_at_d});
    int fresh = d.n_edges + 1;
    auto new_edge = [&]() { return fresh++; };
    auto replace_end = [&](int old_label, int new_label) {
        for (SymCrossing& x : xs) {
            int over_in_pos = x.over_in_at_d ? 3 : 1;
            if (x.e[0] == old_label) {
                x.e[0] = new_label;
                return;
            }
            if (x.e[over_in_pos] == old_label) {
                x.e[over_in_pos] = new_label;
                return;
            }
        }
        throw InternalError("edge end not found during surgery");
    };

    int a_out = new_edge(), b_out = new_edge();
    replace_end(e1, a_out);
    replace_end(e2, b_out);
    int nblocks = k > 0 ? k : -k;
    std::vector<int> alpha(nblocks + 1), beta(nblocks + 1);
    alpha[0] = e1;
    alpha[nblocks] = a_out;
    beta[0] = e2;
    beta[nblocks] = b_out;
    for (int j = 1; j < nblocks; ++j) {
        alpha[j] = new_edge();
        beta[j] = new_edge();
    }
    for (int j = 1; j <= nblocks; ++j) {
        int p = alpha[j - 1], q = alpha[j];
        int r = beta[j - 1], s = beta[j];
        int m1 = new_edge(), m2 = new_edge();
        if (k > 0) {
            xs.push_back({{m2, q, s, m1}, true});
            xs.push_back({{p, m2, m1, r}, true});
        } else {
            xs.push_back({{m1, m2, q, s}, false});
            xs.push_back({{r, p, m2, m1}, false});
        }
    }
    std::map<int, int> relabel = canonical_relabel(xs);
    PlanarDiagram out;
    out.name = d.name;
    out.n_edges = 2 * static_cast<int>(xs.size());
    for (const SymCrossing& x : xs)
        out.crossings.push_back({x.e, x.over_in_at_d});
    if (d.basepoint) {
        auto it = relabel.find(*d.basepoint);
        if (it != relabel.end())
            out.basepoint = it->second;
    }
    validate_diagram(out);
    return out;
}

} // namespace

ResolutionCircles resolve(const PlanarDiagram& d, const std::vector<int>& choice) {
    ResolutionCircles rc;
    rc.circle_of_edge.assign(d.n_edges + 1, -1);
    if (d.crossings.empty()) {
        rc.circle_of_edge[1] = 0;
        rc.n_circles = 1;
        return rc;
    }
    if (choice.size() != d.crossings.size())
        throw InternalError("resolution choice length mismatch");
    DisjointSet ds(d.n_edges + 1);
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const auto& e = d.crossings[i].e;
        if (choice[i] == 0) {
            ds.unite(e[0], e[1]);
            ds.unite(e[2], e[3]);
        } else {
            ds.unite(e[0], e[3]);
            ds.unite(e[1], e[2]);
        }
    }
    std::map<int, int> reps;
    for (int e = 1; e <= d.n_edges; ++e) {
        int r = ds.find(e);
        auto [it, inserted] = reps.insert({r, rc.n_circles});
        if (inserted)
            ++rc.n_circles;
        rc.circle_of_edge[e] = it->second;
    }
    return rc;
}

std::vector<PlanarDiagram> parse_catalog(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("catalog JSON: ") + e.what());
    }
    if (!j.is_array())
        throw ValidationError("catalog must be a JSON array");
    std::vector<PlanarDiagram> out;
    std::set<std::string> names;
    for (const auto& entry : j) {
        if (!entry.contains("name") || !entry.contains("pd"))
            throw ValidationError("catalog entry missing name or pd");
        std::string name = entry["name"].get<std::string>();
        if (!names.insert(name).second)
            throw ValidationError("duplicate name in catalog: " + name);
        PlanarDiagram d;
        try {
            d = parse_pd(entry["pd"].get<std::string>());
        } catch (const std::exception& e) {
            throw ValidationError("catalog entry '" + name + "': " + e.what());
        }
        d.name = name;
        if (entry.contains("basepoint"))
            d.basepoint = entry["basepoint"].get<int>();
        if (entry.contains("sites")) {
            for (const auto& s : entry["sites"]) {
                const auto& edges = s.at("edges");
                TwistSite site{edges.at(0).get<int>(), edges.at(1).get<int>()};
                d.sites.push_back(site);
            }
        }
        try {
            validate_diagram(d);
        } catch (const std::exception& e) {
            throw ValidationError("catalog entry '" + name + "': " + e.what());
        }
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<PlanarDiagram> load_catalog(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open catalog file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_catalog(ss.str());
}

const PlanarDiagram& catalog_get(const std::vector<PlanarDiagram>& catalog, const std::string& name) {
    for (const auto& d : catalog)
        if (d.name == name)
            return d;
    throw ValidationError("no catalog entry named '" + name + "'");
}

} // namespace twistkh
