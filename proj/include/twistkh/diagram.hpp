// diagram.hpp -- oriented knot diagrams as PD codes, crossing signs,
// twist-region sites and twist insertion surgery.
//
// PD convention (docs/formats.md): X(a,b,c,d) lists the four incident edge
// labels counterclockwise starting from the incoming under-strand edge.
// Edges are numbered 1..2n consecutively along the orientation of the knot,
// so the under-strand runs a -> c and the over-strand direction is recovered
// from edge succession.  Only single-component diagrams are supported.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twistkh/rational.hpp"

namespace twistkh {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Crossing {
    // Edge labels at positions (a, b, c, d) = CCW from incoming under-strand.
    std::array<int, 4> e;
    // True when the over-strand enters at position d (and exits at b); such
    // a crossing is positive, the other orientation is negative.
    bool over_in_at_d = false;

    int under_in() const { return e[0]; }
    int under_out() const { return e[2]; }
    int over_in() const { return over_in_at_d ? e[3] : e[1]; }
    int over_out() const { return over_in_at_d ? e[1] : e[3]; }
    int sign() const { return over_in_at_d ? +1 : -1; }
};

struct TwistSite {
    // Ordered pair of distinct edges crossed by the twist disk; the first
    // edge runs through the local picture forward (top strand), the second
    // backward (bottom strand).  e1 == e2 encodes a fold site: the single
    // edge crosses the disk twice, once in each direction.
    int e1 = 0;
    int e2 = 0;
};

struct PlanarDiagram {
    std::vector<Crossing> crossings;
    int n_edges = 0; // 1 for the 0-crossing unknot, else 2 * crossings
    std::optional<int> basepoint;
    std::vector<TwistSite> sites;
    std::string name;

    int succ(int e) const { return e % n_edges + 1; }
    bool is_zero_crossing_unknot() const { return crossings.empty(); }
};

// Parses "PD[X(a,b,c,d), ...]"; also accepts Xp(...)/Xm(...) to pin the
// crossing sign where edge succession alone is ambiguous (1-crossing
// diagrams).  Throws ParseError on bad syntax, ValidationError on a
// combinatorially inconsistent code.
PlanarDiagram parse_pd(const std::string& text);

// Serializes back to the PD grammar (canonical form).
std::string pd_to_string(const PlanarDiagram& d);

// Full structural validation: edge multiplicities, orientation consistency.
void validate_diagram(const PlanarDiagram& d);

// Checks a twist site against the diagram: edges exist, and the two strands
// are anti-parallel across a common face of the diagram.  Throws
// ValidationError with "parallel-oriented strands" when the coherence test
// fails.
void validate_site(const PlanarDiagram& d, const TwistSite& s);

struct CrossingSigns {
    int c_plus = 0;
    int c_minus = 0;
};
CrossingSigns crossing_signs(const PlanarDiagram& d);

int writhe(const PlanarDiagram& d);

// Mirror image: every crossing's over/under swapped.
PlanarDiagram mirror(const PlanarDiagram& d);

// Replaces the T_0 tangle at site `s` by T_k (k full twists, |2k| new
// crossings, positive for k > 0).  The result is canonically relabeled and
// carries the inherited site (twisting there by l yields T_{k+l}).
// site_index selects which of d.sites to use.
PlanarDiagram insert_twists(const PlanarDiagram& d, std::size_t site_index, int k);

// Companion surgery for two edges running through a disk in the same
// direction (used by the catalog fixture generator, not by the twist-family
// machinery): inserts |2k| crossings of a parallel full-twist region.
// Requires a face carrying both edges with opposite boundary coherence.
PlanarDiagram insert_parallel_twists(const PlanarDiagram& d, int e1, int e2, int k);

// Circles of a complete resolution.  choice[i] = 0 joins (a,b),(c,d) at
// crossing i, choice[i] = 1 joins (a,d),(b,c).  Returns for each edge the
// index of its circle, plus the number of circles.
struct ResolutionCircles {
    std::vector<int> circle_of_edge; // size n_edges + 1, 1-based
    int n_circles = 0;
};
ResolutionCircles resolve(const PlanarDiagram& d, const std::vector<int>& choice);

// Catalog: JSON array of {name, pd, basepoint?, sites?: [{edges:[a,b]}]}.
std::vector<PlanarDiagram> load_catalog(const std::string& path);
std::vector<PlanarDiagram> parse_catalog(const std::string& json_text);

const PlanarDiagram& catalog_get(const std::vector<PlanarDiagram>& catalog, const std::string& name);

} // namespace twistkh
