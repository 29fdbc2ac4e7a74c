// oracles.hpp -- independent reference implementations used by the test and
// acceptance suites.  Nothing here shares code paths with the engine's
// homology pipeline.

#pragma once

#include "twistkh/complex.hpp"
#include "twistkh/diagram.hpp"
#include "twistkh/laurent.hpp"

namespace twistkh::oracles {

// Alexander polynomial via the Wirtinger presentation and Fox calculus,
// normalized so the positive-exponent tail is monic-ish: returns Delta with
// lowest exponent 0 and positive leading coefficient.
LaurentQ alexander(const PlanarDiagram& d);

bool alexander_is_trivial(const PlanarDiagram& d);

// Dense row-reduction homology over Q (free ranks per bidegree), computed
// straight from the differentials with dense Gaussian elimination.
std::map<std::pair<int, int>, int> dense_rational_homology(const ChainComplex& c);

// Brute-force Smith form of a dense matrix of monomials c*a^k given as
// (coefficient, exponent) pairs; returns sorted invariant-factor exponents.
std::vector<int> brute_smith_exponents(std::vector<std::vector<std::pair<Rational, int>>> m);

} // namespace twistkh::oracles
