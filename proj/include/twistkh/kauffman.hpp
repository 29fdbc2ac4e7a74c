// kauffman.hpp -- Kauffman bracket state sum and the unnormalized Jones
// polynomial.  Independent of the homology pipeline; used as the Euler
// characteristic oracle.

#pragma once

#include "twistkh/diagram.hpp"
#include "twistkh/laurent.hpp"

namespace twistkh {

// Bracket polynomial in the variable A (1 for the 0-crossing unknot).
LaurentQ kauffman_bracket(const PlanarDiagram& d);

// Unnormalized Jones polynomial J(q) with J(unknot) = q + q^-1, computed as
// (q + q^-1) * (-A)^{-3w} <D> under A^{-2} -> -q.
LaurentQ jones_unnormalized(const PlanarDiagram& d);

} // namespace twistkh
