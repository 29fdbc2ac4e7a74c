// kauffman.cpp -- bracket state sum.

#include "twistkh/kauffman.hpp"

namespace twistkh {

LaurentQ kauffman_bracket(const PlanarDiagram& d) {
    int n = static_cast<int>(d.crossings.size());
    LaurentQ delta;
    delta.add_term(2, Rational(-1));
    delta.add_term(-2, Rational(-1));
    LaurentQ acc;
    std::vector<int> choice(n, 0);
    for (long long state = 0; state < (1LL << n); ++state) {
        int ones = 0;
        for (int i = 0; i < n; ++i) {
            choice[i] = (state >> i) & 1;
            ones += choice[i];
        }
        ResolutionCircles rc = resolve(d, choice);
        LaurentQ term = LaurentQ::monomial(Rational(1), n - 2 * ones);
        for (int i = 1; i < rc.n_circles; ++i)
            term *= delta;
        acc += term;
    }
    return acc;
}

LaurentQ jones_unnormalized(const PlanarDiagram& d) {
    LaurentQ bracket = kauffman_bracket(d);
    int w = writhe(d);
    // f = (-A)^{-3w} <D> lies in Z[A^2, A^-2]; substitute A^-2 -> -q.
    LaurentQ f = bracket.shifted(-3 * w);
    Rational sign((3 * w) % 2 == 0 ? 1 : -1);
    LaurentQ q_poly;
    for (auto& [e, c] : f.terms()) {
        if (e % 2 != 0)
            throw InternalError("writhe-normalized bracket has odd A-powers");
        int m = e / 2; // A^{2m} -> (-q)^{-m}
        Rational coeff = sign * c * Rational((m % 2 == 0) ? 1 : -1);
        q_poly.add_term(-m, coeff);
    }
    LaurentQ unknot;
    unknot.add_term(1, Rational(1));
    unknot.add_term(-1, Rational(1));
    return q_poly * unknot;
}

} // namespace twistkh
