#pragma once

#include <random>

#include "nambu/nambu.hpp"

namespace nambu::testing {

// Random sparse polynomial with bounded total degree (h included) and small
// rational coefficients; deterministic under a caller-seeded engine.
inline Poly random_poly(std::mt19937& rng, int max_degree = 3, int max_terms = 6,
                        bool with_h = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> pick(0, with_h ? 3 : 2);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    Poly p;
    const int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        const int d = deg(rng);
        for (int i = 0; i < d; ++i) m.exp[pick(rng)] += 1;
        int nu = num(rng);
        if (nu == 0) nu = 1;
        p += Poly::monomial(m, Rational(nu, den(rng)));
    }
    return p;
}

inline VectorField random_field(std::mt19937& rng, int max_degree = 2) {
    return VectorField{{random_poly(rng, max_degree, 3, false),
                        random_poly(rng, max_degree, 3, false),
                        random_poly(rng, max_degree, 3, false)}};
}

inline Poly p_x1() { return Poly::var(Var::x1); }
inline Poly p_x2() { return Poly::var(Var::x2); }
inline Poly p_x3() { return Poly::var(Var::x3); }
inline Poly p_h() { return Poly::var(Var::h); }

// The (m, omega) pairs used to sample parameter-dependent identities.
inline const std::array<std::pair<Rational, Rational>, 3>& parameter_samples() {
    static const std::array<std::pair<Rational, Rational>, 3> ps = {
        std::pair<Rational, Rational>{Rational(1), Rational(1)},
        {Rational(2), Rational(3)},
        {Rational(1, 2), Rational(5)}};
    return ps;
}

}  // namespace nambu::testing
