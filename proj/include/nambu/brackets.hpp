#pragma once

#include <string>
#include <vector>

#include "nambu/poly.hpp"

namespace nambu {

// Poisson bracket on the (x1, x2) plane; x3 and h are spectators.
inline Poly poisson(const Poly& a, const Poly& b) {
    return a.diff(Var::x1) * b.diff(Var::x2) - a.diff(Var::x2) * b.diff(Var::x1);
}

// 3x3 Jacobian determinant of (a, b, c) with respect to (x1, x2, x3);
// h is a spectator constant.
inline Poly nambu_bracket(const Poly& a, const Poly& b, const Poly& c) {
    std::array<std::array<Poly, 3>, 3> j;
    const Poly* args[3] = {&a, &b, &c};
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col) j[r][col] = args[r]->diff(static_cast<Var>(col));
    auto minor2 = [&](int r0, int r1, int c0, int c1) {
        return j[r0][c0] * j[r1][c1] - j[r0][c1] * j[r1][c0];
    };
    return j[0][0] * minor2(1, 2, 1, 2) - j[0][1] * minor2(1, 2, 0, 2) +
           j[0][2] * minor2(1, 2, 0, 1);
}

struct BracketResidualReport {
    Poly residual;
    bool is_zero = false;
    std::vector<std::string> inputs;
};

// {{a,b},c} + {{b,c},a} + {{c,a},b}; identically zero for the Poisson bracket.
inline BracketResidualReport jacobi_residual(const Poly& a, const Poly& b, const Poly& c) {
    BracketResidualReport rep;
    rep.residual = poisson(poisson(a, b), c) + poisson(poisson(b, c), a) +
                   poisson(poisson(c, a), b);
    rep.is_zero = rep.residual.is_zero();
    rep.inputs = {a.to_string(), b.to_string(), c.to_string()};
    return rep;
}

// Fundamental identity of the ternary bracket in the form
//   {{f,e,g},c,d} = {{f,c,d},e,g} + {f,{e,c,d},g} + {f,e,{g,c,d}};
// the report carries the left side minus the right side.
inline BracketResidualReport fundamental_identity_residual(const Poly& f, const Poly& e,
                                                           const Poly& g, const Poly& c,
                                                           const Poly& d) {
    BracketResidualReport rep;
    rep.residual = nambu_bracket(nambu_bracket(f, e, g), c, d) -
                   nambu_bracket(nambu_bracket(f, c, d), e, g) -
                   nambu_bracket(f, nambu_bracket(e, c, d), g) -
                   nambu_bracket(f, e, nambu_bracket(g, c, d));
    rep.is_zero = rep.residual.is_zero();
    rep.inputs = {f.to_string(), e.to_string(), g.to_string(), c.to_string(), d.to_string()};
    return rep;
}

}  // namespace nambu
