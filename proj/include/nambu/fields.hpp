#pragma once

#include <array>
#include <string>

#include "nambu/brackets.hpp"
#include "nambu/poly.hpp"

namespace nambu {

// First-order differential operator (derivation) with polynomial components:
// V = comp[0] d/dx1 + comp[1] d/dx2 + comp[2] d/dx3. Fields are plain values;
// equality is componentwise polynomial equality.
struct VectorField {
    std::array<Poly, 3> comp;

    bool is_zero() const { return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero(); }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comp[i] += o.comp[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) comp[i] -= o.comp[i];
        return *this;
    }
    VectorField& operator*=(const Rational& c) {
        for (int i = 0; i < 3; ++i) comp[i] *= c;
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator-(const VectorField& a) {
        VectorField r;
        for (int i = 0; i < 3; ++i) r.comp[i] = -a.comp[i];
        return r;
    }
    friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }
    friend bool operator==(const VectorField&, const VectorField&) = default;

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < 3; ++i) {
            if (i) s += " + ";
            s += "(" + comp[i].to_string() + ") d/dx" + std::to_string(i + 1);
        }
        return s;
    }
};

// Liouville operator of one Hamiltonian on the (x1, x2) plane:
// X_H = dH/dx2 d/dx1 - dH/dx1 d/dx2.
inline VectorField lv_single(const Poly& hamiltonian) {
    return VectorField{{hamiltonian.diff(Var::x2), -hamiltonian.diff(Var::x1), Poly{}}};
}

// Generalized Liouville operator of a Hamiltonian pair:
// component i = sum_jk eps_ijk dA/dxj dB/dxk, so that (X_{A,B} f) = {f,A,B}.
inline VectorField lv_pair(const Poly& hamA, const Poly& hamB) {
    std::array<Poly, 3> da{hamA.diff(Var::x1), hamA.diff(Var::x2), hamA.diff(Var::x3)};
    std::array<Poly, 3> db{hamB.diff(Var::x1), hamB.diff(Var::x2), hamB.diff(Var::x3)};
    VectorField v;
    for (int i = 0; i < 3; ++i) {
        int jj = (i + 1) % 3, kk = (i + 2) % 3;
        v.comp[i] = da[jj] * db[kk] - da[kk] * db[jj];
    }
    return v;
}

inline Poly vf_apply(const VectorField& v, const Poly& f) {
    return v.comp[0] * f.diff(Var::x1) + v.comp[1] * f.diff(Var::x2) + v.comp[2] * f.diff(Var::x3);
}

// [v, w] as a derivation: component i = v(w_i) - w(v_i).
inline VectorField vf_commutator(const VectorField& v, const VectorField& w) {
    VectorField r;
    for (int i = 0; i < 3; ++i) r.comp[i] = vf_apply(v, w.comp[i]) - vf_apply(w, v.comp[i]);
    return r;
}

inline Poly divergence(const VectorField& v) {
    return v.comp[0].diff(Var::x1) + v.comp[1].diff(Var::x2) + v.comp[2].diff(Var::x3);
}

}  // namespace nambu
