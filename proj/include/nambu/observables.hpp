#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nambu/brackets.hpp"
#include "nambu/flows.hpp"
#include "nambu/poly.hpp"

namespace nambu {

// All named Hamiltonian pieces of the oscillator, with the mass and frequency
// substituted as exact rationals. H = A + B and G = C + D split the pair;
// T, V are the planar kinetic/potential pieces (T = A, V has x1 where B has x3).
struct OscillatorPolys {
    Poly H, G, A, B, C, D, T, V;
};

inline OscillatorPolys hamiltonians(const Rational& m, const Rational& omega) {
    if (m <= 0 || omega <= 0) throw DomainError("hamiltonians: m and omega must be positive");
    const Poly x1 = Poly::var(Var::x1), x2 = Poly::var(Var::x2), x3 = Poly::var(Var::x3);
    OscillatorPolys out;
    out.A = x2 * x2 * Rational(1) / (2 * m);
    out.B = x3 * (m * omega * omega / 2);
    out.C = x3;
    out.D = -(x1 * x1);
    out.T = out.A;
    out.V = x1 * x1 * (m * omega * omega / 2);
    out.H = out.A + out.B;
    out.G = out.C + out.D;
    return out;
}

struct ConservedPair {
    Poly h_c, g_c;
    std::string scheme_label;
};

// Registry of the exactly conserved quantities of the six compositions,
// kept as data and cross-checked against the symbolic pipeline by tests.
inline ConservedPair conserved_pair(const std::string& label, const Rational& m,
                                    const Rational& omega) {
    const OscillatorPolys polys = hamiltonians(m, omega);
    const Poly x1sq = Poly::var(Var::x1) * Poly::var(Var::x1);
    const Poly x2sq = Poly::var(Var::x2) * Poly::var(Var::x2);
    const Poly h2 = Poly::var(Var::h) * Poly::var(Var::h);
    const Rational w2 = omega * omega, w4 = w2 * w2;

    ConservedPair out;
    out.scheme_label = label;
    if (label == "12321" || label == "13231") {
        out.h_c = polys.H;
        out.g_c = polys.G + h2 * x2sq * (Rational(1) / (4 * m * m));
    } else if (label == "31213") {
        out.h_c = polys.H - h2 * x2sq * (w2 / (4 * m));
        out.g_c = polys.G - h2 * x2sq * (Rational(1) / (4 * m * m));
    } else if (label == "21312" || label == "23132") {
        out.h_c = polys.H - h2 * x1sq * (m * w4 / 8);
        out.g_c = polys.G;
    } else if (label == "32123") {
        out.h_c = polys.H + h2 * x1sq * (m * w4 / 8);
        out.g_c = polys.G + h2 * x1sq * (w2 / 2);
    } else {
        throw UnknownScheme("conserved_pair: unknown scheme label '" + label + "'");
    }
    return out;
}

// F(x) = 2 arcsin(x/2) / (x sqrt(1 - x^2/4)), the exact ratio between the
// effective generator of the step map and the conserved-quantity generator.
inline double factor_f(double x) {
    if (std::abs(x) >= 2.0) throw DomainError("factor_f: requires |x| < 2");
    if (x == 0.0) return 1.0;
    return 2.0 * std::asin(x / 2.0) / (x * std::sqrt(1.0 - x * x / 4.0));
}

// Series form sum_n (n!)^2/(2n+1)! x^{2n} = 1 + x^2/6 + x^4/30 + ...
inline double factor_f_series(double x, int nterms) {
    double coeff = 1.0, term_x = 1.0, total = 0.0;
    for (int n = 0; n < nterms; ++n) {
        if (n > 0) {
            coeff *= static_cast<double>(n) / (2.0 * (2 * n + 1));
            term_x *= x * x;
        }
        total += coeff * term_x;
    }
    return total;
}

// Derived constants of the closed-form reference solutions at fixed (m, w, h).
struct ReferenceSolutionParams {
    double a;             // sqrt(1 - w^2 h^2 / 4)
    double b;             // sqrt(1 - w^2 h^2 / 2)
    double omega_tilde;   // a * w
    double t_tilde_rate;  // F(w h)

    static ReferenceSolutionParams make(const FlowParams& p) {
        double x = p.omega * p.h;
        if (x * x / 2.0 >= 1.0)
            throw DomainError("ReferenceSolutionParams: requires |omega*h| < sqrt(2)");
        ReferenceSolutionParams r{};
        r.a = std::sqrt(1.0 - x * x / 4.0);
        r.b = std::sqrt(1.0 - x * x / 2.0);
        r.omega_tilde = r.a * p.omega;
        r.t_tilde_rate = factor_f(x);
        return r;
    }
};

// Coefficients of equations of motion in linear-oscillator normal form:
//   dx1/dt = k1 x2,  dx2/dt = -k2 x1,  dx3/dt = k3 x1 x2.
struct NormalFormRates {
    double k1, k2, k3;
};

namespace detail {

// Requires every term of p to be coeff * pattern * h^k (phase part matching
// exactly); returns the double value of sum coeff h^k at the given h.
inline double rate_against(const Poly& p, const Monomial& pattern, double h,
                           const char* what) {
    double total = 0.0;
    for (const auto& [mon, coeff] : p.terms()) {
        for (int i = 0; i < 3; ++i)
            if (mon.exp[i] != pattern.exp[i])
                throw StructureError(std::string("conserved dynamics not in normal form: ") +
                                     what + " contains " + p.to_string());
        double term = to_double(coeff);
        for (int k = 0; k < mon[Var::h]; ++k) term *= h;
        total += term;
    }
    return total;
}

}  // namespace detail

// Extracts the normal-form rates of the ternary-bracket equations of motion
// generated by a conserved pair; exact in the symbolic stage, evaluated at
// the numeric step size only at the end.
inline NormalFormRates conserved_dynamics(const ConservedPair& pair, const FlowParams& p) {
    const Poly x1 = Poly::var(Var::x1), x2 = Poly::var(Var::x2), x3 = Poly::var(Var::x3);
    Poly p1 = nambu_bracket(x1, pair.h_c, pair.g_c);
    Poly p2 = nambu_bracket(x2, pair.h_c, pair.g_c);
    Poly p3 = nambu_bracket(x3, pair.h_c, pair.g_c);
    Monomial m_x2, m_x1, m_x1x2;
    m_x2.exp = {0, 1, 0, 0};
    m_x1.exp = {1, 0, 0, 0};
    m_x1x2.exp = {1, 1, 0, 0};
    NormalFormRates r{};
    r.k1 = detail::rate_against(p1, m_x2, p.h, "dx1/dt");
    r.k2 = -detail::rate_against(p2, m_x1, p.h, "dx2/dt");
    r.k3 = detail::rate_against(p3, m_x1x2, p.h, "dx3/dt");
    return r;
}

// Closed solution of the normal-form equations from initial state s0 after
// elapsed time t (the x3 quadrature is done analytically).
inline State normal_mode_solution(double t, const State& s0, const NormalFormRates& k) {
    double w2 = k.k1 * k.k2;
    if (w2 <= 0.0) throw DomainError("normal_mode_solution: degenerate rates");
    double Omega = std::sqrt(w2);
    double c = std::cos(Omega * t), s = std::sin(Omega * t);
    double c2 = std::cos(2 * Omega * t), s2 = std::sin(2 * Omega * t);
    State out;
    out.x1 = s0.x1 * c + (k.k1 / Omega) * s0.x2 * s;
    out.x2 = s0.x2 * c - (k.k2 / Omega) * s0.x1 * s;
    double cross = s0.x1 * s0.x2;
    double quad = (k.k1 * s0.x2 * s0.x2 - k.k2 * s0.x1 * s0.x1) / (2 * Omega);
    out.x3 = s0.x3 + k.k3 * (cross * s2 + quad * (1.0 - c2)) / (2 * Omega);
    out.t = s0.t + t;
    return out;
}

// Exact solution with the original Hamiltonian pair.
inline State exact_original(double t, const State& s0, const FlowParams& p) {
    NormalFormRates k{1.0 / p.m, p.m * p.omega * p.omega, 2.0 / p.m};
    return normal_mode_solution(t, s0, k);
}

// Exact solution of the dynamics generated by the scheme's conserved pair.
inline State exact_conserved(double t, const State& s0, const FlowParams& p,
                             const std::string& scheme_label) {
    ConservedPair pair = conserved_pair(scheme_label, rational_from_double(p.m),
                                        rational_from_double(p.omega));
    return normal_mode_solution(t, s0, conserved_dynamics(pair, p));
}

// Exact shadow dynamics: the conserved dynamics with time rescaled by F(w h).
inline State exact_shadow(double t, const State& s0, const FlowParams& p,
                          const std::string& scheme_label) {
    ConservedPair pair = conserved_pair(scheme_label, rational_from_double(p.m),
                                        rational_from_double(p.omega));
    double f = factor_f(p.omega * p.h);
    State out = normal_mode_solution(f * t, s0, conserved_dynamics(pair, p));
    out.t = s0.t + t;
    return out;
}

// value(t) - value(t0) of a polynomial observable along a trajectory.
inline std::vector<std::pair<double, double>> drift_series(const Trajectory& traj,
                                                           const Poly& observable) {
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.samples.size());
    double v0 = 0.0;
    bool have_v0 = false;
    for (const State& s : traj.samples) {
        double v = observable.eval({s.x1, s.x2, s.x3, traj.params.h});
        if (!have_v0) {
            v0 = v;
            have_v0 = true;
        }
        out.emplace_back(s.t, v - v0);
    }
    return out;
}

struct BeatMetrics {
    double max_diff = 0.0;
    double argmax_t = 0.0;
    double envelope_period_estimate = 0.0;
};

// Compares the trajectory's x3 with a reference time function. The envelope
// period estimate 2*argmax assumes the difference starts at zero.
inline BeatMetrics beat_metrics(const Trajectory& traj,
                                const std::function<double(double)>& reference_x3,
                                double predicted_envelope_period) {
    if (traj.samples.size() < 2) throw InsufficientSpan("beat_metrics: trajectory too short");
    double span = traj.samples.back().t - traj.samples.front().t;
    if (span < predicted_envelope_period / 2.0)
        throw InsufficientSpan("beat_metrics: span " + std::to_string(span) +
                               " shorter than half the predicted envelope period " +
                               std::to_string(predicted_envelope_period));
    BeatMetrics m;
    for (const State& s : traj.samples) {
        double d = std::abs(reference_x3(s.t) - s.x3);
        if (d > m.max_diff) {
            m.max_diff = d;
            m.argmax_t = s.t;
        }
    }
    m.envelope_period_estimate = 2.0 * m.argmax_t;
    return m;
}

}  // namespace nambu
