#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nambu/errors.hpp"
#include "nambu/scheme.hpp"

namespace nambu {

struct FlowParams {
    double m = 1.0;      // mass, > 0
    double omega = 1.0;  // angular frequency, > 0
    double h = 0.1;      // time step, != 0
};

// Phase point (x1, x2, x3) = (q, p, q^2-like) plus time. x3 - x1^2 is a
// diagnostic, never an enforced constraint.
struct State {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
    double t = 0.0;
};

struct Trajectory {
    std::vector<State> samples;
    FlowParams params;
    std::string scheme_label;
};

// Exact sub-flows of the three split generators. Sub-flows leave t unchanged;
// time advances once per full step.
inline State flow1(State s, double tau, const FlowParams& p) {
    s.x1 += tau / p.m * s.x2;
    return s;
}
inline State flow2(State s, double tau, const FlowParams& p) {
    s.x2 -= p.m * p.omega * p.omega * tau * s.x1;
    return s;
}
inline State flow3(State s, double tau, const FlowParams& p) {
    s.x3 += 2.0 * tau / p.m * s.x1 * s.x2;
    return s;
}

inline State apply_generator_flow(int generator, State s, double tau, const FlowParams& p) {
    switch (generator) {
        case 1: return flow1(s, tau, p);
        case 2: return flow2(s, tau, p);
        case 3: return flow3(s, tau, p);
        default: throw UnknownScheme("generator index out of range");
    }
}

// One full step: stage flows applied right-to-left through the stage list,
// each with tau = fraction * h. For the palindromic built-ins the opposite
// order gives the same map (asserted by test, not assumed).
inline State step(const SplitScheme& scheme, State s, const FlowParams& p) {
    const auto& stages = scheme.stages();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it)
        s = apply_generator_flow(it->generator, s, to_double(it->fraction) * p.h, p);
    s.t += p.h;
    return s;
}

// Repeated stepping; records every stride-th state, including the initial one.
inline Trajectory run(const SplitScheme& scheme, State s0, const FlowParams& p, long nsteps,
                      long stride) {
    if (nsteps < 0) throw DomainError("run: nsteps must be >= 0");
    if (stride < 1) throw DomainError("run: stride must be >= 1");
    Trajectory traj;
    traj.params = p;
    traj.scheme_label = scheme.label();
    traj.samples.reserve(static_cast<std::size_t>(nsteps / stride) + 1);
    traj.samples.push_back(s0);
    State s = s0;
    for (long k = 1; k <= nsteps; ++k) {
        s = step(scheme, s, p);
        if (k % stride == 0) traj.samples.push_back(s);
    }
    return traj;
}

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 identity3() {
    return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
}

inline double det3(const Mat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Jacobian of one stage flow at the state it is applied to. Each is a shear:
// unit diagonal, one off-diagonal block.
inline Mat3 stage_jacobian(int generator, const State& s, double tau, const FlowParams& p) {
    Mat3 j = identity3();
    switch (generator) {
        case 1: j[0][1] = tau / p.m; break;
        case 2: j[1][0] = -p.m * p.omega * p.omega * tau; break;
        case 3:
            j[2][0] = 2.0 * tau / p.m * s.x2;
            j[2][1] = 2.0 * tau / p.m * s.x1;
            break;
        default: throw UnknownScheme("generator index out of range");
    }
    return j;
}

}  // namespace detail

// Determinant of the one-step map's Jacobian in closed form: the product of
// the stage-shear determinants, each exactly one.
inline double jacobian_det(const SplitScheme& scheme, State s, const FlowParams& p) {
    double det = 1.0;
    const auto& stages = scheme.stages();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        double tau = to_double(it->fraction) * p.h;
        det *= detail::det3(detail::stage_jacobian(it->generator, s, tau, p));
        s = apply_generator_flow(it->generator, s, tau, p);
    }
    return det;
}

// Central finite-difference cross-check of the same determinant.
inline double jacobian_det_fd(const SplitScheme& scheme, const State& s, const FlowParams& p,
                              double delta = 1e-5) {
    detail::Mat3 j{};
    for (int col = 0; col < 3; ++col) {
        State plus = s, minus = s;
        (col == 0 ? plus.x1 : col == 1 ? plus.x2 : plus.x3) += delta;
        (col == 0 ? minus.x1 : col == 1 ? minus.x2 : minus.x3) -= delta;
        State sp = step(scheme, plus, p), sm = step(scheme, minus, p);
        j[0][col] = (sp.x1 - sm.x1) / (2 * delta);
        j[1][col] = (sp.x2 - sm.x2) / (2 * delta);
        j[2][col] = (sp.x3 - sm.x3) / (2 * delta);
    }
    return detail::det3(j);
}

// Composed 2x2 linear map of the (x1, x2) block; these coordinates evolve
// linearly and independently of x3 for every built-in scheme.
inline std::array<std::array<double, 2>, 2> linear_block(const SplitScheme& scheme,
                                                         const FlowParams& p) {
    std::array<std::array<double, 2>, 2> m = {{{1, 0}, {0, 1}}};
    const auto& stages = scheme.stages();
    for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
        double tau = to_double(it->fraction) * p.h;
        std::array<std::array<double, 2>, 2> s = {{{1, 0}, {0, 1}}};
        if (it->generator == 1)
            s[0][1] = tau / p.m;
        else if (it->generator == 2)
            s[1][0] = -p.m * p.omega * p.omega * tau;
        else
            continue;  // generator 3 acts only on x3
        std::array<std::array<double, 2>, 2> r{};
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k) r[i][k] = s[i][0] * m[0][k] + s[i][1] * m[1][k];
        m = r;
    }
    return m;
}

// Per-step rotation angle of the (x1, x2) block, measured from the trace of
// the composed linear map: arccos(1 - w^2 h^2 / 2). Defined for |w h| < 2.
inline double rotation_angle(const FlowParams& p) {
    if (std::abs(p.omega * p.h) >= 2.0)
        throw DomainError("rotation_angle: requires |omega*h| < 2");
    auto m = linear_block(SplitScheme::from_label("TVT"), p);
    double half_trace = (m[0][0] + m[1][1]) / 2.0;
    return std::acos(half_trace);
}

}  // namespace nambu
