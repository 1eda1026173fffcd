#pragma once

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nambu/bch.hpp"
#include "nambu/brackets.hpp"
#include "nambu/fields.hpp"
#include "nambu/flows.hpp"
#include "nambu/observables.hpp"
#include "nambu/shadow_consistency.hpp"

namespace nambu {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace verify_detail {

inline const std::array<std::pair<Rational, Rational>, 3>& parameter_samples() {
    static const std::array<std::pair<Rational, Rational>, 3> ps = {
        std::pair<Rational, Rational>{Rational(1), Rational(1)},
        {Rational(2), Rational(3)},
        {Rational(1, 2), Rational(5)}};
    return ps;
}

// Deterministic random polynomial: total degree (h included) <= max_degree.
inline Poly random_poly(std::mt19937& rng, int max_degree = 3, int max_terms = 6) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> pick(0, 3);
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

inline std::string scientific(double x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << x;
    return os.str();
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

}  // namespace verify_detail

namespace checks {

// 1. Jacobi and fundamental-identity residuals vanish exactly on randomized
// inputs and on all named Hamiltonian combinations, at three (m, w) samples.
inline CheckResult identity_suite(bool full) {
    using namespace verify_detail;
    Stopwatch clock;
    const int samples = full ? 200 : 60;
    std::mt19937 rng(20240915);
    bool ok = true;
    long checked = 0;
    for (int i = 0; i < samples && ok; ++i) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        Poly d = random_poly(rng), e = random_poly(rng);
        ok = ok && jacobi_residual(a, b, c).is_zero;
        ok = ok && fundamental_identity_residual(a, b, c, d, e).is_zero;
        checked += 2;
    }
    for (const auto& [m, w] : parameter_samples()) {
        const OscillatorPolys hs = hamiltonians(m, w);
        const Poly named[] = {hs.H, hs.G, hs.A, hs.B, hs.C, hs.D, hs.T, hs.V};
        for (const Poly& a : named)
            for (const Poly& b : named) {
                ok = ok && jacobi_residual(a, b, poisson(a, b)).is_zero;
                ++checked;
            }
        const HamPair gens[] = {{hs.A, hs.C}, {hs.B, hs.D}, {hs.A, hs.D}, {hs.H, hs.G}};
        const Poly heads[] = {Poly::var(Var::x1), Poly::var(Var::x2), Poly::var(Var::x3),
                              hs.H, hs.G};
        for (const Poly& f : heads)
            for (const auto& ef : gens)
                for (const auto& cd : gens) {
                    ok = ok && fundamental_identity_residual(f, ef.a, ef.b, cd.a, cd.b).is_zero;
                    ++checked;
                }
        if (!ok) break;
    }
    const double secs = clock.seconds();
    const bool in_time = secs < 10.0;
    return {"1. identity suite (Jacobi + fundamental identity, exact zeros)", ok && in_time,
            std::to_string(checked) + " residuals, " + scientific(secs) + " s"};
}

// 2. The five commutators that vanish for these generators do so exactly.
inline CheckResult vanishing_commutators() {
    bool ok = true;
    for (const auto& [m, w] : verify_detail::parameter_samples()) {
        const auto g = generator_fields(m, w);
        const VectorField& x1f = g[0];
        const VectorField& x2f = g[1];
        const VectorField& x3f = g[2];
        ok = ok && vf_commutator(x1f, vf_commutator(x1f, x3f)).is_zero();
        ok = ok && vf_commutator(x2f, vf_commutator(x2f, x3f)).is_zero();
        ok = ok && vf_commutator(x3f, vf_commutator(x3f, x1f)).is_zero();
        ok = ok && vf_commutator(x3f, vf_commutator(x3f, x2f)).is_zero();
        ok = ok && vf_commutator(x3f, vf_commutator(x1f, x2f)).is_zero();
    }
    return {"2. vanishing commutators (five, exact)", ok, "3 parameter samples"};
}

// 3. The planar baseline's second-order field equals the nested-bracket
// correction, and specializes to -(w^2/24m) x2^2 + (m w^4/12) x1^2.
inline CheckResult verlet_shadow() {
    bool ok = true;
    for (const auto& [m, w] : verify_detail::parameter_samples()) {
        const OscillatorPolys hs = hamiltonians(m, w);
        const auto mf = modified_field(SplitScheme::from_label("TVT"), generator_fields(m, w));
        const Poly corr = verlet_shadow_correction(hs.T, hs.V);
        ok = ok && (mf.v2 == lv_single(corr));
        const Poly x1sq = Poly::var(Var::x1) * Poly::var(Var::x1);
        const Poly x2sq = Poly::var(Var::x2) * Poly::var(Var::x2);
        const Rational w2 = w * w;
        const Poly expected = x2sq * (-w2 / (24 * m)) + x1sq * (m * w2 * w2 / 12);
        ok = ok && (corr == expected);
    }
    return {"3. Verlet shadow correction (exact field + closed form)", ok,
            "3 parameter samples"};
}

// 4. v2 of the 12321 composition equals the two-pair form exactly, and the
// solved family contains both closed-form pairs with dimension >= 1.
inline CheckResult nambu_bch_shadow() {
    bool ok = true;
    std::string detail;
    for (const auto& [m, w] : verify_detail::parameter_samples()) {
        const OscillatorPolys hs = hamiltonians(m, w);
        const auto mf = modified_field(SplitScheme::from_label("12321"), generator_fields(m, w));
        const auto ref = reference_shadow_pairs_12321(m, w);
        const VectorField expected = lv_pair(hs.H, ref[0].b) + lv_pair(ref[0].a, hs.G);
        ok = ok && (mf.v2 == expected);
        const ShadowFamily family = shadow_solve(mf.v2, hs.H, hs.G);
        ok = ok && family.membership(ref[0]).has_value();
        ok = ok && family.membership(ref[1]).has_value();
        ok = ok && family.dimension() >= 1;
        if (detail.empty())
            detail = "family dimension " + std::to_string(family.dimension());
    }
    return {"4. ternary BCH shadow (v2 form + family membership)", ok, detail};
}

// 5. The eight identity choices collapse each commutator-table row to its two
// closed forms, with multiplicities 2 and 6 on the first row.
inline CheckResult eight_representations() {
    bool ok = true;
    std::string detail;
    for (const auto& [m, w] : verify_detail::parameter_samples()) {
        const OscillatorPolys hs = hamiltonians(m, w);
        const HamPair ac{hs.A, hs.C}, bd{hs.B, hs.D}, ad{hs.A, hs.D};
        const Poly x1sq = Poly::var(Var::x1) * Poly::var(Var::x1);
        const Poly x2sq = Poly::var(Var::x2) * Poly::var(Var::x2);
        const Rational w2 = w * w, w4 = w2 * w2;

        struct Row {
            HamPair outer, inner1, inner2;
            HamPair form_a, form_b;
            bool pin_counts;
        };
        const Row rows[] = {
            {ac, ac, bd, {hs.B, x2sq * (-2 / (m * m))}, {x2sq * (w2 / m), hs.C}, true},
            {ac, bd, ad, {hs.A, x1sq * (2 * w2)}, {x2sq * (-w2 / m), hs.D}, false},
            {bd, bd, ac, {hs.B, x1sq * (-2 * w2)}, {x1sq * (m * w4), hs.C}, false},
            {bd, ac, ad, {hs.A, x1sq * (2 * w2)}, {x2sq * (-w2 / m), hs.D}, false},
        };
        int row_idx = 0;
        for (const Row& row : rows) {
            const VectorField direct = vf_commutator(
                field_of(row.outer), vf_commutator(field_of(row.inner1), field_of(row.inner2)));
            int count_a = 0, count_b = 0;
            for (const RewriteChoice& choice : RewriteChoice::all()) {
                const auto pairs =
                    rewrite_nested_commutator(row.outer, row.inner1, row.inner2, choice);
                ok = ok && (field_of(pairs) == direct);
                const auto collapsed = collapse_pairs(pairs);
                if (collapsed.size() == 1 && collapsed[0] == row.form_a)
                    ++count_a;
                else if (collapsed.size() == 1 && collapsed[0] == row.form_b)
                    ++count_b;
                else
                    ok = false;
            }
            ok = ok && (count_a + count_b == 8) && count_a > 0 && count_b > 0;
            if (row.pin_counts) ok = ok && count_a == 2 && count_b == 6;
            if (detail.empty() || row_idx == 0)
                detail = "row 1 multiplicities " + std::to_string(count_a) + "/" +
                         std::to_string(count_b);
            ++row_idx;
        }
    }
    return {"5. eight representations collapse to the printed forms", ok, detail};
}

// 6. Both registry quantities stay constant to 1e-9 over long runs for all
// six compositions.
inline CheckResult table1_conservation(bool full) {
    using namespace verify_detail;
    Stopwatch clock;
    const long nsteps = full ? 100000 : 10000;
    const FlowParams p{1.0, 1.0, 0.1};
    const State s0{1.0, 1.0, 1.0, 0.0};
    double worst = 0.0;
    std::string matrix;
    for (const char* label : SplitScheme::nambu_labels()) {
        const ConservedPair pair = conserved_pair(label, Rational(1), Rational(1));
        const SplitScheme scheme = SplitScheme::from_label(label);
        State s = s0;
        const double hc0 = pair.h_c.eval({s.x1, s.x2, s.x3, p.h});
        const double gc0 = pair.g_c.eval({s.x1, s.x2, s.x3, p.h});
        double dh = 0.0, dg = 0.0;
        for (long k = 0; k < nsteps; ++k) {
            s = step(scheme, s, p);
            dh = std::max(dh, std::abs(pair.h_c.eval({s.x1, s.x2, s.x3, p.h}) - hc0));
            dg = std::max(dg, std::abs(pair.g_c.eval({s.x1, s.x2, s.x3, p.h}) - gc0));
        }
        worst = std::max({worst, dh, dg});
        if (!matrix.empty()) matrix += " ";
        matrix += std::string(label) + " " + scientific(dh) + "/" + scientific(dg);
    }
    const double secs = clock.seconds();
    const bool ok = worst <= 1e-9 && secs < 5.0;
    return {"6. registry conservation over " + std::to_string(nsteps) + " steps, six schemes",
            ok, matrix + ", " + scientific(secs) + " s"};
}

// 7. H - H(0) and G - G(0) oscillate with no secular trend over a long run,
// and the G error amplitude obeys its closed bound.
inline CheckResult long_run_stability(bool full) {
    using namespace verify_detail;
    const long nsteps = full ? 1000000 : 100000;
    const FlowParams p{1.0, 1.0, 0.1};
    const SplitScheme scheme = SplitScheme::from_label("32123");
    const OscillatorPolys hs = hamiltonians(Rational(1), Rational(1));
    State s{1.0, 1.0, 1.0, 0.0};
    const double h0 = hs.H.eval({s.x1, s.x2, s.x3, p.h});
    const double g0 = hs.G.eval({s.x1, s.x2, s.x3, p.h});
    const long head_end = nsteps / 10, tail_start = nsteps - nsteps / 10;
    double h_head = 0, h_tail = 0, g_head = 0, g_tail = 0, g_amp = 0, max_x1sq = 0;
    for (long k = 0; k < nsteps; ++k) {
        s = step(scheme, s, p);
        const double dh = std::abs(hs.H.eval({s.x1, s.x2, s.x3, p.h}) - h0);
        const double dg = std::abs(hs.G.eval({s.x1, s.x2, s.x3, p.h}) - g0);
        max_x1sq = std::max(max_x1sq, s.x1 * s.x1);
        g_amp = std::max(g_amp, dg);
        if (k < head_end) {
            h_head = std::max(h_head, dh);
            g_head = std::max(g_head, dg);
        }
        if (k >= tail_start) {
            h_tail = std::max(h_tail, dh);
            g_tail = std::max(g_tail, dg);
        }
    }
    const bool trend_ok = std::abs(h_tail - h_head) <= 0.05 * h_head &&
                          std::abs(g_tail - g_head) <= 0.05 * g_head;
    const double g_bound = 1.1 * (p.omega * p.omega * p.h * p.h / 2.0) * max_x1sq;
    const bool amp_ok = g_amp <= g_bound;
    return {"7. long-run stability (no secular trend, G amplitude bound)", trend_ok && amp_ok,
            "H head/tail " + scientific(h_head) + "/" + scientific(h_tail) + ", G amp " +
                scientific(g_amp) + " <= " + scientific(g_bound)};
}

// 8. Beat against the original dynamics: amplitude ~ twice the oscillation
// amplitude (15%), envelope period within 10% of the closed prediction.
inline CheckResult beat_structure() {
    const FlowParams p{1.0, 1.0, 0.1};
    const State s0{1.0, 1.0, 1.0, 0.0};
    const Trajectory traj = run(SplitScheme::from_label("32123"), s0, p, 80000, 1);
    const double theta = rotation_angle(p);
    const double predicted_period =
        2.0 * M_PI / std::abs(2.0 * theta / p.h - 2.0 * p.omega);
    const auto ref = [&](double t) { return exact_original(t, s0, p).x3; };
    const BeatMetrics m = beat_metrics(traj, ref, predicted_period);
    const double mw = p.m * p.omega;
    const double c_amp = 0.5 * s0.x1 * s0.x1 - s0.x2 * s0.x2 / (2.0 * mw * mw);
    const double s_amp = s0.x1 * s0.x2 / mw;
    const double osc_amp = std::sqrt(c_amp * c_amp + s_amp * s_amp);
    const bool amp_ok = std::abs(m.max_diff - 2.0 * osc_amp) <= 0.15 * (2.0 * osc_amp);
    const bool period_ok =
        std::abs(m.envelope_period_estimate - predicted_period) <= 0.10 * predicted_period;
    return {"8. beat against original dynamics (amplitude + envelope period)",
            amp_ok && period_ok,
            "max diff " + verify_detail::scientific(m.max_diff) + " at t=" +
                verify_detail::scientific(m.argmax_t) + ", period est " +
                verify_detail::scientific(m.envelope_period_estimate) + " vs " +
                verify_detail::scientific(predicted_period)};
}

// 9. The rescaled-time reference reproduces the discrete x3 to 1e-8 over 1e4
// steps; the conserved-quantity reference shows a beat instead.
inline CheckResult shadow_reproduction() {
    const FlowParams p{1.0, 1.0, 0.1};
    const State s0{1.0, 1.0, 1.0, 0.0};
    const Trajectory traj = run(SplitScheme::from_label("32123"), s0, p, 10000, 1);
    double max_shadow = 0.0, max_conserved = 0.0;
    for (const State& s : traj.samples) {
        max_shadow = std::max(max_shadow,
                              std::abs(exact_shadow(s.t, s0, p, "32123").x3 - s.x3));
        max_conserved = std::max(max_conserved,
                                 std::abs(exact_conserved(s.t, s0, p, "32123").x3 - s.x3));
    }
    const bool ok = max_shadow <= 1e-8 && max_conserved > 0.1;
    return {"9. shadow reproduction (x3^s flat, x3^c beats)", ok,
            "shadow " + verify_detail::scientific(max_shadow) + ", conserved " +
                verify_detail::scientific(max_conserved)};
}

// 10. Backward step undoes forward step to 1e-12; Jacobian determinant is one
// in closed form and to 1e-6 by central differences at random states.
inline CheckResult reversibility_volume() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    const FlowParams p{1.0, 1.0, 0.1};
    FlowParams back = p;
    back.h = -p.h;
    bool ok = true;
    double worst_rev = 0.0, worst_det = 0.0;
    for (const char* label : SplitScheme::all_labels()) {
        const SplitScheme scheme = SplitScheme::from_label(label);
        for (int i = 0; i < 10; ++i) {
            const State s0{coord(rng), coord(rng), coord(rng), 0.0};
            const State s1 = step(scheme, s0, p);
            const State s2 = step(scheme, s1, back);
            worst_rev = std::max({worst_rev, std::abs(s2.x1 - s0.x1), std::abs(s2.x2 - s0.x2),
                                  std::abs(s2.x3 - s0.x3)});
            ok = ok && jacobian_det(scheme, s0, p) == 1.0;
            worst_det = std::max(worst_det, std::abs(jacobian_det_fd(scheme, s0, p) - 1.0));
        }
    }
    ok = ok && worst_rev <= 1e-12 && worst_det <= 1e-6;
    return {"10. reversibility and unit volume", ok,
            "max reversal error " + verify_detail::scientific(worst_rev) +
                ", max |fd det - 1| " + verify_detail::scientific(worst_det)};
}

// 11. Factor-series agreement, the arcsin angle identity, and the measured
// per-step rotation angle.
inline CheckResult angle_factor_identities() {
    bool ok = true;
    double worst = 0.0;
    for (double x : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const double diff = std::abs(factor_f(x) - factor_f_series(x, 5));
        ok = ok && diff <= std::pow(x, 10);
        worst = std::max(worst, diff / std::pow(x, 10));
    }
    for (double x : {0.05, 0.1, 0.5, 1.0}) {
        const double a = std::sqrt(1.0 - x * x / 4.0);
        ok = ok && std::abs(a * factor_f(x) * x - 2.0 * std::asin(x / 2.0)) <= 1e-12;
        const FlowParams p{1.0, 1.0, x};  // omega = 1 so omega*h = x
        const double measured = rotation_angle(p);
        ok = ok && std::abs(measured - std::acos(1.0 - x * x / 2.0)) <= 1e-12;
    }
    return {"11. angle and factor identities", ok,
            "worst series ratio " + verify_detail::scientific(worst)};
}

// 12. Two-route consistency: the substituted exact-shadow pair equals the
// alpha interpolation of the two endpoint pairs and solves the modified-field
// equation, for alpha in {0, 1/2, 1}; endpoints match the closed forms.
inline CheckResult two_route_consistency() {
    bool ok = true;
    const Rational alphas[] = {Rational(0), Rational(1, 2), Rational(1)};
    for (const Rational& alpha : alphas) {
        const auto c = analyze_shadow_consistency("12321", Rational(1), Rational(1), alpha);
        ok = ok && c.family_member && c.interpolation_exact;
        const auto ref = reference_shadow_pairs_12321(Rational(1), Rational(1));
        ok = ok && c.endpoint1 == ref[0] && c.endpoint0 == ref[1];
    }
    int members = 0;
    for (const char* label : SplitScheme::nambu_labels()) {
        const auto c =
            analyze_shadow_consistency(label, Rational(1), Rational(1), Rational(1, 2));
        if (c.family_member && c.interpolation_exact) ++members;
    }
    ok = ok && members == 6;
    return {"12. two-route shadow consistency at order h^2", ok,
            std::to_string(members) + "/6 schemes consistent"};
}

}  // namespace checks

inline std::vector<CheckResult> acceptance_checks(bool full) {
    return {
        checks::identity_suite(full),     checks::vanishing_commutators(),
        checks::verlet_shadow(),          checks::nambu_bch_shadow(),
        checks::eight_representations(),  checks::table1_conservation(full),
        checks::long_run_stability(full), checks::beat_structure(),
        checks::shadow_reproduction(),    checks::reversibility_volume(),
        checks::angle_factor_identities(), checks::two_route_consistency(),
    };
}

// Runs the suite, printing one line per criterion; returns 0 on success.
inline int run_verify(bool full, std::ostream& os) {
    const auto results = acceptance_checks(full);
    bool all = true;
    for (const auto& r : results) {
        os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) os << "  (" << r.detail << ")";
        os << "\n";
        all = all && r.pass;
    }
    os << (all ? "all checks passed" : "CHECKS FAILED") << " ("
       << (full ? "full" : "quick") << " level)\n";
    return all ? 0 : 1;
}

// Drift check against an arbitrary conserved-pair candidate; used by the
// verification suite and as a negative control with corrupted registry data.
inline CheckResult check_conserved_drift(const ConservedPair& pair, const SplitScheme& scheme,
                                         const State& s0, const FlowParams& p, long nsteps,
                                         double tolerance) {
    State s = s0;
    const double hc0 = pair.h_c.eval({s.x1, s.x2, s.x3, p.h});
    const double gc0 = pair.g_c.eval({s.x1, s.x2, s.x3, p.h});
    double worst = 0.0;
    for (long k = 0; k < nsteps; ++k) {
        s = step(scheme, s, p);
        worst = std::max(worst, std::abs(pair.h_c.eval({s.x1, s.x2, s.x3, p.h}) - hc0));
        worst = std::max(worst, std::abs(pair.g_c.eval({s.x1, s.x2, s.x3, p.h}) - gc0));
    }
    return {"conserved drift " + scheme.label(), worst <= tolerance,
            "max drift " + verify_detail::scientific(worst)};
}

}  // namespace nambu
