#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "nambu/bch.hpp"
#include "nambu/flows.hpp"
#include "nambu/observables.hpp"
#include "nambu/scheme.hpp"
#include "nambu/shadow_consistency.hpp"
#include "nambu/verify.hpp"

namespace nambu {

struct RunConfig {
    std::string scheme = "32123";
    double m = 1.0;
    double omega = 1.0;
    double h = 0.1;
    std::array<double, 3> x0{1.0, 1.0, 1.0};
    long nsteps = 80000;
    long stride = 100;
    double alpha = 1.0;
    std::string out_path;  // defaults to run_<scheme>.csv
    std::string format = "csv";
};

// Validates before any file is created.
inline void validate(const RunConfig& cfg) {
    if (!SplitScheme::is_nambu_label(cfg.scheme))
        throw UnknownScheme("run: scheme must be one of the six ternary compositions, got '" +
                            cfg.scheme + "'");
    if (cfg.nsteps < 0) throw DomainError("run: --steps must be >= 0");
    if (cfg.stride < 1) throw DomainError("run: --stride must be >= 1");
    if (cfg.m <= 0) throw DomainError("run: --m must be > 0");
    if (cfg.omega <= 0) throw DomainError("run: --omega must be > 0");
    if (cfg.h == 0) throw DomainError("run: --h must be nonzero");
    if (std::abs(cfg.omega * cfg.h) >= 2.0)
        throw DomainError("run: shadow references require |omega*h| < 2");
    if (cfg.format != "csv") throw DomainError("run: unsupported format '" + cfg.format + "'");
}

inline const char* csv_header() {
    return "t,x1,x2,x3,H,G,Hc,Gc,x3o,x3c,x3s,do,dc,ds";
}

namespace cli_detail {

inline std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace cli_detail

// One row per recorded sample: state, both Hamiltonians, both conserved
// quantities, the three closed-form x3 references and their differences
// against the numeric x3.
inline void write_run_csv(const RunConfig& cfg, std::ostream& os) {
    const FlowParams p{cfg.m, cfg.omega, cfg.h};
    const State s0{cfg.x0[0], cfg.x0[1], cfg.x0[2], 0.0};
    const Rational mr = rational_from_double(cfg.m);
    const Rational wr = rational_from_double(cfg.omega);
    const OscillatorPolys hs = hamiltonians(mr, wr);
    const ConservedPair pair = conserved_pair(cfg.scheme, mr, wr);
    const NormalFormRates k_orig{1.0 / p.m, p.m * p.omega * p.omega, 2.0 / p.m};
    const NormalFormRates k_cons = conserved_dynamics(pair, p);
    const double f = factor_f(p.omega * p.h);

    os << csv_header() << "\n";
    const SplitScheme scheme = SplitScheme::from_label(cfg.scheme);
    State s = s0;
    using cli_detail::g17;
    auto emit = [&](const State& st) {
        const std::array<double, 4> pt{st.x1, st.x2, st.x3, p.h};
        const double x3o = normal_mode_solution(st.t, s0, k_orig).x3;
        const double x3c = normal_mode_solution(st.t, s0, k_cons).x3;
        const double x3s = normal_mode_solution(f * st.t, s0, k_cons).x3;
        os << g17(st.t) << "," << g17(st.x1) << "," << g17(st.x2) << "," << g17(st.x3) << ","
           << g17(hs.H.eval(pt)) << "," << g17(hs.G.eval(pt)) << "," << g17(pair.h_c.eval(pt))
           << "," << g17(pair.g_c.eval(pt)) << "," << g17(x3o) << "," << g17(x3c) << ","
           << g17(x3s) << "," << g17(x3o - st.x3) << "," << g17(x3c - st.x3) << ","
           << g17(x3s - st.x3) << "\n";
    };
    emit(s);
    for (long k = 1; k <= cfg.nsteps; ++k) {
        s = step(scheme, s, p);
        if (k % cfg.stride == 0) emit(s);
    }
}

inline std::string cmd_run(const RunConfig& cfg) {
    validate(cfg);
    std::string path = cfg.out_path.empty() ? ("run_" + cfg.scheme + ".csv") : cfg.out_path;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("run: cannot open '" + path + "' for writing");
    write_run_csv(cfg, out);
    if (!out) throw std::runtime_error("run: write failed for '" + path + "'");
    return path;
}

// Symbolic derivation report for one composition: modified field, shadow
// family, closed-form pair verdicts (12321), and the two-route consistency
// section at the requested alpha.
inline std::string cmd_derive(const std::string& scheme_label, const Rational& m,
                              const Rational& omega, const Rational& alpha) {
    std::ostringstream os;
    const bool known =
        std::find_if(SplitScheme::all_labels().begin(), SplitScheme::all_labels().end(),
                     [&](const char* l) { return scheme_label == l; }) !=
        SplitScheme::all_labels().end();
    if (!known) throw UnknownScheme("derive: unknown scheme '" + scheme_label + "'");

    if (!SplitScheme::is_nambu_label(scheme_label)) {
        // Planar Verlet baselines: a single shadow Hamiltonian.
        const OscillatorPolys hs = hamiltonians(m, omega);
        const SplitScheme scheme = SplitScheme::from_label(scheme_label);
        const auto mf = modified_field(scheme, generator_fields(m, omega));
        const Poly outer = scheme_label == "TVT" ? hs.T : hs.V;
        const Poly inner = scheme_label == "TVT" ? hs.V : hs.T;
        const Poly corr = verlet_shadow_correction(outer, inner);
        os << "scheme = " << scheme_label << "\n";
        os << "m = " << m << "\nomega = " << omega << "\n";
        os << "[modified-field]\n";
        os << "v0 = " << mf.v0.to_string() << "\n";
        os << "v1 = " << mf.v1.to_string() << "\n";
        os << "v2 = " << mf.v2.to_string() << "\n";
        os << "[shadow]\n";
        os << "dH = " << corr.to_string() << "\n";
        os << "Hs = " << (hs.H + Poly::var(Var::h).pow(2) * corr).to_string() << "\n";
        os << "v2_matches_dH_field = " << (mf.v2 == lv_single(corr) ? "yes" : "no") << "\n";
        return os.str();
    }

    const auto c = analyze_shadow_consistency(scheme_label, m, omega, alpha);
    os << render_consistency_report(c);
    if (scheme_label == "12321") {
        const ShadowFamily family = shadow_solve(c.mf.v2, c.ham_h, c.ham_g);
        const auto ref = reference_shadow_pairs_12321(m, omega);
        os << "[closed-form-pairs]\n";
        for (int i = 0; i < 2; ++i) {
            os << "pair." << i << ".dH = " << ref[i].a.to_string() << "\n";
            os << "pair." << i << ".dG = " << ref[i].b.to_string() << "\n";
            os << "pair." << i << ".member = "
               << (family.membership(ref[i]).has_value() ? "yes" : "no") << "\n";
        }
    }
    return os.str();
}

// Registry table plus measured drift over a standard run.
inline std::string cmd_table(long nsteps = 100000) {
    std::ostringstream os;
    const FlowParams p{1.0, 1.0, 0.1};
    const State s0{1.0, 1.0, 1.0, 0.0};
    os << "scheme | H_c | G_c | max|H_c drift| | max|G_c drift| (m=omega=1, h=0.1, "
       << nsteps << " steps)\n";
    for (const char* label : SplitScheme::nambu_labels()) {
        const ConservedPair pair = conserved_pair(label, Rational(1), Rational(1));
        const SplitScheme scheme = SplitScheme::from_label(label);
        State s = s0;
        const double hc0 = pair.h_c.eval({s.x1, s.x2, s.x3, p.h});
        const double gc0 = pair.g_c.eval({s.x1, s.x2, s.x3, p.h});
        double dh = 0, dg = 0;
        for (long k = 0; k < nsteps; ++k) {
            s = step(scheme, s, p);
            dh = std::max(dh, std::abs(pair.h_c.eval({s.x1, s.x2, s.x3, p.h}) - hc0));
            dg = std::max(dg, std::abs(pair.g_c.eval({s.x1, s.x2, s.x3, p.h}) - gc0));
        }
        os << label << " | " << pair.h_c.to_string() << " | " << pair.g_c.to_string() << " | "
           << verify_detail::scientific(dh) << " | " << verify_detail::scientific(dg) << "\n";
    }
    return os.str();
}

inline int cmd_verify(const std::string& level, std::ostream& os) {
    if (level != "quick" && level != "full")
        throw DomainError("verify: --level must be 'quick' or 'full'");
    return run_verify(level == "full", os);
}

}  // namespace nambu
