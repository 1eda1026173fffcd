#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nambu/fields.hpp"
#include "nambu/linsolve.hpp"
#include "nambu/observables.hpp"
#include "nambu/poly.hpp"
#include "nambu/scheme.hpp"

namespace nambu {

// The split generators X1 = X_{A,C}, X2 = X_{B,D}, X3 = X_{A,D}; their sum is
// the full generator X_{H,G}, and X1, X2 coincide with the planar X_T, X_V.
inline std::array<VectorField, 3> generator_fields(const Rational& m, const Rational& omega) {
    const OscillatorPolys hs = hamiltonians(m, omega);
    return {lv_pair(hs.A, hs.C), lv_pair(hs.B, hs.D), lv_pair(hs.A, hs.D)};
}

// h-graded effective generator of a composition: X_eff = v0 + h v1 + h^2 v2.
struct ModifiedField {
    VectorField v0, v1, v2;
};

namespace detail {

// exp(fraction * h * X) applied to p as an operator series, every
// intermediate cut past h^max_h. The generators are nilpotent on bounded
// degrees, so a cutoff past the scheme's exact h-degree loses nothing.
inline Poly apply_exp_stage(const VectorField& x, const Rational& fraction, const Poly& p,
                            int max_h) {
    const Poly h = Poly::var(Var::h);
    Poly result = p;
    Poly term = p;
    for (int k = 1; k <= max_h; ++k) {
        term = (vf_apply(x, term) * (fraction / k) * h).truncate_h(max_h);
        if (term.is_zero()) break;
        result += term;
    }
    return result.truncate_h(max_h);
}

}  // namespace detail

// Images of the coordinate functions under the composed stage exponentials,
// as polynomials in (x1, x2, x3, h) cut past h^max_h.
inline std::array<Poly, 3> scheme_coordinate_images(const SplitScheme& scheme,
                                                    const std::array<VectorField, 3>& generators,
                                                    int max_h) {
    std::array<Poly, 3> image;
    for (int i = 0; i < 3; ++i) {
        Poly p = Poly::var(static_cast<Var>(i));
        const auto& stages = scheme.stages();
        for (auto it = stages.rbegin(); it != stages.rend(); ++it)
            p = detail::apply_exp_stage(generators[it->generator - 1], it->fraction, p, max_h);
        image[i] = p;
    }
    return image;
}

// Extracts the modified vector field of a splitting scheme through order h^2
// by composing h^3-truncated exponentials over the coordinate functions and
// solving the resulting triangular system
//   P(xi) = xi + h V0 xi + h^2 (V1 + V0^2/2) xi + h^3 (V2 + (V0V1+V1V0)/2 + V0^3/6) xi.
inline ModifiedField modified_field(const SplitScheme& scheme,
                                    const std::array<VectorField, 3>& generators) {
    const std::array<Poly, 3> image = scheme_coordinate_images(scheme, generators, 3);
    for (int i = 0; i < 3; ++i)
        if (!(image[i].coefficient_of_h(0) == Poly::var(static_cast<Var>(i))))
            throw StructureError("modified_field: composed map is not a near-identity series");

    ModifiedField mf;
    for (int i = 0; i < 3; ++i) mf.v0.comp[i] = image[i].coefficient_of_h(1);
    for (int i = 0; i < 3; ++i)
        mf.v1.comp[i] =
            image[i].coefficient_of_h(2) - vf_apply(mf.v0, mf.v0.comp[i]) / Rational(2);
    for (int i = 0; i < 3; ++i) {
        Poly third = image[i].coefficient_of_h(3);
        Poly v0v1 = vf_apply(mf.v0, mf.v1.comp[i]);
        Poly v1v0 = vf_apply(mf.v1, mf.v0.comp[i]);
        Poly v0_cubed = vf_apply(mf.v0, vf_apply(mf.v0, mf.v0.comp[i]));
        mf.v2.comp[i] = third - (v0v1 + v1v0) / Rational(2) - v0_cubed / Rational(6);
    }
    if (scheme.palindromic() && !mf.v1.is_zero())
        throw NonPalindromicScheme("modified_field: palindromic scheme '" + scheme.label() +
                                   "' yielded a nonzero first-order term");
    return mf;
}

// --- fundamental-identity rewriting ------------------------------------------

// A Hamiltonian pair (a, b) standing for the operator X_{a,b} = lv_pair(a, b).
struct HamPair {
    Poly a, b;
    friend bool operator==(const HamPair&, const HamPair&) = default;
};

inline VectorField field_of(const HamPair& p) { return lv_pair(p.a, p.b); }

inline VectorField field_of(const std::vector<HamPair>& pairs) {
    VectorField f;
    for (const auto& p : pairs) f += field_of(p);
    return f;
}

// Which term of the raw commutator expansion the fundamental identity is
// applied to. Each application yields two Hamiltonian pairs; the Second form
// carries an overall sign, folded into the freshly computed bracket slot.
enum class FiSide { First, Second };

struct RewriteChoice {
    FiSide inner;   // applied to [X_inner1, X_inner2]
    FiSide outer1;  // applied to [X_outer, (first pair)]
    FiSide outer2;  // applied to [X_outer, (second pair)]

    static std::array<RewriteChoice, 8> all() {
        std::array<RewriteChoice, 8> cs;
        int i = 0;
        for (FiSide a : {FiSide::First, FiSide::Second})
            for (FiSide b : {FiSide::First, FiSide::Second})
                for (FiSide c : {FiSide::First, FiSide::Second}) cs[i++] = RewriteChoice{a, b, c};
        return cs;
    }

    std::string to_string() const {
        auto s = [](FiSide f) { return f == FiSide::First ? "1st" : "2nd"; };
        return std::string("(") + s(inner) + "," + s(outer1) + "," + s(outer2) + ")";
    }
};

// [X_{c,d}, X_{e,f}] as two Hamiltonian pairs:
//   First:  X_{{e,c,d},f} + X_{e,{f,c,d}}
//   Second: X_{-{c,e,f},d} + X_{c,-{d,e,f}}
inline std::array<HamPair, 2> commutator_pairs(const HamPair& cd, const HamPair& ef,
                                               FiSide side) {
    if (side == FiSide::First)
        return {HamPair{nambu_bracket(ef.a, cd.a, cd.b), ef.b},
                HamPair{ef.a, nambu_bracket(ef.b, cd.a, cd.b)}};
    return {HamPair{-nambu_bracket(cd.a, ef.a, ef.b), cd.b},
            HamPair{cd.a, -nambu_bracket(cd.b, ef.a, ef.b)}};
}

// [X_outer, [X_inner1, X_inner2]] written as four Hamiltonian pairs whose
// lv_pair sum equals the commutator field for every choice; the expression
// trees differ with the choice, the fields agree.
inline std::vector<HamPair> rewrite_nested_commutator(const HamPair& outer,
                                                      const HamPair& inner1,
                                                      const HamPair& inner2,
                                                      const RewriteChoice& choice) {
    auto level1 = commutator_pairs(inner1, inner2, choice.inner);
    auto first = commutator_pairs(outer, level1[0], choice.outer1);
    auto second = commutator_pairs(outer, level1[1], choice.outer2);
    return {first[0], first[1], second[0], second[1]};
}

// Drops pairs that generate the zero field and merges pairs sharing a slot;
// the four commutator-table rows each reduce to a single pair this way.
inline std::vector<HamPair> collapse_pairs(std::vector<HamPair> pairs) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<HamPair> kept;
        for (auto& p : pairs)
            if (!field_of(p).is_zero()) kept.push_back(std::move(p));
        if (kept.size() != pairs.size()) changed = true;
        pairs = std::move(kept);
        for (std::size_t i = 0; i < pairs.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < pairs.size() && !changed; ++j) {
                if (pairs[i].a == pairs[j].a) {
                    pairs[i].b += pairs[j].b;
                    pairs.erase(pairs.begin() + static_cast<long>(j));
                    changed = true;
                } else if (pairs[i].b == pairs[j].b) {
                    pairs[i].a += pairs[j].a;
                    pairs.erase(pairs.begin() + static_cast<long>(j));
                    changed = true;
                }
            }
        }
    }
    return pairs;
}

// --- shadow-correction linear system ------------------------------------------

// Affine family of corrections (dH, dG), without the h^2 factor, satisfying
//   lv_pair(dH, G) + lv_pair(H, dG) = v2.
class ShadowFamily {
  public:
    ShadowFamily(HamPair particular, std::vector<HamPair> homogeneous,
                 std::vector<Monomial> unknown_monomials)
        : particular_(std::move(particular)),
          homogeneous_(std::move(homogeneous)),
          unknowns_(std::move(unknown_monomials)) {}

    const HamPair& particular() const { return particular_; }
    const std::vector<HamPair>& homogeneous() const { return homogeneous_; }
    std::size_t dimension() const { return homogeneous_.size(); }

    // Coordinates of (pair - particular) in the homogeneous basis, when the
    // pair belongs to the affine set.
    std::optional<std::vector<Rational>> membership(const HamPair& pair) const {
        std::vector<Rational> target;
        if (!coords(HamPair{pair.a - particular_.a, pair.b - particular_.b}, target))
            return std::nullopt;
        std::vector<std::vector<Rational>> m(target.size(),
                                             std::vector<Rational>(homogeneous_.size()));
        for (std::size_t j = 0; j < homogeneous_.size(); ++j) {
            std::vector<Rational> col;
            if (!coords(homogeneous_[j], col)) return std::nullopt;
            for (std::size_t i = 0; i < col.size(); ++i) m[i][j] = col[i];
        }
        try {
            return linalg::solve_affine(std::move(m), std::move(target)).particular;
        } catch (const InconsistentSystem&) {
            return std::nullopt;
        }
    }

  private:
    // Coefficient vector of a pair over the unknown monomial list; false when
    // the pair uses monomials outside the solved space.
    bool coords(const HamPair& pair, std::vector<Rational>& out) const {
        out.assign(2 * unknowns_.size(), Rational(0));
        const Poly* slots[2] = {&pair.a, &pair.b};
        for (int s = 0; s < 2; ++s) {
            for (const auto& [mon, c] : slots[s]->terms()) {
                auto it = std::find(unknowns_.begin(), unknowns_.end(), mon);
                if (it == unknowns_.end()) return false;
                out[s * unknowns_.size() +
                    static_cast<std::size_t>(it - unknowns_.begin())] = c;
            }
        }
        return true;
    }

    HamPair particular_;
    std::vector<HamPair> homogeneous_;
    std::vector<Monomial> unknowns_;
};

namespace detail {

// Monomials in (x1, x2, x3) with total degree <= max_degree, graded-lex order.
inline std::vector<Monomial> phase_monomials_up_to(int max_degree) {
    std::vector<Monomial> out;
    for (int d = 0; d <= max_degree; ++d)
        for (int e1 = d; e1 >= 0; --e1)
            for (int e2 = d - e1; e2 >= 0; --e2) {
                Monomial m;
                m.exp = {e1, e2, d - e1 - e2, 0};
                out.push_back(m);
            }
    return out;
}

// Deterministic greedy support reduction: repeatedly subtract the null-basis
// multiple that lowers the nonzero count the most (ties: lexicographically
// smaller support wins).
inline void sparsify(std::vector<Rational>& particular,
                     const std::vector<std::vector<Rational>>& basis) {
    auto support = [](const std::vector<Rational>& v) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) s.push_back(i);
        return s;
    };
    bool improved = true;
    while (improved) {
        improved = false;
        std::vector<Rational> best = particular;
        auto best_support = support(best);
        for (const auto& n : basis) {
            for (std::size_t j = 0; j < particular.size(); ++j) {
                if (particular[j] == 0 || n[j] == 0) continue;
                std::vector<Rational> cand = particular;
                const Rational f = particular[j] / n[j];
                for (std::size_t i = 0; i < cand.size(); ++i) cand[i] -= f * n[i];
                auto cs = support(cand);
                if (cs.size() < best_support.size() ||
                    (cs.size() == best_support.size() && cs < best_support)) {
                    best = std::move(cand);
                    best_support = std::move(cs);
                }
            }
        }
        if (!(best == particular)) {
            particular = std::move(best);
            improved = true;
        }
    }
}

}  // namespace detail

// Solves lv_pair(dH, hamG) + lv_pair(hamH, dG) = v2 for polynomial corrections
// of phase degree <= max_degree. Throws InconsistentSystem when v2 is outside
// the span (no polynomial shadow pair at this degree).
inline ShadowFamily shadow_solve(const VectorField& v2, const Poly& hamH, const Poly& hamG,
                                 int max_degree = 2) {
    if (max_degree < 2) throw DomainError("shadow_solve: max_degree must be >= 2");
    const std::vector<Monomial> unknowns = detail::phase_monomials_up_to(max_degree);
    const std::size_t n = unknowns.size();

    // Column fields: unknown j < n is a dH monomial, j >= n a dG monomial.
    std::vector<VectorField> columns;
    columns.reserve(2 * n);
    for (const auto& mon : unknowns)
        columns.push_back(lv_pair(Poly::monomial(mon, Rational(1)), hamG));
    for (const auto& mon : unknowns)
        columns.push_back(lv_pair(hamH, Poly::monomial(mon, Rational(1))));

    // Row space: every (component, monomial) seen in any column or in v2.
    std::vector<std::pair<int, Monomial>> row_index;
    auto note_rows = [&](const VectorField& f) {
        for (int i = 0; i < 3; ++i)
            for (const auto& [mon, c] : f.comp[i].terms()) {
                std::pair<int, Monomial> key{i, mon};
                if (std::find(row_index.begin(), row_index.end(), key) == row_index.end())
                    row_index.push_back(key);
            }
    };
    for (const auto& f : columns) note_rows(f);
    note_rows(v2);

    std::vector<std::vector<Rational>> a(row_index.size(),
                                         std::vector<Rational>(columns.size(), Rational(0)));
    std::vector<Rational> b(row_index.size(), Rational(0));
    for (std::size_t r = 0; r < row_index.size(); ++r) {
        const auto& [ci, mon] = row_index[r];
        for (std::size_t c = 0; c < columns.size(); ++c)
            a[r][c] = columns[c].comp[ci].coefficient(mon);
        b[r] = v2.comp[ci].coefficient(mon);
    }

    linalg::AffineSolution sol = linalg::solve_affine(std::move(a), std::move(b));
    detail::sparsify(sol.particular, sol.null_basis);

    auto to_pair = [&](const std::vector<Rational>& v) {
        HamPair p;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] != 0) p.a += Poly::monomial(unknowns[j], v[j]);
            if (v[n + j] != 0) p.b += Poly::monomial(unknowns[j], v[n + j]);
        }
        return p;
    };
    std::vector<HamPair> homogeneous;
    homogeneous.reserve(sol.null_basis.size());
    for (const auto& nvec : sol.null_basis) homogeneous.push_back(to_pair(nvec));
    return ShadowFamily(to_pair(sol.particular), std::move(homogeneous), unknowns);
}

// Residual of the defining equation for a candidate correction pair.
inline VectorField shadow_equation_residual(const HamPair& delta, const Poly& hamH,
                                            const Poly& hamG, const VectorField& v2) {
    return lv_pair(delta.a, hamG) + lv_pair(hamH, delta.b) - v2;
}

// Second-order correction of the aba Verlet baselines, from the two nested
// Poisson brackets; H_S = H + h^2 * (returned value). The outer argument is
// the half-stepped piece.
inline Poly verlet_shadow_correction(const Poly& outer, const Poly& inner) {
    return (poisson(poisson(inner, outer), outer) -
            2 * poisson(poisson(outer, inner), inner)) *
           Rational(-1, 24);
}

// The two closed-form correction pairs of the 12321 composition reachable by
// single fixed identity choices; members of its shadow family, used as
// cross-check data.
inline std::array<HamPair, 2> reference_shadow_pairs_12321(const Rational& m,
                                                           const Rational& omega) {
    const Poly x1sq = Poly::var(Var::x1) * Poly::var(Var::x1);
    const Poly x2sq = Poly::var(Var::x2) * Poly::var(Var::x2);
    const Rational w2 = omega * omega;
    HamPair first{x2sq * (w2 / (12 * m)) + x1sq * (m * w2 * w2 / 12),
                  x2sq * (Rational(1) / (4 * m * m))};
    HamPair second{Poly{}, x2sq * (Rational(1) / (12 * m * m)) - x1sq * (w2 / 6)};
    return {first, second};
}

}  // namespace nambu
