#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "test_support.hpp"

using namespace nambu;
using namespace nambu::testing;

TEST_CASE("built-in schemes are palindromic with unit fraction sums", "[scheme]") {
    for (const char* label : SplitScheme::all_labels()) {
        const SplitScheme s = SplitScheme::from_label(label);
        CHECK(s.palindromic());
        std::map<int, Rational> sums;
        for (const Stage& st : s.stages()) sums[st.generator] += st.fraction;
        for (const auto& [g, total] : sums) CHECK(total == 1);
    }
    const SplitScheme tvt = SplitScheme::from_label("TVT");
    REQUIRE(tvt.stages().size() == 3);
    CHECK(tvt.stages()[0] == Stage{1, Rational(1, 2)});
    CHECK(tvt.stages()[1] == Stage{2, Rational(1)});
    CHECK(tvt.stages()[2] == Stage{1, Rational(1, 2)});
    CHECK(SplitScheme::from_label("12321").stages().size() == 5);
    CHECK_THROWS_AS(SplitScheme::from_label("11111"), UnknownScheme);
    CHECK_THROWS_AS(SplitScheme::from_label("tvt"), UnknownScheme);
}

TEST_CASE("modified field of the planar baseline", "[bch]") {
    for (const auto& [m, w] : parameter_samples()) {
        const auto hs = hamiltonians(m, w);
        const auto mf = modified_field(SplitScheme::from_label("TVT"), generator_fields(m, w));
        CHECK(mf.v0 == lv_single(hs.T + hs.V));  // the planar Hamiltonian
        CHECK(mf.v1.is_zero());
        CHECK(mf.v2 == lv_single(verlet_shadow_correction(hs.T, hs.V)));
    }
    // the VTV correction swaps the roles of the half-stepped piece
    const auto hs = hamiltonians(Rational(1), Rational(1));
    const auto mf = modified_field(SplitScheme::from_label("VTV"), generator_fields(1, 1));
    CHECK(mf.v0 == lv_single(hs.T + hs.V));
    CHECK(mf.v2 == lv_single(verlet_shadow_correction(hs.V, hs.T)));
}

TEST_CASE("planar baseline conserved quantity", "[bch]") {
    // H - (w^2/8m) h^2 x2^2 is constant under the position Verlet step: its
    // modified-field derivative vanishes through h^2, and long runs hold it
    // to rounding level.
    const Poly h = p_h();
    for (const auto& [m, w] : parameter_samples()) {
        const auto hs = hamiltonians(m, w);
        const Poly planar = hs.T + hs.V;
        const Poly h_c = planar - h * h * p_x2() * p_x2() * (w * w / (8 * m));
        const auto mf = modified_field(SplitScheme::from_label("TVT"), generator_fields(m, w));
        VectorField x_eff;
        for (int i = 0; i < 3; ++i)
            x_eff.comp[i] = mf.v0.comp[i] + h * mf.v1.comp[i] + h * h * mf.v2.comp[i];
        CHECK(vf_apply(x_eff, h_c).truncate_h(2).is_zero());
        // the original planar Hamiltonian is not conserved at this order
        CHECK(!vf_apply(x_eff, planar).truncate_h(2).is_zero());
    }

    const FlowParams p{1.0, 1.0, 0.1};
    const Poly h_c = Poly::parse("1/2*x2^2 + 1/2*x1^2 - 1/8*h^2*x2^2");
    const Trajectory traj =
        run(SplitScheme::from_label("TVT"), State{1.0, 1.0, 1.0, 0.0}, p, 100000, 100);
    double worst = 0;
    for (const auto& [t, d] : drift_series(traj, h_c)) worst = std::max(worst, std::abs(d));
    CHECK(worst <= 1e-9);
}

TEST_CASE("modified field of the ternary compositions", "[bch]") {
    for (const auto& [m, w] : parameter_samples()) {
        const auto hs = hamiltonians(m, w);
        const auto gens = generator_fields(m, w);
        for (const char* label : SplitScheme::nambu_labels()) {
            const auto mf = modified_field(SplitScheme::from_label(label), gens);
            CHECK(mf.v0 == lv_pair(hs.H, hs.G));
            CHECK(mf.v1.is_zero());
        }
        const auto mf = modified_field(SplitScheme::from_label("12321"), gens);
        const auto ref = reference_shadow_pairs_12321(m, w);
        CHECK(mf.v2 == lv_pair(hs.H, ref[0].b) + lv_pair(ref[0].a, hs.G));
    }
}

TEST_CASE("extraction handles degenerate and non-palindromic stage lists", "[bch]") {
    const auto gens = generator_fields(Rational(1), Rational(1));

    SplitScheme single = SplitScheme::custom("1", {Stage{1, Rational(1)}});
    const auto mf1 = modified_field(single, gens);
    CHECK(mf1.v0 == gens[0]);
    CHECK(mf1.v1.is_zero());
    CHECK(mf1.v2.is_zero());

    // first-order splitting: log(e^{hX1} e^{hX2}) = h(X1+X2) + h^2/2 [X1,X2] + ...
    SplitScheme trotter =
        SplitScheme::custom("12", {Stage{1, Rational(1)}, Stage{2, Rational(1)}});
    CHECK(!trotter.palindromic());
    const auto mf2 = modified_field(trotter, gens);
    CHECK(mf2.v0 == gens[0] + gens[1]);
    CHECK(mf2.v1 == Rational(1, 2) * vf_commutator(gens[0], gens[1]));
}

TEST_CASE("custom stage lists must have unit fraction sums", "[scheme]") {
    CHECK_THROWS_AS(SplitScheme::custom("11", {Stage{1, Rational(1)}, Stage{1, Rational(1)}}),
                    DomainError);
    CHECK_NOTHROW(SplitScheme::custom("11", {Stage{1, Rational(1, 2)}, Stage{1, Rational(1, 2)}}));
}

TEST_CASE("rewrite choices enumerate eight distinct values", "[bch]") {
    const auto all = RewriteChoice::all();
    REQUIRE(all.size() == 8);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK(all[i].to_string() != all[j].to_string());
}

TEST_CASE("rewrite choices reproduce the commutator field", "[bch]") {
    for (const auto& [m, w] : parameter_samples()) {
        const auto hs = hamiltonians(m, w);
        const HamPair ac{hs.A, hs.C}, bd{hs.B, hs.D}, ad{hs.A, hs.D};
        const HamPair rows[][3] = {
            {ac, ac, bd}, {ac, bd, ad}, {bd, bd, ac}, {bd, ac, ad}};
        for (const auto& row : rows) {
            const VectorField direct = vf_commutator(
                field_of(row[0]), vf_commutator(field_of(row[1]), field_of(row[2])));
            for (const RewriteChoice& choice : RewriteChoice::all()) {
                const auto pairs = rewrite_nested_commutator(row[0], row[1], row[2], choice);
                CHECK(pairs.size() == 4);
                CHECK(field_of(pairs) == direct);
            }
        }
    }
}

TEST_CASE("first commutator row collapses with multiplicities two and six", "[bch]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    const HamPair ac{hs.A, hs.C}, bd{hs.B, hs.D};
    const HamPair form_b{hs.B, Poly::parse("-2*x2^2")};
    const HamPair form_c{Poly::parse("x2^2"), hs.C};
    int count_b = 0, count_c = 0;
    for (const RewriteChoice& choice : RewriteChoice::all()) {
        const auto collapsed = collapse_pairs(rewrite_nested_commutator(ac, ac, bd, choice));
        REQUIRE(collapsed.size() == 1);
        if (collapsed[0] == form_b) ++count_b;
        if (collapsed[0] == form_c) ++count_c;
    }
    CHECK(count_b == 2);
    CHECK(count_c == 6);
}

TEST_CASE("collapse preserves the generated field", "[bch]") {
    std::mt19937 rng(50);
    for (int i = 0; i < 15; ++i) {
        std::vector<HamPair> pairs;
        const int n = 2 + static_cast<int>(rng() % 4);
        for (int j = 0; j < n; ++j)
            pairs.push_back(HamPair{random_poly(rng, 2, 3, false), random_poly(rng, 2, 3, false)});
        // seed shared slots and zero fields so the merge paths actually run
        pairs.push_back(HamPair{pairs[0].a, random_poly(rng, 2, 3, false)});
        pairs.push_back(HamPair{Poly{}, random_poly(rng, 2, 3, false)});
        const VectorField before = field_of(pairs);
        const auto collapsed = collapse_pairs(pairs);
        CHECK(field_of(collapsed) == before);
        for (const HamPair& p : collapsed) CHECK(!field_of(p).is_zero());
    }
}

TEST_CASE("membership coordinates reconstruct the member", "[bch]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    const auto mf = modified_field(SplitScheme::from_label("12321"), generator_fields(1, 1));
    const ShadowFamily family = shadow_solve(mf.v2, hs.H, hs.G);
    for (const HamPair& member : reference_shadow_pairs_12321(Rational(1), Rational(1))) {
        const auto coords = family.membership(member);
        REQUIRE(coords.has_value());
        REQUIRE(coords->size() == family.dimension());
        HamPair rebuilt = family.particular();
        for (std::size_t i = 0; i < coords->size(); ++i) {
            rebuilt.a += (*coords)[i] * family.homogeneous()[i].a;
            rebuilt.b += (*coords)[i] * family.homogeneous()[i].b;
        }
        CHECK(rebuilt == member);
    }
}

TEST_CASE("shadow family of the 12321 composition", "[bch]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    const auto mf = modified_field(SplitScheme::from_label("12321"), generator_fields(1, 1));
    const ShadowFamily family = shadow_solve(mf.v2, hs.H, hs.G);

    // the defining equation holds exactly for the particular solution and
    // every basis vector
    CHECK(shadow_equation_residual(family.particular(), hs.H, hs.G, mf.v2).is_zero());
    for (const HamPair& basis : family.homogeneous())
        CHECK(shadow_equation_residual(basis, hs.H, hs.G, VectorField{}).is_zero());

    const auto ref = reference_shadow_pairs_12321(Rational(1), Rational(1));
    CHECK(family.membership(ref[0]).has_value());
    CHECK(family.membership(ref[1]).has_value());
    CHECK(family.dimension() >= 1);

    // the difference of the two closed-form pairs is homogeneous and inside
    // the span
    const HamPair diff{ref[0].a - ref[1].a, ref[0].b - ref[1].b};
    CHECK(shadow_equation_residual(diff, hs.H, hs.G, VectorField{}).is_zero());
    const HamPair shifted{family.particular().a + diff.a, family.particular().b + diff.b};
    CHECK(family.membership(shifted).has_value());

    // membership rejects non-solutions and out-of-space pairs
    CHECK(!family.membership(HamPair{p_x1(), Poly{}}).has_value());
    CHECK(!family.membership(HamPair{p_x1().pow(3), Poly{}}).has_value());
}

TEST_CASE("shadow solve at a higher degree cap still contains the pairs", "[bch]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    const auto mf = modified_field(SplitScheme::from_label("12321"), generator_fields(1, 1));
    const ShadowFamily family = shadow_solve(mf.v2, hs.H, hs.G, 3);
    const auto ref = reference_shadow_pairs_12321(Rational(1), Rational(1));
    CHECK(family.membership(ref[0]).has_value());
    CHECK(family.membership(ref[1]).has_value());
}

TEST_CASE("shadow solve reports unreachable fields", "[bch]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    // a field with nonzero divergence cannot come from a Hamiltonian pair
    const VectorField bad{{p_x1(), Poly{}, Poly{}}};
    CHECK_THROWS_AS(shadow_solve(bad, hs.H, hs.G), InconsistentSystem);
    CHECK_THROWS_AS(shadow_solve(bad, hs.H, hs.G, 1), DomainError);
}

TEST_CASE("verlet correction closed form", "[bch]") {
    for (const auto& [m, w] : parameter_samples()) {
        const auto hs = hamiltonians(m, w);
        const Rational w2 = w * w;
        const Poly expected = p_x2() * p_x2() * (-w2 / (24 * m)) +
                              p_x1() * p_x1() * (m * w2 * w2 / 12);
        CHECK(verlet_shadow_correction(hs.T, hs.V) == expected);
    }
}
