#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "test_support.hpp"

using namespace nambu;
using namespace nambu::testing;

TEST_CASE("poisson bracket basics", "[brackets]") {
    CHECK(poisson(p_x1(), p_x2()) == Poly(1));

    const auto hs = hamiltonians(Rational(1), Rational(1));
    CHECK(poisson(hs.T, hs.V) == Poly::parse("-x1*x2"));

    std::mt19937 rng(10);
    for (int i = 0; i < 20; ++i) {
        const Poly a = random_poly(rng);
        CHECK(poisson(a, a).is_zero());
    }
}

TEST_CASE("nambu bracket basics", "[brackets]") {
    CHECK(nambu_bracket(p_x1(), p_x2(), p_x3()) == Poly(1));

    const auto hs = hamiltonians(Rational(1), Rational(1));
    CHECK(nambu_bracket(p_x1(), hs.H, hs.G) == p_x2());
    CHECK(nambu_bracket(p_x3(), hs.H, hs.G) == Poly::parse("2*x1*x2"));

    // general parameters: dx2/dt = -m w^2 x1 and dx3/dt = (2/m) x1 x2
    const auto hs2 = hamiltonians(Rational(2), Rational(3));
    CHECK(nambu_bracket(p_x2(), hs2.H, hs2.G) == Poly::parse("-18*x1"));
    CHECK(nambu_bracket(p_x3(), hs2.H, hs2.G) == p_x1() * p_x2());
}

TEST_CASE("bracket antisymmetry", "[brackets]") {
    std::mt19937 rng(11);
    for (int i = 0; i < 25; ++i) {
        const Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(poisson(a, b) == -poisson(b, a));
        // alternating under all six permutations with signature signs
        const Poly base = nambu_bracket(a, b, c);
        CHECK(nambu_bracket(b, c, a) == base);
        CHECK(nambu_bracket(c, a, b) == base);
        CHECK(nambu_bracket(b, a, c) == -base);
        CHECK(nambu_bracket(a, c, b) == -base);
        CHECK(nambu_bracket(c, b, a) == -base);
        CHECK(nambu_bracket(a, a, c).is_zero());
    }
}

TEST_CASE("bracket Leibniz rule in the first slot", "[brackets]") {
    std::mt19937 rng(12);
    for (int i = 0; i < 20; ++i) {
        const Poly a = random_poly(rng, 2, 4), b = random_poly(rng, 2, 4),
                   c = random_poly(rng, 2, 4), d = random_poly(rng, 2, 4);
        CHECK(poisson(a * b, c) == a * poisson(b, c) + poisson(a, c) * b);
        CHECK(nambu_bracket(a * b, c, d) ==
              a * nambu_bracket(b, c, d) + nambu_bracket(a, c, d) * b);
    }
}

TEST_CASE("jacobi residual vanishes", "[brackets]") {
    const auto hs = hamiltonians(Rational(1), Rational(1));
    CHECK(jacobi_residual(p_x1(), p_x2(), p_x1() * p_x2()).is_zero);
    CHECK(jacobi_residual(hs.T, hs.V, p_x1() * p_x2()).is_zero);
    CHECK(jacobi_residual(hs.H, hs.G, p_x3()).is_zero);

    auto rep = jacobi_residual(hs.H, hs.G, p_x3());
    CHECK(rep.inputs.size() == 3);
    CHECK(rep.is_zero == rep.residual.is_zero());

    std::mt19937 rng(13);
    for (int i = 0; i < 50; ++i)
        CHECK(jacobi_residual(random_poly(rng), random_poly(rng), random_poly(rng)).is_zero);
}

TEST_CASE("fundamental identity residual vanishes", "[brackets]") {
    CHECK(fundamental_identity_residual(p_x3(), p_x1(), p_x2(), p_x2(), p_x3()).is_zero);

    const auto hs = hamiltonians(Rational(1), Rational(1));
    CHECK(fundamental_identity_residual(p_x3(), hs.A, hs.C, hs.B, hs.D).is_zero);

    std::mt19937 rng(14);
    for (int i = 0; i < 50; ++i) {
        auto rep = fundamental_identity_residual(random_poly(rng, 2), random_poly(rng, 2),
                                                 random_poly(rng, 2), random_poly(rng, 2),
                                                 random_poly(rng, 2));
        CHECK(rep.is_zero);
        CHECK(rep.inputs.size() == 5);
    }
}
