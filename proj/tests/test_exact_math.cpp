#include <doctest.h>

#include "kfano/poly.hpp"
#include "test_util.hpp"

using namespace kfano;
using testutil::Rng;

TEST_CASE("rationals are canonical") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 2).str() == "1/2");
    CHECK(Rational(-22).str() == "-22");
    CHECK(Rational::parse("182/352") == Rational(91, 176));
    CHECK(Rational::parse("-5/10").str() == "-1/2");
    CHECK_THROWS_WITH_AS(Rational::parse("1/0"), doctest::Contains("zero-denominator"), Error);
    CHECK_THROWS_AS(Rational::parse("x"), Error);
    CHECK(std::hash<Rational>{}(Rational(2, 4)) == std::hash<Rational>{}(Rational(1, 2)));
}

TEST_CASE("rational arithmetic is exact") {
    // a/b + c/d recomputed via integers.
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        long long a = rng.range(-50, 50), b = rng.range(1, 50);
        long long c = rng.range(-50, 50), d = rng.range(1, 50);
        CHECK(Rational(a, b) + Rational(c, d) == Rational(a * d + c * b, b * d));
        CHECK(Rational(a, b) * Rational(c, d) == Rational(a * c, b * d));
    }
    CHECK(pow(Rational(-2, 3), 3) == Rational(-8, 27));
    Rational root;
    CHECK(rational_sqrt(Rational(49, 4), root));
    CHECK(root == Rational(7, 2));
    CHECK_FALSE(rational_sqrt(Rational(5), root));
    CHECK_FALSE(rational_sqrt(Rational(-4), root));
}

TEST_CASE("poly_eval") {
    Poly p({Rational(22), Rational(0), Rational(0), Rational(-2)});  // 22 - 2u^3
    CHECK(poly_eval(p, Rational(1)) == Rational(20));
    CHECK(poly_eval(Poly(), Rational(7, 3)) == Rational(0));
    // 11(4-3u)^3/32 vanishes at the root of the cube.
    Poly cube = Rational(11, 32) * (Poly({Rational(4), Rational(-3)}) *
                                    Poly({Rational(4), Rational(-3)}) *
                                    Poly({Rational(4), Rational(-3)}));
    CHECK(poly_eval(cube, Rational(4, 3)) == Rational(0));
}

TEST_CASE("poly_integrate") {
    Poly p({Rational(22), Rational(0), Rational(0), Rational(-2)});
    CHECK(poly_integrate(p, Rational(0), Rational(1)) == Rational(43, 2));
    Poly cube = Rational(11, 32) * (Poly({Rational(4), Rational(-3)}) *
                                    Poly({Rational(4), Rational(-3)}) *
                                    Poly({Rational(4), Rational(-3)}));
    CHECK(poly_integrate(cube, Rational(0), Rational(4, 3)) == Rational(22, 3));
    CHECK(poly_integrate(p, Rational(5, 7), Rational(5, 7)) == Rational(0));
    CHECK_THROWS_WITH_AS(poly_integrate(p, Rational(1), Rational(0)),
                         doctest::Contains("empty-interval"), Error);
}

TEST_CASE("poly_integrate is additive over subdivisions") {
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        Poly p({rng.rational(), rng.rational(), rng.rational(), rng.rational()});
        Rational a = rng.rational(8, 5), b = rng.rational(8, 5), c = rng.rational(8, 5);
        if (b < a) std::swap(a, b);
        if (c < b) { std::swap(b, c); if (b < a) std::swap(a, b); }
        CHECK(poly_integrate(p, a, c) ==
              poly_integrate(p, a, b) + poly_integrate(p, b, c));
    }
}

TEST_CASE("poly_interpolate") {
    Poly q = poly_interpolate({{Rational(0), Rational(0)},
                               {Rational(1), Rational(1)},
                               {Rational(2), Rational(4)}},
                              2);
    CHECK(q == Poly({Rational(0), Rational(0), Rational(1)}));
    Poly line = poly_interpolate({{Rational(0), Rational(22)}, {Rational(1), Rational(20)}}, 1);
    CHECK(line == Poly({Rational(22), Rational(-2)}));

    // 2(u-3)(u^2-3u-3) reconstructed from 4 samples on [1,3].
    Poly cubic = Rational(2) * (Poly({Rational(-3), Rational(1)}) *
                                Poly({Rational(-3), Rational(-3), Rational(1)}));
    std::vector<std::pair<Rational, Rational>> pts;
    for (const auto& x : {Rational(1), Rational(3, 2), Rational(2), Rational(11, 4)})
        pts.emplace_back(x, cubic.eval(x));
    CHECK(poly_interpolate(pts, 3) == cubic);

    CHECK_THROWS_WITH_AS(
        poly_interpolate({{Rational(1), Rational(1)}, {Rational(1), Rational(2)}}, 1),
        doctest::Contains("singular-system"), Error);
    CHECK_THROWS_AS(poly_interpolate({{Rational(1), Rational(1)}}, 2), Error);
}

TEST_CASE("interpolation inverts sampling") {
    Rng rng(13);
    for (int i = 0; i < 60; ++i) {
        int deg = static_cast<int>(rng.range(0, 3));
        std::vector<Rational> coeffs;
        for (int k = 0; k <= deg; ++k) coeffs.push_back(rng.rational());
        Poly p(coeffs);
        std::vector<std::pair<Rational, Rational>> pts;
        Rational x(-2);
        for (int k = 0; k <= deg; ++k) {
            x += rng.positive_rational(3, 3);
            pts.emplace_back(x, p.eval(x));
        }
        Poly q = poly_interpolate(pts, deg);
        CHECK(q == p);
    }
}

TEST_CASE("piecewise_integrate reproduces the two three-chamber volumes") {
    // 22-2u^3 | (u+1)(u^2-10u+19) | 3(u-3)(2u-7) integrates to 161/4.
    Poly p1({Rational(22), Rational(0), Rational(0), Rational(-2)});
    Poly p2 = Poly({Rational(1), Rational(1)}) * Poly({Rational(19), Rational(-10), Rational(1)});
    Poly p3 = Rational(3) * Poly({Rational(-3), Rational(1)}) * Poly({Rational(-7), Rational(2)});
    PiecewisePoly f({Rational(0), Rational(1), Rational(2), Rational(3)}, {p1, p2, p3}, true);
    CHECK(piecewise_integrate(f) == Rational(161, 4));

    PiecewisePoly zero({Rational(0), Rational(1)}, {Poly()}, true);
    CHECK(piecewise_integrate(zero) == Rational(0));

    // 22-2u^3 | -6u^2+6u+20 | 2(6-u)(u-3)^2 integrates to 39.
    Poly q2({Rational(20), Rational(6), Rational(-6)});
    Poly q3 = Rational(2) * Poly({Rational(6), Rational(-1)}) *
              Poly({Rational(-3), Rational(1)}) * Poly({Rational(-3), Rational(1)});
    PiecewisePoly g({Rational(0), Rational(1), Rational(2), Rational(3)}, {p1, q2, q3}, true);
    CHECK(piecewise_integrate(g) == Rational(39));
}

TEST_CASE("piecewise continuity flag is verified exactly") {
    Poly a({Rational(1)});
    Poly b({Rational(2)});
    CHECK_THROWS_WITH_AS(
        PiecewisePoly({Rational(0), Rational(1), Rational(2)}, {a, b}, true),
        doctest::Contains("discontinuous-pieces"), Error);
    // The same data is representable with the flag off (first term of S(W;Z)
    // has genuinely discontinuous integrands at chamber walls).
    PiecewisePoly ok({Rational(0), Rational(1), Rational(2)}, {a, b}, false);
    CHECK(ok.integrate() == Rational(3));
    CHECK_THROWS_AS(PiecewisePoly({Rational(1), Rational(0)}, {a}, false), Error);
}
