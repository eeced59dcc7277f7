#include <doctest.h>

#include "kfano/delpezzo.hpp"
#include "test_util.hpp"

using namespace kfano;
using testutil::Rng;

TEST_CASE("pairing on the cubic surface lattice") {
    SurfaceModel cubic = build_blowup_plane(6);
    CHECK(pair(cubic.form, cubic.canonical, cubic.canonical) == Rational(3));
    const BasisPtr& b = cubic.basis();
    DivisorClass l12(b, {Rational(1), Rational(-1), Rational(-1), Rational(0), Rational(0),
                         Rational(0), Rational(0)});
    CHECK(pair(cubic.form, l12, l12) == Rational(-1));
}

TEST_CASE("pairing on the blown-up quadric lattice") {
    SurfaceModel dp4 = build_blowup_quadric(4);
    DivisorClass l123(dp4.basis(), {Rational(1), Rational(1), Rational(-1), Rational(-1),
                                    Rational(-1), Rational(0)});
    CHECK(pair(dp4.form, l123, l123) == Rational(-1));
}

TEST_CASE("pair checks basis identity") {
    SurfaceModel a = build_blowup_plane(5);
    SurfaceModel b = build_blowup_quadric(3);
    CHECK_THROWS_WITH_AS(pair(a.form, a.canonical, b.canonical),
                         doctest::Contains("basis-mismatch"), Error);
    // Equal name lists on distinct objects interoperate.
    SurfaceModel c = build_blowup_plane(5);
    CHECK(pair(a.form, a.canonical, c.canonical) == Rational(4));
}

TEST_CASE("linear_combine") {
    BasisPtr b = make_basis({"l", "e1", "e2"});
    DivisorClass l = DivisorClass::generator(b, 0);
    DivisorClass e1 = DivisorClass::generator(b, 1);
    DivisorClass e2 = DivisorClass::generator(b, 2);
    DivisorClass l12 = linear_combine({{Rational(1), l}, {Rational(-1), e1}, {Rational(-1), e2}});
    CHECK(l12 == DivisorClass(b, {Rational(1), Rational(-1), Rational(-1)}));
    CHECK(linear_combine(b, {}) == DivisorClass::zero(b));
    CHECK_THROWS_AS(linear_combine({}), Error);

    // E2 restricted to the cubic surface: 8l - 3(e1+...+e5) - 4e0.
    SurfaceModel cubic = build_blowup_plane(6, {"l", "e0", "e1", "e2", "e3", "e4", "e5"});
    const BasisPtr& cb = cubic.basis();
    std::vector<std::pair<Rational, DivisorClass>> terms;
    terms.emplace_back(Rational(8), DivisorClass::generator(cb, 0));
    for (int i = 2; i <= 6; ++i) terms.emplace_back(Rational(-3), DivisorClass::generator(cb, i));
    terms.emplace_back(Rational(-4), DivisorClass::generator(cb, 1));
    DivisorClass e2s = linear_combine(terms);
    CHECK(e2s == DivisorClass(cb, {Rational(8), Rational(-4), Rational(-3), Rational(-3),
                                   Rational(-3), Rational(-3), Rational(-3)}));
}

TEST_CASE("pair is symmetric and bilinear") {
    SurfaceModel dp5 = build_blowup_quadric(3);
    const BasisPtr& b = dp5.basis();
    Rng rng(17);
    auto random_class = [&] {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < b->size(); ++i) v.push_back(rng.rational());
        return DivisorClass(b, v);
    };
    DivisorClass zero = DivisorClass::zero(b);
    for (int i = 0; i < 50; ++i) {
        DivisorClass x = random_class(), y = random_class(), z = random_class();
        Rational s = rng.rational(), t = rng.rational();
        CHECK(pair(dp5.form, x, y) == pair(dp5.form, y, x));
        CHECK(pair(dp5.form, linear_combine({{s, x}, {t, y}}), z) ==
              s * pair(dp5.form, x, z) + t * pair(dp5.form, y, z));
        CHECK(pair(dp5.form, x, zero) == Rational(0));
    }
}

TEST_CASE("poly classes evaluate and restrict") {
    BasisPtr b = make_basis({"H1", "E1"});
    PolyClass family(b, {Poly({Rational(4)}), Poly({Rational(-1), Rational(-1)})});
    DivisorClass at_half = family.eval(Rational(1, 2));
    CHECK(at_half == DivisorClass(b, {Rational(4), Rational(-3, 2)}));
    CHECK(family.max_degree() == 1);
}
