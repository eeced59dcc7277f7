#include <doctest.h>

#include <algorithm>
#include <set>

#include "kfano/delpezzo.hpp"

using namespace kfano;

TEST_CASE("curve counts match the classical table") {
    // degree -> count for the supported constructors
    const std::pair<int, std::size_t> plane_counts[] = {
        {1, 1}, {2, 3}, {3, 6}, {4, 10}, {5, 16}, {6, 27}, {7, 56}};
    for (auto [n, count] : plane_counts) {
        SurfaceModel m = build_blowup_plane(n);
        CHECK(m.negative_curves.size() == count);
        CHECK(m.degree == 9 - n);
    }
    const std::pair<int, std::size_t> quadric_counts[] = {
        {0, 0}, {1, 3}, {2, 6}, {3, 10}, {4, 16}, {5, 27}, {6, 56}};
    for (auto [k, count] : quadric_counts) {
        SurfaceModel m = build_blowup_quadric(k);
        CHECK(m.negative_curves.size() == count);
        CHECK(m.degree == 8 - k);
    }
}

TEST_CASE("named Mori cone generators are enumerated") {
    SurfaceModel cubic = build_blowup_plane(6);
    // q_i = 2l - sum e_j + e_i: the conic through five of the six points.
    for (int i = 1; i <= 6; ++i) {
        std::vector<Rational> v(7, Rational(-1));
        v[0] = Rational(2);
        v[i] = Rational(0);
        CHECK(cubic.curve_index(DivisorClass(cubic.basis(), v)) >= 0);
    }
    CHECK(cubic.curve_index("q_1") >= 0);
    CHECK(cubic.curve_index("l_12") >= 0);

    SurfaceModel m1 = build_blowup_plane(1);
    CHECK(m1.negative_curves.size() == 1);
    CHECK(m1.curve_names[0] == "e1");

    // Degree 6 from the quadric: e1, e2 and the four ruling transforms.
    SurfaceModel dp6 = build_blowup_quadric(2);
    std::set<std::string> names(dp6.curve_names.begin(), dp6.curve_names.end());
    CHECK(names == std::set<std::string>{"e1", "e2", "l_1(1)", "l_1(2)", "l_2(1)", "l_2(2)"});

    // Degree 2: the full 56-curve list (6 + 12 + 20 + 12 + 6).
    SurfaceModel dp2 = build_blowup_quadric(6);
    int e = 0, rulings = 0, conics = 0, cubics = 0, quartics = 0;
    for (const auto& name : dp2.curve_names) {
        if (name[0] == 'e') ++e;
        else if (name.rfind("l_", 0) == 0 && name.find('(') != std::string::npos) ++rulings;
        else if (name.rfind("l_", 0) == 0) ++conics;
        else if (name.rfind("k_", 0) == 0) ++cubics;
        else if (name.rfind("q_", 0) == 0) ++quartics;
    }
    CHECK(e == 6);
    CHECK(rulings == 12);
    CHECK(conics == 20);
    CHECK(cubics == 12);
    CHECK(quartics == 6);
}

TEST_CASE("enumerated classes pair correctly") {
    for (const SurfaceModel& m : {build_blowup_plane(5), build_blowup_plane(6),
                                  build_blowup_quadric(2), build_blowup_quadric(3),
                                  build_blowup_quadric(4), build_blowup_quadric(6)}) {
        DivisorClass antik = m.anticanonical();
        for (std::size_t i = 0; i < m.negative_curves.size(); ++i) {
            CHECK(m.pair(m.negative_curves[i], antik) == Rational(1));
            for (std::size_t j = 0; j < m.negative_curves.size(); ++j) {
                Rational p = m.pair(m.negative_curves[i], m.negative_curves[j]);
                CHECK(p >= Rational(-1));
                if (i != j) CHECK(p >= Rational(0));
            }
        }
    }
}

TEST_CASE("enumeration is independent of basis ordering") {
    // Permuting the exceptional generators permutes coefficients; the curve
    // set must be stable under that relabeling.
    SurfaceModel m = build_blowup_plane(5);
    auto permuted = [&](const DivisorClass& c) {
        // cycle e1 -> e2 -> e3 -> e4 -> e5 -> e1
        std::vector<Rational> v = c.coeffs();
        std::rotate(v.begin() + 1, v.begin() + 2, v.end());
        return DivisorClass(m.basis(), v);
    };
    std::set<std::vector<std::string>> original, rotated;
    auto key = [](const DivisorClass& c) {
        std::vector<std::string> k;
        for (const auto& x : c.coeffs()) k.push_back(x.str());
        return k;
    };
    for (const auto& c : m.negative_curves) {
        original.insert(key(c));
        rotated.insert(key(permuted(c)));
    }
    CHECK(original == rotated);
}

TEST_CASE("unsupported models are rejected") {
    CHECK_THROWS_WITH_AS(build_blowup_plane(8), doctest::Contains("unsupported-model"), Error);
    CHECK_THROWS_WITH_AS(build_blowup_plane(0), doctest::Contains("unsupported-model"), Error);
    CHECK_THROWS_WITH_AS(build_blowup_quadric(7), doctest::Contains("unsupported-model"), Error);

    // A non-del-Pezzo gram matrix is rejected by the enumerator.
    BasisPtr b = make_basis({"a", "b"});
    IntersectionForm bad(b, {{Rational(2), Rational(0)}, {Rational(0), Rational(-1)}});
    CHECK_THROWS_WITH_AS(enumerate_negative_curves(bad, DivisorClass(b, {Rational(-3), Rational(1)})),
                         doctest::Contains("unsupported-model"), Error);
}
