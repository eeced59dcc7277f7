#include <doctest.h>

#include "kfano/caseio.hpp"
#include "test_util.hpp"

using namespace kfano;
using testutil::Rng;

namespace {

CaseSpecFile corpus_case(const std::string& name) {
    return load_case(std::filesystem::path(KFANO_CASE_DIR) / name);
}

} // namespace

TEST_CASE("anticanonical degrees from the triple tables") {
    CaseSpecFile fam1 = corpus_case("I.dim1a.s_divisor.case");
    const BasisPtr& b1 = fam1.ring->basis;
    DivisorClass h1(b1, {Rational(4), Rational(-1), Rational(0)});
    CHECK(triple(*fam1.ring, h1, h1, h1) == Rational(22));

    CaseSpecFile fam3 = corpus_case("III.F.s_divisor.case");
    const BasisPtr& b3 = fam3.ring->basis;
    DivisorClass h3(b3, {Rational(2), Rational(-1), Rational(0), Rational(0)});
    CHECK(triple(*fam3.ring, h3, h3, h3) == Rational(22));

    CHECK(triple(*fam1.ring, h1, h1, DivisorClass::zero(b1)) == Rational(0));
}

TEST_CASE("triple is symmetric under all argument permutations") {
    CaseSpecFile fam2 = corpus_case("II.IIc.F.s_divisor.case");
    const BasisPtr& b = fam2.ring->basis;
    Rng rng(43);
    auto random_class = [&] {
        std::vector<Rational> v;
        for (std::size_t i = 0; i < b->size(); ++i) v.push_back(rng.rational());
        return DivisorClass(b, v);
    };
    for (int i = 0; i < 30; ++i) {
        DivisorClass x = random_class(), y = random_class(), z = random_class();
        Rational ref = triple(*fam2.ring, x, y, z);
        CHECK(triple(*fam2.ring, x, z, y) == ref);
        CHECK(triple(*fam2.ring, y, x, z) == ref);
        CHECK(triple(*fam2.ring, y, z, x) == ref);
        CHECK(triple(*fam2.ring, z, x, y) == ref);
        CHECK(triple(*fam2.ring, z, y, x) == ref);
    }
}

TEST_CASE("conflicting triple entries are rejected") {
    std::vector<TripleForm::Entry> entries = {{0, 0, 1, Rational(1)}, {1, 0, 0, Rational(2)}};
    CHECK_THROWS_WITH_AS(TripleForm(2, entries), doctest::Contains("invalid-triple-form"), Error);
}

TEST_CASE("verify_chambers accepts the corpus chamber data") {
    for (const char* name :
         {"I.dim1a.s_divisor.case", "I.dim1b.F.s_divisor.case", "II.IIa.S.s_divisor.case",
          "II.II1b.S.s_divisor.case", "II.IIc.F.s_divisor.case", "III.F.s_divisor.case",
          "III.E1.remark.case"}) {
        CaseSpecFile spec = corpus_case(name);
        ChamberSpec1D verified = verify_chambers(*spec.chambers);
        CHECK(verified.verified);
    }

    // Family I dim1a: P(u) = (1 - 3u/4) H with H = 4H1 - E1.
    CaseSpecFile fam1 = corpus_case("I.dim1a.s_divisor.case");
    ChamberSpec1D v1 = verify_chambers(*fam1.chambers);
    PolyClass p = v1.positive_part(0);
    const BasisPtr& b = fam1.ring->basis;
    PolyClass expected(b, {Poly({Rational(4), Rational(-3)}), Poly({Rational(-1), Rational(3, 4)}),
                           Poly()});
    CHECK(p == expected);
}

TEST_CASE("volume_poly reproduces the recorded integrands") {
    CaseSpecFile dim1b = corpus_case("I.dim1b.F.s_divisor.case");
    PiecewisePoly f = volume_poly(verify_chambers(*dim1b.chambers));
    REQUIRE(f.piece_count() == 2);
    CHECK(f.pieces()[0] == Poly({Rational(22), Rational(0), Rational(0), Rational(-2)}));
    // 2(u-3)(u^2-3u-3)
    CHECK(f.pieces()[1] == Rational(2) * (Poly({Rational(-3), Rational(1)}) *
                                          Poly({Rational(-3), Rational(-3), Rational(1)})));

    CaseSpecFile iic = corpus_case("II.IIc.F.s_divisor.case");
    PiecewisePoly g = volume_poly(verify_chambers(*iic.chambers));
    REQUIRE(g.piece_count() == 3);
    CHECK(g.pieces()[1] ==
          Poly({Rational(1), Rational(1)}) * Poly({Rational(19), Rational(-10), Rational(1)}));
    CHECK(g.pieces()[2] ==
          Rational(3) * Poly({Rational(-3), Rational(1)}) * Poly({Rational(-7), Rational(2)}));

    CaseSpecFile remark = corpus_case("III.E1.remark.case");
    PiecewisePoly h = volume_poly(verify_chambers(*remark.chambers));
    REQUIRE(h.piece_count() == 1);
    CHECK(h.pieces()[0] == Poly({Rational(1), Rational(-1)}) * Poly({Rational(1), Rational(-1)}) *
                               Poly({Rational(22), Rational(14)}));
}

TEST_CASE("volume polys are continuous, nonincreasing and start at 22") {
    for (const char* name :
         {"I.dim1a.s_divisor.case", "I.dim1b.F.s_divisor.case", "II.IIa.S.s_divisor.case",
          "II.II1b.S.s_divisor.case", "II.IIc.F.s_divisor.case", "III.F.s_divisor.case"}) {
        CaseSpecFile spec = corpus_case(name);
        ChamberSpec1D verified = verify_chambers(*spec.chambers);
        PiecewisePoly f = volume_poly(verified);
        CHECK(f.continuous());
        CHECK(f.eval(Rational(0)) == Rational(22));
        CHECK(f.eval(verified.tau) == Rational(0));
        for (std::size_t i = 0; i < f.piece_count(); ++i)
            CHECK(poly_nonpos_on(f.pieces()[i].derivative(), f.breakpoints()[i],
                                 f.breakpoints()[i + 1]));
    }
}

TEST_CASE("tampered chamber data is rejected with a witness") {
    CaseSpecFile spec = corpus_case("I.dim1b.F.s_divisor.case");
    ChamberSpec1D bad = *spec.chambers;
    // Replace the coefficient u-1 on [1,3] by u-2: negative at the left end.
    bad.chambers[1].negative[0].second = Poly({Rational(-2), Rational(1)});
    CHECK_THROWS_WITH_AS(verify_chambers(bad), doctest::Contains("negative coefficient at u=1"),
                         Error);

    ChamberSpec1D gap = *spec.chambers;
    gap.chambers[1].lo = Rational(5, 4);
    CHECK_THROWS_WITH_AS(verify_chambers(gap), doctest::Contains("invalid-chamber"), Error);

    CHECK_THROWS_WITH_AS(volume_poly(*spec.chambers), doctest::Contains("unverified-input"),
                         Error);
}

TEST_CASE("nefness violations name the witness curve") {
    CaseSpecFile spec = corpus_case("I.dim1b.F.s_divisor.case");
    ChamberSpec1D bad = *spec.chambers;
    // Swap the negative part's class from Lam to E1: the section s2 of the
    // exceptional quadric then pairs negatively past u = 4/3.
    bad.chambers[1].negative[0].first =
        DivisorClass::generator(spec.ring->basis, spec.ring->basis->index_of("E1"));
    try {
        verify_chambers(bad);
        FAIL("expected invalid-chamber");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid-chamber");
        CHECK(std::string(e.what()).find("pairs negatively with s2") != std::string::npos);
    }
}

TEST_CASE("a dropped negative-part term is caught by the volume conditions") {
    CaseSpecFile spec = corpus_case("II.IIc.F.s_divisor.case");
    ChamberSpec1D bad = *spec.chambers;
    // Forget the section Rtilde on [2,3]: the volume no longer vanishes at
    // tau (it would go negative).
    bad.chambers[2].negative.pop_back();
    try {
        verify_chambers(bad);
        FAIL("expected invalid-chamber");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid-chamber");
        CHECK(std::string(e.what()).find("does not vanish at tau") != std::string::npos);
    }

    ChamberSpec1D extended = *spec.chambers;
    extended.tau = Rational(4);
    extended.chambers[2].hi = Rational(4);
    CHECK_THROWS_WITH_AS(verify_chambers(extended), doctest::Contains("invalid-chamber"), Error);
}

TEST_CASE("restriction maps apply to classes and families") {
    CaseSpecFile case1 = corpus_case("I.dim1a.case1.case");
    const BasisPtr& b = case1.ring->basis;
    DivisorClass e2(b, {Rational(8), Rational(-3), Rational(-4)});
    DivisorClass restricted = restrict_class(*case1.restriction, e2);
    // 8l - 3(e1+...+e5) - 4e0 on the cubic surface basis (l, e0, e1..e5).
    CHECK(restricted == DivisorClass(case1.surface->basis(),
                                     {Rational(8), Rational(-4), Rational(-3), Rational(-3),
                                      Rational(-3), Rational(-3), Rational(-3)}));
    CHECK(restrict_class(*case1.restriction, DivisorClass::zero(b)) ==
          DivisorClass::zero(case1.surface->basis()));
}

TEST_CASE("cone membership with exact certificates") {
    BasisPtr b = make_basis({"H1", "E1"});
    DivisorClass e1 = DivisorClass::generator(b, 1);
    DivisorClass e2(b, {Rational(8), Rational(-3)});

    ConeDecision outside =
        cone_member_2d(e1, e2, DivisorClass(b, {Rational(4), Rational(-5, 2)}));
    CHECK_FALSE(outside.inside);
    CHECK(outside.a == Rational(-1));
    CHECK(outside.b == Rational(1, 2));

    ConeDecision trivial = cone_member_2d(e1, e2, e1);
    CHECK(trivial.inside);
    CHECK(trivial.a == Rational(1));
    CHECK(trivial.b == Rational(0));

    // Family III: 2H2 + (1-lambda)E1 at lambda = 3/2 is outside <E1, H2>.
    DivisorClass h2(b, {Rational(1), Rational(-1)});
    ConeDecision fam3 =
        cone_member_2d(e1, h2, DivisorClass(b, {Rational(2), Rational(-5, 2)}));
    CHECK_FALSE(fam3.inside);
    CHECK(fam3.a == Rational(-1, 2));
    CHECK(fam3.b == Rational(2));

    CHECK_THROWS_WITH_AS(cone_member_2d(e1, Rational(3) * e1, h2),
                         doctest::Contains("degenerate-cone"), Error);
}
