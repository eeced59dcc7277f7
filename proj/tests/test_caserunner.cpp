#include <doctest.h>

#include <fstream>

#include "kfano/runner.hpp"

using namespace kfano;

namespace {

const std::filesystem::path kCases = std::filesystem::path(KFANO_CASE_DIR);

std::filesystem::path write_temp_case(const std::string& name, const std::string& body) {
    auto dir = std::filesystem::temp_directory_path() / "kfano_test_corpus";
    std::filesystem::create_directories(dir);
    auto path = dir / name;
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("load_case resolves a corpus file") {
    CaseSpecFile spec = load_case(kCases / "III.F.s_divisor.case");
    CHECK(spec.id == "III.F.s_divisor");
    CHECK(spec.family == "III");
    CHECK(spec.kind == CaseKind::SDivisor);
    REQUIRE(spec.expected.count("s"));
    CHECK(spec.expected.at("s").value == Rational(39, 22));
    CHECK(spec.ring->basis->names() ==
          std::vector<std::string>{"H1", "E1", "F", "Lam"});
    CHECK(spec.ring->test_curves.size() == 5);
}

TEST_CASE("schema violations carry distinct codes") {
    auto missing_ring = write_temp_case("missing_ring.case",
                                        "schema 1\nid broken.1\nfamily I\nkind s_divisor\n");
    try {
        load_case(missing_ring);
        FAIL("expected schema-error");
    } catch (const Error& e) {
        CHECK(e.code() == "schema-error");
    }

    auto bad_triple = write_temp_case("bad_triple.case",
                                      "schema 1\nid broken.2\nfamily I\nkind s_divisor\n"
                                      "[ring]\nbasis A B\ntriple A A B 1\ntriple A B A 2\n"
                                      "[class]\ndef D0 A 1\n"
                                      "[chambers]\ntau 1\nbase D0\nray B\nchamber 0 1\n");
    try {
        load_case(bad_triple);
        FAIL("expected invalid-triple-form");
    } catch (const Error& e) {
        CHECK(e.code() == "invalid-triple-form");
    }

    auto bad_symbol = write_temp_case("bad_symbol.case",
                                      "schema 1\nid broken.3\nfamily I\nkind s_divisor\n"
                                      "[ring]\nbasis A B\ntriple A A C 1\n");
    try {
        load_case(bad_symbol);
        FAIL("expected unresolved-symbol");
    } catch (const Error& e) {
        CHECK(e.code() == "unresolved-symbol");
        CHECK(std::string(e.what()).find(":7:") != std::string::npos);  // line number
    }

    auto no_schema = write_temp_case("no_schema.case", "id broken.4\n");
    try {
        load_case(no_schema);
        FAIL("expected schema-error");
    } catch (const Error& e) {
        CHECK(e.code() == "schema-error");
    }
}

TEST_CASE("run_case compares exactly") {
    CaseReport r = run_case(load_case(kCases / "II.IIc.F.s_divisor.case"));
    CHECK(r.verdict == "match");
    REQUIRE(r.values.size() == 2);
    CHECK(r.values[0].name == "s");
    CHECK(r.values[0].computed == "161/88");
    CHECK(r.values[1].name == "beta");
    CHECK(r.values[1].computed == "15/88");
}

TEST_CASE("anomalous cases never hard-fail but bounds still bind") {
    CaseReport r = run_case(load_case(kCases / "II.II1b.sweep.case"));
    CHECK(r.verdict == "anomalous-informational");
    CHECK_FALSE(r.counts_as_failure());
}

TEST_CASE("corpus runs are deterministic and ordered by id") {
    RunOptions opts;
    CorpusResult a = run_corpus(kCases, "III", opts);
    CorpusResult b = run_corpus(kCases, "III", opts);
    REQUIRE(a.reports.size() == b.reports.size());
    CHECK(a.reports.size() == 6);  // the six Family III computations
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].id == b.reports[i].id);
        CHECK(a.reports[i].verdict == b.reports[i].verdict);
        // Byte-identical reports modulo the timing field.
        CaseReport x = a.reports[i], y = b.reports[i];
        x.elapsed_ms = y.elapsed_ms = 0;
        CHECK(report_json({x}) == report_json({y}));
        if (i > 0) CHECK(a.reports[i - 1].id < a.reports[i].id);
    }
    CHECK(a.exit_code == 0);
}

TEST_CASE("exit-status contract") {
    // A corpus whose only case has a wrong expectation exits 1.
    auto dir = std::filesystem::temp_directory_path() / "kfano_bad_corpus";
    std::filesystem::create_directories(dir);
    {
        std::ifstream in(kCases / "III.E1.remark.case");
        std::string body((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        auto pos = body.find("s 17/44");
        REQUIRE(pos != std::string::npos);
        body.replace(pos, 7, "s 16/44");
        std::ofstream(dir / "broken.case") << body;
    }
    CorpusResult bad = run_corpus(dir, "", RunOptions{});
    CHECK(bad.exit_code == 1);
    REQUIRE(bad.reports.size() == 1);
    CHECK(bad.reports[0].verdict == "mismatch");

    // An empty directory succeeds with no reports.
    auto empty = std::filesystem::temp_directory_path() / "kfano_empty_corpus";
    std::filesystem::create_directories(empty);
    CorpusResult none = run_corpus(empty, "", RunOptions{});
    CHECK(none.exit_code == 0);
    CHECK(none.reports.empty());

    std::filesystem::remove_all(dir);
}

TEST_CASE("json reports carry the documented fields") {
    CaseReport r = run_case(load_case(kCases / "III.dim2.cone.case"));
    std::string json = report_json({r});
    for (const char* field : {"\"id\"", "\"family\"", "\"kind\"", "\"computed\"", "\"expected\"",
                              "\"verdict\"", "\"elapsed_ms\""})
        CHECK(json.find(field) != std::string::npos);
}

TEST_CASE("numeric oracle agrees with the exact values") {
    // Fast spot checks; the acceptance suite runs the oracle on every case.
    CaseSpecFile remark = load_case(kCases / "III.E1.remark.case");
    double oracle = numeric_oracle(remark, 40);
    CHECK(std::abs(oracle - 17.0 / 44.0) / 1.0 < 1e-3);

    CaseSpecFile l12 = load_case(kCases / "III.case_l12.case");
    double oracle2 = numeric_oracle(l12, 60);
    CHECK(std::abs(oracle2 - 17.0 / 22.0) / 1.0 < 1e-3);
}
