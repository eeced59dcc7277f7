#pragma once

/**
 * @file caseio.hpp
 * @brief Declarative case files: one file per computation, carrying the
 *        intersection ring, chamber data, surface model, restriction map,
 *        curve choice and the expected values.
 *
 * The format is schema-versioned, line-oriented text. Rationals are written
 * as "p/q" strings and polynomials as coefficient lists, lowest degree
 * first, so the corpus stays audit-readable.
 */

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kfano/invariants.hpp"

namespace kfano {

enum class CaseKind { SDivisor, Beta, SCurve, Cone };

std::string to_string(CaseKind kind);

struct ConeQuery {
    std::string name;
    DivisorClass divisor;
    bool expect_inside = false;
    Rational expect_a, expect_b;
};

// How a computed value is compared against its expectation.
enum class Compare { Exact, AtMost, LessThan };

struct Expectation {
    Rational value;
    Compare compare = Compare::Exact;
};

struct CaseSpecFile {
    std::string id;
    std::string family;  // I, II, III
    CaseKind kind = CaseKind::SDivisor;
    std::filesystem::path path;

    Rational anticanonical_volume = Rational(22);
    std::optional<Rational> log_discrepancy;

    RingPtr ring;
    std::optional<ChamberSpec1D> chambers;  // unverified at load time

    std::optional<SurfaceModel> surface;
    std::optional<RestrictionMap> restriction;
    std::optional<DivisorClass> curve;
    bool curve_declared = false;
    std::vector<OrdPiece> ord_override;

    // Cone cases.
    std::optional<std::pair<DivisorClass, DivisorClass>> cone_rays;
    std::vector<ConeQuery> cone_queries;

    // Expected values keyed "s", "beta", "first", "second", "total".
    std::map<std::string, Expectation> expected;
    // Hard requirements that hold even for anomalous cases (e.g. total < 1).
    std::map<std::string, Expectation> required;
    bool anomalous = false;
};

// Parses and fully resolves a case file; parse errors carry line numbers
// and distinct codes ("parse-error", "schema-error", "unresolved-symbol",
// "invalid-triple-form").
CaseSpecFile load_case(const std::filesystem::path& path);

// All *.case files in a directory, sorted by id.
std::vector<std::filesystem::path> list_case_files(const std::filesystem::path& dir);

} // namespace kfano
