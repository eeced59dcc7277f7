#pragma once

/**
 * @file runner.hpp
 * @brief Executes the case corpus, compares against expected values exactly,
 *        and emits human- and machine-readable reports. Hosts the numeric
 *        oracle (midpoint-rule double integration in floating point).
 */

#include <iosfwd>
#include <optional>

#include "kfano/caseio.hpp"

namespace kfano {

struct RunOptions {
    bool with_oracle = false;
    int oracle_grid = 100;  // points per axis and chamber
};

struct ValueReport {
    std::string name;
    std::string computed;
    std::string expected;  // "p/q", "<= p/q", "< p/q" or empty
    std::string verdict;   // match | mismatch | anomalous-informational | info
};

struct CaseReport {
    std::string id;
    std::string family;
    std::string kind;
    std::vector<ValueReport> values;
    std::vector<std::string> notes;
    std::optional<double> oracle;
    std::optional<double> oracle_rel_err;
    bool oracle_ok = true;
    std::string verdict;  // match | mismatch | anomalous-informational | error
    std::string error;
    double elapsed_ms = 0;

    bool counts_as_failure() const { return verdict == "mismatch" || verdict == "error"; }
};

CaseReport run_case(const CaseSpecFile& spec, const RunOptions& options = {});

// Midpoint-rule value of the case's headline quantity; volumes are computed
// by the exact decomposition at each grid point and converted to double.
double numeric_oracle(const CaseSpecFile& spec, int grid = 100);

struct CorpusResult {
    std::vector<CaseReport> reports;
    int exit_code = 0;  // 0 ok, 1 mismatch, 2 corpus/schema error
};

CorpusResult run_corpus(const std::filesystem::path& dir, const std::string& family_filter,
                        const RunOptions& options = {});

void print_human(std::ostream& os, const CaseReport& report);
std::string report_json(const std::vector<CaseReport>& reports);

} // namespace kfano
