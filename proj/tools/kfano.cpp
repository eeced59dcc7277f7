// Command-line front end: compute a single case, verify a corpus directory,
// or list the cases it contains.
//
//   kfano compute --case FILE [--json] [--oracle] [--grid N]
//   kfano verify  --corpus DIR [--family I|II|III] [--json] [--oracle] [--grid N]
//   kfano list    --corpus DIR
//
// Exit codes: 0 success, 1 mismatch, 2 corpus/schema error.

#include <iostream>

#include <CLI11.hpp>

#include "kfano/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact K-stability invariant computations for one-nodal Fano threefold cases"};
    app.require_subcommand(1);

    std::string case_file, corpus_dir, family;
    bool json = false, oracle = false;
    int grid = 100;

    auto* compute = app.add_subcommand("compute", "run a single case file");
    compute->add_option("--case", case_file, "case file")->required();
    compute->add_flag("--json", json, "machine-readable report");
    compute->add_flag("--oracle", oracle, "run the numeric oracle");
    compute->add_option("--grid", grid, "oracle grid points per axis");

    auto* verify = app.add_subcommand("verify", "run every case in a corpus directory");
    verify->add_option("--corpus", corpus_dir, "corpus directory")->required();
    verify->add_option("--family", family, "restrict to one family (I, II or III)");
    verify->add_flag("--json", json, "machine-readable report");
    verify->add_flag("--oracle", oracle, "run the numeric oracle");
    verify->add_option("--grid", grid, "oracle grid points per axis");

    auto* list = app.add_subcommand("list", "list case ids in a corpus directory");
    list->add_option("--corpus", corpus_dir, "corpus directory")->required();

    CLI11_PARSE(app, argc, argv);

    kfano::RunOptions options;
    options.with_oracle = oracle;
    options.oracle_grid = grid;

    try {
        if (compute->parsed()) {
            kfano::CaseSpecFile spec = kfano::load_case(case_file);
            kfano::CaseReport report = kfano::run_case(spec, options);
            if (json) std::cout << kfano::report_json({report}) << "\n";
            else kfano::print_human(std::cout, report);
            return report.counts_as_failure() ? (report.verdict == "error" ? 2 : 1) : 0;
        }
        if (verify->parsed()) {
            kfano::CorpusResult result = kfano::run_corpus(corpus_dir, family, options);
            if (json) {
                std::cout << kfano::report_json(result.reports) << "\n";
            } else {
                if (result.reports.empty())
                    std::cerr << "warning: no cases matched in " << corpus_dir << "\n";
                for (const auto& r : result.reports) kfano::print_human(std::cout, r);
                int matches = 0;
                for (const auto& r : result.reports) matches += !r.counts_as_failure();
                std::cout << matches << "/" << result.reports.size() << " cases ok\n";
            }
            return result.exit_code;
        }
        if (list->parsed()) {
            for (const auto& path : kfano::list_case_files(corpus_dir)) {
                kfano::CaseSpecFile spec = kfano::load_case(path);
                std::cout << spec.id << "  (" << kfano::to_string(spec.kind) << ", family "
                          << spec.family << ")\n";
            }
            return 0;
        }
    } catch (const kfano::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
