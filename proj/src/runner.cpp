#include "kfano/runner.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace kfano {

namespace {

std::string expectation_str(const Expectation& e) {
    switch (e.compare) {
        case Compare::Exact: return e.value.str();
        case Compare::AtMost: return "<= " + e.value.str();
        case Compare::LessThan: return "< " + e.value.str();
    }
    return e.value.str();
}

bool expectation_holds(const Expectation& e, const Rational& computed) {
    switch (e.compare) {
        case Compare::Exact: return computed == e.value;
        case Compare::AtMost: return computed <= e.value;
        case Compare::LessThan: return computed < e.value;
    }
    return false;
}

void report_value(CaseReport& report, const CaseSpecFile& spec, const std::string& key,
                  const Rational& computed) {
    ValueReport v;
    v.name = key;
    v.computed = computed.str();
    auto it = spec.expected.find(key);
    if (it == spec.expected.end()) {
        v.verdict = "info";
    } else if (spec.anomalous) {
        v.expected = expectation_str(it->second);
        v.verdict = "anomalous-informational";
    } else {
        v.expected = expectation_str(it->second);
        v.verdict = expectation_holds(it->second, computed) ? "match" : "mismatch";
    }
    auto req = spec.required.find(key);
    if (req != spec.required.end()) {
        if (!expectation_holds(req->second, computed)) v.verdict = "mismatch";
        v.expected += (v.expected.empty() ? "" : ", ") + std::string("required ") +
                      expectation_str(req->second);
    }
    report.values.push_back(std::move(v));
}

// The verified chamber spec for ring-backed kinds.
ChamberSpec1D verified_spec(const CaseSpecFile& spec) {
    if (!spec.chambers) fail("schema-error", spec.id + ": missing chamber data");
    return verify_chambers(*spec.chambers);
}

double oracle_s_divisor(const CaseSpecFile& spec, int grid) {
    ChamberSpec1D ch = verified_spec(spec);
    double total = 0.0;
    for (std::size_t i = 0; i < ch.chambers.size(); ++i) {
        PolyClass p = ch.positive_part(i);
        double lo = ch.chambers[i].lo.to_double();
        double hi = ch.chambers[i].hi.to_double();
        double h = (hi - lo) / grid;
        for (int k = 0; k < grid; ++k) {
            Rational u((long long)0);
            // exact midpoint in rational arithmetic to dodge accumulation
            u = ch.chambers[i].lo +
                (ch.chambers[i].hi - ch.chambers[i].lo) * Rational(2 * k + 1, 2 * grid);
            DivisorClass d = p.eval(u);
            total += triple(*ch.ring, d, d, d).to_double() * h;
        }
    }
    return total / spec.anticanonical_volume.to_double();
}

double oracle_s_curve(const CaseSpecFile& spec, int grid) {
    ChamberSpec1D ch = verified_spec(spec);
    const SurfaceModel& model = *spec.surface;
    const DivisorClass& z = *spec.curve;
    const double V = spec.anticanonical_volume.to_double();

    std::vector<Rational> ray;
    for (const auto& c : ch.family.coeffs()) ray.push_back(-c.coeff(1));
    DivisorClass y_class(ch.ring->basis, std::move(ray));

    Rational zk = model.pair(z, model.anticanonical());
    if (zk.sign() <= 0) fail("unknown-curve", "curve pairs nonpositively with -K");

    double first = 0.0, second = 0.0;
    for (std::size_t i = 0; i < ch.chambers.size(); ++i) {
        PolyClass p = ch.positive_part(i);
        Poly p2y = triple(*ch.ring, p, p, PolyClass::constant(y_class));
        std::vector<std::pair<DivisorClass, Poly>> restricted;
        for (const auto& [cls, coeff] : ch.chambers[i].negative)
            restricted.emplace_back(spec.restriction->apply(cls), coeff);
        Poly ord_poly = ord_along(restricted, z, model, spec.curve_declared);

        const Rational lo = ch.chambers[i].lo, hi = ch.chambers[i].hi;
        const double h_u = (hi - lo).to_double() / grid;
        PolyClass p_res = spec.restriction->apply(p);
        for (int k = 0; k < grid; ++k) {
            Rational u = lo + (hi - lo) * Rational(2 * k + 1, 2 * grid);
            double ord_val;
            if (spec.ord_override.empty()) {
                ord_val = ord_poly.eval(u).to_double();
            } else {
                ord_val = 0.0;
                for (const auto& piece : spec.ord_override)
                    if (u >= piece.lo && u <= piece.hi) ord_val = piece.value.eval(u).to_double();
            }
            first += p2y.eval(u).to_double() * ord_val * h_u;

            DivisorClass d0 = p_res.eval(u);
            // Pseudoeffectivity forces v <= (D0 . -K) / (Z . -K).
            Rational vmax = model.pair(d0, model.anticanonical()) / zk;
            if (vmax.sign() <= 0) continue;
            double h_v = vmax.to_double() / grid;
            double inner = 0.0;
            for (int m = 0; m < grid; ++m) {
                Rational v = vmax * Rational(2 * m + 1, 2 * grid);
                inner += volume(model, d0 - v * z).to_double();
            }
            second += inner * h_v * h_u;
        }
    }
    return (3.0 / V) * (first + second);
}

} // namespace

double numeric_oracle(const CaseSpecFile& spec, int grid) {
    switch (spec.kind) {
        case CaseKind::SDivisor: return oracle_s_divisor(spec, grid * 20);
        case CaseKind::Beta:
            return spec.log_discrepancy->to_double() - oracle_s_divisor(spec, grid * 20);
        case CaseKind::SCurve: return oracle_s_curve(spec, grid);
        case CaseKind::Cone: fail("schema-error", "cone cases have no numeric oracle");
    }
    return 0.0;
}

CaseReport run_case(const CaseSpecFile& spec, const RunOptions& options) {
    CaseReport report;
    report.id = spec.id;
    report.family = spec.family;
    report.kind = to_string(spec.kind);
    auto t0 = std::chrono::steady_clock::now();

    Rational headline(0);
    bool have_headline = false;
    try {
        switch (spec.kind) {
            case CaseKind::SDivisor: {
                ChamberSpec1D ch = verified_spec(spec);
                Rational s = s_divisor(ch, spec.anticanonical_volume);
                report_value(report, spec, "s", s);
                if (spec.log_discrepancy)
                    report_value(report, spec, "beta", beta(*spec.log_discrepancy, s).beta);
                headline = s;
                have_headline = true;
                break;
            }
            case CaseKind::Beta: {
                ChamberSpec1D ch = verified_spec(spec);
                Rational s = s_divisor(ch, spec.anticanonical_volume);
                BetaResult b = beta(*spec.log_discrepancy, s);
                report_value(report, spec, "s", b.s_value);
                report_value(report, spec, "beta", b.beta);
                headline = s;
                have_headline = true;
                break;
            }
            case CaseKind::SCurve: {
                SCurveInput in;
                in.spec = verified_spec(spec);
                in.model = &*spec.surface;
                in.restriction = *spec.restriction;
                in.z = *spec.curve;
                in.z_declared = spec.curve_declared;
                in.ord_override = spec.ord_override;
                in.anticanonical_volume = spec.anticanonical_volume;
                SCurveResult res = s_curve(in);
                report_value(report, spec, "first", res.first_term);
                report_value(report, spec, "second", res.second_term);
                report_value(report, spec, "total", res.total);
                if (!spec.ord_override.empty())
                    report.notes.push_back("computed first term (no override): " +
                                           res.computed_first_term.str());
                std::ostringstream walls;
                walls << "outer walls:";
                for (const auto& w : res.outer_walls) walls << " " << w.str();
                report.notes.push_back(walls.str());
                for (const auto& audit : res.audit) {
                    std::ostringstream os;
                    os << "[" << audit.lo.str() << ", " << audit.hi.str() << "] supports:";
                    for (const auto& sup : audit.supports) {
                        os << " {";
                        for (std::size_t i = 0; i < sup.size(); ++i)
                            os << (i ? " " : "") << sup[i];
                        os << "}";
                    }
                    report.notes.push_back(os.str());
                }
                headline = res.total;
                have_headline = true;
                break;
            }
            case CaseKind::Cone: {
                for (const auto& q : spec.cone_queries) {
                    ConeDecision d =
                        cone_member_2d(spec.cone_rays->first, spec.cone_rays->second, q.divisor);
                    ValueReport v;
                    v.name = q.name;
                    v.computed = std::string(d.inside ? "inside" : "outside") + " (" +
                                 d.a.str() + ", " + d.b.str() + ")";
                    v.expected = std::string(q.expect_inside ? "inside" : "outside") + " (" +
                                 q.expect_a.str() + ", " + q.expect_b.str() + ")";
                    bool ok = d.inside == q.expect_inside && d.a == q.expect_a && d.b == q.expect_b;
                    v.verdict = ok ? "match" : "mismatch";
                    report.values.push_back(std::move(v));
                }
                break;
            }
        }

        if (options.with_oracle && have_headline) {
            double oracle = numeric_oracle(spec, options.oracle_grid);
            double exact = (spec.kind == CaseKind::Beta)
                               ? beta(*spec.log_discrepancy, headline).beta.to_double()
                               : headline.to_double();
            report.oracle = oracle;
            double rel = std::abs(oracle - exact) / std::max(1.0, std::abs(exact));
            report.oracle_rel_err = rel;
            report.oracle_ok = rel < 1e-3;
        }
    } catch (const Error& e) {
        report.verdict = "error";
        report.error = e.what();
    }

    if (report.verdict != "error") {
        bool mismatch = false, anomalous = false;
        for (const auto& v : report.values) {
            if (v.verdict == "mismatch") mismatch = true;
            if (v.verdict == "anomalous-informational") anomalous = true;
        }
        if (!report.oracle_ok) mismatch = true;
        report.verdict = mismatch ? "mismatch" : (anomalous ? "anomalous-informational" : "match");
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

CorpusResult run_corpus(const std::filesystem::path& dir, const std::string& family_filter,
                        const RunOptions& options) {
    CorpusResult result;
    std::vector<CaseSpecFile> cases;
    try {
        for (const auto& path : list_case_files(dir)) {
            CaseSpecFile spec = load_case(path);
            if (!family_filter.empty() && spec.family != family_filter) continue;
            cases.push_back(std::move(spec));
        }
    } catch (const Error& e) {
        CaseReport broken;
        broken.id = "<corpus>";
        broken.verdict = "error";
        broken.error = e.what();
        result.reports.push_back(std::move(broken));
        result.exit_code = 2;
        return result;
    }
    // Duplicate ids are a corpus error.
    for (std::size_t i = 0; i < cases.size(); ++i)
        for (std::size_t j = i + 1; j < cases.size(); ++j)
            if (cases[i].id == cases[j].id) {
                CaseReport broken;
                broken.id = cases[i].id;
                broken.verdict = "error";
                broken.error = "duplicate case id in corpus";
                result.reports.push_back(std::move(broken));
                result.exit_code = 2;
                return result;
            }

    std::sort(cases.begin(), cases.end(),
              [](const CaseSpecFile& a, const CaseSpecFile& b) { return a.id < b.id; });
    bool mismatch = false;
    for (const auto& spec : cases) {
        CaseReport r = run_case(spec, options);
        if (r.verdict == "error") result.exit_code = std::max(result.exit_code, 2);
        if (r.verdict == "mismatch") mismatch = true;
        result.reports.push_back(std::move(r));
    }
    if (result.exit_code == 0 && mismatch) result.exit_code = 1;
    return result;
}

void print_human(std::ostream& os, const CaseReport& report) {
    os << report.id << " [" << report.kind << "] " << report.verdict;
    if (report.oracle) {
        os << " (oracle " << *report.oracle << ", rel err " << *report.oracle_rel_err
           << (report.oracle_ok ? "" : " EXCEEDS 1e-3") << ")";
    }
    os << "\n";
    if (!report.error.empty()) os << "    error: " << report.error << "\n";
    for (const auto& v : report.values) {
        os << "    " << v.name << " = " << v.computed;
        if (!v.expected.empty()) os << "  expected " << v.expected;
        os << "  [" << v.verdict << "]\n";
    }
    for (const auto& n : report.notes) os << "    . " << n << "\n";
}

std::string report_json(const std::vector<CaseReport>& reports) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json j;
        j["id"] = r.id;
        j["family"] = r.family;
        j["kind"] = r.kind;
        nlohmann::json computed = nlohmann::json::object();
        nlohmann::json expected = nlohmann::json::object();
        for (const auto& v : r.values) {
            computed[v.name] = v.computed;
            if (!v.expected.empty()) expected[v.name] = v.expected;
        }
        j["computed"] = computed;
        j["expected"] = expected;
        j["verdict"] = r.verdict;
        if (!r.error.empty()) j["error"] = r.error;
        if (r.oracle) j["oracle"] = *r.oracle;
        if (r.oracle_rel_err) j["oracle_rel_err"] = *r.oracle_rel_err;
        j["elapsed_ms"] = r.elapsed_ms;
        out.push_back(std::move(j));
    }
    return out.dump(2);
}

} // namespace kfano
