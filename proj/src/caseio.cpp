#include "kfano/caseio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace kfano {

std::string to_string(CaseKind kind) {
    switch (kind) {
        case CaseKind::SDivisor: return "s_divisor";
        case CaseKind::Beta: return "beta";
        case CaseKind::SCurve: return "s_curve";
        case CaseKind::Cone: return "cone";
    }
    return "?";
}

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("parse-error", "cannot open " + path.string());
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream is(raw);
        Line line{number, {}};
        std::string tok;
        while (is >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line, const std::string& msg,
                             const std::string& code = "parse-error") {
    fail(code, path.filename().string() + ":" + std::to_string(line) + ": " + msg);
}

class Parser {
public:
    explicit Parser(const std::filesystem::path& path) : path_(path), lines_(tokenize(path)) {
        out_.path = path;
    }

    CaseSpecFile run() {
        parse_header();
        while (pos_ < lines_.size()) {
            const std::string& section = lines_[pos_].tokens[0];
            if (section == "[ring]") parse_ring();
            else if (section == "[class]") parse_classes();
            else if (section == "[chambers]") parse_chambers();
            else if (section == "[surface]") parse_surface();
            else if (section == "[restriction]") parse_restriction();
            else if (section == "[curve]") parse_curve();
            else if (section == "[ord]") parse_ord();
            else if (section == "[cone]") parse_cone();
            else if (section == "[expected]") parse_expected();
            else parse_fail(path_, lines_[pos_].number, "unknown section " + section);
        }
        finish();
        return std::move(out_);
    }

private:
    const Line& cur() const { return lines_[pos_]; }
    bool at_section() const {
        return pos_ < lines_.size() && lines_[pos_].tokens[0].front() == '[';
    }
    Rational rat(const std::string& tok, int line) const {
        try {
            return Rational::parse(tok);
        } catch (const Error&) {
            parse_fail(path_, line, "expected rational, got '" + tok + "'");
        }
    }

    void parse_header() {
        bool have_schema = false;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "schema") {
                if (t.size() != 2 || t[1] != "1")
                    parse_fail(path_, l.number, "unsupported schema version", "schema-error");
                have_schema = true;
            } else if (t[0] == "id" && t.size() == 2) {
                out_.id = t[1];
            } else if (t[0] == "family" && t.size() == 2) {
                out_.family = t[1];
            } else if (t[0] == "kind" && t.size() == 2) {
                if (t[1] == "s_divisor") out_.kind = CaseKind::SDivisor;
                else if (t[1] == "beta") out_.kind = CaseKind::Beta;
                else if (t[1] == "s_curve") out_.kind = CaseKind::SCurve;
                else if (t[1] == "cone") out_.kind = CaseKind::Cone;
                else parse_fail(path_, l.number, "unknown kind " + t[1], "schema-error");
            } else if (t[0] == "volume" && t.size() == 2) {
                out_.anticanonical_volume = rat(t[1], l.number);
            } else if (t[0] == "log_discrepancy" && t.size() == 2) {
                out_.log_discrepancy = rat(t[1], l.number);
            } else {
                parse_fail(path_, l.number, "unexpected header line '" + t[0] + "'");
            }
            ++pos_;
        }
        if (!have_schema)
            parse_fail(path_, 1, "missing 'schema 1' header", "schema-error");
        if (out_.id.empty()) parse_fail(path_, 1, "missing case id", "schema-error");
    }

    void parse_ring() {
        int section_line = cur().number;
        ++pos_;
        std::vector<std::string> names;
        std::vector<TripleForm::Entry> entries;
        std::vector<CurveFunctional> curves;
        std::vector<std::pair<std::vector<std::string>, int>> raw_triples;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "basis") {
                names.assign(t.begin() + 1, t.end());
            } else if (t[0] == "triple") {
                if (t.size() != 5) parse_fail(path_, l.number, "triple needs 3 symbols + value");
                raw_triples.push_back({{t[1], t[2], t[3], t[4]}, l.number});
            } else if (t[0] == "testcurve") {
                if (t.size() < 2) parse_fail(path_, l.number, "testcurve needs a name");
                CurveFunctional c;
                c.name = t[1];
                for (std::size_t i = 2; i < t.size(); ++i)
                    c.pairings.push_back(rat(t[i], l.number));
                curves.push_back(std::move(c));
            } else {
                parse_fail(path_, l.number, "unexpected line in [ring]");
            }
            ++pos_;
        }
        if (names.empty()) parse_fail(path_, section_line, "[ring] missing basis", "schema-error");
        basis_ = make_basis(names);
        for (auto& [syms, line] : raw_triples) {
            TripleForm::Entry e;
            e.i = index_of(syms[0], line);
            e.j = index_of(syms[1], line);
            e.k = index_of(syms[2], line);
            e.value = rat(syms[3], line);
            entries.push_back(std::move(e));
        }
        for (auto& c : curves)
            if (c.pairings.size() != basis_->size())
                fail("schema-error", "test curve " + c.name + " pairing count mismatch");
        ThreefoldRing ring;
        ring.basis = basis_;
        ring.triples = TripleForm(basis_->size(), entries);
        ring.test_curves = std::move(curves);
        out_.ring = std::make_shared<const ThreefoldRing>(std::move(ring));
    }

    std::size_t index_of(const std::string& name, int line) const {
        if (!basis_ || !basis_->has(name))
            parse_fail(path_, line, "unknown basis symbol '" + name + "'", "unresolved-symbol");
        return basis_->index_of(name);
    }

    DivisorClass named_class(const std::string& name, int line) const {
        auto it = classes_.find(name);
        if (it != classes_.end()) return it->second;
        if (basis_ && basis_->has(name))
            return DivisorClass::generator(basis_, basis_->index_of(name));
        parse_fail(path_, line, "unknown class '" + name + "'", "unresolved-symbol");
    }

    void parse_classes() {
        ++pos_;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] != "def" || t.size() < 4 || (t.size() % 2) != 0)
                parse_fail(path_, l.number, "expected: def NAME SYMBOL COEFF ...");
            if (!basis_) parse_fail(path_, l.number, "[class] before [ring]", "schema-error");
            DivisorClass acc = DivisorClass::zero(basis_);
            for (std::size_t i = 2; i + 1 < t.size(); i += 2)
                acc += rat(t[i + 1], l.number) * named_class(t[i], l.number);
            classes_.insert_or_assign(t[1], std::move(acc));
            ++pos_;
        }
    }

    Poly poly_from(const std::vector<std::string>& toks, std::size_t from, std::size_t to,
                   int line) const {
        std::vector<Rational> coeffs;
        for (std::size_t i = from; i < to; ++i) coeffs.push_back(rat(toks[i], line));
        return Poly(std::move(coeffs));
    }

    void parse_chambers() {
        int section_line = cur().number;
        ++pos_;
        if (!basis_) parse_fail(path_, section_line, "[chambers] before [ring]", "schema-error");
        ChamberSpec1D spec;
        spec.ring = out_.ring;
        spec.name = out_.id;
        std::optional<DivisorClass> base, ray;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "tau" && t.size() == 2) {
                spec.tau = rat(t[1], l.number);
            } else if (t[0] == "base" && t.size() == 2) {
                base = named_class(t[1], l.number);
            } else if (t[0] == "ray" && t.size() == 2) {
                ray = named_class(t[1], l.number);
            } else if (t[0] == "chamber") {
                if (t.size() < 3) parse_fail(path_, l.number, "chamber needs lo hi");
                Chamber1D ch;
                ch.lo = rat(t[1], l.number);
                ch.hi = rat(t[2], l.number);
                std::size_t i = 3;
                while (i < t.size()) {
                    if (t[i] != "N") parse_fail(path_, l.number, "expected N CLASS : coeffs");
                    if (i + 2 >= t.size() || t[i + 2] != ":")
                        parse_fail(path_, l.number, "expected N CLASS : coeffs");
                    DivisorClass cls = named_class(t[i + 1], l.number);
                    std::size_t j = i + 3;
                    while (j < t.size() && t[j] != "N") ++j;
                    ch.negative.emplace_back(std::move(cls), poly_from(t, i + 3, j, l.number));
                    i = j;
                }
                spec.chambers.push_back(std::move(ch));
            } else {
                parse_fail(path_, l.number, "unexpected line in [chambers]");
            }
            ++pos_;
        }
        if (!base || !ray)
            parse_fail(path_, section_line, "[chambers] needs base and ray", "schema-error");
        // D(u) = base - u * ray
        std::vector<Poly> coeffs;
        for (std::size_t i = 0; i < basis_->size(); ++i)
            coeffs.push_back(Poly({base->coeff(i), -ray->coeff(i)}));
        spec.family = PolyClass(basis_, std::move(coeffs));
        out_.chambers = std::move(spec);
    }

    void parse_surface() {
        int section_line = cur().number;
        ++pos_;
        std::string model_kind;
        int count = -1;
        std::vector<std::string> names;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "model" && t.size() == 3) {
                model_kind = t[1];
                count = std::stoi(t[2]);
            } else if (t[0] == "names") {
                names.assign(t.begin() + 1, t.end());
            } else {
                parse_fail(path_, l.number, "unexpected line in [surface]");
            }
            ++pos_;
        }
        if (model_kind == "plane") out_.surface = build_blowup_plane(count, names);
        else if (model_kind == "quadric") out_.surface = build_blowup_quadric(count, names);
        else parse_fail(path_, section_line, "unknown surface model", "schema-error");
    }

    void parse_restriction() {
        int section_line = cur().number;
        ++pos_;
        if (!basis_ || !out_.surface)
            parse_fail(path_, section_line, "[restriction] needs [ring] and [surface]",
                       "schema-error");
        const BasisPtr& target = out_.surface->basis();
        // File rows give the image of each source generator; the map stores
        // the transpose.
        std::vector<std::vector<Rational>> matrix(target->size(),
                                                  std::vector<Rational>(basis_->size(),
                                                                        Rational(0)));
        std::vector<bool> seen(basis_->size(), false);
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t.size() != target->size() + 2 || t[1] != ":")
                parse_fail(path_, l.number, "expected: SYMBOL : " +
                                                std::to_string(target->size()) + " coefficients");
            std::size_t s = index_of(t[0], l.number);
            seen[s] = true;
            for (std::size_t k = 0; k < target->size(); ++k)
                matrix[k][s] = rat(t[2 + k], l.number);
            ++pos_;
        }
        for (std::size_t s = 0; s < basis_->size(); ++s)
            if (!seen[s])
                fail("schema-error", out_.id + ": restriction misses source symbol " +
                                         basis_->name(s));
        out_.restriction = RestrictionMap(basis_, target, std::move(matrix));
    }

    void parse_curve() {
        int section_line = cur().number;
        ++pos_;
        if (!out_.surface)
            parse_fail(path_, section_line, "[curve] needs [surface]", "schema-error");
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "class") {
                if (t.size() != out_.surface->basis()->size() + 1)
                    parse_fail(path_, l.number, "curve class coefficient count mismatch");
                std::vector<Rational> coeffs;
                for (std::size_t i = 1; i < t.size(); ++i) coeffs.push_back(rat(t[i], l.number));
                out_.curve = DivisorClass(out_.surface->basis(), std::move(coeffs));
            } else if (t[0] == "name" && t.size() == 2) {
                int idx = out_.surface->curve_index(t[1]);
                if (idx < 0)
                    parse_fail(path_, l.number, "unknown curve name '" + t[1] + "'",
                               "unresolved-symbol");
                out_.curve = out_.surface->negative_curves[idx];
            } else if (t[0] == "declared") {
                out_.curve_declared = true;
            } else {
                parse_fail(path_, l.number, "unexpected line in [curve]");
            }
            ++pos_;
        }
    }

    void parse_ord() {
        ++pos_;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] != "override" || t.size() < 5 || t[3] != ":")
                parse_fail(path_, l.number, "expected: override LO HI : coeffs");
            OrdPiece piece;
            piece.lo = rat(t[1], l.number);
            piece.hi = rat(t[2], l.number);
            piece.value = poly_from(t, 4, t.size(), l.number);
            out_.ord_override.push_back(std::move(piece));
            ++pos_;
        }
    }

    void parse_cone() {
        int section_line = cur().number;
        ++pos_;
        if (!basis_) parse_fail(path_, section_line, "[cone] before [ring]", "schema-error");
        std::vector<DivisorClass> rays;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "ray") {
                if (t.size() != basis_->size() + 3 || t[2] != ":")
                    parse_fail(path_, l.number, "expected: ray NAME : coeffs");
                std::vector<Rational> coeffs;
                for (std::size_t i = 3; i < t.size(); ++i) coeffs.push_back(rat(t[i], l.number));
                rays.emplace_back(basis_, std::move(coeffs));
            } else if (t[0] == "query") {
                // query NAME : coeffs -> inside|outside a b
                auto arrow = std::find(t.begin(), t.end(), "->");
                if (t.size() < basis_->size() + 3 || t[2] != ":" || arrow == t.end() ||
                    std::distance(arrow, t.end()) != 4)
                    parse_fail(path_, l.number,
                               "expected: query NAME : coeffs -> inside|outside a b");
                ConeQuery q;
                q.name = t[1];
                std::vector<Rational> coeffs;
                for (auto it = t.begin() + 3; it != arrow; ++it)
                    coeffs.push_back(rat(*it, l.number));
                if (coeffs.size() != basis_->size())
                    parse_fail(path_, l.number, "query coefficient count mismatch");
                q.divisor = DivisorClass(basis_, std::move(coeffs));
                const std::string& verdict = *(arrow + 1);
                if (verdict == "inside") q.expect_inside = true;
                else if (verdict == "outside") q.expect_inside = false;
                else parse_fail(path_, l.number, "expected inside|outside");
                q.expect_a = rat(*(arrow + 2), l.number);
                q.expect_b = rat(*(arrow + 3), l.number);
                out_.cone_queries.push_back(std::move(q));
            } else {
                parse_fail(path_, l.number, "unexpected line in [cone]");
            }
            ++pos_;
        }
        if (rays.size() != 2)
            parse_fail(path_, section_line, "[cone] needs exactly two rays", "schema-error");
        out_.cone_rays = std::make_pair(rays[0], rays[1]);
    }

    void parse_expected() {
        ++pos_;
        while (pos_ < lines_.size() && !at_section()) {
            const Line& l = cur();
            const auto& t = l.tokens;
            if (t[0] == "anomalous" && t.size() == 1) {
                out_.anomalous = true;
            } else if (t[0] == "bound" && t.size() == 3) {
                out_.required[t[1]] = Expectation{rat(t[2], l.number), Compare::LessThan};
            } else if ((t[0] == "s" || t[0] == "beta" || t[0] == "first" || t[0] == "second" ||
                        t[0] == "total") &&
                       (t.size() == 2 || t.size() == 3)) {
                Expectation e{rat(t[1], l.number), Compare::Exact};
                if (t.size() == 3) {
                    if (t[2] == "atmost") e.compare = Compare::AtMost;
                    else if (t[2] == "lessthan") e.compare = Compare::LessThan;
                    else parse_fail(path_, l.number, "unknown comparison '" + t[2] + "'");
                }
                out_.expected[t[0]] = std::move(e);
            } else {
                parse_fail(path_, l.number, "unexpected line in [expected]");
            }
            ++pos_;
        }
    }

    void finish() {
        auto need = [&](bool cond, const std::string& what) {
            if (!cond) fail("schema-error", out_.id + ": missing " + what);
        };
        switch (out_.kind) {
            case CaseKind::SDivisor:
                need(bool(out_.ring), "[ring]");
                need(bool(out_.chambers), "[chambers]");
                break;
            case CaseKind::Beta:
                need(bool(out_.ring), "[ring]");
                need(bool(out_.chambers), "[chambers]");
                need(bool(out_.log_discrepancy), "log_discrepancy");
                break;
            case CaseKind::SCurve:
                need(bool(out_.ring), "[ring]");
                need(bool(out_.chambers), "[chambers]");
                need(bool(out_.surface), "[surface]");
                need(bool(out_.restriction), "[restriction]");
                need(bool(out_.curve), "[curve]");
                break;
            case CaseKind::Cone:
                need(bool(out_.ring), "[ring]");
                need(bool(out_.cone_rays), "[cone]");
                break;
        }
    }

    std::filesystem::path path_;
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    CaseSpecFile out_;
    BasisPtr basis_;
    std::map<std::string, DivisorClass> classes_;
};

} // namespace

CaseSpecFile load_case(const std::filesystem::path& path) {
    return Parser(path).run();
}

std::vector<std::filesystem::path> list_case_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    if (!std::filesystem::exists(dir))
        fail("parse-error", "corpus directory " + dir.string() + " does not exist");
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".case")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace kfano
