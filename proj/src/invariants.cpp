#include "kfano/invariants.hpp"

#include <algorithm>
#include <map>

namespace kfano {

BetaResult beta(const Rational& log_discrepancy, const Rational& s_value) {
    return BetaResult{log_discrepancy, s_value, log_discrepancy - s_value};
}

Rational s_divisor(const ChamberSpec1D& spec, const Rational& anticanonical_volume) {
    if (anticanonical_volume.sign() <= 0)
        fail("bad-volume", "anticanonical volume must be positive");
    return volume_poly(spec).integrate() / anticanonical_volume;
}

Poly ord_along(const std::vector<std::pair<DivisorClass, Poly>>& restricted_negative,
               const DivisorClass& z, const SurfaceModel& model, bool declared) {
    require_same_basis(model.basis(), z.basis());
    if (z.is_zero()) fail("unknown-curve", "zero class is not a curve");
    if (!declared && model.curve_index(z) < 0)
        fail("unknown-curve", "class " + z.str() + " is not an enumerated irreducible curve");
    Poly acc;
    for (const auto& [cls, coeff] : restricted_negative) {
        Rational m;
        if (cls.is_multiple_of(z, m)) acc += m * coeff;
    }
    return acc;
}

namespace {

constexpr int kMaxDepth = 24;

// Sweeps for one outer chamber, cached by exact parameter value.
struct InnerContext {
    const SurfaceModel& model;
    PolyClass restricted_p;  // P(u)|_Y
    DivisorClass z;
    int granularity = 6;
    std::map<Rational, VolumeSweep> cache;

    const VolumeSweep& at(const Rational& u) {
        auto it = cache.find(u);
        if (it == cache.end())
            it = cache.emplace(u, sweep(model, restricted_p.eval(u), z)).first;
        return it->second;
    }
};

struct ResolvedPiece {
    Rational lo, hi;
    Poly f;
    std::vector<std::vector<int>> fingerprint;
};

// Wall positions and degenerate event lines of the inner sweep next to
// `anchor`, reconstructed from samples inside one regime. Within a regime
// every wall is linear in u (the support solve has a constant Gram matrix
// and a right-hand side linear in (u, v)), so two samples determine each
// wall line and a third validates it.
struct RegimeLines {
    // w(u) = first + second * u for every wall, including 0 and the
    // effective threshold.
    std::vector<std::pair<Rational, Rational>> walls;
    // Roots of v-independent pairing events: a curve whose pairing with
    // P(u, v) does not depend on v enters or leaves the support at one u
    // without any wall collision; these are the only structure changes not
    // visible as intersections of wall lines.
    std::vector<Rational> flat_roots;
};

std::optional<RegimeLines> regime_lines_near(InnerContext& ctx, const Rational& anchor, int dir,
                                             const Rational& span) {
    for (int attempt = 4; attempt < 12; ++attempt) {
        Rational step = span / Rational(1LL << attempt);
        Rational u1 = anchor + Rational(dir) * step;
        Rational u2 = anchor + Rational(2 * dir) * step;
        Rational u3 = anchor + Rational(3 * dir) * step;
        const VolumeSweep& s1 = ctx.at(u1);
        const VolumeSweep& s2 = ctx.at(u2);
        const VolumeSweep& s3 = ctx.at(u3);
        if (s1.fingerprint() != s2.fingerprint() || s1.fingerprint() != s3.fingerprint())
            continue;
        const std::size_t m = s1.walls.size();
        if (s2.walls.size() != m || s3.walls.size() != m) continue;
        RegimeLines out;
        bool consistent = true;
        for (std::size_t j = 0; j < m && consistent; ++j) {
            Rational slope = (s2.walls[j] - s1.walls[j]) / (u2 - u1);
            Rational c0 = s1.walls[j] - slope * u1;
            if (c0 + slope * u3 != s3.walls[j]) consistent = false;
            else out.walls.emplace_back(c0, slope);
        }
        for (std::size_t c = 0; c < s1.chambers.size() && consistent; ++c) {
            const SweepChamber& ch1 = s1.chambers[c];
            const SweepChamber& ch2 = s2.chambers[c];
            if (!(ch1.p_slope == ch2.p_slope)) {
                consistent = false;
                break;
            }
            const SurfaceModel& m2 = ctx.model;
            for (std::size_t i = 0; i < m2.negative_curves.size(); ++i) {
                if (std::find(ch1.support.begin(), ch1.support.end(), static_cast<int>(i)) !=
                    ch1.support.end())
                    continue;
                if (!m2.pair(ch1.p_slope, m2.negative_curves[i]).is_zero()) continue;
                Rational g1 = m2.pair(ch1.p_const, m2.negative_curves[i]);
                Rational g2 = m2.pair(ch2.p_const, m2.negative_curves[i]);
                if (g1 == g2) continue;
                out.flat_roots.push_back(u1 - g1 * (u2 - u1) / (g2 - g1));
            }
            for (std::size_t j = 0; j < ch1.support.size(); ++j) {
                if (!ch1.coefficients[j].coeff(1).is_zero()) continue;
                Rational g1 = ch1.coefficients[j].coeff(0);
                Rational g2 = ch2.coefficients[j].coeff(0);
                if (g1 == g2) continue;
                out.flat_roots.push_back(u1 - g1 * (u2 - u1) / (g2 - g1));
            }
        }
        if (consistent) return out;
    }
    return std::nullopt;
}

// Exact candidate wall positions inside (a, b). The first structure change
// after a regime is a collision of two of its wall lines or one of its flat
// pairing events, so the walls adjacent to the endpoint regimes are always
// candidates; spurious candidates only cause extra splits that re-validate
// and merge. Returns nullopt when a regime could not be pinned down next to
// an endpoint.
std::optional<std::vector<Rational>> candidate_walls(InnerContext& ctx, const Rational& a,
                                                     const Rational& b) {
    Rational span = b - a;
    auto left = regime_lines_near(ctx, a, +1, span);
    auto right = regime_lines_near(ctx, b, -1, span);
    if (!left || !right) return std::nullopt;

    std::vector<std::pair<Rational, Rational>> lines = left->walls;
    lines.insert(lines.end(), right->walls.begin(), right->walls.end());

    std::vector<Rational> cands;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (lines[i].second == lines[j].second) continue;
            Rational u = (lines[j].first - lines[i].first) / (lines[i].second - lines[j].second);
            if (u > a && u < b) cands.push_back(u);
        }
    for (const auto& r : left->flat_roots)
        if (r > a && r < b) cands.push_back(r);
    for (const auto& r : right->flat_roots)
        if (r > a && r < b) cands.push_back(r);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

std::vector<ResolvedPiece> resolve(InnerContext& ctx, const Rational& a, const Rational& b,
                                   int depth) {
    if (depth > kMaxDepth)
        fail("chamber-refinement-exhausted",
             "inner chamber structure on [" + a.str() + ", " + b.str() +
                 "] did not stabilize after bounded refinement");

    // Five samples spread over the whole interval; the granularity knob
    // shifts their positions without shrinking the span, so results must
    // not depend on it.
    std::vector<Rational> us;
    Rational span = b - a;
    for (int k = 1; k <= 5; ++k)
        us.push_back(a + span * (Rational(2 * k - 1, 10) +
                                 Rational(1, 10LL * ctx.granularity)));

    std::vector<std::vector<std::vector<int>>> fps;
    std::vector<Rational> values;
    for (const auto& u : us) {
        const VolumeSweep& s = ctx.at(u);
        fps.push_back(s.fingerprint());
        values.push_back(s.integral());
    }

    auto cands = candidate_walls(ctx, a, b);
    bool same = std::all_of(fps.begin(), fps.end(),
                            [&](const auto& fp) { return fp == fps.front(); });
    if (same && cands && cands->empty()) {
        std::vector<std::pair<Rational, Rational>> pts;
        for (int k = 0; k < 4; ++k) pts.emplace_back(us[k], values[k]);
        Poly f = poly_interpolate(pts, 3);
        bool valid = f.eval(us[4]) == values[4];
        // Near-edge probes guard against structure hiding next to an
        // endpoint.
        for (const Rational& probe :
             {a + span / Rational(4096), b - span / Rational(4096)}) {
            if (!valid) break;
            const VolumeSweep& s = ctx.at(probe);
            if (s.fingerprint() != fps.front() || f.eval(probe) != s.integral()) valid = false;
        }
        if (valid) return {{a, b, f, fps.front()}};
    }

    std::vector<Rational> split_points;
    if (cands && !cands->empty()) split_points = *cands;
    else split_points.push_back(a + span / Rational(2));

    std::vector<ResolvedPiece> pieces;
    Rational lo = a;
    auto descend = [&](const Rational& x, const Rational& y) {
        auto sub = resolve(ctx, x, y, depth + 1);
        pieces.insert(pieces.end(), sub.begin(), sub.end());
    };
    for (const auto& w : split_points) {
        descend(lo, w);
        lo = w;
    }
    descend(lo, b);

    // Merge pieces split at spurious candidates.
    std::vector<ResolvedPiece> merged;
    for (auto& p : pieces) {
        if (!merged.empty() && merged.back().f == p.f &&
            merged.back().fingerprint == p.fingerprint && merged.back().hi == p.lo)
            merged.back().hi = p.hi;
        else
            merged.push_back(std::move(p));
    }
    return merged;
}

// Integral of p2y * ord over [lo, hi] where ord is given piecewise; pieces
// not covering parts of the interval contribute zero there.
Rational integrate_with_pieces(const Poly& p2y, const std::vector<OrdPiece>& pieces,
                               const Rational& lo, const Rational& hi) {
    Rational total(0);
    for (const auto& piece : pieces) {
        Rational a = max(lo, piece.lo);
        Rational b = min(hi, piece.hi);
        if (a < b) total += poly_integrate(p2y * piece.value, a, b);
    }
    return total;
}

} // namespace

SCurveResult s_curve(const SCurveInput& input) {
    const ChamberSpec1D& spec = input.spec;
    if (!spec.verified) fail("unverified-input", "s_curve requires a verified chamber spec");
    if (!input.model) fail("unknown-curve", "s_curve requires a surface model");
    const SurfaceModel& model = *input.model;
    require_same_basis(model.basis(), input.z.basis());
    if (input.anticanonical_volume.sign() <= 0)
        fail("bad-volume", "anticanonical volume must be positive");
    if (!input.z_declared && model.curve_index(input.z) < 0)
        fail("unknown-curve",
             "class " + input.z.str() + " is not an enumerated irreducible curve");

    const Rational factor = Rational(3) / input.anticanonical_volume;

    // The swept surface Y is the direction of the family D(u) = D0 - u*Y.
    std::vector<Rational> ray;
    for (const auto& c : spec.family.coeffs()) ray.push_back(-c.coeff(1));
    DivisorClass y_class(spec.ring->basis, std::move(ray));

    SCurveResult out;
    out.first_term = Rational(0);
    out.computed_first_term = Rational(0);

    std::vector<Rational> breaks;
    std::vector<Poly> f_pieces;
    breaks.push_back(spec.chambers.front().lo);

    for (std::size_t i = 0; i < spec.chambers.size(); ++i) {
        const Chamber1D& ch = spec.chambers[i];
        PolyClass p = spec.positive_part(i);

        // First term: (3/V) * int (P(u)^2 . Y) * ord_Z(N(u)|_Y) du.
        Poly p2y = triple(*spec.ring, p, p, PolyClass::constant(y_class));
        std::vector<std::pair<DivisorClass, Poly>> restricted_negative;
        for (const auto& [cls, coeff] : ch.negative)
            restricted_negative.emplace_back(input.restriction.apply(cls), coeff);
        Poly ord_poly = ord_along(restricted_negative, input.z, model, input.z_declared);
        out.computed_first_term += factor * poly_integrate(p2y * ord_poly, ch.lo, ch.hi);
        if (input.ord_override.empty())
            out.first_term += factor * poly_integrate(p2y * ord_poly, ch.lo, ch.hi);
        else
            out.first_term += factor * integrate_with_pieces(p2y, input.ord_override, ch.lo, ch.hi);

        // Second term: resolve F(u) = int vol(P(u)|_Y - vZ) dv exactly.
        InnerContext ctx{model, input.restriction.apply(p), input.z,
                         std::max(6, input.sample_granularity), {}};
        for (const auto& piece : resolve(ctx, ch.lo, ch.hi, 0)) {
            breaks.push_back(piece.hi);
            f_pieces.push_back(piece.f);
            SCurveResult::ChamberAudit audit;
            audit.lo = piece.lo;
            audit.hi = piece.hi;
            audit.inner_integral = piece.f;
            for (const auto& support : piece.fingerprint) {
                std::vector<std::string> names;
                for (int idx : support) names.push_back(model.curve_name(idx));
                audit.supports.push_back(std::move(names));
            }
            out.audit.push_back(std::move(audit));
        }
    }

    out.inner_integral = PiecewisePoly(breaks, f_pieces, /*continuous=*/true);
    out.outer_walls = breaks;
    out.second_term = factor * out.inner_integral.integrate();
    out.total = out.first_term + out.second_term;
    return out;
}

} // namespace kfano
