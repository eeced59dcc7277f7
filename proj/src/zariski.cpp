#include "kfano/zariski.hpp"

#include <algorithm>

namespace kfano {

namespace {

// First-order dual numbers a + b*eps over Rational, ordered lexicographically.
// Evaluating the linear sweep data at v* + eps is exact in this ring, which
// is how the support set on the open side of a wall is computed.
struct Dual {
    Rational val, slope;

    Dual() : val(0), slope(0) {}
    Dual(Rational v) : val(std::move(v)), slope(0) {}
    Dual(Rational v, Rational s) : val(std::move(v)), slope(std::move(s)) {}

    Dual operator-() const { return {-val, -slope}; }
    Dual& operator+=(const Dual& o) { val += o.val; slope += o.slope; return *this; }
    Dual& operator-=(const Dual& o) { val -= o.val; slope -= o.slope; return *this; }

    friend Dual operator+(Dual a, const Dual& b) { a += b; return a; }
    friend Dual operator-(Dual a, const Dual& b) { a -= b; return a; }
    friend Dual operator*(const Rational& s, const Dual& d) { return {s * d.val, s * d.slope}; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.val * b.val, a.val * b.slope + a.slope * b.val};
    }

    int sign() const {
        int s = val.sign();
        return s != 0 ? s : slope.sign();
    }
};

template <class S>
S scale_rat(const Rational& r, const S& x) { return r * x; }

inline bool is_neg(const Rational& r) { return r.sign() < 0; }
inline bool is_neg(const Dual& d) { return d.sign() < 0; }

// Solves gram * x = rhs by exact Gaussian elimination; the matrix is
// rational while the right-hand side may be Rational or Dual.
template <class S>
std::optional<std::vector<S>> solve_gram(std::vector<std::vector<Rational>> m, std::vector<S> rhs) {
    const std::size_t n = m.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            Rational f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
            rhs[row] -= scale_rat(f, rhs[col]);
        }
    }
    std::vector<S> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = scale_rat(Rational(1) / m[i][i], rhs[i]);
    return x;
}

bool negative_definite(const std::vector<std::vector<Rational>>& g) {
    // Leading principal minors of a negative definite matrix alternate sign.
    const std::size_t n = g.size();
    std::vector<std::vector<Rational>> m = g;
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col].is_zero()) ++pivot;
        if (pivot == n) return false;
        if (pivot != col) {
            std::swap(m[col], m[pivot]);
            det = -det;
        }
        det *= m[col][col];
        if ((col % 2 == 0 && det.sign() >= 0) || (col % 2 == 1 && det.sign() <= 0)) return false;
        for (std::size_t row = col + 1; row < n; ++row) {
            if (m[row][col].is_zero()) continue;
            Rational f = m[row][col] / m[col][col];
            for (std::size_t k = col; k < n; ++k) m[row][k] -= f * m[col][k];
        }
        det = Rational(1);
        for (std::size_t k = 0; k <= col; ++k) det *= m[k][k];
    }
    return true;
}

template <class S>
struct CoreResult {
    bool pseudoeffective = false;
    std::vector<int> support;
    std::vector<S> coefficients;
    std::vector<S> positive;  // coordinates of P
    S p_squared;
};

// Shared decomposition loop. The divisor coordinates may be Rational (a
// single class) or Dual (a class evaluated just past a wall).
template <class S>
CoreResult<S> decompose_core(const SurfaceModel& model, const std::vector<S>& divisor) {
    const auto& curves = model.negative_curves;
    const std::size_t dim = model.basis()->size();
    const auto& gram = model.form.gram();
    const auto& rows = model.pair_rows;
    const auto& curve_gram = model.curve_gram;

    auto pair_coords = [&](const std::vector<Rational>& row, const std::vector<S>& coords) {
        S acc{};
        for (std::size_t a = 0; a < dim; ++a) acc += scale_rat(row[a], coords[a]);
        return acc;
    };

    CoreResult<S> res;
    std::vector<S> p = divisor;
    std::vector<int> support;
    std::vector<S> coeff;

    for (std::size_t round = 0; round <= curves.size(); ++round) {
        std::vector<int> violators;
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (std::find(support.begin(), support.end(), static_cast<int>(i)) != support.end())
                continue;
            S h = pair_coords(rows[i], p);
            if (is_neg(h)) violators.push_back(static_cast<int>(i));
        }
        if (violators.empty()) break;
        support.insert(support.end(), violators.begin(), violators.end());
        std::sort(support.begin(), support.end());

        std::vector<std::vector<Rational>> g(support.size(),
                                             std::vector<Rational>(support.size()));
        std::vector<S> rhs;
        for (std::size_t a = 0; a < support.size(); ++a) {
            for (std::size_t b = 0; b < support.size(); ++b)
                g[a][b] = curve_gram[support[a]][support[b]];
            rhs.push_back(pair_coords(rows[support[a]], divisor));
        }
        auto sol = solve_gram<S>(std::move(g), std::move(rhs));
        if (!sol) {
            // For pseudoeffective input the grown support stays inside the
            // negative part's support, whose Gram is negative definite; a
            // singular system therefore certifies non-pseudoeffectivity.
            res.pseudoeffective = false;
            res.support = std::move(support);
            return res;
        }
        coeff = *sol;
        p = divisor;
        for (std::size_t a = 0; a < support.size(); ++a)
            for (std::size_t d = 0; d < dim; ++d)
                p[d] -= scale_rat(curves[support[a]].coeff(d), coeff[a]);
    }

    bool ok = true;
    for (const auto& c : coeff)
        if (is_neg(c)) ok = false;
    // P must also clear the rays that are not (-1)-curves (rulings on the
    // minimal models) and -K.
    for (const auto& ray : model.null_rays) {
        std::vector<Rational> row(dim, Rational(0));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) row[a] += ray.coeff(b) * gram[a][b];
        if (is_neg(pair_coords(row, p))) ok = false;
    }
    {
        DivisorClass antik = model.anticanonical();
        std::vector<Rational> row(dim, Rational(0));
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b) row[a] += antik.coeff(b) * gram[a][b];
        if (is_neg(pair_coords(row, p))) ok = false;
    }
    S p2{};
    for (std::size_t a = 0; a < dim; ++a) {
        S row{};
        for (std::size_t b = 0; b < dim; ++b) row += scale_rat(gram[a][b], p[b]);
        p2 += p[a] * row;
    }
    if (is_neg(p2)) ok = false;

    res.pseudoeffective = ok;
    res.support = std::move(support);
    res.coefficients = std::move(coeff);
    res.positive = std::move(p);
    res.p_squared = std::move(p2);
    return res;
}

std::vector<Rational> coords_of(const DivisorClass& d) { return d.coeffs(); }

} // namespace

SurfaceDecomposition decompose(const SurfaceModel& model, const DivisorClass& divisor) {
    require_same_basis(model.basis(), divisor.basis());
    auto core = decompose_core<Rational>(model, coords_of(divisor));
    if (!core.pseudoeffective)
        fail("not-pseudoeffective", "class " + divisor.str() + " is not pseudoeffective");
    SurfaceDecomposition dec;
    dec.positive = DivisorClass(model.basis(), core.positive);
    for (std::size_t a = 0; a < core.support.size(); ++a)
        dec.negative_support.emplace_back(model.negative_curves[core.support[a]],
                                          core.coefficients[a]);
    dec.support_indices = core.support;
    dec.volume = core.p_squared;

    if (!dec.support_indices.empty()) {
        std::vector<std::vector<Rational>> g(dec.support_indices.size(),
                                             std::vector<Rational>(dec.support_indices.size()));
        for (std::size_t a = 0; a < dec.support_indices.size(); ++a)
            for (std::size_t b = 0; b < dec.support_indices.size(); ++b)
                g[a][b] = model.form.pair(model.negative_curves[dec.support_indices[a]],
                                          model.negative_curves[dec.support_indices[b]]);
        if (!negative_definite(g))
            fail("degenerate-support", "support Gram matrix is not negative definite");
    }
    return dec;
}

bool pseudoeffective(const SurfaceModel& model, const DivisorClass& divisor) {
    require_same_basis(model.basis(), divisor.basis());
    return decompose_core<Rational>(model, coords_of(divisor)).pseudoeffective;
}

Rational volume(const SurfaceModel& model, const DivisorClass& divisor) {
    require_same_basis(model.basis(), divisor.basis());
    auto core = decompose_core<Rational>(model, coords_of(divisor));
    if (!core.pseudoeffective) return Rational(0);
    return core.p_squared;
}

Rational VolumeSweep::vol_at(const Rational& v) const {
    if (v >= effective_threshold) return Rational(0);
    for (const auto& ch : chambers)
        if (v >= ch.lo && v <= ch.hi) return ch.vol.eval(v);
    fail("out-of-domain", "sweep evaluated at negative parameter " + v.str());
}

Rational VolumeSweep::integral() const {
    Rational total(0);
    for (const auto& ch : chambers) total += poly_integrate(ch.vol, ch.lo, ch.hi);
    return total;
}

std::vector<std::vector<int>> VolumeSweep::fingerprint() const {
    std::vector<std::vector<int>> fp;
    fp.reserve(chambers.size());
    for (const auto& ch : chambers) fp.push_back(ch.support);
    return fp;
}

VolumeSweep sweep(const SurfaceModel& model, const DivisorClass& start,
                  const DivisorClass& direction) {
    require_same_basis(model.basis(), start.basis());
    require_same_basis(model.basis(), direction.basis());

    if (!pseudoeffective(model, start))
        fail("not-pseudoeffective", "sweep start " + start.str() + " is not pseudoeffective");

    VolumeSweep out;
    out.start = start;
    out.direction = direction;
    out.walls.push_back(Rational(0));

    const std::size_t dim = model.basis()->size();
    const auto& curves = model.negative_curves;

    if (volume(model, start).is_zero()) {
        out.effective_threshold = Rational(0);
        return out;
    }

    Rational v_cur(0);
    const std::size_t max_chambers = 2 * curves.size() + 4;
    for (std::size_t iter = 0; iter <= max_chambers; ++iter) {
        if (iter == max_chambers) fail("unbounded-sweep", "sweep did not terminate");

        // Support on the open interval just past v_cur.
        std::vector<Dual> dual_coords(dim);
        for (std::size_t d = 0; d < dim; ++d)
            dual_coords[d] = Dual(start.coeff(d) - v_cur * direction.coeff(d),
                                  -direction.coeff(d));
        auto core = decompose_core<Dual>(model, dual_coords);
        if (!core.pseudoeffective || core.p_squared.sign() <= 0) {
            // Volume is zero (or the family leaves the pseudoeffective cone)
            // immediately past v_cur: the threshold has been reached.
            out.effective_threshold = v_cur;
            break;
        }
        const std::vector<int>& support = core.support;

        // Solve the chamber symbolically: coefficients are linear in v.
        std::vector<Poly> coeff_polys;
        PolyClass p_poly = PolyClass::zero(model.basis());
        {
            std::vector<std::vector<Rational>> g(support.size(),
                                                 std::vector<Rational>(support.size()));
            std::vector<Rational> rhs0, rhs1;
            for (std::size_t a = 0; a < support.size(); ++a) {
                for (std::size_t b = 0; b < support.size(); ++b)
                    g[a][b] = model.form.pair(curves[support[a]], curves[support[b]]);
                rhs0.push_back(model.form.pair(curves[support[a]], start));
                rhs1.push_back(-model.form.pair(curves[support[a]], direction));
            }
            std::vector<Rational> a0, a1;
            if (!support.empty()) {
                auto s0 = solve_gram<Rational>(g, rhs0);
                auto s1 = solve_gram<Rational>(g, rhs1);
                if (!s0 || !s1) fail("degenerate-support", "support Gram system is singular");
                a0 = *s0;
                a1 = *s1;
            }
            std::vector<Poly> pc(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                Rational c0 = start.coeff(d);
                Rational c1 = -direction.coeff(d);
                for (std::size_t a = 0; a < support.size(); ++a) {
                    c0 -= a0[a] * curves[support[a]].coeff(d);
                    c1 -= a1[a] * curves[support[a]].coeff(d);
                }
                pc[d] = Poly({c0, c1});
            }
            p_poly = PolyClass(model.basis(), std::move(pc));
            for (std::size_t a = 0; a < support.size(); ++a)
                coeff_polys.push_back(Poly({a0[a], a1[a]}));
        }

        DivisorClass p0 = p_poly.eval(Rational(0));
        DivisorClass p1(model.basis(), [&] {
            std::vector<Rational> v;
            for (const auto& pl : p_poly.coeffs()) v.push_back(pl.coeff(1));
            return v;
        }());
        Poly vol_poly = Poly({model.form.pair(p0, p0), Rational(2) * model.form.pair(p0, p1),
                              model.form.pair(p1, p1)});

        // Next structural wall: a curve outside the support pairing to zero
        // or a support coefficient vanishing.
        std::optional<Rational> structural;
        auto propose = [&](const Rational& w) {
            if (w > v_cur && (!structural || w < *structural)) structural = w;
        };
        for (std::size_t i = 0; i < curves.size(); ++i) {
            if (std::find(support.begin(), support.end(), static_cast<int>(i)) != support.end())
                continue;
            Rational h0 = model.form.pair(p0, curves[i]);
            Rational h1 = model.form.pair(p1, curves[i]);
            if (h1.sign() < 0) propose(-h0 / h1);
        }
        for (std::size_t a = 0; a < support.size(); ++a) {
            Rational b0 = coeff_polys[a].coeff(0);
            Rational b1 = coeff_polys[a].coeff(1);
            if (b1.sign() < 0) propose(-b0 / b1);
        }

        // Smallest zero of the volume quadratic in (v_cur, structural], if
        // any. The volume starts positive on this chamber; a zero inside it
        // is the effective threshold and must be rational.
        std::optional<Rational> vol_zero;
        {
            Rational c0 = vol_poly.coeff(0), c1 = vol_poly.coeff(1), c2 = vol_poly.coeff(2);
            auto in_range = [&](const Rational& r) {
                return r > v_cur && (!structural || r <= *structural);
            };
            if (c2.is_zero()) {
                if (!c1.is_zero()) {
                    Rational r = -c0 / c1;
                    if (in_range(r)) vol_zero = r;
                }
            } else {
                Rational disc = c1 * c1 - Rational(4) * c0 * c2;
                if (disc.sign() >= 0) {
                    Rational sq;
                    if (rational_sqrt(disc, sq)) {
                        Rational r1 = (-c1 - sq) / (Rational(2) * c2);
                        Rational r2 = (-c1 + sq) / (Rational(2) * c2);
                        if (r1 > r2) std::swap(r1, r2);
                        if (in_range(r1)) vol_zero = r1;
                        else if (in_range(r2)) vol_zero = r2;
                    } else {
                        // Irrational roots: acceptable only if they lie
                        // outside the current chamber.
                        bool crosses = false;
                        if (structural) {
                            if (vol_poly.eval(*structural).sign() < 0) crosses = true;
                            Rational vertex = -c1 / (Rational(2) * c2);
                            if (vertex > v_cur && vertex < *structural &&
                                vol_poly.eval(vertex).sign() < 0)
                                crosses = true;
                        } else {
                            crosses = true;
                        }
                        if (crosses)
                            fail("irrational-wall",
                                 "volume vanishes at an irrational parameter (outside supported "
                                 "scope)");
                    }
                }
            }
        }

        std::optional<Rational> next = vol_zero ? vol_zero : structural;
        if (!next) fail("unbounded-sweep", "no wall ahead of v = " + v_cur.str());

        SweepChamber ch;
        ch.lo = v_cur;
        ch.hi = *next;
        ch.support = support;
        ch.coefficients = coeff_polys;
        ch.vol = vol_poly;
        ch.p_const = p0;
        ch.p_slope = p1;
        out.chambers.push_back(std::move(ch));
        out.walls.push_back(*next);

        if (vol_poly.eval(*next).is_zero()) {
            out.effective_threshold = *next;
            break;
        }
        v_cur = *next;
    }

    // Exact continuity across walls is an invariant of the construction.
    for (std::size_t i = 0; i + 1 < out.chambers.size(); ++i) {
        const Rational& w = out.chambers[i].hi;
        if (out.chambers[i].vol.eval(w) != out.chambers[i + 1].vol.eval(w))
            fail("discontinuous-pieces", "sweep volume discontinuous at wall " + w.str());
    }
    return out;
}

} // namespace kfano
