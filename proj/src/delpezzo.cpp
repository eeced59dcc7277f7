#include "kfano/delpezzo.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kfano {

namespace {

enum class LatticeShape { Plane, Quadric };

// The two lattice shapes in play: diag(1,-1,...,-1) for blowups of P2 and
// the hyperbolic plane plus diag(-1,...) for blowups of P1xP1.
LatticeShape detect_shape(const IntersectionForm& form) {
    const auto& g = form.gram();
    const std::size_t n = g.size();
    auto is_diag_tail = [&](std::size_t from) {
        for (std::size_t i = from; i < n; ++i)
            for (std::size_t j = from; j < n; ++j)
                if (g[i][j] != (i == j ? Rational(-1) : Rational(0))) return false;
        return true;
    };
    auto off_block_zero = [&](std::size_t split) {
        for (std::size_t i = 0; i < split; ++i)
            for (std::size_t j = split; j < n; ++j)
                if (!g[i][j].is_zero()) return false;
        return true;
    };
    if (g[0][0] == Rational(1) && is_diag_tail(1) && off_block_zero(1)) return LatticeShape::Plane;
    if (n >= 2 && g[0][0].is_zero() && g[1][1].is_zero() && g[0][1] == Rational(1) &&
        is_diag_tail(2) && off_block_zero(2))
        return LatticeShape::Quadric;
    fail("unsupported-model", "intersection form is not a supported del Pezzo lattice");
}

// Subscript label for an exceptional generator: "e3" -> "3", anything else
// verbatim.
std::string point_label(const std::string& basis_name) {
    if (basis_name.size() >= 2 && basis_name[0] == 'e' &&
        basis_name.find_first_not_of("0123456789", 1) == std::string::npos)
        return basis_name.substr(1);
    return basis_name;
}

std::string subscripts(const Basis& basis, const std::vector<int>& idx) {
    std::string s;
    for (int i : idx) s += point_label(basis.name(i));
    return s;
}

std::string name_plane_curve(const DivisorClass& c, std::size_t points) {
    const Basis& basis = *c.basis();
    long a = 0;
    if (c.coeff(0).is_integer()) a = c.coeff(0).numerator().get_si();
    std::vector<int> hit, missing, doubled;
    for (std::size_t i = 1; i < c.dim(); ++i) {
        if (c.coeff(i) == Rational(-1)) hit.push_back(static_cast<int>(i));
        else if (c.coeff(i) == Rational(-2)) doubled.push_back(static_cast<int>(i));
        else if (c.coeff(i).is_zero()) missing.push_back(static_cast<int>(i));
    }
    if (a == 0 && c.dim() >= 2) {
        for (std::size_t i = 1; i < c.dim(); ++i)
            if (c.coeff(i) == Rational(1)) return basis.name(i);
    }
    if (a == 1 && hit.size() == 2 && doubled.empty()) return "l_" + subscripts(basis, hit);
    if (a == 2 && hit.size() == 5 && doubled.empty())
        return missing.empty() && points == 5 ? "q" : "q_" + subscripts(basis, missing);
    if (a == 3 && doubled.size() == 1) return "b_" + point_label(basis.name(doubled[0]));
    return "c[" + c.str() + "]";
}

std::string name_quadric_curve(const DivisorClass& c) {
    const Basis& basis = *c.basis();
    long a = 0, b = 0;
    if (c.coeff(0).is_integer()) a = c.coeff(0).numerator().get_si();
    if (c.coeff(1).is_integer()) b = c.coeff(1).numerator().get_si();
    std::vector<int> hit, missing, doubled;
    for (std::size_t i = 2; i < c.dim(); ++i) {
        if (c.coeff(i) == Rational(-1)) hit.push_back(static_cast<int>(i));
        else if (c.coeff(i) == Rational(-2)) doubled.push_back(static_cast<int>(i));
        else if (c.coeff(i).is_zero()) missing.push_back(static_cast<int>(i));
    }
    if (a == 0 && b == 0) {
        for (std::size_t i = 2; i < c.dim(); ++i)
            if (c.coeff(i) == Rational(1)) return basis.name(i);
    }
    if (a + b == 1 && hit.size() == 1 && doubled.empty())
        return "l_" + point_label(basis.name(hit[0])) + "(" + (a == 1 ? "1" : "2") + ")";
    if (a == 1 && b == 1 && hit.size() == 3 && doubled.empty())
        return "l_" + subscripts(basis, hit);
    if (((a == 2 && b == 1) || (a == 1 && b == 2)) && doubled.empty() && missing.size() == 1)
        return "k_" + point_label(basis.name(missing[0])) + "(" + (a == 2 ? "1" : "2") + ")";
    if (a == 2 && b == 2 && doubled.size() == 1)
        return "q_" + point_label(basis.name(doubled[0]));
    return "c[" + c.str() + "]";
}

// Integral solutions of sum(c_i) = target_sum, sum(c_i^2) = target_sq with
// c_i in [-4, 4], pruned by Cauchy-Schwarz on the remaining positions.
void search_exceptional(std::size_t pos, std::size_t count, long target_sum, long target_sq,
                        std::vector<long>& current,
                        const std::function<void(const std::vector<long>&)>& emit) {
    if (pos == count) {
        if (target_sum == 0 && target_sq == 0) emit(current);
        return;
    }
    const long remaining = static_cast<long>(count - pos);
    for (long c = -4; c <= 4; ++c) {
        long s = target_sum - c;
        long q = target_sq - c * c;
        if (q < 0) continue;
        long rest = remaining - 1;
        if (rest == 0) {
            if (s == 0 && q == 0) {
                current[pos] = c;
                emit(current);
            }
            continue;
        }
        if (s * s > q * rest) continue;
        if (q > 16 * rest) continue;
        current[pos] = c;
        search_exceptional(pos + 1, count, s, q, current, emit);
    }
}

} // namespace

int SurfaceModel::curve_index(const DivisorClass& c) const {
    for (std::size_t i = 0; i < negative_curves.size(); ++i)
        if (negative_curves[i] == c) return static_cast<int>(i);
    return -1;
}

int SurfaceModel::curve_index(const std::string& name) const {
    for (std::size_t i = 0; i < curve_names.size(); ++i)
        if (curve_names[i] == name) return static_cast<int>(i);
    return -1;
}

std::vector<DivisorClass> enumerate_negative_curves(const IntersectionForm& form,
                                                    const DivisorClass& canonical) {
    const LatticeShape shape = detect_shape(form);
    const BasisPtr& basis = form.basis();
    const std::size_t n = basis->size();
    std::vector<DivisorClass> found;

    auto consider = [&](std::vector<Rational> coeffs) {
        DivisorClass c(basis, std::move(coeffs));
        if (form.pair(c, c) == Rational(-1) && form.pair(c, canonical) == Rational(-1))
            found.push_back(std::move(c));
    };

    if (shape == LatticeShape::Plane) {
        const std::size_t pts = n - 1;
        for (long a = -4; a <= 4; ++a) {
            // c.c = -1 and c.K = -1 pin both symmetric functions of the c_i.
            long sum_sq = a * a + 1;
            long sum = 1 - 3 * a;
            if (sum_sq < 0) continue;
            std::vector<long> cur(pts, 0);
            search_exceptional(0, pts, sum, sum_sq, cur, [&](const std::vector<long>& sol) {
                std::vector<Rational> coeffs;
                coeffs.reserve(n);
                coeffs.emplace_back(a);
                for (long ci : sol) coeffs.emplace_back(ci);
                consider(std::move(coeffs));
            });
        }
    } else {
        const std::size_t pts = n - 2;
        for (long a = -4; a <= 4; ++a) {
            for (long b = -4; b <= 4; ++b) {
                long sum_sq = 2 * a * b + 1;
                long sum = 1 - 2 * a - 2 * b;
                if (sum_sq < 0) continue;
                std::vector<long> cur(pts, 0);
                search_exceptional(0, pts, sum, sum_sq, cur, [&](const std::vector<long>& sol) {
                    std::vector<Rational> coeffs;
                    coeffs.reserve(n);
                    coeffs.emplace_back(a);
                    coeffs.emplace_back(b);
                    for (long ci : sol) coeffs.emplace_back(ci);
                    consider(std::move(coeffs));
                });
            }
        }
    }

    std::sort(found.begin(), found.end(), [](const DivisorClass& x, const DivisorClass& y) {
        return x.coeffs() < y.coeffs();
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

namespace {

SurfaceModel finish_model(IntersectionForm form, DivisorClass canonical, LatticeShape shape,
                          std::size_t points) {
    SurfaceModel m;
    m.form = std::move(form);
    m.canonical = std::move(canonical);
    m.negative_curves = enumerate_negative_curves(m.form, m.canonical);
    m.degree = m.form.pair(m.canonical, m.canonical).numerator().get_si();
    for (const auto& c : m.negative_curves)
        m.curve_names.push_back(shape == LatticeShape::Plane ? name_plane_curve(c, points)
                                                             : name_quadric_curve(c));
    const std::size_t dim = m.basis()->size();
    const auto& gram = m.form.gram();
    m.pair_rows.assign(m.negative_curves.size(), std::vector<Rational>(dim, Rational(0)));
    for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t b = 0; b < dim; ++b)
                m.pair_rows[i][a] += m.negative_curves[i].coeff(b) * gram[a][b];
    m.curve_gram.assign(m.negative_curves.size(),
                        std::vector<Rational>(m.negative_curves.size(), Rational(0)));
    for (std::size_t i = 0; i < m.negative_curves.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            Rational v = m.form.pair(m.negative_curves[i], m.negative_curves[j]);
            m.curve_gram[i][j] = v;
            m.curve_gram[j][i] = v;
        }
    return m;
}

} // namespace

SurfaceModel build_blowup_plane(int n, std::vector<std::string> names) {
    if (n < 1 || n > 7) fail("unsupported-model", "plane blowup supports 1..7 points");
    const std::size_t dim = static_cast<std::size_t>(n) + 1;
    if (names.empty()) {
        names.push_back("l");
        for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
    }
    if (names.size() != dim) fail("unsupported-model", "basis name count must be n+1");
    BasisPtr basis = make_basis(std::move(names));
    std::vector<std::vector<Rational>> gram(dim, std::vector<Rational>(dim, Rational(0)));
    gram[0][0] = Rational(1);
    for (std::size_t i = 1; i < dim; ++i) gram[i][i] = Rational(-1);
    std::vector<Rational> k(dim, Rational(1));
    k[0] = Rational(-3);
    SurfaceModel m = finish_model(IntersectionForm(basis, std::move(gram)),
                                  DivisorClass(basis, std::move(k)), LatticeShape::Plane,
                                  static_cast<std::size_t>(n));
    if (n == 1) {
        std::vector<Rational> f(dim, Rational(0));
        f[0] = Rational(1);
        f[1] = Rational(-1);
        m.null_rays.emplace_back(basis, std::move(f));
    }
    return m;
}

SurfaceModel build_blowup_quadric(int k, std::vector<std::string> names) {
    if (k < 0 || k > 6) fail("unsupported-model", "quadric blowup supports 0..6 points");
    const std::size_t dim = static_cast<std::size_t>(k) + 2;
    if (names.empty()) {
        names.push_back("l1");
        names.push_back("l2");
        for (int i = 1; i <= k; ++i) names.push_back("e" + std::to_string(i));
    }
    if (names.size() != dim) fail("unsupported-model", "basis name count must be k+2");
    BasisPtr basis = make_basis(std::move(names));
    std::vector<std::vector<Rational>> gram(dim, std::vector<Rational>(dim, Rational(0)));
    gram[0][1] = gram[1][0] = Rational(1);
    for (std::size_t i = 2; i < dim; ++i) gram[i][i] = Rational(-1);
    std::vector<Rational> kv(dim, Rational(1));
    kv[0] = Rational(-2);
    kv[1] = Rational(-2);
    SurfaceModel m = finish_model(IntersectionForm(basis, std::move(gram)),
                                  DivisorClass(basis, std::move(kv)), LatticeShape::Quadric, 0);
    if (k == 0) {
        m.null_rays.push_back(DivisorClass::generator(basis, 0));
        m.null_rays.push_back(DivisorClass::generator(basis, 1));
    }
    return m;
}

} // namespace kfano
