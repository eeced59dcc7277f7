#include "kfano/poly.hpp"

#include <sstream>

namespace kfano {

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

Poly Poly::operator-() const {
    std::vector<Rational> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
    return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Poly(std::move(v));
}

Poly operator*(const Rational& s, const Poly& p) {
    std::vector<Rational> v;
    v.reserve(p.coeffs_.size());
    for (const auto& c : p.coeffs_) v.push_back(s * c);
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return Poly();
    std::vector<Rational> v;
    v.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v.push_back(Rational(static_cast<long long>(i)) * coeffs_[i]);
    return Poly(std::move(v));
}

Poly Poly::antiderivative() const {
    if (coeffs_.empty()) return Poly();
    std::vector<Rational> v(coeffs_.size() + 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i + 1] = coeffs_[i] / Rational(static_cast<long long>(i + 1));
    return Poly(std::move(v));
}

std::string Poly::str(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c.is_zero()) continue;
        Rational a = abs(c);
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit = (a == Rational(1)) && k > 0;
        if (!unit) os << a.str();
        if (k > 0) {
            if (!unit) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

Rational poly_eval(const Poly& p, const Rational& x) { return p.eval(x); }

Rational poly_integrate(const Poly& p, const Rational& a, const Rational& b) {
    if (a > b) fail("empty-interval", "integration bounds reversed: [" + a.str() + ", " + b.str() + "]");
    Poly F = p.antiderivative();
    return F.eval(b) - F.eval(a);
}

Poly poly_interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree) {
    if (static_cast<int>(points.size()) != degree + 1)
        fail("singular-system", "interpolation needs degree+1 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first)
                fail("singular-system", "duplicate abscissa " + points[i].first.str());
    // Lagrange form, exact.
    Poly result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Poly term(points[i].second);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            Rational d = points[i].first - points[j].first;
            term = term * Poly({-points[j].first / d, Rational(1) / d});
        }
        result += term;
    }
    return result;
}

namespace {

bool sign_on_interval(const Poly& p, const Rational& a, const Rational& b, int want) {
    auto ok = [&](const Rational& v) { return want >= 0 ? v >= Rational(0) : v <= Rational(0); };
    if (p.degree() <= 0) return ok(p.coeff(0));
    if (!ok(p.eval(a)) || !ok(p.eval(b))) return false;
    if (p.degree() == 1) return true;
    if (p.degree() == 2) {
        Rational vertex = -p.coeff(1) / (Rational(2) * p.coeff(2));
        if (vertex > a && vertex < b && !ok(p.eval(vertex))) return false;
        return true;
    }
    fail("unsupported-degree", "exact sign test implemented for degree <= 2");
}

} // namespace

bool poly_nonneg_on(const Poly& p, const Rational& a, const Rational& b) {
    return sign_on_interval(p, a, b, +1);
}

bool poly_nonpos_on(const Poly& p, const Rational& a, const Rational& b) {
    return sign_on_interval(p, a, b, -1);
}

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces,
                             bool continuous)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)), continuous_(continuous) {
    if (breakpoints_.size() != pieces_.size() + 1 || pieces_.empty())
        fail("bad-piecewise", "need one more breakpoint than pieces");
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
        if (!(breakpoints_[i] < breakpoints_[i + 1]))
            fail("bad-piecewise", "breakpoints not strictly increasing at index " + std::to_string(i));
    if (continuous_) {
        for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
            const Rational& w = breakpoints_[i + 1];
            if (pieces_[i].eval(w) != pieces_[i + 1].eval(w))
                fail("discontinuous-pieces",
                     "pieces disagree at breakpoint " + w.str() + " (" +
                         pieces_[i].eval(w).str() + " vs " + pieces_[i + 1].eval(w).str() + ")");
        }
    }
}

Rational PiecewisePoly::eval(const Rational& x) const {
    if (x < lo() || x > hi()) fail("out-of-domain", "evaluation at " + x.str());
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        if (x <= breakpoints_[i + 1]) return pieces_[i].eval(x);
    return pieces_.back().eval(x);
}

Rational PiecewisePoly::integrate() const {
    Rational total(0);
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        total += poly_integrate(pieces_[i], breakpoints_[i], breakpoints_[i + 1]);
    return total;
}

Rational piecewise_integrate(const PiecewisePoly& f) { return f.integrate(); }

} // namespace kfano
