#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over Rational and piecewise polynomials
 *        on rational intervals, with exact definite integration.
 */

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "kfano/rational.hpp"

namespace kfano {

class Poly {
public:
    Poly() = default;
    Poly(const Rational& constant) { coeffs_.push_back(constant); normalize(); }
    Poly(int constant) : Poly(Rational(constant)) {}
    // Coefficients lowest degree first.
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { normalize(); }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : Rational(0);
    }
    Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

    Rational eval(const Rational& x) const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Rational& s, const Poly& p);
    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly derivative() const;
    Poly antiderivative() const;

    std::string str(const std::string& var = "u") const;

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

Rational poly_eval(const Poly& p, const Rational& x);

// Exact definite integral; errors with "empty-interval" when a > b.
Rational poly_integrate(const Poly& p, const Rational& a, const Rational& b);

// Unique interpolating polynomial of degree <= `degree` through degree+1
// points with distinct abscissae ("singular-system" otherwise).
Poly poly_interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree);

// Exact sign conditions on an interval. Degree <= 2 is decided from the
// endpoints plus the rational vertex; higher degrees are not needed here
// and raise "unsupported-degree".
bool poly_nonneg_on(const Poly& p, const Rational& a, const Rational& b);
bool poly_nonpos_on(const Poly& p, const Rational& a, const Rational& b);

// Piecewise polynomial on consecutive rational intervals
// [b_0,b_1],...,[b_{m-1},b_m]. The continuity flag records whether the
// underlying function is asserted continuous; construction verifies the
// assertion exactly.
class PiecewisePoly {
public:
    PiecewisePoly() = default;
    PiecewisePoly(std::vector<Rational> breakpoints, std::vector<Poly> pieces,
                  bool continuous);

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Poly>& pieces() const { return pieces_; }
    bool continuous() const { return continuous_; }
    std::size_t piece_count() const { return pieces_.size(); }

    Rational lo() const { return breakpoints_.front(); }
    Rational hi() const { return breakpoints_.back(); }

    // Value at x; breakpoints evaluate on the left piece.
    Rational eval(const Rational& x) const;

    Rational integrate() const;

private:
    std::vector<Rational> breakpoints_;
    std::vector<Poly> pieces_;
    bool continuous_ = false;
};

Rational piecewise_integrate(const PiecewisePoly& f);

} // namespace kfano
