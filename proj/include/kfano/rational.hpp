#pragma once

/**
 * @file rational.hpp
 * @brief Exact arbitrary-precision rationals.
 *
 * Every scalar in the engine is a Rational. Values are always stored in
 * canonical form (reduced, denominator > 0), so equality and hashing are
 * plain field comparisons. Arithmetic is backed by GMP's mpq_t.
 */

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <ostream>
#include <string>

#include "kfano/error.hpp"

namespace kfano {

class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(static_cast<long>(n)) {}
    Rational(long long n) : q_() { q_ = make_int(n); }
    Rational(long long num, long long den) {
        if (den == 0) fail("zero-denominator", "rational with zero denominator");
        q_ = make_int(num) / make_int(den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Parses "p", "p/q" or "-p/q" (whitespace-free). Throws "bad-rational".
    static Rational parse(const std::string& text);

    const mpq_class& raw() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    double to_double() const { return q_.get_d(); }
    std::string str() const;

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) fail("division-by-zero", "rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    std::size_t hash() const;

private:
    static mpq_class make_int(long long v) {
        if (v >= LONG_MIN && v <= LONG_MAX) return mpq_class(static_cast<long>(v));
        return mpq_class(std::to_string(v));
    }

    mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Rational pow(const Rational& base, unsigned exp);

// Exact square root when one exists; returns false for non-squares and
// negative inputs.
bool rational_sqrt(const Rational& value, Rational& root);

} // namespace kfano

template <>
struct std::hash<kfano::Rational> {
    std::size_t operator()(const kfano::Rational& r) const { return r.hash(); }
};
