#pragma once

/**
 * @file picard.hpp
 * @brief Named bases, divisor classes as rational vectors, and the bilinear
 *        intersection pairing on a surface Picard lattice.
 *
 * The engine juggles several lattices per family, so every class carries a
 * basis reference and all pairings check basis identity at runtime.
 */

#include <memory>
#include <string>
#include <vector>

#include "kfano/poly.hpp"
#include "kfano/rational.hpp"

namespace kfano {

class Basis {
public:
    explicit Basis(std::vector<std::string> names);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    // Index of a named generator; errors with "unknown-symbol".
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const;

    friend bool operator==(const Basis& a, const Basis& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
};

using BasisPtr = std::shared_ptr<const Basis>;

BasisPtr make_basis(std::vector<std::string> names);

// Two classes interoperate when their bases agree (same object or equal
// name lists); anything else raises "basis-mismatch".
void require_same_basis(const BasisPtr& a, const BasisPtr& b);

class DivisorClass {
public:
    DivisorClass() = default;
    DivisorClass(BasisPtr basis, std::vector<Rational> coeffs);
    static DivisorClass zero(const BasisPtr& basis);
    static DivisorClass generator(const BasisPtr& basis, std::size_t index);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const Rational& coeff(std::size_t i) const { return coeffs_[i]; }
    std::size_t dim() const { return coeffs_.size(); }

    bool is_zero() const;

    DivisorClass operator-() const;
    friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
    friend DivisorClass operator*(const Rational& s, const DivisorClass& d);
    DivisorClass& operator+=(const DivisorClass& o) { *this = *this + o; return *this; }
    DivisorClass& operator-=(const DivisorClass& o) { *this = *this - o; return *this; }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b);
    friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }

    // True when *this == m * other for some rational m; m is reported.
    bool is_multiple_of(const DivisorClass& other, Rational& factor) const;

    std::string str() const;

private:
    BasisPtr basis_;
    std::vector<Rational> coeffs_;
};

// Empty lists need an explicit basis to produce the zero class.
DivisorClass linear_combine(const std::vector<std::pair<Rational, DivisorClass>>& terms);
DivisorClass linear_combine(const BasisPtr& basis,
                            const std::vector<std::pair<Rational, DivisorClass>>& terms);

class IntersectionForm {
public:
    IntersectionForm() = default;
    // Gram matrix must be symmetric of the basis dimension.
    IntersectionForm(BasisPtr basis, std::vector<std::vector<Rational>> gram);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<std::vector<Rational>>& gram() const { return gram_; }

    Rational pair(const DivisorClass& a, const DivisorClass& b) const;

private:
    BasisPtr basis_;
    std::vector<std::vector<Rational>> gram_;
};

Rational pair(const IntersectionForm& form, const DivisorClass& a, const DivisorClass& b);

// A divisor class whose coefficients are polynomials in one parameter;
// houses families like -K - u*Y and the chamber data N(u).
class PolyClass {
public:
    PolyClass() = default;
    PolyClass(BasisPtr basis, std::vector<Poly> coeffs);
    static PolyClass zero(const BasisPtr& basis);
    static PolyClass constant(const DivisorClass& d);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<Poly>& coeffs() const { return coeffs_; }
    int max_degree() const;

    DivisorClass eval(const Rational& u) const;

    PolyClass operator-() const;
    friend PolyClass operator+(const PolyClass& a, const PolyClass& b);
    friend PolyClass operator-(const PolyClass& a, const PolyClass& b);
    friend PolyClass operator*(const Poly& s, const PolyClass& d);
    PolyClass& operator+=(const PolyClass& o) { *this = *this + o; return *this; }
    PolyClass& operator-=(const PolyClass& o) { *this = *this - o; return *this; }

    friend bool operator==(const PolyClass& a, const PolyClass& b);

    std::string str() const;

private:
    BasisPtr basis_;
    std::vector<Poly> coeffs_;
};

} // namespace kfano
