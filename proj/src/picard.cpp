#include "kfano/picard.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace kfano {

Basis::Basis(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) fail("bad-basis", "basis must have at least one symbol");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_)
        if (!seen.insert(n).second) fail("bad-basis", "duplicate basis symbol '" + n + "'");
}

std::size_t Basis::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    fail("unknown-symbol", "no basis symbol '" + name + "'");
}

bool Basis::has(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

BasisPtr make_basis(std::vector<std::string> names) {
    return std::make_shared<const Basis>(std::move(names));
}

void require_same_basis(const BasisPtr& a, const BasisPtr& b) {
    if (a == b) return;
    if (a && b && *a == *b) return;
    std::string lhs = a ? a->names().front() : "<null>";
    std::string rhs = b ? b->names().front() : "<null>";
    fail("basis-mismatch", "classes live on different bases (" + lhs + "..., " + rhs + "...)");
}

DivisorClass::DivisorClass(BasisPtr basis, std::vector<Rational> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (!basis_ || coeffs_.size() != basis_->size())
        fail("basis-mismatch", "coefficient count does not match basis size");
}

DivisorClass DivisorClass::zero(const BasisPtr& basis) {
    return DivisorClass(basis, std::vector<Rational>(basis->size(), Rational(0)));
}

DivisorClass DivisorClass::generator(const BasisPtr& basis, std::size_t index) {
    std::vector<Rational> v(basis->size(), Rational(0));
    v.at(index) = Rational(1);
    return DivisorClass(basis, std::move(v));
}

bool DivisorClass::is_zero() const {
    for (const auto& c : coeffs_)
        if (!c.is_zero()) return false;
    return true;
}

DivisorClass DivisorClass::operator-() const {
    std::vector<Rational> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) v.push_back(-c);
    return DivisorClass(basis_, std::move(v));
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    require_same_basis(a.basis_, b.basis_);
    std::vector<Rational> v;
    v.reserve(a.coeffs_.size());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v.push_back(a.coeffs_[i] + b.coeffs_[i]);
    return DivisorClass(a.basis_, std::move(v));
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }

DivisorClass operator*(const Rational& s, const DivisorClass& d) {
    std::vector<Rational> v;
    v.reserve(d.coeffs_.size());
    for (const auto& c : d.coeffs_) v.push_back(s * c);
    return DivisorClass(d.basis_, std::move(v));
}

bool operator==(const DivisorClass& a, const DivisorClass& b) {
    require_same_basis(a.basis_, b.basis_);
    return a.coeffs_ == b.coeffs_;
}

bool DivisorClass::is_multiple_of(const DivisorClass& other, Rational& factor) const {
    require_same_basis(basis_, other.basis_);
    if (other.is_zero()) return is_zero();
    std::size_t pivot = 0;
    while (other.coeffs_[pivot].is_zero()) ++pivot;
    Rational m = coeffs_[pivot] / other.coeffs_[pivot];
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != m * other.coeffs_[i]) return false;
    factor = m;
    return true;
}

std::string DivisorClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        Rational a = abs(coeffs_[i]);
        if (first) {
            if (coeffs_[i].sign() < 0) os << "-";
            first = false;
        } else {
            os << (coeffs_[i].sign() < 0 ? " - " : " + ");
        }
        if (a != Rational(1)) os << a.str() << "*";
        os << basis_->name(i);
    }
    return first ? "0" : os.str();
}

DivisorClass linear_combine(const std::vector<std::pair<Rational, DivisorClass>>& terms) {
    if (terms.empty()) fail("basis-mismatch", "linear_combine of empty list has no basis");
    return linear_combine(terms.front().second.basis(), terms);
}

DivisorClass linear_combine(const BasisPtr& basis,
                            const std::vector<std::pair<Rational, DivisorClass>>& terms) {
    DivisorClass acc = DivisorClass::zero(basis);
    for (const auto& [s, d] : terms) acc += s * d;
    return acc;
}

IntersectionForm::IntersectionForm(BasisPtr basis, std::vector<std::vector<Rational>> gram)
    : basis_(std::move(basis)), gram_(std::move(gram)) {
    const std::size_t n = basis_->size();
    if (gram_.size() != n) fail("bad-form", "gram matrix dimension mismatch");
    for (const auto& row : gram_)
        if (row.size() != n) fail("bad-form", "gram matrix dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (gram_[i][j] != gram_[j][i]) fail("bad-form", "gram matrix not symmetric");
}

Rational IntersectionForm::pair(const DivisorClass& a, const DivisorClass& b) const {
    require_same_basis(basis_, a.basis());
    require_same_basis(basis_, b.basis());
    Rational total(0);
    for (std::size_t i = 0; i < gram_.size(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        Rational row(0);
        for (std::size_t j = 0; j < gram_.size(); ++j)
            if (!b.coeff(j).is_zero()) row += gram_[i][j] * b.coeff(j);
        total += a.coeff(i) * row;
    }
    return total;
}

Rational pair(const IntersectionForm& form, const DivisorClass& a, const DivisorClass& b) {
    return form.pair(a, b);
}

PolyClass::PolyClass(BasisPtr basis, std::vector<Poly> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (!basis_ || coeffs_.size() != basis_->size())
        fail("basis-mismatch", "coefficient count does not match basis size");
}

PolyClass PolyClass::zero(const BasisPtr& basis) {
    return PolyClass(basis, std::vector<Poly>(basis->size()));
}

PolyClass PolyClass::constant(const DivisorClass& d) {
    std::vector<Poly> v;
    v.reserve(d.dim());
    for (const auto& c : d.coeffs()) v.emplace_back(c);
    return PolyClass(d.basis(), std::move(v));
}

int PolyClass::max_degree() const {
    int deg = -1;
    for (const auto& p : coeffs_) deg = std::max(deg, p.degree());
    return deg;
}

DivisorClass PolyClass::eval(const Rational& u) const {
    std::vector<Rational> v;
    v.reserve(coeffs_.size());
    for (const auto& p : coeffs_) v.push_back(p.eval(u));
    return DivisorClass(basis_, std::move(v));
}

PolyClass PolyClass::operator-() const {
    std::vector<Poly> v;
    v.reserve(coeffs_.size());
    for (const auto& p : coeffs_) v.push_back(-p);
    return PolyClass(basis_, std::move(v));
}

PolyClass operator+(const PolyClass& a, const PolyClass& b) {
    require_same_basis(a.basis_, b.basis_);
    std::vector<Poly> v;
    v.reserve(a.coeffs_.size());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v.push_back(a.coeffs_[i] + b.coeffs_[i]);
    return PolyClass(a.basis_, std::move(v));
}

PolyClass operator-(const PolyClass& a, const PolyClass& b) { return a + (-b); }

PolyClass operator*(const Poly& s, const PolyClass& d) {
    std::vector<Poly> v;
    v.reserve(d.coeffs_.size());
    for (const auto& p : d.coeffs_) v.push_back(s * p);
    return PolyClass(d.basis_, std::move(v));
}

bool operator==(const PolyClass& a, const PolyClass& b) {
    require_same_basis(a.basis_, b.basis_);
    return a.coeffs_ == b.coeffs_;
}

std::string PolyClass::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << coeffs_[i].str() << ")*" << basis_->name(i);
        first = false;
    }
    return first ? "0" : os.str();
}

} // namespace kfano
