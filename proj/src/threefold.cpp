#include "kfano/threefold.hpp"

#include <algorithm>
#include <array>

namespace kfano {

TripleForm::TripleForm(std::size_t dim, const std::vector<Entry>& entries) : dim_(dim) {
    table_.assign(dim_ * dim_ * dim_, Rational(0));
    std::vector<bool> seen(dim_ * dim_ * dim_, false);
    for (const auto& e : entries) {
        if (e.i >= dim_ || e.j >= dim_ || e.k >= dim_)
            fail("invalid-triple-form", "triple index out of range");
        std::array<std::size_t, 3> idx{e.i, e.j, e.k};
        std::sort(idx.begin(), idx.end());
        std::size_t flat = (idx[0] * dim_ + idx[1]) * dim_ + idx[2];
        if (seen[flat] && table_[flat] != e.value)
            fail("invalid-triple-form", "conflicting entries for one basis triple");
        seen[flat] = true;
        table_[flat] = e.value;
    }
    // Spread canonical entries over all permutations for O(1) access.
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            for (std::size_t k = j; k < dim_; ++k) {
                const Rational& v = table_[(i * dim_ + j) * dim_ + k];
                std::array<std::size_t, 3> p{i, j, k};
                std::sort(p.begin(), p.end());
                do {
                    table_[(p[0] * dim_ + p[1]) * dim_ + p[2]] = v;
                } while (std::next_permutation(p.begin(), p.end()));
            }
}

std::size_t TripleForm::index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dim_ + j) * dim_ + k;
}

const Rational& TripleForm::at(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[index(i, j, k)];
}

Rational ThreefoldRing::pair_curve(const CurveFunctional& c, const DivisorClass& d) const {
    require_same_basis(basis, d.basis());
    Rational acc(0);
    for (std::size_t i = 0; i < c.pairings.size(); ++i) acc += c.pairings[i] * d.coeff(i);
    return acc;
}

Poly ThreefoldRing::pair_curve(const CurveFunctional& c, const PolyClass& d) const {
    require_same_basis(basis, d.basis());
    Poly acc;
    for (std::size_t i = 0; i < c.pairings.size(); ++i) acc += c.pairings[i] * d.coeffs()[i];
    return acc;
}

Rational triple(const ThreefoldRing& ring, const DivisorClass& a, const DivisorClass& b,
                const DivisorClass& c) {
    require_same_basis(ring.basis, a.basis());
    require_same_basis(ring.basis, b.basis());
    require_same_basis(ring.basis, c.basis());
    const std::size_t n = ring.basis->size();
    Rational acc(0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeff(j).is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (c.coeff(k).is_zero()) continue;
                const Rational& t = ring.triples.at(i, j, k);
                if (!t.is_zero()) acc += a.coeff(i) * b.coeff(j) * c.coeff(k) * t;
            }
        }
    }
    return acc;
}

Poly triple(const ThreefoldRing& ring, const PolyClass& a, const PolyClass& b,
            const PolyClass& c) {
    require_same_basis(ring.basis, a.basis());
    require_same_basis(ring.basis, b.basis());
    require_same_basis(ring.basis, c.basis());
    const std::size_t n = ring.basis->size();
    Poly acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs()[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeffs()[j].is_zero()) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (c.coeffs()[k].is_zero()) continue;
                const Rational& t = ring.triples.at(i, j, k);
                if (!t.is_zero()) acc += t * (a.coeffs()[i] * b.coeffs()[j] * c.coeffs()[k]);
            }
        }
    }
    return acc;
}

PolyClass ChamberSpec1D::positive_part(std::size_t chamber) const {
    PolyClass p = family;
    for (const auto& [cls, coeff] : chambers.at(chamber).negative)
        p -= coeff * PolyClass::constant(cls);
    return p;
}

DivisorClass ChamberSpec1D::negative_at(std::size_t chamber, const Rational& u) const {
    DivisorClass n = DivisorClass::zero(ring->basis);
    for (const auto& [cls, coeff] : chambers.at(chamber).negative) n += coeff.eval(u) * cls;
    return n;
}

ChamberSpec1D verify_chambers(ChamberSpec1D spec) {
    auto reject = [&](const std::string& what) {
        fail("invalid-chamber", spec.name + ": " + what);
    };
    if (!spec.ring) reject("missing ring");
    if (spec.chambers.empty()) reject("no chambers");
    if (spec.family.max_degree() > 1) reject("divisor family has degree > 1 coefficients");
    if (!(spec.chambers.front().lo == Rational(0)))
        reject("chambers must start at u=0");
    if (!(spec.chambers.back().hi == spec.tau))
        reject("chambers must end at tau=" + spec.tau.str());
    for (std::size_t i = 0; i < spec.chambers.size(); ++i) {
        const auto& ch = spec.chambers[i];
        if (!(ch.lo < ch.hi))
            reject("empty interval [" + ch.lo.str() + ", " + ch.hi.str() + "]");
        if (i + 1 < spec.chambers.size() && !(ch.hi == spec.chambers[i + 1].lo))
            reject("gap between chambers at u=" + ch.hi.str());
    }
    for (std::size_t i = 0; i < spec.chambers.size(); ++i) {
        const auto& ch = spec.chambers[i];
        std::string interval = "[" + ch.lo.str() + ", " + ch.hi.str() + "]";
        for (const auto& [cls, coeff] : ch.negative) {
            require_same_basis(spec.ring->basis, cls.basis());
            if (coeff.degree() > 1) reject("nonlinear N coefficient on " + interval);
            for (const Rational& end : {ch.lo, ch.hi})
                if (coeff.eval(end).sign() < 0)
                    reject("negative coefficient at u=" + end.str() + " on " + interval);
        }
        PolyClass p = spec.positive_part(i);
        if (p.max_degree() > 1) reject("positive part has degree > 1 coefficients on " + interval);
        for (const auto& curve : spec.ring->test_curves) {
            Poly h = spec.ring->pair_curve(curve, p);
            if (h.degree() > 1) reject("nonlinear pairing with curve " + curve.name);
            for (const Rational& end : {ch.lo, ch.hi})
                if (h.eval(end).sign() < 0)
                    reject("positive part pairs negatively with " + curve.name + " at u=" +
                           end.str());
        }
    }
    for (std::size_t i = 0; i + 1 < spec.chambers.size(); ++i) {
        const Rational& wall = spec.chambers[i].hi;
        if (!(spec.negative_at(i, wall) == spec.negative_at(i + 1, wall)))
            reject("negative part discontinuous at u=" + wall.str());
    }
    // The volume P(u)^3 must be nonincreasing (an effective class is being
    // subtracted) and must vanish at the pseudoeffective threshold.
    for (std::size_t i = 0; i < spec.chambers.size(); ++i) {
        PolyClass p = spec.positive_part(i);
        Poly vol = triple(*spec.ring, p, p, p);
        if (!poly_nonpos_on(vol.derivative(), spec.chambers[i].lo, spec.chambers[i].hi))
            reject("volume increasing on [" + spec.chambers[i].lo.str() + ", " +
                   spec.chambers[i].hi.str() + "]");
        if (i + 1 == spec.chambers.size() && !vol.eval(spec.tau).is_zero())
            reject("volume " + vol.eval(spec.tau).str() + " does not vanish at tau=" +
                   spec.tau.str());
    }
    spec.verified = true;
    return spec;
}

PiecewisePoly volume_poly(const ChamberSpec1D& spec) {
    if (!spec.verified) fail("unverified-input", "volume_poly requires a verified chamber spec");
    std::vector<Rational> breaks;
    std::vector<Poly> pieces;
    breaks.push_back(spec.chambers.front().lo);
    for (std::size_t i = 0; i < spec.chambers.size(); ++i) {
        PolyClass p = spec.positive_part(i);
        pieces.push_back(triple(*spec.ring, p, p, p));
        breaks.push_back(spec.chambers[i].hi);
    }
    return PiecewisePoly(std::move(breaks), std::move(pieces), /*continuous=*/true);
}

RestrictionMap::RestrictionMap(BasisPtr source, BasisPtr target,
                               std::vector<std::vector<Rational>> matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != target_->size()) fail("basis-mismatch", "restriction matrix rows");
    for (const auto& row : matrix_)
        if (row.size() != source_->size()) fail("basis-mismatch", "restriction matrix columns");
}

DivisorClass RestrictionMap::apply(const DivisorClass& d) const {
    require_same_basis(source_, d.basis());
    std::vector<Rational> out(target_->size(), Rational(0));
    for (std::size_t t = 0; t < target_->size(); ++t)
        for (std::size_t s = 0; s < source_->size(); ++s)
            out[t] += matrix_[t][s] * d.coeff(s);
    return DivisorClass(target_, std::move(out));
}

PolyClass RestrictionMap::apply(const PolyClass& d) const {
    require_same_basis(source_, d.basis());
    std::vector<Poly> out(target_->size());
    for (std::size_t t = 0; t < target_->size(); ++t)
        for (std::size_t s = 0; s < source_->size(); ++s)
            out[t] += matrix_[t][s] * d.coeffs()[s];
    return PolyClass(target_, std::move(out));
}

DivisorClass restrict_class(const RestrictionMap& map, const DivisorClass& d) {
    return map.apply(d);
}

ConeDecision cone_member_2d(const DivisorClass& r1, const DivisorClass& r2,
                            const DivisorClass& d) {
    require_same_basis(r1.basis(), r2.basis());
    require_same_basis(r1.basis(), d.basis());
    if (r1.dim() != 2) fail("degenerate-cone", "rank-2 lattice expected");
    Rational det = r1.coeff(0) * r2.coeff(1) - r1.coeff(1) * r2.coeff(0);
    if (det.is_zero()) fail("degenerate-cone", "rays are linearly dependent");
    // Solve d = a*r1 + b*r2 by Cramer's rule.
    Rational a = (d.coeff(0) * r2.coeff(1) - d.coeff(1) * r2.coeff(0)) / det;
    Rational b = (r1.coeff(0) * d.coeff(1) - r1.coeff(1) * d.coeff(0)) / det;
    return ConeDecision{a.sign() >= 0 && b.sign() >= 0, a, b};
}

} // namespace kfano
