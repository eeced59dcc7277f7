#pragma once

/**
 * @file threefold.hpp
 * @brief Trilinear intersection rings for the ambient weak Fano threefolds,
 *        verification of one-parameter Zariski chamber data, restriction to
 *        surface models, and rank-2 effective-cone membership.
 *
 * Threefold decompositions are verified, not discovered: the chamber data
 * (supports and walls) comes from the case file and this module checks the
 * necessary conditions exactly. Curve classes at this level are functionals
 * only; there is no curve-curve pairing.
 */

#include <memory>
#include <string>
#include <vector>

#include "kfano/delpezzo.hpp"
#include "kfano/picard.hpp"

namespace kfano {

class TripleForm {
public:
    TripleForm() = default;
    struct Entry {
        std::size_t i, j, k;
        Rational value;
    };
    // Unlisted triples are zero; conflicting duplicates raise
    // "invalid-triple-form".
    TripleForm(std::size_t dim, const std::vector<Entry>& entries);

    std::size_t dim() const { return dim_; }
    const Rational& at(std::size_t i, std::size_t j, std::size_t k) const;

private:
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const;

    std::size_t dim_ = 0;
    std::vector<Rational> table_;
};

struct CurveFunctional {
    std::string name;
    std::vector<Rational> pairings;  // one per basis divisor
};

struct ThreefoldRing {
    BasisPtr basis;
    TripleForm triples;
    std::vector<CurveFunctional> test_curves;

    Rational pair_curve(const CurveFunctional& c, const DivisorClass& d) const;
    Poly pair_curve(const CurveFunctional& c, const PolyClass& d) const;
};

using RingPtr = std::shared_ptr<const ThreefoldRing>;

Rational triple(const ThreefoldRing& ring, const DivisorClass& a, const DivisorClass& b,
                const DivisorClass& c);
Poly triple(const ThreefoldRing& ring, const PolyClass& a, const PolyClass& b,
            const PolyClass& c);

struct Chamber1D {
    Rational lo, hi;
    // Negative part on the chamber:  N(u) = sum coeff_k(u) * class_k.
    std::vector<std::pair<DivisorClass, Poly>> negative;
};

struct ChamberSpec1D {
    std::string name;
    RingPtr ring;
    PolyClass family;  // D(u), coefficients of degree <= 1
    std::vector<Chamber1D> chambers;
    Rational tau;
    bool verified = false;

    PolyClass positive_part(std::size_t chamber) const;
    DivisorClass negative_at(std::size_t chamber, const Rational& u) const;
};

// Checks all ChamberSpec1D invariants symbolically and returns the spec
// marked verified; violations raise "invalid-chamber" with a witness.
ChamberSpec1D verify_chambers(ChamberSpec1D spec);

// Per-chamber P(u)^3 as a continuous piecewise polynomial on [0, tau];
// requires a verified spec ("unverified-input").
PiecewisePoly volume_poly(const ChamberSpec1D& spec);

class RestrictionMap {
public:
    RestrictionMap() = default;
    // matrix[t][s]: coefficient of target generator t in the image of
    // source generator s.
    RestrictionMap(BasisPtr source, BasisPtr target,
                   std::vector<std::vector<Rational>> matrix);

    const BasisPtr& source() const { return source_; }
    const BasisPtr& target() const { return target_; }

    DivisorClass apply(const DivisorClass& d) const;
    PolyClass apply(const PolyClass& d) const;

private:
    BasisPtr source_, target_;
    std::vector<std::vector<Rational>> matrix_;
};

DivisorClass restrict_class(const RestrictionMap& map, const DivisorClass& d);

struct ConeDecision {
    bool inside;
    Rational a, b;  // certificate: d = a*r1 + b*r2
};

// Exact membership of d in the cone spanned by two independent rays of a
// rank-2 lattice; dependent rays raise "degenerate-cone".
ConeDecision cone_member_2d(const DivisorClass& r1, const DivisorClass& r2,
                            const DivisorClass& d);

} // namespace kfano
