#pragma once

/**
 * @file delpezzo.hpp
 * @brief Del Pezzo surface models: blowups of the plane or of the quadric
 *        surface at points in general position, with their (-1)-curves
 *        enumerated exhaustively.
 *
 * Only general point position is modeled; no (-2)-curves ever arise.
 */

#include <string>
#include <vector>

#include "kfano/picard.hpp"

namespace kfano {

struct SurfaceModel {
    IntersectionForm form;
    DivisorClass canonical;                  // K
    std::vector<DivisorClass> negative_curves;
    std::vector<std::string> curve_names;    // aligned with negative_curves
    // Extremal rays of square zero on the models whose Mori cone is not
    // generated by (-1)-curves alone (P1xP1 and the one-point blowup of P2).
    std::vector<DivisorClass> null_rays;
    long degree = 0;                         // K.K

    // Precomputed pairing tables: pair_rows[i] = C_i^T * G so that
    // P.C_i is a dot product, and curve_gram[i][j] = C_i . C_j.
    std::vector<std::vector<Rational>> pair_rows;
    std::vector<std::vector<Rational>> curve_gram;

    const BasisPtr& basis() const { return form.basis(); }
    DivisorClass anticanonical() const { return -canonical; }

    Rational pair(const DivisorClass& a, const DivisorClass& b) const { return form.pair(a, b); }

    // Index into negative_curves; -1 when the class is not enumerated.
    int curve_index(const DivisorClass& c) const;
    int curve_index(const std::string& name) const;
    const std::string& curve_name(std::size_t i) const { return curve_names[i]; }
};

// Blowup of P2 at n general points, 1 <= n <= 7. Basis (l, e1..en) unless
// names are supplied (must match the rank n+1).
SurfaceModel build_blowup_plane(int n, std::vector<std::string> names = {});

// Blowup of P1xP1 at k general points, 0 <= k <= 6. Basis (l1, l2, e1..ek).
SurfaceModel build_blowup_quadric(int k, std::vector<std::string> names = {});

// All integral classes C with C.C = -1 and C.K = -1, by exhaustive search
// with coefficient bounds from the lattice; errors with "unsupported-model"
// for forms that are not one of the two del Pezzo shapes above.
std::vector<DivisorClass> enumerate_negative_curves(const IntersectionForm& form,
                                                    const DivisorClass& canonical);

} // namespace kfano
