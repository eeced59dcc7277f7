#pragma once

/**
 * @file zariski.hpp
 * @brief Zariski decomposition on del Pezzo surface models, exact volumes,
 *        and one-parameter volume sweeps with exact chamber walls.
 *
 * The negative part is grown iteratively: all curves pairing negatively with
 * the current candidate positive part are admitted, the Gram system is
 * re-solved, and the loop repeats until the candidate is nonnegative against
 * every enumerated curve. Walls are exact rationals from linear equations,
 * never bisection.
 */

#include <optional>
#include <vector>

#include "kfano/delpezzo.hpp"

namespace kfano {

struct SurfaceDecomposition {
    DivisorClass positive;
    std::vector<std::pair<DivisorClass, Rational>> negative_support;
    std::vector<int> support_indices;  // into model.negative_curves, sorted
    Rational volume;                   // P.P
};

// Zariski decomposition of a pseudoeffective class; errors with
// "not-pseudoeffective" otherwise and "degenerate-support" when the support
// Gram system is singular (a model bug, not expected on del Pezzo input).
SurfaceDecomposition decompose(const SurfaceModel& model, const DivisorClass& divisor);

bool pseudoeffective(const SurfaceModel& model, const DivisorClass& divisor);

// P.P of the decomposition when pseudoeffective, 0 otherwise.
Rational volume(const SurfaceModel& model, const DivisorClass& divisor);

struct SweepChamber {
    Rational lo, hi;
    std::vector<int> support;        // curve indices, sorted
    std::vector<Poly> coefficients;  // of the support curves, linear in v
    Poly vol;                        // quadratic in v
    DivisorClass p_const, p_slope;   // P(v) = p_const + v * p_slope
};

struct VolumeSweep {
    DivisorClass start;   // D(0)
    DivisorClass direction;
    std::vector<Rational> walls;     // 0 = w0 < w1 < ... < wm = threshold
    std::vector<SweepChamber> chambers;
    Rational effective_threshold;

    Rational vol_at(const Rational& v) const;
    Rational integral() const;  // exact integral of vol over [0, threshold]
    // Support sets per chamber; equal fingerprints mean equal chamber
    // structure between two sweeps of the same family.
    std::vector<std::vector<int>> fingerprint() const;
};

// Walks the family D(v) = start - v*direction from v = 0 until the volume
// reaches zero. `start` must be pseudoeffective.
VolumeSweep sweep(const SurfaceModel& model, const DivisorClass& start,
                  const DivisorClass& direction);

} // namespace kfano
