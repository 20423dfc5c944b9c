/**
 * @file  distances.hpp
 * @brief Non-symmetric distance functions on positive contractions.
 *
 * Four binary distance-like maps with values in [0, +inf]:
 *
 *   dist_e(x, y) = ‖x − y‖            (the usual metric)
 *   dist_d(a, b) = ‖a − ab‖ = ‖a b⊥‖  (quantifies a ≪ b, i.e. a = ab)
 *   dist_h(a, b) = ‖(a − b)₊‖         (quantifies the PSD order a ≤ b)
 *   dist_f(a, b) = ‖a ⊙ b⊥‖           (quantifies √a b √a = a)
 *
 * None of d, h, f is symmetric; d and h satisfy the (non-symmetric)
 * triangle inequality, and all are e-uniformly comparable in ways the
 * verification suites pin down numerically.  +inf propagates through
 * sums by the usual IEEE saturating convention (x + inf = inf).
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "opalg/algebra.hpp"

namespace opalg {

/// ‖x − y‖ for arbitrary square matrices of equal dimension.
double dist_e(const Mat& x, const Mat& y);

/// ‖a − ab‖ = ‖a b⊥‖ for positive contractions; zero iff a ≪ b.
double dist_d(const Mat& a, const Mat& b);

/// ‖(a − b)₊‖ for Hermitian a, b; zero iff a ≤ b (up to tolerance).
double dist_h(const Mat& a, const Mat& b);

/// ‖a ⊙ b⊥‖ = ‖√a (1−b) √a‖ for positive contractions.
double dist_f(const Mat& a, const Mat& b);

/// Cached-spectrum overloads used by sampling campaigns.
double dist_e(const PosContraction& a, const PosContraction& b);
double dist_d(const PosContraction& a, const PosContraction& b);
double dist_h(const PosContraction& a, const PosContraction& b);
double dist_f(const PosContraction& a, const PosContraction& b);

/// Which argument slot the fixed operator occupies in a slice.
enum class SliceSide { left, right };

/// A distance with one coordinate frozen: slice("d", a, left)(b) = dist_d(a,b)
/// and slice("d", a, right)(x) = dist_d(x,a).  Unknown names throw
/// Error("unknown_distance").
std::function<double(const PosContraction&)> slice(const std::string& name,
                                                   const PosContraction& fixed,
                                                   SliceSide side);

/// Empirical uniform-equivalence data: for each radius r (decreasing grid),
/// the sampled sup of F over {x : G(x) <= r}.  A modulus exists for (F, G)
/// exactly when these sups tend to 0 with r.
struct ModulusCurve {
    std::vector<double> radii;       ///< strictly decreasing, positive
    std::vector<double> sup_values;  ///< entrywise >= 0, same length

    ModulusCurve(std::vector<double> radii_in, std::vector<double> sups_in);
};

/// Default radius grid {2⁻¹, …, 2⁻¹⁰} for modulus estimation.
std::vector<double> default_radius_grid();

/// Max of F over sampled x with G(x) <= r, per radius.  The result is a
/// lower bound for the true modulus (sampled sup); empty sample sets are
/// rejected with Error("empty_samples").
ModulusCurve modulus_estimate(const std::function<double(const PosContraction&)>& F,
                              const std::function<double(const PosContraction&)>& G,
                              const std::vector<PosContraction>& samples,
                              const std::vector<double>& radii = default_radius_grid());

}  // namespace opalg
