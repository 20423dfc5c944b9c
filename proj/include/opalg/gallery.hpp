/**
 * @file  gallery.hpp
 * @brief Concrete worked examples on [0,1]-indexed matrix fields.
 *
 * Reproduces, with pinned regression values, the handful of explicit
 * counterexamples the library's inequalities are sharp against:
 *
 *   - the 2×2 pair where the nearest-dominated distance p beats h and
 *     breaks the triangle inequality by a fixed margin;
 *   - rank-one projection fields over [0,1] that wiggle with amplitude ε:
 *     the interior gauge c jumps to 1 for every ε > 0 while the metric
 *     distance stays below |sin ε|;
 *   - a point-constrained subalgebra where the best approximation from
 *     inside equals ‖P − Q‖;
 *   - truncations of an open-projection field whose distance to bounded
 *     elements decreases to 0;
 *   - two distinct families of shrinking-support generators whose
 *     closures coincide.
 *
 * Everything here is grid-discretized: a field is its values at m uniform
 * points of [0,1], sup-norms become grid maxima, and the grid-to-continuum
 * gap is carried explicitly as a slack term (2π/m for the wiggle family,
 * whose parameterization is 1-Lipschitz in the angle).
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "opalg/algebra.hpp"

namespace opalg {

/// A positive-contraction-valued field on m uniform grid points of [0,1].
/// The optional constraint tag records subalgebra membership conditions
/// ("value at 0 in C·Q"), which factories must have enforced.
class GridOperatorField {
 public:
  GridOperatorField(std::vector<double> grid, std::vector<Mat> values,
                    std::string constraint = "");

  /// Field from a pointwise formula on m uniform points.
  static GridOperatorField from_function(
      int m, int dim, const std::function<Mat(double)>& f,
      std::string constraint = "");

  /// m uniform points 0, 1/(m−1), ..., 1.
  static std::vector<double> uniform_grid(int m);

  int points() const { return static_cast<int>(grid_.size()); }
  int dim() const;
  double x(int i) const { return grid_[static_cast<size_t>(i)]; }
  const Mat& value(int i) const { return values_[static_cast<size_t>(i)]; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::vector<double> grid_;
  std::vector<Mat> values_;
  std::string constraint_;
};

/// sup-norm distances between fields: grid maximum of the pointwise value.
double field_dist_e(const GridOperatorField& f, const GridOperatorField& g);
double field_dist_d(const GridOperatorField& f, const GridOperatorField& g);

/// The rank-one projection onto the line C·(sin θ, cos θ):
/// [[sin²θ, sinθ·cosθ], [sinθ·cosθ, cos²θ]].  Satisfies
/// ‖P_0 − P_θ‖ = |sin θ|.
Projection rank_one_projector(double theta);

/// The projection field p_ε with p_ε(x) = P_{ε·sin(1/x)} for x > 0 and
/// p_ε(0) = 1: a rank-one line that wiggles with amplitude ε and
/// unboundedly increasing frequency toward 0.  All values are projections
/// (checked to 1e−9 at construction).
struct WiggleFamily {
  double epsilon;
  GridOperatorField field;

  static WiggleFamily make(double epsilon, int m);
  /// The interior field: same values for x > 0, but 0 at x = 0 when
  /// ε > 0 (nothing below a wiggling line can stay continuous at 0);
  /// for ε = 0 the interior is the constant-P₀ field.
  GridOperatorField interior() const;
};

/// Pinned 2×2 distances report: a = [[1,1],[1,1]], b = [[4,0],[0,0]].
struct M2Report {
  Mat a, b, c;          ///< c = a + (b−a)₊ dominates both a and b
  double h;             ///< ‖(a−b)₊‖ = √5 − 1
  double p;             ///< inf over 0 ≤ e ≤ b of ‖a − e‖ = √2 (at e = b/2)
  double p_ac;          ///< 0, since a ≤ c
  double p_cb;          ///< ‖c − b‖ = √5 − 1
  double violation;     ///< p − (p_ac + p_cb) ≈ 0.178 — triangle fails
  double norm_at_half;  ///< ‖a − b/2‖ = √2, the 1−2t ± √(4t²+1) branch meet
};

/// Builds the report and verifies the pinned constants (h to 1e−9, p to
/// 1e−3, violation margin ≥ 0.17); a mismatch throws Error("regression").
M2Report m2_counterexample();

/// One wiggle-family row: how the interior gauge defeats the metric.
struct WiggleRow {
  double epsilon;
  double e_value;        ///< grid max of ‖P₀ − P_{ε sin(1/x)}‖ = e(p₀, p_ε)
  double c_value;        ///< grid max of ‖p − p·p_ε°‖; 1 for every ε > 0
  double compose_bound;  ///< c(p,p₀) + e(p₀,p_ε): the c∘e witness through p₀
  double sin_bound;      ///< |sin ε|, the exact continuum value of e
  bool resolution_warning;  ///< grid max fell short of |sin ε| − 2π/m
};

/// Evaluates the family at each amplitude on an m-point grid (m ≥ 100).
/// Asserts c = 1 for ε > 0, c = 0 for ε = 0, and e ≤ |sin ε| + 2π/m;
/// failures throw Error("regression").
std::vector<WiggleRow> wiggle_demo(const std::vector<double>& epsilons, int m);

/// Best approximation of the constant-P field from the subalgebra
/// {f : f(0) ∈ C·Q}: returns the sampled infimum of d(p, a), which equals
/// ‖P − Q‖ (witness: the constant-Q field; no member does better since
/// a(0) = λQ forces d ≥ ‖P(1 − λQ)‖ ≥ ‖P Q⊥‖).  Asserts agreement with
/// ‖P − Q‖ within 5e−2.
double point_constrained_demo(const Projection& P, const Projection& Q,
                              int m, int samples = 32, uint64_t seed = 0);

/// Truncated open-projection field: modes k = 1..n_modes with thresholds
/// r_k = 1/(k+1), p(x) = sum of E_k over {k : x > r_k}, the rank-one Q
/// projecting onto the normalized vector with weights 2^{−k}, and the
/// ramps f_n(x) = min(nx, 1).
struct BoundedOpenTable {
  int n_modes;
  int grid_points;
  std::vector<double> d_values;  ///< d(p, aₙ) for aₙ = Q⊥ + fₙQ, n = 1..n_modes
};

/// Computes the table and asserts the sequence is non-increasing
/// (Error("regression") otherwise); it tends to 0 as n grows.
BoundedOpenTable boundedopen_truncation_demo(int n_modes, int m);

/// Closed-form ‖p(x)·v̂‖ for the truncation: the active-weight mass
/// sqrt(Σ_{k: r_k < x} 4^{−k} / Σ_{k=1..N} 4^{−k}).  Oracle for the table.
double truncation_weight_norm(int n_modes, double x);

/// Two generator families fₙ·p and fₙ·q with p(0) = q(0) but p(x) ≠ q(x)
/// for x > 0, where fₙ = 1 on [0, 4⁻ⁿ], ramps to 0 by 2·4⁻ⁿ.  The
/// families are far apart element-wise, yet induce the same closure
/// membership gauge a ↦ inf_n d(fₙ·p, a).
struct NonuniquenessReport {
  double generator_gap;  ///< Hausdorff e-distance between the generator sets
  double closure_gap;    ///< max over probe fields of the gauge disagreement
};

NonuniquenessReport nonuniqueness_demo(int m, int n_funcs, int probes = 16,
                                       uint64_t seed = 0);

}  // namespace opalg
