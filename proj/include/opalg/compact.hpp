/**
 * @file  compact.hpp
 * @brief Projections, their upper sets, and interpolation strictly above.
 *
 * A projection p is determined by its upper set ↑p = {a ∈ A¹₊ : p ≤ a}:
 * the distances between projections can be recovered from sup/inf formulas
 * over upper sets, products are bounded below by ‖pq‖ across ↑p × ↑q, and
 * any positive contraction close to ↑p in the d-distance can be moved a
 * short norm distance onto an element that dominates p outright.  This
 * module realises those statements constructively for matrix algebras and
 * checks them by deterministic sampling.
 *
 * Exactness hinge: if a is a positive contraction with p ≤ a then pa = p
 * (compress 1 − a ≤ p⊥ by p), so d(a, ·) and ‖a · ‖ bounds below by the
 * corresponding p-quantities are identities, not approximations.  The
 * sampled sup/inf checks therefore close to 1e−9, not to a sampling rate.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/order_optim.hpp"
#include "opalg/rng.hpp"

namespace opalg {

/// Deterministic sampler for the upper set ↑p = {a ∈ A¹₊ : p ≤ a}.
///
/// Members are built as a = p + V diag(t) V* with V a random orthonormal
/// basis of range(p⊥) and t uniform in [0,1], so p ≤ a ≤ 1 holds by
/// construction (never by rejection).  Draw k is a pure function of
/// (seed, k) and is independent of every other draw.
class UpperSetSampler {
 public:
  UpperSetSampler(Projection base, int count, uint64_t seed);

  const Projection& base() const { return base_; }
  int count() const { return count_; }

  /// The k-th member of the stream, 0 <= k < count().
  PosContraction at(int k) const;
  /// All `count` members plus the base projection itself (first entry).
  std::vector<PosContraction> members_with_base() const;

 private:
  Projection base_;
  int count_;
  uint64_t seed_;
  Mat kernel_basis_;  // n x m, orthonormal columns spanning range(p⊥)
};

/// Whether p is an infimum of its ambient-constrained upper set.
///
/// In any matrix model (full / diagonal / block) that contains p the
/// answer is immediately true, since p itself witnesses the infimum.
/// A sampled infimum of d(p, a) over ambient positive contractions is
/// still computed and compared against `tol` as a cross-check.
/// Errors: "ambient_not_samplable" for function-field descriptions,
/// "p_not_in_ambient" when p fails the membership mask.
bool is_compact(const Projection& p, const SubalgebraSpec& ambient,
                int samples = 64, uint64_t seed = 0, double tol = 1e-6);

/// Result of the sup-inf recovery of d from upper sets.
struct SupInfResult {
  double lhs;  ///< d(p, q) = ‖p q⊥‖ directly
  double rhs;  ///< sup over sampled b ∈ ↑q ∪ {q} of inf over a ∈ ↑p ∪ {p} of d(a, b)
};

/// d(p, q) = sup_{b ≥ q} inf_{a ≥ p} d(a, b), attained at a = p, b = q.
/// The two sides agree to 1e−9 whenever the base points are included,
/// which members_with_base() guarantees.
SupInfResult supinf_check(const Projection& p, const Projection& q,
                          int sampler_counts, uint64_t seed = 0);

/// Result of the product lower bound over ↑p × ↑q.
struct ProductInfResult {
  double lhs;        ///< ‖p q‖
  double min_found;  ///< min over sampled (a, b) of ‖a b‖ (pair (p,q) included)
  int violations;    ///< sampled pairs with ‖ab‖ < lhs − 1e−9 (expect 0)
};

/// inf over (a, b) ∈ ↑p × ↑q of ‖ab‖ equals ‖pq‖: every sampled product
/// obeys ‖ab‖ ≥ ‖p(ab)q‖ = ‖pq‖ exactly, and the pair (p, q) attains it.
ProductInfResult product_inf_check(const Projection& p, const Projection& q,
                                   int sampler_counts, uint64_t seed = 0);

/// Sampled evaluation of the four equivalent boundedness conditions of a
/// positive contraction a over a subalgebra B with headroom r > 1:
///   (1) some b ∈ B with ‖b‖ ≤ r dominates a;
///   (2) inf over Hermitian b ∈ B of h(a, b) vanishes;
///   (3) inf over positive contractions b ∈ B of d(a, b) vanishes;
///   (4) inf over all b ∈ B of d(a, b) vanishes.
/// The four sampled values stand or fall together (tolerance 5e−2).
struct BoundedEqvsReport {
  double dominate_h;   ///< (1) best h(a, b) over candidates b ∈ B, ‖b‖ ≤ r
  double inf_h_sa;     ///< (2) sampled infimum of h over Hermitian members
  double inf_d_unit;   ///< (3) sampled infimum of d over positive contractions
  double inf_d_all;    ///< (4) sampled infimum of d over plain members
  bool agree;          ///< all four on the same side of the 5e−2 threshold
};

BoundedEqvsReport bounded_eqvs_check(const PosContraction& a,
                                     const SubalgebraSpec& B, double r,
                                     int samples, uint64_t seed = 0);

/// Moves a onto an element dominating p without travelling far.
///
/// Precondition: d(p, a) < delta(epsilon) with delta(e) = (e/4)², the
/// modulus coming from the 2√h approximant bound.  Returns b ∈ A¹₊ with
/// ‖a − b‖ < epsilon and d(p, b) ≤ 1e−6.
///
/// Commuting inputs take the scalar-calculus shortcut b = f(a) with
/// f(x) = min(1, x / (1 − r)) at r = d(p, a), which yields the sharp
/// movement ‖a − b‖ = d(p, a).  The general path runs the geometric
/// recursion: u = p ⊕ supp(p⊥ a p⊥) dominates a up to round-off and
/// satisfies pu = p exactly; c = clip(p⊥(u − a)p⊥) lies under p⊥; the
/// interval solver finds d ≤ c nearest u − a; and b = (u − d)₊ keeps the
/// p-block of u untouched, so d(p, b) collapses in one round.  Budgets
/// epsilon/2ⁿ over at most 30 rounds cap the total movement at epsilon.
///
/// Errors: "precondition" (with the measured d(p, a)) when the input is
/// too far from ↑p; "no_convergence" if the rounds exhaust their budget.
PosContraction interpolate_above(const Projection& p, const PosContraction& a,
                                 double epsilon);

/// Interior-containment gauge c(p, q) = ‖p − p q°‖ on the discrete
/// commutative model {0,1}ⁿ, where every projection is open and closed
/// (q° = q):  c(p, q) = 0 when p ≤ q and 1 otherwise.
double interior_and_c(const std::vector<int>& p_mask,
                      const std::vector<int>& q_mask);

/// Matrix overload: accepted only when both projections are diagonal 0/1
/// matrices (off-diagonal mass ≤ 1e−12); anything genuinely
/// non-commutative belongs to the function-field gallery and is rejected
/// with Error("non_commutative").
double interior_and_c(const Projection& p, const Projection& q);

/// The same gauge as a sup-inf over up-sets, restricted to a finite grid
/// of diagonal contractions: inf over a ≥ p of sup over b ≥ q of d(a, b).
/// Used to cross-check interior_and_c exhaustively for n ≤ 3.
double interior_c_via_upsets(const std::vector<int>& p_mask,
                             const std::vector<int>& q_mask,
                             int levels_per_entry = 3);

/// Result of recovering d(p, q) from one-sided infima over ↑p.
struct InfSupResult {
  double via_d;  ///< inf over sampled a ∈ ↑p ∪ {p} of d(a, q)
  double via_h;  ///< inf over sampled a ∈ ↑p ∪ {p} of h(a, q)
};

/// Both infima equal d(p, q) within 1e−9: attained at a = p (where d and
/// h coincide on projections) and bounded below pointwise, since pa = p
/// gives d(a,q) ≥ ‖p q⊥‖ and λmax-monotonicity gives h(a,q) ≥ h(p,q).
InfSupResult infsup_d_equals_h(const Projection& p, const Projection& q,
                               int samples, uint64_t seed = 0);

/// Self-adjoint unitary exchanging p and q: u = a|a|⁻¹ with a = p + q − 1,
/// so a² = 1 − (p − q)² is invertible exactly when ‖p − q‖ < 1.
/// Postconditions (checked by callers/tests): u = u*, ‖u² − 1‖ ≤ 1e−9,
/// ‖up − qu‖ ≤ 1e−9.  Errors: "ill_conditioned" when ‖p−q‖ ≥ 1 − 1e−9.
Mat symmetry_exchange(const Projection& p, const Projection& q);

/// All four distances between two projections, plus the norm identity.
struct ProjectionDistanceReport {
  double d;               ///< ‖p q⊥‖
  double h;               ///< ‖(p − q)₊‖
  double p_val;           ///< inf over 0 ≤ c ≤ q of ‖p − c‖
  double n_val;           ///< inf over p ≤ c ≤ 1 of ‖c − q‖
  double norm_pq;         ///< ‖p − q‖
  double max_pairwise_gap;  ///< max |x − y| over the four values above
  bool h_matches_norm;    ///< h = ‖p−q‖ within 1e−9 (only claimed when ‖p−q‖ < 1)
};

/// On projections the four distances coincide (within the solver
/// tolerance 2e−3 for p and n), and h(p, q) = ‖p − q‖ whenever that norm
/// is < 1.
ProjectionDistanceReport projection_distance_suite(const Projection& p,
                                                   const Projection& q);

}  // namespace opalg
