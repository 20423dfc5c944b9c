/**
 * @file  order_optim.hpp
 * @brief Convex optimization over PSD order intervals.
 *
 * Implements the two order quantifications
 *
 *   p(a,b) = inf { ‖a − c‖ : 0 ≤ c ≤ b }   (nearest dominated element)
 *   n(a,b) = inf { ‖c − b‖ : a ≤ c ≤ 1 }   (nearest dominating element)
 *
 * by bisection over the ball radius combined with alternating spectral
 * projections onto the three convex constraint sets, plus the explicit
 * closed-form approximants c = u*u that certify the 2√h upper bound.
 *
 * All reported values are achieved norms of certified witnesses, bracketed
 * below by the h-distance (h ≤ p and h ≤ n hold unconditionally), so the
 * solver can never claim a value better than the true infimum.
 */
#pragma once

#include "opalg/algebra.hpp"

namespace opalg {

/// Feasibility region {c : lower ≤ c ≤ upper} with the ball center whose
/// distance is being minimized.  Construction validates lower ≤ upper.
struct IntervalProblem {
    Mat target;           ///< ball center (a for p-problems, b for n-problems)
    Mat lower;            ///< PSD-order lower bound
    Mat upper;            ///< PSD-order upper bound
    double tol;           ///< feasibility slack per bisection probe
    int max_iters;        ///< alternating-projection cycles per probe

    IntervalProblem(Mat target_in, Mat lower_in, Mat upper_in,
                    double tol_in = 1e-7, int max_iters_in = 500);
};

/// Solver outcome.  `value` is always the exactly-evaluated ‖target − witness‖
/// of a witness whose interval violation is ≤ 1e−8; `lower_bound` ≤ true
/// infimum ≤ `value`.  When `converged` is false the value is an upper bound
/// only (bracket failed to close within the iteration budget).
struct SolveResult {
    double value;
    Mat witness;
    double lower_bound;
    bool converged;
};

/// Generic driver: minimize ‖target − c‖ over the order interval.
/// `warm_starts` are candidate witnesses tried (after polishing) before and
/// during bisection; `lower_bound` must be a valid lower bound for the
/// infimum (pass 0 when none is known).
SolveResult solve_interval(const IntervalProblem& prob,
                           const std::vector<Mat>& warm_starts,
                           double lower_bound);

/// p(a,b) = inf over 0 ≤ c ≤ b of ‖a − c‖; b any PSD matrix.
SolveResult solve_p(const PosContraction& a, const Mat& b);

/// General-target overload: a any Hermitian matrix (the h ≤ p bracket
/// needs no contraction hypothesis).
SolveResult solve_p(const Mat& a, const Mat& b);

/// n(a,b) = inf over a ≤ c ≤ 1 of ‖c − b‖.
SolveResult solve_n(const PosContraction& a, const PosContraction& b);

/// Closed-form approximant result; `stable` reports whether the two
/// regularization levels agreed within 1e−4 (Richardson-style check).
struct ApproximantResult {
    Mat c;
    bool stable;
    double eps_disagreement;
};

/// c = u*u with u = √a (ε + z)^(−1/2) √b, z = b + (a−b)₊.  Guarantees
/// 0 ≤ c ≤ b up to regularization error and ‖a − c‖ ≤ 2√h(a,b) + 1e−6.
ApproximantResult dominated_approximant(const PosContraction& a, const PosContraction& b);

/// c with a ≤ c ≤ 1 and ‖c − b‖ ≤ 2√h(a,b) + 1e−6, obtained as the
/// complement of the dominated approximant of (b⊥, a⊥).
ApproximantResult dominating_approximant(const PosContraction& a, const PosContraction& b);

/// Project a Hermitian matrix onto {c : lower ≤ c ≤ upper} by alternating
/// spectral clips until both one-sided violations are ≤ tol (or iters run
/// out); the fixed points are exactly the interval members.
Mat interval_polish(const Mat& c, const Mat& lower, const Mat& upper,
                    double tol = 1e-9, int max_iters = 200);

/// max(‖(lower−c)₊‖, ‖(c−upper)₊‖): one-sided PSD-order violation.
double interval_violation(const Mat& c, const Mat& lower, const Mat& upper);

}  // namespace opalg
