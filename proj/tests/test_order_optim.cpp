/// Order-interval optimization: commuting closed-form oracles, the 2x2
/// triangle-violation instance, duality between the two problems, and the
/// certified closed-form approximants.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "opalg/distances.hpp"
#include "opalg/order_optim.hpp"
#include "opalg/rng.hpp"
#include "opalg/sampling.hpp"

using namespace opalg;

namespace {

Mat diag2(double a, double d) { return Mat::from_parts(2, {a, 0, 0, d}, {}); }

}  // namespace

TEST_CASE("commuting p-oracle: clamp coordinatewise") {
  // For commuting diagonals the dominated set factorizes per eigenvalue:
  // p(a, b) = max_i max(a_i - b_i, 0).
  const PosContraction a(diag2(0.8, 0.2));
  const SolveResult r = solve_p(a, diag2(0.5, 0.5));
  CHECK(r.value == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.converged);
  CHECK(r.lower_bound <= r.value + 1e-12);
  CHECK(interval_violation(r.witness, Mat::zero(2), diag2(0.5, 0.5)) <= 1e-8);

  // Dominated target: the infimum collapses to zero at c = a.
  CHECK(solve_p(PosContraction(diag2(0.2, 0.1)), diag2(0.5, 0.5)).value <=
        1e-9);
}

TEST_CASE("commuting n-oracle: clamp into [a, 1]") {
  const PosContraction a(diag2(0.8, 0.2));
  const PosContraction b(diag2(0.5, 0.5));
  const SolveResult r = solve_n(a, b);
  CHECK(r.value == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(interval_violation(r.witness, a.mat(), Mat::identity(2)) <= 1e-8);
}

TEST_CASE("p against the identity target") {
  // 1 - c >= 1 - b forces |1 - c| >= 1 - min-eigenvalue(b), attained at b.
  const SolveResult r = solve_p(Mat::identity(2), diag2(0.5, 0.3));
  CHECK(r.value == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("2x2 instance where the p-triangle fails") {
  const Mat a = Mat::from_parts(2, {1, 1, 1, 1}, {});
  const Mat b = diag2(4, 0);
  const Mat c = a + pos_part(b - a);

  const double pab = solve_p(a, b).value;
  const double pac = solve_p(a, c).value;
  const double pcb = solve_p(c, b).value;

  // |a - t b| has eigenvalues 1 - 2t ± sqrt(4t² + 1); the minimum over the
  // dominated segment {t b} sits at t = 1/2 with value sqrt(2).
  CHECK(pab == doctest::Approx(std::sqrt(2.0)).epsilon(1e-3));
  CHECK(herm_norm(a - 0.5 * b) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  // a <= c makes the first leg free, and the second leg is the h-value.
  CHECK(pac <= 1e-9);
  CHECK(pcb == doctest::Approx(std::sqrt(5.0) - 1.0).epsilon(1e-9));

  CHECK(pab - pac - pcb >= 0.17);
}

TEST_CASE("solver values are bracketed by h") {
  Rng rng(51, fnv1a64("test/bracket"));
  for (int t = 0; t < 10; ++t) {
    const PosContraction a = random_pos_contraction(rng, 3);
    const PosContraction b = random_pos_contraction(rng, 3);
    const SolveResult rp = solve_p(a, b.mat());
    CHECK(rp.value >= dist_h(a, b) - 1e-12);
    const SolveResult rn = solve_n(a, b);
    CHECK(rn.value >= dist_h(a, b) - 1e-12);
  }
}

TEST_CASE("duality: n(a,b) = p(b', a')") {
  Rng rng(52, fnv1a64("test/duality"));
  for (int t = 0; t < 8; ++t) {
    const int n = 2 + t % 3;
    const PosContraction a = random_pos_contraction(rng, n);
    const PosContraction b = random_pos_contraction(rng, n);
    const double nv = solve_n(a, b).value;
    const double pv = solve_p(complement(b.mat()), complement(a.mat())).value;
    CHECK(std::abs(nv - pv) <= 2e-3);
  }
}

TEST_CASE("solve_p rejects non-PSD upper bounds") {
  CHECK_THROWS_AS(solve_p(diag2(0.5, 0.5), diag2(1, -0.5)), Error);
  try {
    solve_p(diag2(0.5, 0.5), diag2(1, -0.5));
  } catch (const Error& e) {
    CHECK(e.code() == "not_psd");
  }
  // Non-Hermitian targets are rejected by the spectral validator.
  CHECK_THROWS_AS(solve_p(Mat::from_parts(2, {0, 1, 0, 0}, {}), diag2(1, 1)),
                  Error);
}

TEST_CASE("dominated approximant: commuting closed form") {
  // Commuting inputs give c -> min(a, b) as the regularization vanishes.
  const PosContraction a(diag2(0.9, 0.3));
  const PosContraction b(diag2(0.4, 0.6));
  const ApproximantResult r = dominated_approximant(a, b);
  CHECK(max_abs_diff(r.c, diag2(0.4, 0.3)) < 1e-5);
  CHECK(r.stable);
  CHECK(r.eps_disagreement <= 1e-4);

  // Contract: 0 <= c <= b + tiny and |a - c| <= 2 sqrt(h) + tiny.
  CHECK(herm_eig(r.c).min_value() >= -1e-7);
  CHECK(pos_part_norm(r.c - b.mat()) <= 1e-7);
  const double h = dist_h(a, b);
  CHECK(herm_norm((a.mat() - r.c).hermitized()) <=
        2.0 * std::sqrt(h) + 1e-6);
}

TEST_CASE("dominated approximant: a <= b returns a") {
  const PosContraction a(diag2(0.2, 0.1));
  const PosContraction b(diag2(0.5, 0.5));
  const ApproximantResult r = dominated_approximant(a, b);
  CHECK(herm_norm((a.mat() - r.c).hermitized()) <= 1e-6);
}

TEST_CASE("dominating approximant: commuting closed form") {
  const PosContraction a(diag2(0.9, 0.3));
  const PosContraction b(diag2(0.4, 0.6));
  const ApproximantResult r = dominating_approximant(a, b);
  CHECK(max_abs_diff(r.c, diag2(0.9, 0.6)) < 1e-5);  // max(a, b)
  CHECK(pos_part_norm(a.mat() - r.c) <= 1e-7);
  CHECK(pos_part_norm(r.c - Mat::identity(2)) <= 1e-7);
  CHECK(herm_norm((r.c - b.mat()).hermitized()) <=
        2.0 * std::sqrt(dist_h(a, b)) + 1e-6);
}

TEST_CASE("approximant bounds on random pairs") {
  Rng rng(53, fnv1a64("test/approx"));
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 4;
    const PosContraction a = random_pos_contraction(rng, n);
    const PosContraction b = random_pos_contraction(rng, n);
    const double cap = 2.0 * std::sqrt(dist_h(a, b)) + 1e-6;
    const ApproximantResult dn = dominated_approximant(a, b);
    CHECK(herm_eig(dn.c).min_value() >= -1e-7);
    CHECK(pos_part_norm(dn.c - b.mat()) <= 1e-7);
    CHECK(herm_norm((a.mat() - dn.c).hermitized()) <= cap);
    const ApproximantResult up = dominating_approximant(a, b);
    CHECK(pos_part_norm(a.mat() - up.c) <= 1e-7);
    CHECK(pos_part_norm(up.c - Mat::identity(n)) <= 1e-7);
    CHECK(herm_norm((up.c - b.mat()).hermitized()) <= cap);
  }
}

TEST_CASE("interval polish and violation") {
  CHECK(interval_violation(diag2(0.5, 0.5), Mat::zero(2), Mat::identity(2)) ==
        0.0);
  CHECK(interval_violation(diag2(1.5, 0.5), Mat::zero(2), Mat::identity(2)) ==
        doctest::Approx(0.5));
  CHECK(interval_violation(diag2(-0.25, 0.5), Mat::zero(2),
                           Mat::identity(2)) == doctest::Approx(0.25));

  Rng rng(54, fnv1a64("test/polish"));
  for (int t = 0; t < 10; ++t) {
    const PosContraction b = random_pos_contraction(rng, 4);
    const Mat c = random_herm_contraction(rng, 4);
    const Mat polished = interval_polish(c, Mat::zero(4), b.mat());
    CHECK(interval_violation(polished, Mat::zero(4), b.mat()) <= 1e-8);
    // Members are fixed points.
    const Mat member = 0.5 * b.mat();
    CHECK(max_abs_diff(interval_polish(member, Mat::zero(4), b.mat()), member) <=
          1e-9);
  }
}

TEST_CASE("interval problems validate their bounds") {
  CHECK_THROWS_AS(
      IntervalProblem(diag2(0, 0), diag2(1, 1), diag2(0.5, 0.5)), Error);
}
