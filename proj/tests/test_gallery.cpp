// SPDX-License-Identifier: MIT
//
// Tests for the worked-example gallery: the 2x2 triangle-inequality
// failure, the wiggling-projection family, point-constrained
// approximation, the truncated open-projection table, and the
// generator-nonuniqueness probe.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/distances.hpp"
#include "opalg/gallery.hpp"

using namespace opalg;

namespace {

constexpr double kPi = 3.14159265358979323846;

Mat eye(int n) { return Mat::identity(n); }

}  // namespace

TEST_CASE("rank-one projector: closed form, idempotency, distance law") {
  // theta = 0 projects onto (0, 1).
  const Projection p0 = rank_one_projector(0.0);
  CHECK(p0.mat().at(0, 0).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p0.mat().at(1, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(p0.mat().at(0, 1)) < 1e-15);
  CHECK(p0.rank() == 1);

  for (double theta : {0.3, 1.0, 2.2, -0.7}) {
    const Projection pt = rank_one_projector(theta);
    CHECK(pt.rank() == 1);
    const Mat sq = pt.mat() * pt.mat();
    CHECK(max_abs_diff(sq, pt.mat()) < 1e-12);
    // || P_0 - P_theta || = |sin theta|
    CHECK(dist_e(p0.mat(), pt.mat()) ==
          doctest::Approx(std::abs(std::sin(theta))).epsilon(1e-12));
  }
}

TEST_CASE("grid operator field: construction and validation") {
  const std::vector<double> grid = GridOperatorField::uniform_grid(5);
  REQUIRE(grid.size() == 5);
  CHECK(grid.front() == doctest::Approx(0.0));
  CHECK(grid[1] == doctest::Approx(0.25));
  CHECK(grid.back() == doctest::Approx(1.0));

  const GridOperatorField f = GridOperatorField::from_function(
      5, 2, [](double x) { return x * Mat::identity(2); });
  CHECK(f.points() == 5);
  CHECK(f.dim() == 2);
  CHECK(f.value(2).at(0, 0).real() == doctest::Approx(0.5));

  // Fewer than two points is not a field on [0, 1].
  CHECK_THROWS_AS(GridOperatorField::uniform_grid(1), Error);
  CHECK_THROWS_AS(GridOperatorField::from_function(
                      1, 2, [](double) { return Mat::identity(2); }),
                  Error);
  // One matrix per grid point.
  CHECK_THROWS_AS(GridOperatorField({0.0, 1.0}, {eye(2)}), Error);
  // Values must share a dimension.
  CHECK_THROWS_AS(GridOperatorField({0.0, 1.0}, {eye(2), eye(3)}), Error);
  // The grid must be uniform on [0, 1].
  CHECK_THROWS_AS(GridOperatorField({0.0, 0.7}, {eye(2), eye(2)}), Error);
}

TEST_CASE("grid operator field: sup distances over the grid") {
  const Projection p = rank_one_projector(0.0);
  const Projection q = rank_one_projector(0.4);
  const auto const_field = [](const Mat& v) {
    return GridOperatorField::from_function(11, 2,
                                            [&](double) { return v; });
  };
  const GridOperatorField fp = const_field(p.mat());
  const GridOperatorField fq = const_field(q.mat());
  CHECK(field_dist_e(fp, fq) ==
        doctest::Approx(dist_e(p.mat(), q.mat())).epsilon(1e-12));
  CHECK(field_dist_d(fp, fq) ==
        doctest::Approx(dist_d(p.mat(), q.mat())).epsilon(1e-12));
  CHECK(field_dist_d(fp, fp) == doctest::Approx(0.0).epsilon(1e-12));

  const GridOperatorField f3 = GridOperatorField::from_function(
      11, 3, [](double) { return Mat::identity(3); });
  CHECK_THROWS_AS(field_dist_e(fp, f3), Error);
  CHECK_THROWS_AS(field_dist_d(fp, f3), Error);
}

TEST_CASE("2x2 counterexample report: pinned constants") {
  const M2Report r = m2_counterexample();
  const double root5 = std::sqrt(5.0);
  const double root2 = std::sqrt(2.0);

  CHECK(r.h == doctest::Approx(root5 - 1.0).epsilon(1e-9));
  CHECK(r.p == doctest::Approx(root2).epsilon(1e-3));
  CHECK(r.p_ac <= 1e-9);
  CHECK(r.p_cb == doctest::Approx(root5 - 1.0).epsilon(1e-9));
  CHECK(r.violation >= 0.17);
  CHECK(r.norm_at_half == doctest::Approx(root2).epsilon(1e-12));

  // The report matrices really are the advertised instance.
  CHECK(r.a.at(0, 0).real() == doctest::Approx(1.0));
  CHECK(r.a.at(0, 1).real() == doctest::Approx(1.0));
  CHECK(r.b.at(0, 0).real() == doctest::Approx(4.0));
  CHECK(std::abs(r.b.at(1, 1)) < 1e-15);
  // c = a + (b - a)_+ dominates both a and b.
  CHECK(psd_leq(r.a, r.c, 1e-9));
  CHECK(psd_leq(r.b, r.c, 1e-9));
  // And the violation is the excess of p over the broken two-leg path.
  CHECK(r.violation ==
        doctest::Approx(r.p - r.p_ac - r.p_cb).epsilon(1e-12));
}

TEST_CASE("wiggle family: boundary value, interior, validation") {
  const int m = 501;
  const WiggleFamily w = WiggleFamily::make(0.4, m);
  CHECK(w.epsilon == doctest::Approx(0.4));
  CHECK(w.field.points() == m);
  // The family is pinned to the identity at x = 0...
  CHECK(max_abs_diff(w.field.value(0), eye(2)) < 1e-12);
  // ...and equals P_{eps*sin(1/x)} at interior points.
  const double x1 = w.field.x(1);
  const Mat expect = rank_one_projector(0.4 * std::sin(1.0 / x1)).mat();
  CHECK(max_abs_diff(w.field.value(1), expect) < 1e-12);

  // Interior: drops to 0 at x = 0 for eps > 0.
  const GridOperatorField inner = w.interior();
  CHECK(herm_norm(inner.value(0)) < 1e-15);
  CHECK(max_abs_diff(inner.value(1), w.field.value(1)) < 1e-15);

  // For eps = 0 the family is constant P_0 and so is its interior.
  const WiggleFamily flat = WiggleFamily::make(0.0, m);
  const Mat p0 = rank_one_projector(0.0).mat();
  CHECK(max_abs_diff(flat.interior().value(0), p0) < 1e-12);
  CHECK(max_abs_diff(flat.field.value(m / 2), p0) < 1e-12);

  CHECK_THROWS_AS(WiggleFamily::make(-0.1, m), Error);
}

TEST_CASE("wiggle demo: interior gauge saturates while e stays small") {
  const int m = 10000;
  const std::vector<double> eps = {0.5, 0.1, 0.01};
  const std::vector<WiggleRow> rows = wiggle_demo(eps, m);
  REQUIRE(rows.size() == eps.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const WiggleRow& row = rows[i];
    CHECK(row.epsilon == doctest::Approx(eps[i]));
    // Nothing continuous sits below a wiggling line: the gauge pegs at 1.
    CHECK(row.c_value == doctest::Approx(1.0).epsilon(1e-12));
    // Yet the families converge in e as the amplitude shrinks.
    CHECK(row.e_value <= std::abs(std::sin(eps[i])) + 2.0 * kPi / m);
    CHECK(row.sin_bound == doctest::Approx(std::abs(std::sin(eps[i]))));
    CHECK(row.compose_bound >= row.e_value - 1e-12);
  }
  // Amplitude zero is the constant family: both values vanish.
  const std::vector<WiggleRow> zero = wiggle_demo({0.0}, 1000);
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].c_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(zero[0].e_value == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(wiggle_demo({0.1}, 99), Error);
}

TEST_CASE("point-constrained approximation equals the projector gap") {
  const Projection q = rank_one_projector(0.0);
  for (double theta : {0.0, kPi / 6.0, kPi / 2.0}) {
    const Projection p = rank_one_projector(theta);
    const double got = point_constrained_demo(p, q, 401);
    CHECK(got == doctest::Approx(std::abs(std::sin(theta))).epsilon(5e-2));
  }
  // Only rank-one 2x2 projections make sense in this model.
  CHECK_THROWS_AS(point_constrained_demo(Projection(eye(2)), q, 401), Error);
  CHECK_THROWS_AS(
      point_constrained_demo(Projection(eye(3)), Projection(eye(3)), 401),
      Error);
}

TEST_CASE("truncation weight norm: closed-form oracle values") {
  // x beyond every threshold 1/(k+1): all modes active, full mass.
  CHECK(truncation_weight_norm(4, 0.6) == doctest::Approx(1.0).epsilon(1e-12));
  // x below the finest threshold: no active mode.
  CHECK(truncation_weight_norm(4, 0.1) == doctest::Approx(0.0).epsilon(1e-15));
  // x = 0.4 activates modes k >= 2 only; weights 4^{-k}.
  CHECK(truncation_weight_norm(2, 0.4) ==
        doctest::Approx(std::sqrt((1.0 / 16.0) / (1.0 / 4.0 + 1.0 / 16.0)))
            .epsilon(1e-12));

  CHECK_THROWS_AS(truncation_weight_norm(0, 0.5), Error);
  CHECK_THROWS_AS(truncation_weight_norm(13, 0.5), Error);
}

TEST_CASE("truncated open projection: the ramp distances decay") {
  const int n_modes = 10;
  const int m = 2001;
  const BoundedOpenTable table = boundedopen_truncation_demo(n_modes, m);
  CHECK(table.n_modes == n_modes);
  CHECK(table.grid_points == m);
  REQUIRE(static_cast<int>(table.d_values.size()) == n_modes);
  for (size_t i = 1; i < table.d_values.size(); ++i)
    CHECK(table.d_values[i] <= table.d_values[i - 1] + 1e-12);
  CHECK(table.d_values.back() < 0.05);

  // Cross-check each entry against the closed form
  //   d(p, a_n) = max_x (1 - min(nx, 1)) * ||p(x) v_hat||.
  const std::vector<double> grid = GridOperatorField::uniform_grid(m);
  for (int n = 1; n <= n_modes; ++n) {
    double expect = 0.0;
    for (double x : grid) {
      const double ramp = 1.0 - std::min(n * x, 1.0);
      expect = std::max(expect, ramp * truncation_weight_norm(n_modes, x));
    }
    CHECK(table.d_values[static_cast<size_t>(n - 1)] ==
          doctest::Approx(expect).epsilon(1e-9));
  }

  CHECK_THROWS_AS(boundedopen_truncation_demo(0, m), Error);
  CHECK_THROWS_AS(boundedopen_truncation_demo(13, m), Error);
  CHECK_THROWS_AS(boundedopen_truncation_demo(4, 1), Error);
}

TEST_CASE("nonuniqueness: far-apart generators, identical closure gauge") {
  const NonuniquenessReport r = nonuniqueness_demo(200, 4);
  // The two generator families are genuinely far apart element-wise...
  CHECK(r.generator_gap > 0.3);
  // ...yet induce the same membership gauge up to grid resolution.
  CHECK(r.closure_gap <= 4.0 * kPi / 200.0 + 1e-9);
  CHECK(r.closure_gap >= 0.0);

  CHECK_THROWS_AS(nonuniqueness_demo(10, 4), Error);
  CHECK_THROWS_AS(nonuniqueness_demo(200, 0), Error);
  CHECK_THROWS_AS(nonuniqueness_demo(200, 9), Error);
}
