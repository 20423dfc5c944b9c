/// The four operator quantities e, d, h, f: closed-form values on rank-one
/// projector pairs, asymmetry and degeneracy behavior, inequality spot
/// checks, slice plumbing, and empirical modulus curves.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "opalg/distances.hpp"
#include "opalg/rng.hpp"
#include "opalg/sampling.hpp"

using namespace opalg;

namespace {

/// Rank-one projector onto (sin t, cos t).
Mat ptheta(double t) {
  const double s = std::sin(t), c = std::cos(t);
  return Mat::from_parts(2, {s * s, s * c, s * c, c * c}, {});
}

}  // namespace

TEST_CASE("closed forms on rank-one projector pairs") {
  // For p = P_a, q = P_b with D = a - b:
  //   e = |sin D|, d = |sin D|, h = |sin D|, f = sin^2 D.
  for (double a : {0.1, 0.7, 1.2})
    for (double db : {0.05, 0.4, 1.0}) {
      const Mat p = ptheta(a), q = ptheta(a - db);
      const double sd = std::abs(std::sin(db));
      CHECK(dist_e(p, q) == doctest::Approx(sd).epsilon(1e-10));
      CHECK(dist_d(p, q) == doctest::Approx(sd).epsilon(1e-10));
      CHECK(dist_h(p, q) == doctest::Approx(sd).epsilon(1e-10));
      CHECK(dist_f(PosContraction(p), PosContraction(q)) ==
            doctest::Approx(sd * sd).epsilon(1e-10));
    }
}

TEST_CASE("degeneracy and asymmetry") {
  const Mat p = Mat::from_parts(2, {1, 0, 0, 0}, {});
  const Mat one = Mat::identity(2);
  // p is dominated by 1 exactly, but 1 is nowhere near dominated by p.
  CHECK(dist_d(p, one) == 0.0);
  CHECK(dist_d(one, p) == doctest::Approx(1.0));
  CHECK(dist_h(p, one) == 0.0);
  CHECK(dist_h(one, p) == doctest::Approx(1.0));
  // e stays symmetric.
  CHECK(dist_e(p, one) == dist_e(one, p));

  // d(a, b) = 0 exactly when a = ab (commuting diagonal example).
  const Mat a = Mat::from_parts(2, {0.7, 0, 0, 0}, {});
  const Mat b = Mat::from_parts(2, {1, 0, 0, 0.2}, {});
  CHECK(dist_d(a, b) == 0.0);

  // h vanishes exactly on the PSD order.
  CHECK(dist_h(Mat::from_parts(2, {0.3, 0, 0, 0.4}, {}),
               Mat::from_parts(2, {0.3, 0, 0, 0.9}, {})) == 0.0);
}

TEST_CASE("h reads off the positive part") {
  Rng rng(41, fnv1a64("test/h"));
  for (int t = 0; t < 25; ++t) {
    const Mat a = random_herm_contraction(rng, 5);
    const Mat b = random_herm_contraction(rng, 5);
    CHECK(dist_h(a, b) == doctest::Approx(pos_part_norm(a - b)).epsilon(1e-12));
  }
}

TEST_CASE("f through the square-root compression") {
  Rng rng(42, fnv1a64("test/f"));
  for (int t = 0; t < 25; ++t) {
    const PosContraction a = random_pos_contraction(rng, 4);
    const PosContraction b = random_pos_contraction(rng, 4);
    const Mat direct =
        (a.sqrt() * b.complement() * a.sqrt()).hermitized();
    CHECK(dist_f(a, b) == doctest::Approx(herm_norm(direct)).epsilon(1e-11));
  }
}

TEST_CASE("inequality spot checks") {
  Rng rng(43, fnv1a64("test/ineq"));
  for (int t = 0; t < 100; ++t) {
    const PosContraction a = random_pos_contraction(rng, 4);
    const PosContraction b = random_pos_contraction(rng, 4);
    const PosContraction c = random_pos_contraction(rng, 4);
    const double dab = dist_d(a, b);
    // Non-symmetric triangle law and its two e-mixed variants.
    CHECK(dab <= dist_d(a, c) + dist_d(c, b) + 1e-9);
    CHECK(dab <= dist_e(a, c) + dist_d(c, b) + 1e-9);
    CHECK(dab <= dist_d(a, c) + dist_e(c, b) + 1e-9);
    // Order/quantity comparisons.
    CHECK(dist_h(a, b) <= dist_e(a, b) + 1e-9);
    CHECK(dist_h(a, b) <= 2.0 * dab + 1e-9);
    CHECK(dist_f(a, b) <= dist_f(a, c) + dist_h(c, b) + 1e-9);
    // |a b'|^2 <= |a^2 b'|.
    const Mat bp = b.complement();
    CHECK(dab * dab <= op_norm((a.mat() * a.mat()) * bp) + 1e-9);
  }
}

TEST_CASE("slices freeze one argument") {
  Rng rng(44, fnv1a64("test/slice"));
  const PosContraction a = random_pos_contraction(rng, 3);
  const auto dl = slice("d", a, SliceSide::left);
  const auto dr = slice("d", a, SliceSide::right);
  const auto hl = slice("h", a, SliceSide::left);
  const auto el = slice("e", a, SliceSide::left);
  const auto fl = slice("f", a, SliceSide::left);
  for (int t = 0; t < 1000; ++t) {
    const PosContraction x = random_pos_contraction(rng, 3);
    CHECK(dl(x) == dist_d(a, x));
    CHECK(dr(x) == dist_d(x, a));
    CHECK(hl(x) == dist_h(a, x));
    CHECK(el(x) == dist_e(a, x));
    CHECK(fl(x) == dist_f(a, x));
  }
  CHECK_THROWS_AS(slice("q", a, SliceSide::left), Error);
}

TEST_CASE("modulus curves certify uniform equivalences") {
  const auto radii = default_radius_grid();
  REQUIRE(radii.size() == 10);
  CHECK(radii.front() == doctest::Approx(0.5));
  CHECK(radii.back() == doctest::Approx(1.0 / 1024.0));
  for (size_t i = 1; i < radii.size(); ++i) CHECK(radii[i] < radii[i - 1]);

  Rng rng(45, fnv1a64("test/modulus"));
  const PosContraction base = random_pos_contraction(rng, 4);
  std::vector<PosContraction> samples;
  for (int k = 0; k < 300; ++k) {
    const PosContraction x = random_pos_contraction(rng, 4);
    if (k % 2 == 0) {
      samples.push_back(x);
    } else {
      const double tmix = std::pow(2.0, -(double)(k % 20) / 2.0);
      samples.push_back(PosContraction(
          ((1.0 - tmix) * base.mat() + tmix * x.mat()).hermitized()));
    }
  }

  // h(a, x) <= 2 d(a, x): the h-slice is uniformly controlled by the
  // d-slice with modulus O(r) = 2r.
  const ModulusCurve hd = modulus_estimate(slice("h", base, SliceSide::left),
                                           slice("d", base, SliceSide::left),
                                           samples);
  for (size_t i = 0; i < hd.radii.size(); ++i)
    CHECK(hd.sup_values[i] <= 2.0 * hd.radii[i] + 1e-9);

  // d(a, x)^2 <= d(a^2, x): modulus O(r) = sqrt(r) against the squared base.
  const PosContraction base_sq((base.mat() * base.mat()).hermitized());
  const ModulusCurve dd = modulus_estimate(
      slice("d", base, SliceSide::left),
      slice("d", base_sq, SliceSide::left), samples);
  for (size_t i = 0; i < dd.radii.size(); ++i)
    CHECK(dd.sup_values[i] <= std::sqrt(dd.radii[i]) + 1e-9);

  CHECK_THROWS_AS(modulus_estimate(slice("d", base, SliceSide::left),
                                   slice("d", base, SliceSide::left), {}),
                  Error);
  CHECK_THROWS_AS(ModulusCurve({0.5, 0.5}, {0, 0}), Error);
  CHECK_THROWS_AS(ModulusCurve({0.5}, {0, 0}), Error);
}
