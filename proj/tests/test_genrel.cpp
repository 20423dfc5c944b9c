/// Generalized relations (min-plus kernels), order/filter predicates with a
/// classical exhaustive oracle, norm-filter membership words, and the exact
/// Boolean-lattice model.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "opalg/genrel.hpp"
#include "opalg/rng.hpp"
#include "opalg/sampling.hpp"

using namespace opalg;

namespace {

std::vector<std::string> labels(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

GenRelation random_kernel(Rng& rng, int n, double scale) {
  GenRelation d{labels(n), std::vector<double>((size_t)n * n, 0.0)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.at(i, j) = rng.uniform(0.0, scale);
  return d;
}

/// Classical filters of the Boolean lattice 2^[n] under inclusion: the empty
/// family plus the principal up-sets.  Everything else fails either
/// upward closure or directedness.
bool classical_boolean_filter(int n, const std::vector<int>& y) {
  if (y.empty()) return true;
  uint32_t meet = 0xFFFFFFFFu;
  for (int m : y) meet &= (uint32_t)m;
  // Must contain its meet and be exactly the up-set of it.
  bool has_meet = false;
  for (int m : y) has_meet = has_meet || (uint32_t)m == meet;
  if (!has_meet) return false;
  size_t up_size = 0;
  for (int m = 0; m < (1 << n); ++m)
    if (((uint32_t)m & meet) == meet) ++up_size;
  return y.size() == up_size;
}

}  // namespace

TEST_CASE("min-plus composition is associative with equality as identity") {
  Rng rng(61, fnv1a64("test/compose"));
  const GenRelation a = random_kernel(rng, 5, 2.0);
  const GenRelation b = random_kernel(rng, 5, 2.0);
  const GenRelation c = random_kernel(rng, 5, 2.0);
  const GenRelation left = compose(compose(a, b), c);
  const GenRelation right = compose(a, compose(b, c));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(left.at(i, j) == doctest::Approx(right.at(i, j)).epsilon(1e-12));

  const GenRelation id = GenRelation::equality(labels(5));
  const GenRelation ae = compose(a, id);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(ae.at(i, j) == a.at(i, j));
}

TEST_CASE("operator norms induce a distance kernel") {
  Rng rng(62, fnv1a64("test/isdist"));
  std::vector<Mat> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(random_herm_contraction(rng, 3));
  GenRelation d{labels(5), std::vector<double>(25, 0.0)};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      d.at(i, j) = herm_norm(pts[(size_t)i] - pts[(size_t)j]);
  CHECK(is_distance(d, 1e-9));

  // Break the triangle law and the check must fail.
  GenRelation bad = d;
  bad.at(0, 1) = 100.0;
  bad.at(0, 2) = 0.0;
  bad.at(2, 1) = 0.0;
  CHECK_FALSE(is_distance(bad, 1e-9));
}

TEST_CASE("zero sets and the tilde sandwich") {
  Rng rng(63, fnv1a64("test/tilde"));
  const GenRelation d = random_kernel(rng, 4, 1.0);
  const GenRelation e = random_kernel(rng, 4, 1.0);

  const GenRelation z = zero_set(d, 0.25);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(z.at(i, j) == (d.at(i, j) <= 0.25 ? 0.0 : std::numeric_limits<double>::infinity()));

  // With 1 in the grid: D∘E <= tilde(D,E) <= |D|∘E entrywise.
  const GenRelation lo = compose(d, e);
  const GenRelation hi = compose(zero_set(d, 0.0), e);
  const GenRelation mid = tilde_compose(d, e, {1.0, 4.0, 16.0, 256.0});
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(mid.at(i, j) >= lo.at(i, j) - 1e-12);
      CHECK(mid.at(i, j) <= hi.at(i, j) + 1e-12);
    }

  CHECK_THROWS_AS(tilde_compose(d, e, {}), Error);
  CHECK_THROWS_AS(tilde_compose(d, e, {-1.0}), Error);
}

TEST_CASE("filter predicate matches the classical oracle exhaustively") {
  // Boolean lattice on 2 atoms: 4 points, 16 subsets, indices == masks.
  const BooleanModel model(2);
  const GenRelation d = model.d_relation();
  REQUIRE(d.size() == 4);
  int filters = 0;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<int> y;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) y.push_back(i);
    const bool got = check_condition(d, y, Condition::filter);
    const bool want = classical_boolean_filter(2, y);
    CHECK(got == want);
    filters += got ? 1 : 0;
  }
  CHECK(filters == 5);  // empty family + 4 principal up-sets
}

TEST_CASE("condition predicates on a metric singleton") {
  // For |Y| <= 1 any distance kernel is trivially directed and closed in
  // the metric (symmetric) case.
  Rng rng(64, fnv1a64("test/metric"));
  std::vector<Mat> pts;
  for (int i = 0; i < 4; ++i) pts.push_back(random_herm_contraction(rng, 2));
  GenRelation d{labels(4), std::vector<double>(16, 0.0)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      d.at(i, j) = herm_norm(pts[(size_t)i] - pts[(size_t)j]);
  CHECK(check_condition(d, {2}, Condition::directed, 1e-9));
  CHECK(check_condition(d, {2}, Condition::closed, 1e-9));
  CHECK(check_condition(d, {2}, Condition::filter, 1e-9));
  CHECK(check_condition(d, {}, Condition::filter, 1e-9));
  CHECK_THROWS_AS(check_condition(d, {7}, Condition::filter), Error);
}

TEST_CASE("filter generation closes upward through meets") {
  const BooleanModel model(2);
  const GenRelation d = model.d_relation();
  const auto meet = poset_meet(zero_set(d, 0.0));
  // base {01} generates its principal up-set {01, 11}.
  const std::vector<int> f = generate_filter(d, meet, {1});
  CHECK(f == std::vector<int>{1, 3});
  // base {01, 10} pulls in the meet 00 and then everything above it.
  const std::vector<int> g = generate_filter(d, meet, {1, 2});
  CHECK(g == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("meets can be undefined off lattices") {
  // Bowtie order: a, b below c, d with no other relations; meet(c, d)
  // does not exist (two maximal lower bounds).
  const auto related = [](int i, int j) {
    if (i == j) return true;
    return (i <= 1) && (j >= 2);
  };
  const GenRelation leq =
      GenRelation::characteristic({"a", "b", "c", "d"}, related);
  const auto meet = poset_meet(leq);
  CHECK(!meet(2, 3).has_value());
  CHECK_THROWS_AS(generate_filter(leq, meet, {2, 3}), Error);
}

TEST_CASE("norm filter membership words") {
  Rng rng(65, fnv1a64("test/normfilter"));
  const Projection p = random_projection(rng, 4, 2);
  const Projection q(p.complement());

  const std::vector<PosContraction> elems = {PosContraction(p.mat()),
                                             PosContraction(q.mat())};
  // p * p-complement = 0, so p is recognized as a member of the filter
  // generated by p at word length one.
  const NormFilterResult in = norm_filter_test(elems, {0}, elems[0]);
  CHECK(in.status == Membership::member);
  CHECK(in.best_value <= 1e-6);
  CHECK(in.best_word == std::vector<int>{0});

  // Orthogonal target: every word p^k = p keeps ‖p q⊥‖ = ‖p p‖ = 1.
  const NormFilterResult out = norm_filter_test(elems, {0}, elems[1]);
  CHECK(out.status == Membership::unknown);
  CHECK(out.best_value >= 1.0 - 1e-9);

  CHECK_THROWS_AS(norm_filter_test(elems, {5}, elems[0]), Error);
}

TEST_CASE("centredness diagnostics") {
  Rng rng(66, fnv1a64("test/centred"));
  // Nested projections: q2 <= q1 makes {q1, q2} centred (joint d = 0 at q2).
  Mat q1m(3), q2m(3);
  q1m.at(0, 0) = 1;
  q1m.at(1, 1) = 1;
  q2m.at(0, 0) = 1;
  const std::vector<PosContraction> nested = {PosContraction(q1m),
                                              PosContraction(q2m)};
  const CentredReport cr = centred_equivalence(nested, {0, 1});
  CHECK(cr.joint_d <= 1e-12);
  CHECK(cr.centred(1e-9));
  CHECK(cr.min_product_norm >= 1.0 - 1e-9);
  CHECK(cr.telescoping_ok);
  CHECK(cr.chain_ok);

  // Orthogonal projections cannot be jointly approached: product norm 0.
  Mat r1(2), r2(2);
  r1.at(0, 0) = 1;
  r2.at(1, 1) = 1;
  const std::vector<PosContraction> ortho = {PosContraction(r1),
                                             PosContraction(r2)};
  const CentredReport co = centred_equivalence(ortho, {0, 1});
  CHECK(co.min_product_norm <= 1e-12);
  CHECK_FALSE(co.centred(1e-2));
  CHECK(co.telescoping_ok);
  CHECK(co.chain_ok);

  // Sphere validation: interior elements are rejected.
  CHECK_THROWS_AS(
      centred_equivalence({PosContraction(0.5 * Mat::identity(2))}, {0}),
      Error);
}

TEST_CASE("boolean model: predicate agreement and filter census") {
  for (int n : {2, 3, 4}) {
    const BooleanFilterReport rep = filter_eqvs_boolean(BooleanModel(n));
    CHECK(rep.subsets_checked == (1ull << (1 << n)));
    CHECK(rep.mismatch_count == 0);
    CHECK(rep.filter_count == (1ull << n) + 1);
    CHECK(rep.mismatches.empty());
    CHECK(rep.to_json().find("\"mismatch_count\":0") != std::string::npos);
  }
}

TEST_CASE("fast path agrees with the generic machinery at n = 3") {
  const BooleanModel model(3);
  const BooleanFilterReport rep = filter_eqvs_boolean(model);
  uint64_t slow_filters = 0;
  for (uint32_t mask = 0; mask < 256; ++mask)
    slow_filters += boolean_filter_via_genrel(model, mask) ? 1 : 0;
  CHECK(slow_filters == rep.filter_count);
}

TEST_CASE("maximal centred families are the maximal proper filters") {
  CHECK(maximal_centred_equals_maximal_filters(1));
  CHECK(maximal_centred_equals_maximal_filters(2));
  CHECK(maximal_centred_equals_maximal_filters(3));
}
