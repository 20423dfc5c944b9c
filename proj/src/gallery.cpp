/**
 * @file  gallery.cpp
 * @brief Grid-discretized counterexample fields and their pinned values.
 */
#include "opalg/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "opalg/distances.hpp"
#include "opalg/eig.hpp"
#include "opalg/order_optim.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void regression(const std::string& what, double got, double want,
                double tol) {
  if (std::abs(got - want) <= tol) return;
  std::ostringstream msg;
  msg << what << ": got " << got << ", pinned value " << want
      << " (tolerance " << tol << ")";
  throw Error("regression", msg.str());
}

}  // namespace

// ---------------------------------------------------------------------------
// GridOperatorField
// ---------------------------------------------------------------------------

GridOperatorField::GridOperatorField(std::vector<double> grid,
                                     std::vector<Mat> values,
                                     std::string constraint)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      constraint_(std::move(constraint)) {
  const size_t m = grid_.size();
  if (m < 2) throw Error("bad_grid", "need at least two grid points");
  if (values_.size() != m)
    throw Error("bad_grid", "one matrix per grid point required");
  for (size_t i = 0; i < m; ++i) {
    const double expected = static_cast<double>(i) / (m - 1);
    if (std::abs(grid_[i] - expected) > 1e-12)
      throw Error("bad_grid", "grid must be uniform on [0, 1]");
    if (values_[i].dim() != values_[0].dim())
      throw Error("bad_grid", "all values must share one dimension");
    PosContraction(values_[i], 1e-8);  // per-point admissibility check
  }
}

GridOperatorField GridOperatorField::from_function(
    int m, int dim, const std::function<Mat(double)>& f,
    std::string constraint) {
  require_valid_dim(dim, "field dimension");
  std::vector<double> grid = uniform_grid(m);
  std::vector<Mat> values;
  values.reserve(grid.size());
  for (double x : grid) values.push_back(f(x));
  return GridOperatorField(std::move(grid), std::move(values),
                           std::move(constraint));
}

std::vector<double> GridOperatorField::uniform_grid(int m) {
  if (m < 2) throw Error("bad_grid", "need at least two grid points");
  std::vector<double> grid(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    grid[static_cast<size_t>(i)] = static_cast<double>(i) / (m - 1);
  return grid;
}

int GridOperatorField::dim() const { return values_[0].dim(); }

double field_dist_e(const GridOperatorField& f, const GridOperatorField& g) {
  if (f.points() != g.points() || f.dim() != g.dim())
    throw Error("dim_mismatch", "fields live on different models");
  double m = 0.0;
  for (int i = 0; i < f.points(); ++i)
    m = std::max(m, dist_e(f.value(i), g.value(i)));
  return m;
}

double field_dist_d(const GridOperatorField& f, const GridOperatorField& g) {
  if (f.points() != g.points() || f.dim() != g.dim())
    throw Error("dim_mismatch", "fields live on different models");
  double m = 0.0;
  for (int i = 0; i < f.points(); ++i)
    m = std::max(m, dist_d(f.value(i), g.value(i)));
  return m;
}

// ---------------------------------------------------------------------------
// Rank-one projector and the wiggle family
// ---------------------------------------------------------------------------

Projection rank_one_projector(double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  Mat m = Mat::from_parts(2, {s * s, s * c, s * c, c * c}, {});
  return Projection(m);
}

WiggleFamily WiggleFamily::make(double epsilon, int m) {
  if (epsilon < 0.0)
    throw Error("bad_amplitude", "wiggle amplitude must be >= 0");
  GridOperatorField field = GridOperatorField::from_function(
      m, 2,
      [epsilon](double x) {
        if (x == 0.0) return Mat::identity(2);
        return rank_one_projector(epsilon * std::sin(1.0 / x)).mat();
      },
      "projection field; value at 0 is the unit");
  for (int i = 0; i < field.points(); ++i) {
    const Mat& v = field.value(i);
    if ((v * v - v).max_abs() > 1e-9)
      throw Error("not_projection", "wiggle value failed idempotency");
  }
  return WiggleFamily{epsilon, std::move(field)};
}

GridOperatorField WiggleFamily::interior() const {
  const int m = field.points();
  std::vector<double> grid = GridOperatorField::uniform_grid(m);
  std::vector<Mat> values;
  values.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) values.push_back(field.value(i));
  // Below a line that keeps wiggling all the way down to 0, a continuous
  // positive element must vanish at 0; the ε = 0 family is constant and
  // open, so it is its own interior there.
  values[0] = epsilon > 0.0 ? Mat::zero(2) : rank_one_projector(0.0).mat();
  return GridOperatorField(std::move(grid), std::move(values),
                           "interior of a wiggle field");
}

// ---------------------------------------------------------------------------
// The 2×2 counterexample
// ---------------------------------------------------------------------------

M2Report m2_counterexample() {
  M2Report r{};
  r.a = Mat::from_parts(2, {1, 1, 1, 1}, {});
  r.b = Mat::from_parts(2, {4, 0, 0, 0}, {});
  r.c = r.a + pos_part(r.b - r.a);

  r.h = dist_h(r.a, r.b);
  r.p = solve_p(r.a, r.b).value;
  r.p_ac = solve_p(r.a, r.c).value;
  r.p_cb = solve_p(r.c, r.b).value;
  r.violation = r.p - (r.p_ac + r.p_cb);
  r.norm_at_half = herm_norm(r.a - 0.5 * r.b);

  const double root5 = std::sqrt(5.0), root2 = std::sqrt(2.0);
  regression("h(a,b)", r.h, root5 - 1.0, 1e-9);
  regression("p(a,b)", r.p, root2, 1e-3);
  regression("‖a − b/2‖", r.norm_at_half, root2, 1e-9);
  if (r.violation < 0.17) {
    std::ostringstream msg;
    msg << "triangle violation margin " << r.violation << " fell below 0.17";
    throw Error("regression", msg.str());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Wiggle demo
// ---------------------------------------------------------------------------

std::vector<WiggleRow> wiggle_demo(const std::vector<double>& epsilons,
                                   int m) {
  if (m < 100)
    throw Error("bad_grid", "need at least 100 grid points for the wiggle");
  const double slack = 2.0 * kPi / m;

  const WiggleFamily base = WiggleFamily::make(0.0, m);
  const GridOperatorField p_const = GridOperatorField::from_function(
      m, 2, [](double) { return rank_one_projector(0.0).mat(); },
      "constant-P0 field");

  std::vector<WiggleRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    const WiggleFamily fam = WiggleFamily::make(eps, m);
    WiggleRow row{};
    row.epsilon = eps;
    row.e_value = field_dist_e(base.field, fam.field);

    const GridOperatorField inside = fam.interior();
    double c = 0.0;
    for (int i = 0; i < m; ++i)
      c = std::max(c, op_norm(p_const.value(i) -
                              p_const.value(i) * inside.value(i)));
    row.c_value = c;

    // c ∘ e through the ε = 0 member: c(p, p₀) = 0, then the metric leg.
    double c_p0 = 0.0;
    const GridOperatorField base_interior = base.interior();
    for (int i = 0; i < m; ++i)
      c_p0 = std::max(c_p0, op_norm(p_const.value(i) -
                                    p_const.value(i) * base_interior.value(i)));
    row.compose_bound = c_p0 + row.e_value;
    row.sin_bound = std::abs(std::sin(eps));
    row.resolution_warning = row.e_value < row.sin_bound - slack;

    if (eps > 0.0)
      regression("c(p, p_eps)", row.c_value, 1.0, 1e-12);
    else
      regression("c(p, p_0)", row.c_value, 0.0, 1e-12);
    if (row.e_value > row.sin_bound + slack + 1e-12) {
      std::ostringstream msg;
      msg << "e(p0, p_eps) = " << row.e_value << " exceeded |sin eps| + 2π/m = "
          << row.sin_bound + slack;
      throw Error("regression", msg.str());
    }
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Point-constrained approximation
// ---------------------------------------------------------------------------

double point_constrained_demo(const Projection& P, const Projection& Q,
                              int m, int samples, uint64_t seed) {
  if (P.dim() != 2 || Q.dim() != 2 || P.rank() != 1 || Q.rank() != 1)
    throw Error("bad_projection", "this model wants rank-one 2×2 projections");
  if (m < 2) throw Error("bad_grid", "need at least two grid points");

  const std::vector<double> grid = GridOperatorField::uniform_grid(m);
  const Mat pm = P.mat(), qm = Q.mat();

  // d(p, a) for the constant-P field against a member field a of
  // {f : f(0) ∈ C·Q}: the grid max of ‖P − P·a(x)‖.
  const auto dist_to = [&](const std::function<Mat(double)>& a) {
    double v = 0.0;
    for (double x : grid) v = std::max(v, op_norm(pm - pm * a(x)));
    return v;
  };

  double best = std::numeric_limits<double>::infinity();
  // Constant multiples of Q are the members with the least movement at 0.
  for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
    best = std::min(best, dist_to([&](double) { return Mat(t * qm); }));

  // Ramped members: pinned to Q (or to 0) at the left endpoint, free
  // elsewhere — the sampled search the contract asks for.
  Rng rng(seed, fnv1a64("gallery/point-constrained"));
  for (int k = 0; k < samples; ++k) {
    const Mat r = random_pos_contraction(rng, 2).mat();
    const double rate = 1.0 + rng.uniform(0.0, 9.0);
    best = std::min(best, dist_to([&](double x) {
      const double w = std::min(rate * x, 1.0);
      return Mat((1.0 - w) * qm + w * r);
    }));
    best = std::min(best, dist_to([&](double x) {
      const double w = std::min(rate * x, 1.0);
      return Mat(w * r);
    }));
  }

  const double want = herm_norm(pm - qm);
  regression("inf d(p, a) over the point-constrained model", best, want, 5e-2);
  return best;
}

// ---------------------------------------------------------------------------
// Bounded-open truncation
// ---------------------------------------------------------------------------

namespace {

/// p(x) = sum of the mode projections whose threshold lies below x.
Mat truncation_field_at(int n_modes, double x) {
  Mat p(n_modes);
  for (int k = 1; k <= n_modes; ++k) {
    const double r_k = 1.0 / (k + 1);
    if (x > r_k) p.at(k - 1, k - 1) = 1.0;
  }
  return p;
}

Mat truncation_q(int n_modes) {
  std::vector<double> v(static_cast<size_t>(n_modes));
  double norm2 = 0.0;
  for (int k = 1; k <= n_modes; ++k) {
    v[static_cast<size_t>(k - 1)] = std::pow(2.0, -k);
    norm2 += v[static_cast<size_t>(k - 1)] * v[static_cast<size_t>(k - 1)];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  Mat q(n_modes);
  for (int i = 0; i < n_modes; ++i)
    for (int j = 0; j < n_modes; ++j)
      q.at(i, j) = v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)] *
                   inv * inv;
  return q;
}

}  // namespace

double truncation_weight_norm(int n_modes, double x) {
  if (n_modes < 1 || n_modes > 12)
    throw Error("bad_modes", "mode count must lie in [1, 12]");
  double active = 0.0, total = 0.0;
  for (int k = 1; k <= n_modes; ++k) {
    const double w = std::pow(4.0, -k);
    total += w;
    if (x > 1.0 / (k + 1)) active += w;
  }
  return std::sqrt(active / total);
}

BoundedOpenTable boundedopen_truncation_demo(int n_modes, int m) {
  if (n_modes < 1 || n_modes > 12)
    throw Error("bad_modes", "mode count must lie in [1, 12]");
  if (m < 2) throw Error("bad_grid", "need at least two grid points");

  const std::vector<double> grid = GridOperatorField::uniform_grid(m);
  const Mat q = truncation_q(n_modes);
  const Mat unit = Mat::identity(n_modes);

  BoundedOpenTable table{n_modes, m, {}};
  table.d_values.reserve(static_cast<size_t>(n_modes));
  for (int n = 1; n <= n_modes; ++n) {
    double d = 0.0;
    for (double x : grid) {
      const double f = std::min(n * x, 1.0);
      const Mat a = (unit - q) + f * q;  // aₙ(x) = Q⊥ + fₙ(x)·Q
      const Mat p = truncation_field_at(n_modes, x);
      d = std::max(d, op_norm(p - p * a));
    }
    table.d_values.push_back(d);
  }

  for (size_t i = 1; i < table.d_values.size(); ++i)
    if (table.d_values[i] > table.d_values[i - 1] + 1e-12)
      throw Error("regression",
                  "truncation distances must be non-increasing in n");
  return table;
}

// ---------------------------------------------------------------------------
// Non-uniqueness of shrinking-support generators
// ---------------------------------------------------------------------------

namespace {

/// fₙ: 1 on [0, 4⁻ⁿ], linear down to 0 at 2·4⁻ⁿ, then 0.
double shrink_ramp(int n, double x) {
  const double plateau = std::pow(4.0, -n);
  if (x <= plateau) return 1.0;
  if (x >= 2.0 * plateau) return 0.0;
  return (2.0 * plateau - x) / plateau;
}

GridOperatorField generator_field(int m, int n, double orientation) {
  return GridOperatorField::from_function(
      m, 2,
      [n, orientation](double x) {
        return Mat(shrink_ramp(n, x) *
                   rank_one_projector(orientation * x).mat());
      },
      "shrinking-support generator");
}

}  // namespace

NonuniquenessReport nonuniqueness_demo(int m, int n_funcs, int probes,
                                       uint64_t seed) {
  if (m < 50) throw Error("bad_grid", "need at least 50 grid points");
  if (n_funcs < 1 || n_funcs > 8)
    throw Error("bad_modes", "generator count must lie in [1, 8]");

  std::vector<GridOperatorField> gen_f, gen_g;
  for (int n = 1; n <= n_funcs; ++n) {
    gen_f.push_back(generator_field(m, n, 1.0));    // p(x) = P_x
    gen_g.push_back(generator_field(m, n, -1.0));   // q(x) = P_{−x}
  }

  // Hausdorff e-distance between the generator sets: both directions of
  // sup-inf.  Positive — the two families are genuinely different.
  const auto one_sided = [](const std::vector<GridOperatorField>& xs,
                            const std::vector<GridOperatorField>& ys) {
    double worst = 0.0;
    for (const auto& x : xs) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& y : ys)
        nearest = std::min(nearest, field_dist_e(x, y));
      worst = std::max(worst, nearest);
    }
    return worst;
  };
  NonuniquenessReport report{};
  report.generator_gap =
      std::max(one_sided(gen_f, gen_g), one_sided(gen_g, gen_f));

  // Closure membership gauge: distance-to-the-family in the d sense.
  const auto gauge = [](const std::vector<GridOperatorField>& gens,
                        const GridOperatorField& a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : gens) best = std::min(best, field_dist_d(g, a));
    return best;
  };

  std::vector<GridOperatorField> probe_fields;
  probe_fields.push_back(GridOperatorField::from_function(
      m, 2, [](double) { return Mat::identity(2); }));
  probe_fields.push_back(GridOperatorField::from_function(
      m, 2, [](double) { return rank_one_projector(0.0).mat(); }));
  probe_fields.push_back(GridOperatorField::from_function(
      m, 2, [](double) { return rank_one_projector(0.3).mat(); }));
  for (const auto& g : gen_f) probe_fields.push_back(g);
  for (const auto& g : gen_g) probe_fields.push_back(g);
  Rng rng(seed, fnv1a64("gallery/nonuniqueness"));
  for (int k = 0; k < probes; ++k) {
    const Mat r = random_pos_contraction(rng, 2).mat();
    probe_fields.push_back(
        GridOperatorField::from_function(m, 2, [&r](double) { return r; }));
  }

  double gap = 0.0;
  for (const auto& a : probe_fields)
    gap = std::max(gap, std::abs(gauge(gen_f, a) - gauge(gen_g, a)));
  report.closure_gap = gap;
  return report;
}

}  // namespace opalg
