/**
 * @file  compact.cpp
 * @brief Upper-set sampling, metric recovery formulas, and interpolation.
 */
#include "opalg/compact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "opalg/distances.hpp"
#include "opalg/eig.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

/// Stream label for sampler draws, so parallel consumers reproduce serial
/// results draw-by-draw.
constexpr const char* kUpperSetStream = "compact/upper-set";

/// Compression b -> B.compress(b) is a pinching: positive, unital on live
/// blocks, and norm-nonincreasing, so it maps the sampling classes into B.
Mat pinched(const SubalgebraSpec& B, const Mat& m) { return B.compress(m); }

double min_or(double current, double candidate) {
  return std::min(current, candidate);
}

}  // namespace

// ---------------------------------------------------------------------------
// UpperSetSampler
// ---------------------------------------------------------------------------

UpperSetSampler::UpperSetSampler(Projection base, int count, uint64_t seed)
    : base_(std::move(base)), count_(count), seed_(seed) {
  if (count_ < 0) throw Error("bad_count", "sampler count must be >= 0");
  // Columns of the eigenbasis come eigenvalue-ascending, so the first
  // n - rank columns span range(p⊥).  Kept verbatim; draws rotate within
  // that span only.
  kernel_basis_ = herm_eig(base_.mat()).vectors;
}

PosContraction UpperSetSampler::at(int k) const {
  if (k < 0 || k >= count_)
    throw Error("bad_index", "sampler index out of range");
  const int n = base_.dim();
  const int m = n - base_.rank();
  if (m == 0) return PosContraction(base_.mat());

  Rng rng(seed_, fnv1a64(kUpperSetStream), static_cast<uint64_t>(k));
  // a = p + V diag(t) V* with V unitary on range(p⊥) and t uniform in
  // [0,1]: membership p <= a <= 1 holds by construction.
  Mat rot = random_unitary(rng, m);
  Mat block = Mat::identity(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) block.at(i, j) = rot.at(i, j);
  Mat v = kernel_basis_ * block;
  Mat scaled(n);
  for (int j = 0; j < m; ++j) {
    const double t = rng.uniform01();
    for (int i = 0; i < n; ++i) scaled.at(i, j) = t * v.at(i, j);
  }
  Mat s = scaled * v.adjoint();
  return PosContraction((base_.mat() + s).hermitized());
}

std::vector<PosContraction> UpperSetSampler::members_with_base() const {
  std::vector<PosContraction> out;
  out.reserve(static_cast<size_t>(count_) + 1);
  out.emplace_back(base_.mat());
  for (int k = 0; k < count_; ++k) out.push_back(at(k));
  return out;
}

// ---------------------------------------------------------------------------
// Compactness in an ambient subalgebra
// ---------------------------------------------------------------------------

bool is_compact(const Projection& p, const SubalgebraSpec& ambient,
                int samples, uint64_t seed, double tol) {
  if (!ambient.is_matrix_model())
    throw Error("ambient_not_samplable",
                "function-field ambients are handled by the gallery demos");
  if (ambient.dim != p.dim())
    throw Error("dim_mismatch", "ambient dimension differs from projection");
  if (ambient.kind == SubalgebraSpec::Kind::full) return true;
  if (!ambient.contains(p.mat(), 1e-9))
    throw Error("p_not_in_ambient",
                "projection is not expressible in the ambient subalgebra");

  // p itself is an ambient positive contraction, so the infimum is 0;
  // the sampled sweep below is a consistency check, not a search.
  double best = dist_d(p.mat(), p.mat());
  Rng rng(seed, fnv1a64("compact/is-compact"));
  for (int k = 0; k < samples; ++k) {
    Mat candidate = pinched(ambient, random_pos_contraction(rng, p.dim()).mat());
    best = min_or(best, dist_d(p.mat(), PosContraction(candidate).mat()));
  }
  return best <= tol;
}

// ---------------------------------------------------------------------------
// Sup-inf and product recovery
// ---------------------------------------------------------------------------

SupInfResult supinf_check(const Projection& p, const Projection& q,
                          int sampler_counts, uint64_t seed) {
  require_dim_match(p.mat(), q.mat(), "supinf_check");
  const double lhs = dist_d(p.mat(), q.mat());

  UpperSetSampler up_p(p, sampler_counts, seed);
  UpperSetSampler up_q(q, sampler_counts, seed + 1);
  const auto as = up_p.members_with_base();
  const auto bs = up_q.members_with_base();

  double rhs = 0.0;
  for (const auto& b : bs) {
    double inner = std::numeric_limits<double>::infinity();
    for (const auto& a : as) inner = min_or(inner, dist_d(a, b));
    rhs = std::max(rhs, inner);
  }
  return {lhs, rhs};
}

ProductInfResult product_inf_check(const Projection& p, const Projection& q,
                                   int sampler_counts, uint64_t seed) {
  require_dim_match(p.mat(), q.mat(), "product_inf_check");
  const double lhs = op_norm(p.mat() * q.mat());

  UpperSetSampler up_p(p, sampler_counts, seed);
  UpperSetSampler up_q(q, sampler_counts, seed + 1);
  const auto as = up_p.members_with_base();
  const auto bs = up_q.members_with_base();

  double min_found = std::numeric_limits<double>::infinity();
  int violations = 0;
  for (const auto& a : as)
    for (const auto& b : bs) {
      const double v = op_norm(a.mat() * b.mat());
      min_found = min_or(min_found, v);
      if (v < lhs - 1e-9) ++violations;
    }
  return {lhs, min_found, violations};
}

// ---------------------------------------------------------------------------
// Boundedness equivalences over a subalgebra
// ---------------------------------------------------------------------------

BoundedEqvsReport bounded_eqvs_check(const PosContraction& a,
                                     const SubalgebraSpec& B, double r,
                                     int samples, uint64_t seed) {
  if (!B.is_matrix_model())
    throw Error("ambient_not_samplable",
                "function-field ambients are handled by the gallery demos");
  if (B.dim != a.dim())
    throw Error("dim_mismatch", "subalgebra dimension differs from element");
  if (!(r > 1.0)) throw Error("bad_headroom", "headroom r must exceed 1");

  const int n = a.dim();
  const Mat live_unit = pinched(B, Mat::identity(n));  // identity of B's corner
  const Mat a_pinched = pinched(B, a.mat());

  Rng rng(seed, fnv1a64("compact/bounded-eqvs"));

  // (1) existence of a dominating b in B with ‖b‖ <= r, probed through a
  // candidate list: the corner identity at full headroom always dominates
  // anything supported in the live corner, and the pinched copy of a is the
  // natural in-B shadow of a itself.
  double dominate_h = std::numeric_limits<double>::infinity();
  std::vector<Mat> dominators = {r * live_unit, live_unit, a_pinched};
  for (int k = 0; k < samples; ++k) {
    Mat b = pinched(B, random_pos_contraction(rng, n).mat());
    dominators.push_back(a_pinched + (r - 1.0) * b);  // still ‖·‖ <= r, in B
  }
  for (const Mat& b : dominators) {
    if (herm_norm(b.hermitized()) > r + 1e-9) continue;
    dominate_h = min_or(dominate_h, pos_part_norm(a.mat() - b));
  }

  // (2) infimum of h over Hermitian members of B.
  double inf_h_sa = std::min(pos_part_norm(a.mat() - live_unit),
                             pos_part_norm(a.mat() - a_pinched));
  for (int k = 0; k < samples; ++k) {
    Mat b = pinched(B, random_herm_contraction(rng, n));
    inf_h_sa = min_or(inf_h_sa, pos_part_norm(a.mat() - b));
  }

  // (3) infimum of d over positive contractions in B.
  double inf_d_unit = std::min(dist_d(a.mat(), live_unit),
                               dist_d(a.mat(), a_pinched));
  for (int k = 0; k < samples; ++k) {
    Mat b = pinched(B, random_pos_contraction(rng, n).mat());
    inf_d_unit = min_or(inf_d_unit, dist_d(a.mat(), b));
  }

  // (4) infimum of d over arbitrary members of B (scaled Hermitian draws;
  // d(a, b) = ‖a − ab‖ is defined for any b).
  double inf_d_all = inf_d_unit;
  for (int k = 0; k < samples; ++k) {
    Mat b = pinched(B, random_herm(rng, n, r));
    inf_d_all = min_or(inf_d_all, dist_d(a.mat(), b));
  }

  const double threshold = 5e-2;
  const bool c1 = dominate_h <= threshold;
  const bool c2 = inf_h_sa <= threshold;
  const bool c3 = inf_d_unit <= threshold;
  const bool c4 = inf_d_all <= threshold;
  const bool agree = (c1 == c2) && (c2 == c3) && (c3 == c4);
  return {dominate_h, inf_h_sa, inf_d_unit, inf_d_all, agree};
}

// ---------------------------------------------------------------------------
// Interpolation strictly above a projection
// ---------------------------------------------------------------------------

namespace {

/// One improvement round: returns b with pb = p (exactly, by block
/// structure) and ‖current − b‖ bounded by a small multiple of
/// d(p, current).
PosContraction interpolation_round(const Projection& p,
                                   const PosContraction& current) {
  const int n = p.dim();
  const Mat pm = p.mat();
  const Mat pc = p.complement();

  // u = p ⊕ supp(p⊥ a p⊥): a projection with pu = p exactly and u >= a up
  // to the support threshold (mass of a outside range(u) is O(√thr)).
  const Mat compressed = (pc * current.mat() * pc).hermitized();
  const Mat u =
      (pm + support_projection(compressed, 1e-13).mat()).hermitized();

  const Mat gap = (u - current.mat()).hermitized();

  // c = clip(p⊥ (u − a) p⊥) sits inside [0, p⊥]; the p⊥-block of the gap
  // is supp(m) − m for the contraction m = p⊥ a p⊥, hence already in
  // [0, 1] up to round-off.
  Mat c_raw = (pc * gap * pc).hermitized();
  Mat c = func_calc(c_raw, [](double x) { return std::clamp(x, 0.0, 1.0); });

  // Nearest d <= c to the gap; the candidate d = c already achieves
  // ‖gap − c‖ = O(d(p, a)), so the solver value can only improve on it.
  // The gap dips below 0 only by the support threshold, hence the loose
  // construction tolerance.
  SolveResult sr = solve_p(PosContraction(gap, 1e-5), c);
  Mat d_fin = interval_polish((pc * sr.witness * pc).hermitized(),
                              Mat::zero(n), c);

  // b = (u − d)₊ = p ⊕ (supp(m) − d)₊ : block diagonal against p, so the
  // p-corner survives the positive part untouched.
  return PosContraction(pos_part((u - d_fin).hermitized()), 1e-6);
}

}  // namespace

PosContraction interpolate_above(const Projection& p, const PosContraction& a,
                                 double epsilon) {
  require_dim_match(p.mat(), a.mat(), "interpolate_above");
  if (!(epsilon > 0.0))
    throw Error("bad_epsilon", "epsilon must be positive");

  const double eta = dist_d(p.mat(), a.mat());
  const double delta = (epsilon / 4.0) * (epsilon / 4.0);
  if (!(eta < delta)) {
    std::ostringstream msg;
    msg << "d(p, a) = " << eta << " is not below delta(epsilon) = " << delta;
    throw Error("precondition", msg.str());
  }

  const double target_gap = 1e-7;  // margin under the 1e−6 contract
  if (eta <= target_gap) return a;

  // Commuting shortcut: spectral calculus pushes everything at or above
  // 1 − eta to 1, moving each eigenvalue by at most eta — and exactly eta
  // at the extreme point witnessing d(p, a).
  if ((p.mat() * a.mat() - a.mat() * p.mat()).max_abs() <= 1e-10 &&
      eta <= 0.9) {
    const double floor = 1.0 - eta;
    Mat b = func_calc(a.mat(), [floor](double x) {
      return std::min(1.0, std::max(0.0, x) / floor);
    });
    return PosContraction(b, 1e-6);
  }

  PosContraction current = a;
  double budget_left = epsilon;
  for (int round = 1; round <= 30; ++round) {
    const double round_budget = epsilon / std::pow(2.0, round);
    PosContraction next = interpolation_round(p, current);
    const double moved = dist_e(current.mat(), next.mat());
    if (moved > budget_left) {
      std::ostringstream msg;
      msg << "round " << round << " needed movement " << moved
          << " exceeding the remaining budget " << budget_left;
      throw Error("no_convergence", msg.str());
    }
    budget_left -= std::max(moved, round_budget);
    current = next;
    if (dist_d(p.mat(), current.mat()) <= target_gap) return current;
    if (budget_left <= 0.0) break;
  }
  std::ostringstream msg;
  msg << "d(p, b) stalled at " << dist_d(p.mat(), current.mat())
      << " after exhausting the movement budget";
  throw Error("no_convergence", msg.str());
}

// ---------------------------------------------------------------------------
// Interior gauge on the discrete commutative model
// ---------------------------------------------------------------------------

namespace {

void validate_mask(const std::vector<int>& mask, const char* name) {
  if (mask.empty() || mask.size() > static_cast<size_t>(kMaxDim))
    throw Error("bad_mask", std::string(name) + ": size must be in [1, 64]");
  for (int v : mask)
    if (v != 0 && v != 1)
      throw Error("bad_mask", std::string(name) + ": entries must be 0 or 1");
}

}  // namespace

double interior_and_c(const std::vector<int>& p_mask,
                      const std::vector<int>& q_mask) {
  validate_mask(p_mask, "p");
  validate_mask(q_mask, "q");
  if (p_mask.size() != q_mask.size())
    throw Error("dim_mismatch", "mask lengths differ");
  // Discrete model: q is its own interior, so c(p, q) = ‖p − p·q‖ with
  // entrywise product — 1 exactly when some coordinate has p=1, q=0.
  for (size_t i = 0; i < p_mask.size(); ++i)
    if (p_mask[i] == 1 && q_mask[i] == 0) return 1.0;
  return 0.0;
}

double interior_and_c(const Projection& p, const Projection& q) {
  require_dim_match(p.mat(), q.mat(), "interior_and_c");
  const int n = p.dim();
  std::vector<int> pm(n), qm(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (std::abs(p.mat().at(i, j)) > 1e-12 ||
          std::abs(q.mat().at(i, j)) > 1e-12)
        throw Error("non_commutative",
                    "interior gauge needs diagonal projections; "
                    "matrix-valued fields belong to the gallery demos");
    }
    pm[i] = p.mat().at(i, i).real() > 0.5 ? 1 : 0;
    qm[i] = q.mat().at(i, i).real() > 0.5 ? 1 : 0;
  }
  return interior_and_c(pm, qm);
}

double interior_c_via_upsets(const std::vector<int>& p_mask,
                             const std::vector<int>& q_mask,
                             int levels_per_entry) {
  validate_mask(p_mask, "p");
  validate_mask(q_mask, "q");
  if (p_mask.size() != q_mask.size())
    throw Error("dim_mismatch", "mask lengths differ");
  if (levels_per_entry < 2)
    throw Error("bad_grid", "need at least the endpoint levels 0 and 1");
  const int n = static_cast<int>(p_mask.size());

  // Diagonal contractions on a uniform grid; an up-set member must sit at
  // level max on every coordinate of its base projection.
  std::vector<double> levels(levels_per_entry);
  for (int l = 0; l < levels_per_entry; ++l)
    levels[l] = static_cast<double>(l) / (levels_per_entry - 1);

  const auto enumerate = [&](const std::vector<int>& base) {
    std::vector<std::vector<double>> members;
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<double> cand(n);
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        cand[i] = base[i] == 1 ? 1.0 : levels[idx[i]];
        if (base[i] == 1 && idx[i] != 0) ok = false;  // skip duplicates
      }
      if (ok) members.push_back(cand);
      int pos = 0;
      while (pos < n && ++idx[pos] == levels_per_entry) idx[pos++] = 0;
      if (pos == n) break;
    }
    return members;
  };

  const auto dist_diag = [n](const std::vector<double>& x,
                             const std::vector<double>& y) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, x[i] * (1.0 - y[i]));
    return m;
  };

  const auto ups_p = enumerate(p_mask);
  const auto ups_q = enumerate(q_mask);
  double outer = std::numeric_limits<double>::infinity();
  for (const auto& x : ups_p) {
    double inner = 0.0;
    for (const auto& y : ups_q) inner = std::max(inner, dist_diag(x, y));
    outer = std::min(outer, inner);
  }
  return outer;
}

// ---------------------------------------------------------------------------
// Inf-sup recovery through d and h
// ---------------------------------------------------------------------------

InfSupResult infsup_d_equals_h(const Projection& p, const Projection& q,
                               int samples, uint64_t seed) {
  require_dim_match(p.mat(), q.mat(), "infsup_d_equals_h");
  UpperSetSampler up_p(p, samples, seed);
  double via_d = std::numeric_limits<double>::infinity();
  double via_h = std::numeric_limits<double>::infinity();
  for (const auto& a : up_p.members_with_base()) {
    via_d = min_or(via_d, dist_d(a.mat(), q.mat()));
    via_h = min_or(via_h, dist_h(a.mat(), q.mat()));
  }
  return {via_d, via_h};
}

// ---------------------------------------------------------------------------
// Projection metric facts
// ---------------------------------------------------------------------------

Mat symmetry_exchange(const Projection& p, const Projection& q) {
  require_dim_match(p.mat(), q.mat(), "symmetry_exchange");
  const double gap = herm_norm((p.mat() - q.mat()).hermitized());
  if (gap >= 1.0 - 1e-9) {
    std::ostringstream msg;
    msg << "‖p − q‖ = " << gap
        << " leaves p + q − 1 singular; no exchanging symmetry exists";
    throw Error("ill_conditioned", msg.str());
  }
  // a = p + q − 1 has a² = 1 − (p − q)² >= (1 − ‖p−q‖²)·1 > 0, so the
  // spectral sign function is a bounded calculus of a.
  Mat a = (p.mat() + q.mat() - Mat::identity(p.dim())).hermitized();
  return func_calc(a, [](double x) { return x >= 0.0 ? 1.0 : -1.0; });
}

ProjectionDistanceReport projection_distance_suite(const Projection& p,
                                                   const Projection& q) {
  require_dim_match(p.mat(), q.mat(), "projection_distance_suite");
  ProjectionDistanceReport r{};
  r.d = dist_d(p.mat(), q.mat());
  r.h = dist_h(p.mat(), q.mat());
  r.p_val = solve_p(PosContraction(p.mat()), q.mat()).value;
  r.n_val = solve_n(PosContraction(p.mat()), PosContraction(q.mat())).value;
  r.norm_pq = herm_norm((p.mat() - q.mat()).hermitized());

  const double vals[4] = {r.d, r.h, r.p_val, r.n_val};
  double lo = vals[0], hi = vals[0];
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  r.max_pairwise_gap = hi - lo;
  r.h_matches_norm =
      r.norm_pq >= 1.0 - 1e-9 || std::abs(r.h - r.norm_pq) <= 1e-9;
  return r;
}

}  // namespace opalg
