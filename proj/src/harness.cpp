/**
 * @file  harness.cpp
 * @brief Campaign suites, demo dispatch, sweeps, and report plumbing.
 */
#include "opalg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "opalg/compact.hpp"
#include "opalg/distances.hpp"
#include "opalg/eig.hpp"
#include "opalg/gallery.hpp"
#include "opalg/genrel.hpp"
#include "opalg/order_optim.hpp"
#include "opalg/sampling.hpp"

namespace opalg {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

/// Accumulates max violations per invariant id and per dimension, applying
/// any configured tolerance overrides at record time.
struct Tracker {
  const CampaignConfig* cfg;
  SuiteReport rep;

  Tracker(const CampaignConfig& c, std::string suite) : cfg(&c) {
    rep.suite = std::move(suite);
    rep.seed = c.seed;
  }

  void record(const std::string& id, int dim, double violation, double tol) {
    auto it = cfg->tolerances.find(id);
    rep.tolerances[id] = it != cfg->tolerances.end() ? it->second : tol;
    double& v = rep.violations[id];
    v = std::max(v, violation);
    double& bd = rep.by_dim[id][dim];
    bd = std::max(bd, violation);
  }

  SuiteReport done(int trials) {
    rep.trials = trials;
    rep.finalize();
    return std::move(rep);
  }
};

double pos_gap(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

/// V diag(vals) V*, hermitized — shared spectral assembly for the
/// commuting-instance generators.
Mat assemble(const Mat& v, const std::vector<double>& vals) {
  const int n = v.dim();
  Mat scaled(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled.at(i, j) = vals[(size_t)j] * v.at(i, j);
  return (scaled * v.adjoint()).hermitized();
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

SuiteReport suite_m2(const CampaignConfig& cfg) {
  Tracker t(cfg, "m2");
  const Mat a = Mat::from_parts(2, {1, 1, 1, 1}, {});
  const Mat b = Mat::from_parts(2, {4, 0, 0, 0}, {});
  const Mat c = a + pos_part(b - a);

  const double h = dist_h(a, b);
  const double pv = solve_p(a, b).value;
  const double pac = solve_p(a, c).value;
  const double pcb = solve_p(c, b).value;
  const double margin = pv - (pac + pcb);

  const double root5 = std::sqrt(5.0), root2 = std::sqrt(2.0);
  t.record("m2-h-pin", 2, std::abs(h - (root5 - 1.0)), 1e-9);
  t.record("m2-p-pin", 2, std::abs(pv - root2), 1e-3);
  t.record("m2-margin", 2, pos_gap(0.17, margin), 0.0);
  t.record("m2-half-norm", 2, std::abs(herm_norm(a - 0.5 * b) - root2), 1e-9);
  return t.done(1);
}

SuiteReport suite_distance_inequalities(const CampaignConfig& cfg) {
  Tracker t(cfg, "distance-inequalities");
  int trials_run = 0;
  for (int n : cfg.dims) {
    for (int trial = 0; trial < cfg.trials; ++trial, ++trials_run) {
      Rng rng = Rng::for_suite(cfg.seed, "distance-inequalities",
                               (uint64_t)n, (uint64_t)trial);
      const PosContraction a = random_pos_contraction(rng, n);
      const PosContraction b = random_pos_contraction(rng, n);
      const PosContraction c = random_pos_contraction(rng, n);
      const Mat ch = random_herm_contraction(rng, n);
      const Mat ch2 = random_herm_contraction(rng, n);

      const double dab = dist_d(a, b), dac = dist_d(a, c), dcb = dist_d(c, b);
      const double dca = dist_d(c, a);
      const double eab = dist_e(a, b), eac = dist_e(a, c), ecb = dist_e(c, b);
      const double hab = dist_h(a, b), hac = dist_h(a, c), hcb = dist_h(c, b);

      t.record("d-triangle", n, pos_gap(dab, dac + dcb), 1e-9);
      t.record("d-e-right", n, pos_gap(dab, eac + dcb), 1e-9);
      t.record("d-e-left", n, pos_gap(dab, dac + ecb), 1e-9);
      t.record("h-triangle", n, pos_gap(hab, hac + hcb), 1e-9);
      t.record("h-below-e", n, pos_gap(hab, eab), 1e-9);
      t.record("h-below-2d", n, pos_gap(hab, 2.0 * dab), 1e-9);

      // Squared-d chains hold with an arbitrary Hermitian contraction in
      // the middle slot.
      t.record("d2-below-d-plus-h", n,
               pos_gap(dab * dab, dist_d(a.mat(), ch) + dist_h(ch, b.mat())),
               1e-9);
      t.record("d2-below-h-plus-d", n,
               pos_gap(dab * dab, dist_h(a.mat(), ch) + dist_d(ch, b.mat())),
               1e-9);

      const Mat aba = (a.mat() * b.mat() * a.mat()).hermitized();
      const double dcaba = dist_d(c.mat(), aba);
      t.record("aba-upper", n, pos_gap(dcaba, 2.0 * dca + dcb), 1e-9);
      t.record("aba-lower-a", n, pos_gap(dca * dca, dcaba), 1e-9);
      t.record("aba-lower-b", n,
               pos_gap(dcb * dcb, dcaba + 2.0 * std::sqrt(dcaba)), 1e-9);

      for (double eps : {0.1, 0.5, 0.9}) {
        const Mat mix = eps * a.mat() + (1.0 - eps) * b.mat();
        t.record("d-convexity", n,
                 pos_gap(dist_d(c.mat(), mix),
                         eps * dca + (1.0 - eps) * dcb),
                 1e-9);
      }

      // Powers commute with their base exactly, so ‖aᵏ(1 − a)‖ is a
      // spectral maximum — no extra decompositions needed.
      for (int k = 1; k <= 20; ++k) {
        double worst = 0.0;
        for (double lam : a.eig().values)
          worst = std::max(worst, std::pow(lam, k) * (1.0 - lam));
        t.record("power-approx", n, pos_gap(worst, 1.0 / k), 1e-9);
      }

      t.record("f-h-composition", n,
               pos_gap(dist_f(a, b), dist_f(a, c) + hcb), 1e-9);

      const Mat bp = complement(b.mat());
      t.record("square-norm", n,
               pos_gap(dab * dab, op_norm((a.mat() * a.mat()) * bp)), 1e-9);

      t.record("pospart-conjugation", n,
               pos_gap(pos_part_norm((a.mat() * ch2 * a.mat()).hermitized()),
                       pos_part_norm(ch2)),
               1e-9);
      t.record("pospart-subadd", n,
               pos_gap(pos_part_norm(ch + ch2),
                       pos_part_norm(ch) + pos_part_norm(ch2)),
               1e-9);
    }
  }
  return t.done(trials_run);
}

SuiteReport suite_hf_attainment(const CampaignConfig& cfg) {
  Tracker t(cfg, "hf-attainment");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng = Rng::for_suite(cfg.seed, "hf-attainment", (uint64_t)n,
                             (uint64_t)trial);
    const PosContraction a = random_pos_contraction(rng, n);
    const PosContraction b = random_pos_contraction(rng, n);

    const Mat diff = (a.mat() - b.mat()).hermitized();
    const EigResult de = herm_eig(diff);
    const double hab = std::max(0.0, de.max_value());

    // Witness: rank-one projector onto the top eigenvector of a − b (the
    // zero element when a ≤ b).
    Mat cstar(n);
    if (de.max_value() > 1e-12) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          cstar.at(i, j) =
              de.vectors.at(i, n - 1) * std::conj(de.vectors.at(j, n - 1));
    }
    const PosContraction cw(cstar.hermitized());
    const double recovered = dist_f(cw, b) - dist_f(cw, a);
    t.record("attainment-equality", n, std::abs(hab - recovered), 1e-9);

    for (int k = 0; k < 8; ++k) {
      const PosContraction cand =
          k < 4 ? PosContraction(random_projection(rng, n).mat())
                : random_pos_contraction(rng, n);
      t.record("attainment-dominance", n,
               pos_gap(dist_f(cand, b) - dist_f(cand, a), hab), 1e-9);
    }
  }
  return t.done(cfg.trials);
}

SuiteReport suite_projection(const CampaignConfig& cfg) {
  Tracker t(cfg, "projection-suite");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng = Rng::for_suite(cfg.seed, "projection-suite", (uint64_t)n,
                             (uint64_t)trial);
    const Projection p = random_projection(rng, n);
    const Projection q = random_projection(rng, n);

    const ProjectionDistanceReport r = projection_distance_suite(p, q);
    t.record("proj-d-h", n, std::abs(r.d - r.h), 1e-9);
    t.record("proj-all-gap", n, r.max_pairwise_gap, 2e-3);
    if (r.norm_pq < 1.0 - 1e-9) {
      t.record("proj-h-norm", n, std::abs(r.h - r.norm_pq), 1e-9);
      const Mat u = symmetry_exchange(p, q);
      t.record("sym-herm", n, op_norm(u - u.adjoint()), 1e-9);
      t.record("sym-square", n,
               herm_norm((u * u - Mat::identity(n)).hermitized()), 1e-9);
      t.record("sym-exchange", n, op_norm(u * p.mat() - q.mat() * u), 1e-9);
    }
  }
  return t.done(cfg.trials);
}

SuiteReport suite_approximants(const CampaignConfig& cfg) {
  Tracker t(cfg, "approximants");
  for (int trial = 0; trial < cfg.trials; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng = Rng::for_suite(cfg.seed, "approximants", (uint64_t)n,
                             (uint64_t)trial);
    const PosContraction a = random_pos_contraction(rng, n);
    const PosContraction b = random_pos_contraction(rng, n);
    const double hab = dist_h(a, b);
    const double cap = 2.0 * std::sqrt(hab);

    const ApproximantResult dom = dominated_approximant(a, b);
    t.record("dominated-floor", n,
             std::max(0.0, -herm_eig(dom.c).min_value()), 1e-7);
    t.record("dominated-cap", n, pos_part_norm(dom.c - b.mat()), 1e-7);
    t.record("dominated-bound", n,
             pos_gap(herm_norm((a.mat() - dom.c).hermitized()), cap), 1e-6);
    t.record("dominated-stability", n, dom.eps_disagreement, 1e-4);

    const ApproximantResult up = dominating_approximant(a, b);
    t.record("dominating-floor", n, pos_part_norm(a.mat() - up.c), 1e-7);
    t.record("dominating-ceil", n,
             pos_part_norm(up.c - Mat::identity(n)), 1e-7);
    t.record("dominating-bound", n,
             pos_gap(herm_norm((up.c - b.mat()).hermitized()), cap), 1e-6);
    t.record("dominating-stability", n, up.eps_disagreement, 1e-4);
  }
  return t.done(cfg.trials);
}

SuiteReport suite_duality(const CampaignConfig& cfg) {
  Tracker t(cfg, "duality");
  const int trials = std::max(1, cfg.trials / 50);  // two full solves/trial
  for (int trial = 0; trial < trials; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng =
        Rng::for_suite(cfg.seed, "duality", (uint64_t)n, (uint64_t)trial);
    const PosContraction a = random_pos_contraction(rng, n);
    const PosContraction b = random_pos_contraction(rng, n);
    const double nv = solve_n(a, b).value;
    const double pv = solve_p(complement(b.mat()), complement(a.mat())).value;
    t.record("duality-gap", n, std::abs(nv - pv), 2e-3);
  }
  return t.done(trials);
}

SuiteReport suite_boolean(const CampaignConfig& cfg) {
  Tracker t(cfg, "boolean-filters");
  for (int n : {3, 4}) {
    const BooleanFilterReport rep = filter_eqvs_boolean(BooleanModel{n});
    const std::string sfx = "-n" + std::to_string(n);
    t.record("boolean-mismatch" + sfx, n, (double)rep.mismatch_count, 0.0);
    const double want = (double)((1u << n) + 1);
    t.record("boolean-count" + sfx, n,
             std::abs((double)rep.filter_count - want), 0.0);
  }
  t.record("boolean-maximal-n3", 3,
           maximal_centred_equals_maximal_filters(3) ? 0.0 : 1.0, 0.0);
  return t.done(1);
}

SuiteReport suite_filter_predicates(const CampaignConfig& cfg) {
  Tracker t(cfg, "filter-predicates");
  const int trials = std::max(1, cfg.trials / 100);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng = Rng::for_suite(cfg.seed, "filter-predicates", (uint64_t)n,
                             (uint64_t)trial);

    // Centredness proof chain on random sphere elements.
    std::vector<PosContraction> ground;
    for (int k = 0; k < 24; ++k)
      ground.push_back(normalized_to_sphere(random_pos_contraction(rng, n)));
    const CentredReport cr = centred_equivalence(ground, {0, 1, 2});
    t.record("centred-telescoping", n, cr.telescoping_ok ? 0.0 : 1.0, 0.0);
    t.record("centred-chain", n, cr.chain_ok ? 0.0 : 1.0, 0.0);

    // filter ⟺ directed ∧ closed on a random finite metric: the predicate
    // evaluator cross-checks the equivalence internally and throws on any
    // disagreement.
    std::vector<Mat> pts;
    for (int k = 0; k < 6; ++k) pts.push_back(random_herm_contraction(rng, n));
    std::vector<std::string> labels;
    std::vector<double> vals;
    for (int i = 0; i < 6; ++i) labels.push_back("x" + std::to_string(i));
    vals.resize(36);
    GenRelation metric{labels, vals};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        metric.at(i, j) = herm_norm((pts[(size_t)i] - pts[(size_t)j]));
    std::vector<int> y;
    for (int i = 0; i < 6; ++i)
      if (rng.below(2) == 1) y.push_back(i);
    double crosscheck = 0.0;
    try {
      (void)check_condition(metric, y, Condition::filter, 1e-12);
    } catch (const Error&) {
      crosscheck = 1.0;
    }
    t.record("genrel-filter-crosscheck", n, crosscheck, 0.0);

    // A projection generates words with ‖p·p⊥‖ = 0, so membership of p
    // itself must be recognized at depth one.
    std::vector<PosContraction> elems = ground;
    elems.push_back(PosContraction(random_projection(rng, n, 1).mat()));
    const int pi = (int)elems.size() - 1;
    const NormFilterResult nf =
        norm_filter_test(elems, {pi}, elems[(size_t)pi]);
    t.record("norm-filter-member", n,
             nf.status == Membership::member ? 0.0 : 1.0, 0.0);
  }
  return t.done(trials);
}

SuiteReport suite_compact(const CampaignConfig& cfg) {
  Tracker t(cfg, "compact-identities");
  const int pairs = std::max(1, cfg.trials / 100);
  for (int trial = 0; trial < pairs; ++trial) {
    const int n = cfg.dims[(size_t)trial % cfg.dims.size()];
    Rng rng = Rng::for_suite(cfg.seed, "compact-identities", (uint64_t)n,
                             (uint64_t)trial);
    const Projection p = random_projection(rng, n);
    const Projection q = random_projection(rng, n);
    const uint64_t sub = cfg.seed + 7919u * (uint64_t)trial + (uint64_t)n;

    const SupInfResult si = supinf_check(p, q, cfg.samples, sub);
    t.record("supinf-gap", n, std::abs(si.lhs - si.rhs), 1e-9);

    const ProductInfResult pi = product_inf_check(p, q, cfg.samples, sub + 1);
    t.record("product-attain", n, std::abs(pi.lhs - pi.min_found), 1e-9);
    t.record("product-below", n, (double)pi.violations, 0.0);

    const InfSupResult is = infsup_d_equals_h(p, q, cfg.samples, sub + 2);
    const double d0 = dist_d(p.mat(), q.mat());
    t.record("infsup-d", n, std::abs(is.via_d - d0), 1e-9);
    t.record("infsup-h", n, std::abs(is.via_h - d0), 1e-9);

    t.record("hausdorff-identity", n,
             std::abs(std::max(dist_d(p.mat(), q.mat()),
                               dist_d(q.mat(), p.mat())) -
                      herm_norm((p.mat() - q.mat()).hermitized())),
             1e-9);

    // Sampler invariant p <= a <= 1, and ↑p-monotonicity against p itself.
    UpperSetSampler us(p, std::min(cfg.samples, 16), sub + 3);
    for (const auto& a : us.members_with_base()) {
      t.record("upperset-membership", n,
               interval_violation(a.mat(), p.mat(), Mat::identity(n)), 1e-9);
      t.record("upset-monotone", n, pos_part_norm(p.mat() - a.mat()), 1e-9);
    }
  }
  return t.done(pairs);
}

SuiteReport suite_bounded_eqvs(const CampaignConfig& cfg) {
  Tracker t(cfg, "bounded-eqvs");
  const int trials = std::max(1, cfg.trials / 100);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::max(2, cfg.dims[(size_t)trial % cfg.dims.size()]);
    Rng rng = Rng::for_suite(cfg.seed, "bounded-eqvs", (uint64_t)n,
                             (uint64_t)trial);
    const uint64_t sub = cfg.seed + 104729u * (uint64_t)trial + (uint64_t)n;
    const PosContraction a = random_pos_contraction(rng, n);

    const BoundedEqvsReport full =
        bounded_eqvs_check(a, SubalgebraSpec::full_algebra(n), 2.0, 32, sub);
    t.record("bounded-agreement", n, full.agree ? 0.0 : 1.0, 0.0);
    t.record("bounded-full-pass", n, full.dominate_h, 5e-2);

    const SubalgebraSpec diag = SubalgebraSpec::diagonal(n);
    const PosContraction ad(diag.compress(a.mat()));
    const BoundedEqvsReport dd = bounded_eqvs_check(ad, diag, 2.0, 32, sub + 1);
    t.record("bounded-agreement", n, dd.agree ? 0.0 : 1.0, 0.0);
    t.record("bounded-diag-pass", n,
             std::max({dd.dominate_h, dd.inf_h_sa, dd.inf_d_unit,
                       dd.inf_d_all}),
             5e-2);

    if (n >= 4) {
      // Live top-left corner, element supported in the dead corner: every
      // one of the four gauges is pinned at ‖a‖ = 1.
      const int k = n / 2;
      const SubalgebraSpec corner =
          SubalgebraSpec::block_diag({k, n - k}, {true, false});
      Mat dead(n);
      for (int i = k; i < n; ++i) dead.at(i, i) = 1.0;
      const BoundedEqvsReport cc =
          bounded_eqvs_check(PosContraction(dead), corner, 2.0, 32, sub + 2);
      t.record("bounded-agreement", n, cc.agree ? 0.0 : 1.0, 0.0);
      t.record("bounded-corner-floor", n,
               pos_gap(1.0, std::min({cc.dominate_h, cc.inf_h_sa,
                                      cc.inf_d_unit, cc.inf_d_all})),
               1e-9);
    }
  }
  return t.done(trials);
}

SuiteReport suite_interpolation(const CampaignConfig& cfg) {
  Tracker t(cfg, "interpolation");
  const int trials = std::max(1, cfg.trials / 100);
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::max(2, cfg.dims[(size_t)trial % cfg.dims.size()]);
    Rng rng = Rng::for_suite(cfg.seed, "interpolation", (uint64_t)n,
                             (uint64_t)trial);
    const uint64_t sub = cfg.seed + 15485863u * (uint64_t)trial + (uint64_t)n;

    // General instance: start inside ↑p and blend a bounded perturbation,
    // keeping d(p, a) <= s <= 1e−4.
    const Projection p =
        random_projection(rng, n, 1 + (int)rng.below((uint64_t)n - 1));
    const PosContraction u = UpperSetSampler(p, 1, sub).at(0);
    const double s = 1e-4 * rng.uniform(0.2, 1.0);
    const Mat blend = (1.0 - s) * u.mat() + s * random_pos_contraction(rng, n).mat();
    const PosContraction a(blend.hermitized());

    const PosContraction b = interpolate_above(p, a, 0.1);
    t.record("interp-dpb", n, dist_d(p.mat(), b.mat()), 1e-6);
    t.record("interp-move", n, pos_gap(dist_e(a.mat(), b.mat()), 0.1), 0.0);

    // Commuting instance with the gap attained exactly: spectrum 1 − r on
    // one p-coordinate, within [1 − r, 1] elsewhere on p.
    const Mat v = random_unitary(rng, n);
    const int rank = 1 + (int)rng.below((uint64_t)n - 1);
    const double r0 = 1e-4 * rng.uniform(0.2, 1.0);
    std::vector<double> pvals((size_t)n, 0.0), avals((size_t)n, 0.0);
    for (int i = 0; i < n; ++i) {
      if (i < rank) {
        pvals[(size_t)i] = 1.0;
        avals[(size_t)i] = i == 0 ? 1.0 - r0 : 1.0 - r0 * rng.uniform01();
      } else {
        avals[(size_t)i] = rng.uniform01() * (1.0 - 2.0 * r0);
      }
    }
    const Projection pc(assemble(v, pvals));
    const PosContraction ac(assemble(v, avals));
    const double eta = dist_d(pc.mat(), ac.mat());
    const PosContraction bc = interpolate_above(pc, ac, 0.1);
    t.record("interp-commuting", n,
             std::abs(dist_e(ac.mat(), bc.mat()) - eta), 1e-6);
    t.record("interp-dpb", n, dist_d(pc.mat(), bc.mat()), 1e-6);
  }
  return t.done(trials);
}

SuiteReport suite_modulus(const CampaignConfig& cfg) {
  Tracker t(cfg, "modulus-curves");
  const int per_dim = std::min(cfg.trials, 400);
  for (int n : cfg.dims) {
    Rng rng = Rng::for_suite(cfg.seed, "modulus-curves", (uint64_t)n, 0);
    const PosContraction base = random_pos_contraction(rng, n);

    // Half global draws, half near-base blends so the small radii are
    // populated.
    std::vector<PosContraction> samples;
    samples.reserve((size_t)per_dim);
    for (int k = 0; k < per_dim; ++k) {
      const PosContraction x = random_pos_contraction(rng, n);
      if (k % 2 == 0) {
        samples.push_back(x);
      } else {
        const double tmix = std::pow(2.0, -(double)(k % 22) / 2.0);
        samples.push_back(PosContraction(
            ((1.0 - tmix) * base.mat() + tmix * x.mat()).hermitized()));
      }
    }

    const auto hF = slice("h", base, SliceSide::left);
    const auto dG = slice("d", base, SliceSide::left);
    const ModulusCurve hd = modulus_estimate(hF, dG, samples);
    for (size_t i = 0; i < hd.radii.size(); ++i)
      t.record("h-vs-d-curve", n,
               pos_gap(hd.sup_values[i], 2.0 * hd.radii[i]), 1e-9);

    const PosContraction base_sq(
        (base.mat() * base.mat()).hermitized());
    const auto dF = slice("d", base, SliceSide::left);
    const auto dsqG = slice("d", base_sq, SliceSide::left);
    const ModulusCurve dd = modulus_estimate(dF, dsqG, samples);
    for (size_t i = 0; i < dd.radii.size(); ++i)
      t.record("d-vs-dsquare-curve", n,
               pos_gap(dd.sup_values[i], std::sqrt(dd.radii[i])), 1e-9);

    // Nearest-dominated distance against h, using the certified
    // approximant as an upper bound for the infimum.
    const auto pF = [&base](const PosContraction& x) {
      return herm_norm(
          (base.mat() - dominated_approximant(base, x).c).hermitized());
    };
    const ModulusCurve ph = modulus_estimate(pF, hF, samples);
    for (size_t i = 0; i < ph.radii.size(); ++i)
      t.record("p-vs-h-curve", n,
               pos_gap(ph.sup_values[i],
                       2.0 * std::sqrt(ph.radii[i]) + 1e-6),
               1e-9);
  }
  return t.done(per_dim * (int)cfg.dims.size());
}

SuiteReport suite_gallery(const CampaignConfig& cfg) {
  Tracker t(cfg, "gallery");
  const int m_wiggle = 10000;
  try {
    const auto rows = wiggle_demo({0.5, 0.1, 0.01}, m_wiggle);
    for (const auto& row : rows) {
      t.record("wiggle-c", 2, std::abs(row.c_value - 1.0), 1e-12);
      t.record("wiggle-e", 2,
               pos_gap(row.e_value, row.sin_bound + 2.0 * kPi / m_wiggle),
               0.0);
    }
  } catch (const Error&) {
    t.record("wiggle-c", 2, 1.0, 1e-12);
  }

  for (double theta : {0.0, kPi / 6.0, kPi / 2.0}) {
    const Projection P = rank_one_projector(theta);
    const Projection Q = rank_one_projector(0.0);
    double violation = 1.0;
    try {
      const double v = point_constrained_demo(P, Q, 501, 16, cfg.seed);
      violation = std::abs(v - std::abs(std::sin(theta)));
    } catch (const Error&) {
    }
    t.record("point-constrained", 2, violation, 5e-2);
  }

  try {
    const BoundedOpenTable bo = boundedopen_truncation_demo(10, 2001);
    double rise = 0.0;
    for (size_t i = 1; i < bo.d_values.size(); ++i)
      rise = std::max(rise, bo.d_values[i] - bo.d_values[i - 1]);
    t.record("boundedopen-monotone", 10, rise, 1e-12);
    t.record("boundedopen-final", 10, pos_gap(bo.d_values.back(), 0.05), 0.0);
  } catch (const Error&) {
    t.record("boundedopen-monotone", 10, 1.0, 1e-12);
  }

  try {
    const NonuniquenessReport nu = nonuniqueness_demo(200, 4, 16, cfg.seed);
    t.record("nonuniq-generators", 2, pos_gap(0.3, nu.generator_gap), 0.0);
    t.record("nonuniq-closure", 2,
             pos_gap(nu.closure_gap, 4.0 * kPi / 200.0), 0.0);
  } catch (const Error&) {
    t.record("nonuniq-closure", 2, 1.0, 0.0);
  }
  return t.done(1);
}

using SuiteFn = SuiteReport (*)(const CampaignConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> reg = {
      {"m2", suite_m2},
      {"distance-inequalities", suite_distance_inequalities},
      {"hf-attainment", suite_hf_attainment},
      {"projection-suite", suite_projection},
      {"approximants", suite_approximants},
      {"duality", suite_duality},
      {"boolean-filters", suite_boolean},
      {"filter-predicates", suite_filter_predicates},
      {"compact-identities", suite_compact},
      {"bounded-eqvs", suite_bounded_eqvs},
      {"interpolation", suite_interpolation},
      {"modulus-curves", suite_modulus},
      {"gallery", suite_gallery},
  };
  return reg;
}

SuiteFn find_suite(const std::string& name) {
  for (const auto& [n, fn] : suite_registry())
    if (n == name) return fn;
  throw Error("unknown_suite", "no suite named '" + name + "'");
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error("io", "write failed for '" + path + "'");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io", "cannot create directory '" + dir + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

void CampaignConfig::validate() const {
  if (trials < 1) throw Error("bad_config", "trials must be >= 1");
  if (samples < 1) throw Error("bad_config", "samples must be >= 1");
  if (sweep_seeds < 1) throw Error("bad_config", "sweep_seeds must be >= 1");
  if (dims.empty()) throw Error("bad_config", "dims must be non-empty");
  for (int d : dims)
    if (d < 2 || d > kMaxDim)
      throw Error("bad_config", "dims must lie within [2, 64]");
  for (const auto& s : suites) (void)find_suite(s);
}

void SuiteReport::finalize() {
  pass = true;
  for (const auto& [id, v] : violations) {
    const auto it = tolerances.find(id);
    const double tol = it != tolerances.end() ? it->second : 0.0;
    if (v > tol) pass = false;
  }
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, fn] : suite_registry()) out.push_back(n);
    return out;
  }();
  return names;
}

// ---------------------------------------------------------------------------
// run_verify
// ---------------------------------------------------------------------------

std::vector<SuiteReport> run_verify(const CampaignConfig& config) {
  config.validate();
  const std::vector<std::string>& names =
      config.suites.empty() ? known_suites() : config.suites;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      config.threads > 0 ? (unsigned)config.threads : hw;

  std::vector<SuiteReport> reports(names.size());
  std::vector<std::future<void>> futures;
  size_t next = 0;
  std::mutex mu;
  const auto worker = [&]() {
    for (;;) {
      size_t idx;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (next >= names.size()) return;
        idx = next++;
      }
      const auto start = std::chrono::steady_clock::now();
      SuiteReport rep = find_suite(names[idx])(config);
      rep.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      reports[idx] = std::move(rep);
    }
  };
  if (workers <= 1 || names.size() <= 1) {
    worker();
  } else {
    futures.reserve(workers);
    for (unsigned w = 0; w < std::min<size_t>(workers, names.size()); ++w)
      futures.push_back(std::async(std::launch::async, worker));
    for (auto& f : futures) f.get();
  }

  if (!config.out_dir.empty()) {
    ensure_dir(config.out_dir);
    for (const auto& rep : reports) {
      const std::string stem = config.out_dir + "/verify-" + rep.suite;
      write_file(stem + ".json", report_to_json(rep));
      write_file(stem + ".csv", report_to_csv(rep));
    }
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Demos
// ---------------------------------------------------------------------------

namespace {

int arg_int(const std::map<std::string, std::string>& args,
            const std::string& key, int fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw Error("bad_config", "integer expected for '" + key + "'");
  }
}

double arg_double(const std::map<std::string, std::string>& args,
                  const std::string& key, double fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw Error("bad_config", "number expected for '" + key + "'");
  }
}

std::vector<double> arg_list(const std::map<std::string, std::string>& args,
                             const std::string& key,
                             std::vector<double> fallback) {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  std::vector<double> out;
  for (const auto& tok : split(it->second, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error("bad_config", "number list expected for '" + key + "'");
    }
  }
  if (out.empty()) throw Error("bad_config", "empty list for '" + key + "'");
  return out;
}

bool arg_flag(const std::map<std::string, std::string>& args,
              const std::string& key) {
  auto it = args.find(key);
  return it != args.end() && it->second != "0" && it->second != "false";
}

DemoResult demo_m2() {
  const M2Report r = m2_counterexample();
  std::ostringstream text, csv;
  text << "2x2 counterexample: a = [[1,1],[1,1]], b = diag(4, 0)\n"
       << "  h(a,b)          = " << r.h << "  (pinned: sqrt(5) - 1)\n"
       << "  p(a,b)          = " << r.p << "  (pinned: sqrt(2))\n"
       << "  p(a,c)          = " << r.p_ac << "  with c = a + (b-a)+\n"
       << "  p(c,b)          = " << r.p_cb << "\n"
       << "  triangle margin = " << r.violation
       << "  (p(a,b) - p(a,c) - p(c,b) > 0: the triangle inequality fails)\n"
       << "  |a - b/2|       = " << r.norm_at_half << "\n";
  csv << "quantity,value\n"
      << "h," << fmt17(r.h) << "\np," << fmt17(r.p) << "\np_ac,"
      << fmt17(r.p_ac) << "\np_cb," << fmt17(r.p_cb) << "\nviolation,"
      << fmt17(r.violation) << "\nnorm_at_half," << fmt17(r.norm_at_half)
      << "\n";
  return {text.str(), {{"m2.csv", csv.str()}}};
}

DemoResult demo_wiggle(const std::map<std::string, std::string>& args) {
  const std::vector<double> eps = arg_list(args, "eps", {0.5, 0.1, 0.01});
  const int m = arg_int(args, "grid", 10000);
  const auto rows = wiggle_demo(eps, m);

  std::ostringstream text, csv;
  text << "wiggling rank-one fields on " << m << " grid points\n";
  text << "  eps        e(p0,p_eps)   c(p,p_eps)   c∘e bound   |sin eps|\n";
  csv << "epsilon,e_value,c_value,compose_bound,sin_bound,resolution_warning\n";
  for (const auto& r : rows) {
    text << "  " << r.epsilon << "  " << r.e_value << "  " << r.c_value
         << "  " << r.compose_bound << "  " << r.sin_bound
         << (r.resolution_warning ? "  [resolution warning]" : "") << "\n";
    csv << fmt17(r.epsilon) << ',' << fmt17(r.e_value) << ','
        << fmt17(r.c_value) << ',' << fmt17(r.compose_bound) << ','
        << fmt17(r.sin_bound) << ',' << (r.resolution_warning ? 1 : 0)
        << "\n";
  }
  text << "c stays at 1 for every eps > 0 while the metric leg shrinks:\n"
       << "interior containment is not controlled by the norm distance.\n";

  DemoResult out{text.str(), {{"wiggle.csv", csv.str()}}};
  if (arg_flag(args, "plot")) {
    for (double e : eps) {
      const WiggleFamily fam = WiggleFamily::make(e, m);
      const Mat p0 = rank_one_projector(0.0).mat();
      std::ostringstream series;
      series << "x,value\n";
      for (int i = 0; i < fam.field.points(); ++i)
        series << fmt17(fam.field.x(i)) << ','
               << fmt17(dist_e(p0, fam.field.value(i))) << "\n";
      out.files["wiggle-plot-eps" + fmt17(e) + ".csv"] = series.str();
    }
  }
  return out;
}

DemoResult demo_point_constrained(
    const std::map<std::string, std::string>& args) {
  const double theta = arg_double(args, "theta", kPi / 6.0);
  const int m = arg_int(args, "grid", 501);
  const Projection P = rank_one_projector(theta);
  const Projection Q = rank_one_projector(0.0);
  const double v = point_constrained_demo(P, Q, m);
  std::ostringstream text, csv;
  text << "subalgebra {f : f(0) in C·Q}, constant field P at angle theta = "
       << theta << "\n"
       << "  sampled inf of d(p, a) = " << v << "\n"
       << "  |P - Q|                = " << std::abs(std::sin(theta)) << "\n"
       << "the best in-model approximation moves exactly |P - Q|.\n";
  csv << "theta,value,expected\n"
      << fmt17(theta) << ',' << fmt17(v) << ','
      << fmt17(std::abs(std::sin(theta))) << "\n";
  return {text.str(), {{"point-constrained.csv", csv.str()}}};
}

DemoResult demo_boundedopen(const std::map<std::string, std::string>& args) {
  const int modes = arg_int(args, "modes", 10);
  const int m = arg_int(args, "grid", 2001);
  const BoundedOpenTable bo = boundedopen_truncation_demo(modes, m);
  std::ostringstream text, csv;
  text << "open-projection truncation with " << modes << " modes on " << m
       << " grid points\n  n    d(p, a_n)\n";
  csv << "n,d_value\n";
  for (size_t i = 0; i < bo.d_values.size(); ++i) {
    text << "  " << (i + 1) << "    " << bo.d_values[i] << "\n";
    csv << (i + 1) << ',' << fmt17(bo.d_values[i]) << "\n";
  }
  text << "the distances decrease toward 0: p is approximated from inside\n"
       << "by bounded elements even though no single one dominates it.\n";
  return {text.str(), {{"boundedopen.csv", csv.str()}}};
}

DemoResult demo_nonuniqueness(const std::map<std::string, std::string>& args) {
  const int m = arg_int(args, "grid", 200);
  const int funcs = arg_int(args, "funcs", 4);
  const NonuniquenessReport nu = nonuniqueness_demo(m, funcs);
  std::ostringstream text, csv;
  text << "two shrinking-support generator families over " << m
       << " grid points\n"
       << "  generator Hausdorff gap = " << nu.generator_gap
       << "  (the families are far apart)\n"
       << "  closure gauge gap       = " << nu.closure_gap
       << "  (their closures agree within grid resolution)\n";
  csv << "generator_gap,closure_gap\n"
      << fmt17(nu.generator_gap) << ',' << fmt17(nu.closure_gap) << "\n";
  return {text.str(), {{"nonuniqueness.csv", csv.str()}}};
}

DemoResult demo_boolean(const std::map<std::string, std::string>& args) {
  const int n = arg_int(args, "n", 3);
  const BooleanFilterReport rep = filter_eqvs_boolean(BooleanModel{n});
  std::ostringstream text;
  text << "Boolean model on " << n << " atoms: " << rep.subsets_checked
       << " subsets checked\n"
       << "  filters found        : " << rep.filter_count << "  (expected "
       << ((1u << n) + 1) << ")\n"
       << "  predicate mismatches : " << rep.mismatch_count << "\n";
  return {text.str(),
          {{"boolean-filters-n" + std::to_string(n) + ".json",
            rep.to_json()}}};
}

}  // namespace

const std::vector<std::string>& known_demos() {
  static const std::vector<std::string> names = {
      "m2",          "wiggle",        "point-constrained",
      "boundedopen", "nonuniqueness", "boolean-filters"};
  return names;
}

void write_demo_files(const std::string& dir, const DemoResult& result) {
  ensure_dir(dir);
  for (const auto& [file, contents] : result.files)
    write_file(dir + "/" + file, contents);
}

DemoResult run_demo(const std::string& name,
                    const std::map<std::string, std::string>& args) {
  if (name == "m2") return demo_m2();
  if (name == "wiggle") return demo_wiggle(args);
  if (name == "point-constrained") return demo_point_constrained(args);
  if (name == "boundedopen") return demo_boundedopen(args);
  if (name == "nonuniqueness") return demo_nonuniqueness(args);
  if (name == "boolean-filters") return demo_boolean(args);
  throw Error("unknown_demo", "no demo named '" + name + "'");
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

std::vector<SuiteReport> run_sweep(const CampaignConfig& config) {
  config.validate();
  // Dimension-parametric suites only; lattice/gallery checks do not vary
  // across the sweep grid.
  static const std::vector<std::string> sweep_default = {
      "distance-inequalities", "hf-attainment", "projection-suite",
      "approximants",          "duality",       "compact-identities",
      "bounded-eqvs",          "interpolation", "modulus-curves"};
  const std::vector<std::string>& names =
      config.suites.empty() ? sweep_default : config.suites;

  std::vector<SuiteReport> cells;
  for (int dim : config.dims) {
    for (int s = 0; s < config.sweep_seeds; ++s) {
      CampaignConfig cell = config;
      cell.suites = names;
      cell.dims = {dim};
      cell.seed = config.seed + (uint64_t)s;
      cell.out_dir.clear();
      std::vector<SuiteReport> reports = run_verify(cell);
      for (auto& r : reports) cells.push_back(std::move(r));
    }
  }

  if (!config.out_dir.empty()) {
    ensure_dir(config.out_dir);
    for (const auto& suite : names) {
      std::ostringstream csv;
      csv << "inequality_id,n,trials,max_violation,seed\n";
      for (const auto& cell : cells) {
        if (cell.suite != suite) continue;
        for (const auto& [id, dims] : cell.by_dim)
          for (const auto& [dim, v] : dims)
            csv << id << ',' << dim << ',' << cell.trials << ',' << fmt17(v)
                << ',' << cell.seed << "\n";
      }
      write_file(config.out_dir + "/sweep-" + suite + ".csv", csv.str());
    }
    std::ostringstream summary;
    summary << "suite,inequality_id,max_violation,tolerance,pass\n";
    std::map<std::pair<std::string, std::string>, std::pair<double, double>>
        agg;
    for (const auto& cell : cells)
      for (const auto& [id, v] : cell.violations) {
        auto& slot = agg[{cell.suite, id}];
        slot.first = std::max(slot.first, v);
        slot.second = cell.tolerances.at(id);
      }
    for (const auto& [key, val] : agg)
      summary << key.first << ',' << key.second << ',' << fmt17(val.first)
              << ',' << fmt17(val.second) << ','
              << (val.first <= val.second ? 1 : 0) << "\n";
    write_file(config.out_dir + "/sweep-summary.csv", summary.str());
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string report_to_json(const SuiteReport& report) {
  std::ostringstream out;
  out << "{\"suite\":\"" << report.suite << "\",\"trials\":" << report.trials
      << ",\"violations\":{";
  bool first = true;
  for (const auto& [id, v] : report.violations) {
    if (!first) out << ',';
    first = false;
    out << '"' << id << "\":" << fmt17(v);
  }
  out << "},\"pass\":" << (report.pass ? "true" : "false")
      << ",\"seed\":" << report.seed << "}\n";
  return out.str();
}

std::string report_to_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "inequality_id,n,trials,max_violation,seed\n";
  for (const auto& [id, dims] : report.by_dim)
    for (const auto& [dim, v] : dims)
      out << id << ',' << dim << ',' << report.trials << ',' << fmt17(v)
          << ',' << report.seed << "\n";
  return out.str();
}

std::map<std::string, std::string> parse_kv_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw Error("bad_config", "expected key=value, got '" + stripped + "'");
    out[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return out;
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kv_text(buf.str());
}

CampaignConfig config_from_kv(const std::map<std::string, std::string>& kv) {
  const auto to_int = [](const std::string& key, const std::string& value) {
    try {
      return std::stoi(value);
    } catch (const std::exception&) {
      throw Error("bad_config", "integer expected for '" + key + "'");
    }
  };
  const auto to_u64 = [](const std::string& key, const std::string& value) {
    try {
      return static_cast<uint64_t>(std::stoull(value));
    } catch (const std::exception&) {
      throw Error("bad_config", "integer expected for '" + key + "'");
    }
  };
  const auto to_double = [](const std::string& key, const std::string& value) {
    try {
      return std::stod(value);
    } catch (const std::exception&) {
      throw Error("bad_config", "number expected for '" + key + "'");
    }
  };

  CampaignConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "suites") {
      cfg.suites = split(value, ',');
    } else if (key == "dims") {
      cfg.dims.clear();
      for (const auto& tok : split(value, ','))
        cfg.dims.push_back(to_int(key, tok));
    } else if (key == "trials") {
      cfg.trials = to_int(key, value);
    } else if (key == "samples") {
      cfg.samples = to_int(key, value);
    } else if (key == "seed") {
      cfg.seed = to_u64(key, value);
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "sweep_seeds") {
      cfg.sweep_seeds = to_int(key, value);
    } else if (key == "threads") {
      cfg.threads = to_int(key, value);
    } else if (key.rfind("tol.", 0) == 0) {
      cfg.tolerances[key.substr(4)] = to_double(key, value);
    } else {
      throw Error("bad_config", "unknown config key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace opalg
