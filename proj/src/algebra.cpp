#include "opalg/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "opalg/rng.hpp"

namespace opalg {

namespace {

/// Rebuild V clip(diag) V* from a decomposition.
Mat rebuild_clipped(const EigResult& e, double lo, double hi) {
  return e.apply([lo, hi](double x) { return std::min(hi, std::max(lo, x)); });
}

}  // namespace

HermMatrix::HermMatrix(Mat m, double tol) {
  if (m.empty()) throw Error("bad_dim", "HermMatrix: empty matrix");
  if (!m.all_finite()) throw Error("non_finite", "HermMatrix: entries must be finite");
  if (!m.is_hermitian(tol * std::max(1.0, m.max_abs()))) {
    throw Error("not_hermitian", "HermMatrix: input is not Hermitian");
  }
  m_ = m.hermitized();
}

PosContraction::PosContraction(const Mat& m, double tol) {
  HermMatrix h(m, tol);  // validates shape and symmetry
  eig_ = herm_eig(h.mat());
  if (eig_.min_value() < -tol || eig_.max_value() > 1.0 + tol) {
    throw Error("not_pos_contraction",
                "PosContraction: spectrum outside [0,1] beyond tolerance");
  }
  m_ = rebuild_clipped(eig_, 0.0, 1.0);
  for (double& v : eig_.values) v = std::min(1.0, std::max(0.0, v));
}

Mat PosContraction::sqrt() const {
  return eig_.apply([](double x) { return std::sqrt(std::max(0.0, x)); });
}

Mat PosContraction::complement() const {
  return Mat::identity(m_.dim()) - m_;
}

Projection::Projection(const Mat& m, double tol) {
  HermMatrix h(m, 1e-8);
  const Mat& hm = h.mat();
  if (op_norm(hm * hm - hm) > tol) {
    throw Error("not_projection", "Projection: p*p differs from p");
  }
  const EigResult e = herm_eig(hm);
  Mat snapped = e.apply([](double x) { return x >= 0.5 ? 1.0 : 0.0; });
  rank_ = 0;
  for (double v : e.values) rank_ += v >= 0.5 ? 1 : 0;
  m_ = snapped;
}

Mat Projection::complement() const { return Mat::identity(m_.dim()) - m_; }

Quasistate::Quasistate(const Mat& m, double tol) {
  HermMatrix h(m, tol);
  const EigResult e = herm_eig(h.mat());
  if (e.min_value() < -tol) {
    throw Error("not_psd", "Quasistate: density matrix must be PSD");
  }
  double tr = 0.0;
  for (double v : e.values) tr += std::max(0.0, v);
  if (tr > 1.0 + tol) {
    throw Error("trace_exceeds_one", "Quasistate: trace must be at most 1");
  }
  m_ = e.apply([](double x) { return std::max(0.0, x); });
}

double quasistate_eval(const Quasistate& rho, const Mat& a) {
  require_dim_match(rho.mat(), a, "quasistate_eval");
  const cplx t = (rho.mat() * a).trace();
  if (a.is_hermitian(1e-9 * std::max(1.0, a.max_abs())) &&
      std::abs(t.imag()) > 1e-12 * std::max(1.0, a.max_abs())) {
    throw Error("non_real_eval",
                "quasistate_eval: Hermitian argument produced complex value");
  }
  return t.real();
}

// ---------------------------------------------------------------------------
// SubalgebraSpec
// ---------------------------------------------------------------------------

namespace {

/// Sample-based sanity check that the described set is closed under the
/// *-algebra operations.  Masked patterns are closed by construction, so a
/// handful of random draws is enough to catch a malformed spec.
void check_closure_by_sampling(const SubalgebraSpec& spec) {
  if (!spec.is_matrix_model() || spec.dim == 0) return;
  Rng rng(0x5eedULL, fnv1a64("subalgebra-closure"), static_cast<uint64_t>(spec.dim));
  for (int trial = 0; trial < 4; ++trial) {
    Mat x(spec.dim), y(spec.dim);
    for (int i = 0; i < spec.dim; ++i) {
      for (int j = 0; j < spec.dim; ++j) {
        if (!spec.mask(i, j)) continue;
        x.at(i, j) = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        y.at(i, j) = cplx{rng.uniform(-1, 1), rng.uniform(-1, 1)};
      }
    }
    const double tol = 1e-12;
    if (!spec.contains(x + y, tol) || !spec.contains(x * y, tol) ||
        !spec.contains(x.adjoint(), tol) ||
        !spec.contains(cplx{0.5, 0.25} * x, tol)) {
      throw Error("not_closed", "SubalgebraSpec: description is not closed");
    }
  }
}

}  // namespace

SubalgebraSpec SubalgebraSpec::full_algebra(int n) {
  require_valid_dim(n, "SubalgebraSpec::full");
  SubalgebraSpec s;
  s.kind = Kind::full;
  s.dim = n;
  check_closure_by_sampling(s);
  return s;
}

SubalgebraSpec SubalgebraSpec::diagonal(int n) {
  require_valid_dim(n, "SubalgebraSpec::diagonal");
  SubalgebraSpec s;
  s.kind = Kind::diagonal;
  s.dim = n;
  check_closure_by_sampling(s);
  return s;
}

SubalgebraSpec SubalgebraSpec::block_diag(std::vector<int> sizes,
                                          std::vector<bool> live) {
  SubalgebraSpec s;
  s.kind = Kind::block;
  s.dim = 0;
  for (int b : sizes) {
    if (b < 1) throw Error("bad_shape", "SubalgebraSpec: block sizes must be >= 1");
    s.dim += b;
  }
  require_valid_dim(s.dim, "SubalgebraSpec::block_diag");
  if (live.empty()) live.assign(sizes.size(), true);
  if (live.size() != sizes.size()) {
    throw Error("bad_shape", "SubalgebraSpec: live flags must match block count");
  }
  s.block_sizes = std::move(sizes);
  s.block_live = std::move(live);
  check_closure_by_sampling(s);
  return s;
}

SubalgebraSpec SubalgebraSpec::point_constrained(const std::string& description) {
  SubalgebraSpec s;
  s.kind = Kind::point_constrained;
  s.description = description;
  return s;
}

bool SubalgebraSpec::is_unital() const {
  switch (kind) {
    case Kind::full:
    case Kind::diagonal:
      return true;
    case Kind::block:
      for (bool alive : block_live)
        if (!alive) return false;
      return true;
    case Kind::point_constrained:
      return false;
  }
  return false;
}

bool SubalgebraSpec::mask(int i, int j) const {
  switch (kind) {
    case Kind::full:
      return true;
    case Kind::diagonal:
      return i == j;
    case Kind::block: {
      int start = 0;
      for (size_t b = 0; b < block_sizes.size(); ++b) {
        const int end = start + block_sizes[b];
        if (i >= start && i < end) {
          return block_live[b] && j >= start && j < end;
        }
        start = end;
      }
      return false;
    }
    case Kind::point_constrained:
      return false;
  }
  return false;
}

Mat SubalgebraSpec::compress(const Mat& m) const {
  if (!is_matrix_model()) {
    throw Error("not_matrix_model",
                "SubalgebraSpec: not a matrix-model ambient");
  }
  if (m.dim() != dim) throw Error("dim_mismatch", "SubalgebraSpec::compress");
  Mat r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (mask(i, j)) r.at(i, j) = m.at(i, j);
  return r;
}

bool SubalgebraSpec::contains(const Mat& m, double tol) const {
  if (!is_matrix_model() || m.dim() != dim) return false;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!mask(i, j) && std::abs(m.at(i, j)) > tol) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Spectral calculus
// ---------------------------------------------------------------------------

Mat complement(const Mat& a) { return Mat::identity(a.dim()) - a; }

Mat func_calc(const Mat& a, const std::function<double(double)>& f) {
  return herm_eig(a).apply(f);
}

Mat pos_part(const Mat& a) {
  return func_calc(a, [](double x) { return std::max(0.0, x); });
}

double pos_part_norm(const Mat& a) {
  return std::max(0.0, herm_eig(a).max_value());
}

bool psd_leq(const Mat& a, const Mat& b, double tol) {
  require_dim_match(a, b, "psd_leq");
  return herm_eig((b - a).hermitized()).min_value() >= -tol;
}

Mat sqrt_psd(const Mat& a, double tol) {
  const EigResult e = herm_eig(a);
  if (e.min_value() < -tol * std::max(1.0, std::abs(e.max_value()))) {
    throw Error("not_psd", "sqrt_psd: matrix has negative spectrum");
  }
  return e.apply([](double x) { return std::sqrt(std::max(0.0, x)); });
}

Projection support_projection(const Mat& a, double thr) {
  const EigResult e = herm_eig(a);
  if (e.min_value() < -1e-8 * std::max(1.0, std::abs(e.max_value()))) {
    throw Error("not_psd", "support_projection: matrix has negative spectrum");
  }
  Mat p = e.apply([thr](double x) { return x > thr ? 1.0 : 0.0; });
  return Projection(p);
}

Mat odot(const PosContraction& a, const Mat& b) {
  require_dim_match(a.mat(), b, "odot");
  const Mat s = a.sqrt();
  Mat r = s * b * s;
  if (b.is_hermitian(1e-9 * std::max(1.0, b.max_abs()))) r = r.hermitized();
  return r;
}

Projection range_projection(const Projection& p, const Projection& q) {
  require_dim_match(p.mat(), q.mat(), "range_projection");
  const Mat qperp = q.complement();
  const double d = op_norm(p.mat() * qperp);  // ‖p q⊥‖
  if (d >= 1.0 - 1e-9) {
    throw Error("not_well_supported",
                "range_projection: ‖p q⊥‖ must be below 1");
  }
  // Spectrum of qpq lies in {0} ∪ [1 − d², 1]; threshold in the gap.
  const double thr = 0.5 * (1.0 - d * d);
  const Mat qpq = (q.mat() * p.mat() * q.mat()).hermitized();
  Mat r = func_calc(qpq, [thr](double x) { return x >= thr ? 1.0 : 0.0; });
  return Projection(r);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_part(std::string& out, const Mat& m, bool imag) {
  out += '[';
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      append_double(out, imag ? m.at(i, j).imag() : m.at(i, j).real());
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

std::string matrix_to_json(const Mat& m) {
  if (m.empty()) throw Error("bad_dim", "matrix_to_json: empty matrix");
  std::string out = "{\"dim\":" + std::to_string(m.dim()) + ",\"re\":";
  append_part(out, m, false);
  out += ",\"im\":";
  append_part(out, m, true);
  out += '}';
  return out;
}

Mat matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad_json", std::string("matrix_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw Error("bad_json", "matrix_from_json: need {dim, re[, im]}");
  }
  const int n = j["dim"].get<int>();
  require_valid_dim(n, "matrix_from_json");
  auto read_part = [&](const char* key, std::vector<double>& flat) {
    if (!j.contains(key)) return;
    const auto& rows = j[key];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
      throw Error("bad_shape", "matrix_from_json: part has wrong row count");
    }
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        throw Error("bad_shape", "matrix_from_json: ragged rows");
      }
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
  };
  std::vector<double> re, im;
  read_part("re", re);
  read_part("im", im);
  return Mat::from_parts(n, re, im);
}

}  // namespace opalg
