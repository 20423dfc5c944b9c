#include "opalg/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace opalg {

namespace {

/// Frobenius mass of the strict off-diagonal part.
double off_diagonal_mass(const Mat& a) {
  double s = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += std::norm(a.at(i, j));
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRel = 1e-12;

}  // namespace

Mat EigResult::apply(const std::function<double(double)>& f) const {
  const int n = vectors.dim();
  // V diag(f) then times V*, hermitized to absorb round-off.
  Mat scaled(n);
  for (int i = 0; i < n; ++i) {
    const double fi = f(values[static_cast<size_t>(i)]);
    for (int k = 0; k < n; ++k) scaled.at(k, i) = vectors.at(k, i) * fi;
  }
  Mat r = scaled * vectors.adjoint();
  return r.hermitized();
}

double EigResult::max_value() const {
  return values.empty() ? 0.0 : values.back();
}

double EigResult::min_value() const {
  return values.empty() ? 0.0 : values.front();
}

EigResult herm_eig(const Mat& a, double herm_tol) {
  if (a.empty()) throw Error("bad_dim", "herm_eig: empty matrix");
  if (!a.all_finite()) throw Error("non_finite", "herm_eig: non-finite input");
  if (!a.is_hermitian(herm_tol * std::max(1.0, a.max_abs()))) {
    throw Error("not_hermitian", "herm_eig: input is not Hermitian");
  }

  const int n = a.dim();
  Mat w = a.hermitized();
  Mat v = Mat::identity(n);
  const double threshold = kOffDiagRel * std::max(1.0, w.frobenius());

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(w) <= threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = w.at(p, q);
        const double r = std::abs(apq);
        if (r <= threshold / (n * n)) continue;

        const double app = w.at(p, p).real();
        const double aqq = w.at(q, q).real();
        const cplx phase = apq / r;  // e^{i phi}
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const cplx s_pos = s * phase;             // s e^{i phi}
        const cplx s_neg = s * std::conj(phase);  // s e^{-i phi}

        // Columns: w <- w J, v <- v J.
        for (int k = 0; k < n; ++k) {
          const cplx wkp = w.at(k, p), wkq = w.at(k, q);
          w.at(k, p) = c * wkp - s_neg * wkq;
          w.at(k, q) = s_pos * wkp + c * wkq;
          const cplx vkp = v.at(k, p), vkq = v.at(k, q);
          v.at(k, p) = c * vkp - s_neg * vkq;
          v.at(k, q) = s_pos * vkp + c * vkq;
        }
        // Rows: w <- J* w.
        for (int k = 0; k < n; ++k) {
          const cplx wpk = w.at(p, k), wqk = w.at(q, k);
          w.at(p, k) = c * wpk - s_pos * wqk;
          w.at(q, k) = s_neg * wpk + c * wqk;
        }
        // The pivot is analytically zero now; make it exactly so.
        w.at(p, q) = 0.0;
        w.at(q, p) = 0.0;
      }
    }
  }

  EigResult res;
  res.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = w.at(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return diag[x] < diag[y]; });

  res.vectors = Mat(n);
  for (int i = 0; i < n; ++i) {
    res.values[static_cast<size_t>(i)] = diag[order[i]];
    for (int k = 0; k < n; ++k) res.vectors.at(k, i) = v.at(k, order[i]);
  }
  return res;
}

double herm_norm(const Mat& a) {
  const EigResult e = herm_eig(a);
  return std::max(std::abs(e.min_value()), std::abs(e.max_value()));
}

double op_norm(const Mat& m) {
  if (m.empty()) throw Error("bad_dim", "op_norm: empty matrix");
  if (m.is_hermitian(1e-12 * std::max(1.0, m.max_abs()))) {
    return herm_norm(m.hermitized());
  }
  const Mat gram = (m.adjoint() * m).hermitized();
  const double top = herm_eig(gram).max_value();
  return std::sqrt(std::max(0.0, top));
}

}  // namespace opalg
