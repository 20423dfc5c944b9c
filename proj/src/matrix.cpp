#include "opalg/matrix.hpp"

#include <cmath>

namespace opalg {

Mat::Mat(int n) {
  require_valid_dim(n, "Mat");
  n_ = n;
  a_.assign(static_cast<size_t>(n) * n, cplx{0.0, 0.0});
}

Mat Mat::identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::from_parts(int n, const std::vector<double>& re,
                    const std::vector<double>& im) {
  require_valid_dim(n, "Mat::from_parts");
  const size_t want = static_cast<size_t>(n) * n;
  if (re.size() != want || (!im.empty() && im.size() != want)) {
    throw Error("bad_shape", "matrix parts have wrong length");
  }
  Mat m(n);
  for (size_t k = 0; k < want; ++k) {
    m.data()[k] = cplx{re[k], im.empty() ? 0.0 : im[k]};
  }
  if (!m.all_finite()) {
    throw Error("non_finite", "matrix entries must be finite");
  }
  return m;
}

Mat Mat::adjoint() const {
  Mat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

Mat Mat::hermitized() const {
  Mat r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      r.at(i, j) = 0.5 * (at(i, j) + std::conj(at(j, i)));
  return r;
}

bool Mat::is_hermitian(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

bool Mat::all_finite() const {
  for (const cplx& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

Mat& Mat::operator+=(const Mat& o) {
  require_dim_match(*this, o, "operator+=");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  require_dim_match(*this, o, "operator-=");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Mat& Mat::operator*=(cplx s) {
  for (cplx& z : a_) z *= s;
  return *this;
}

double Mat::frobenius() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

double Mat::max_abs() const {
  double m = 0.0;
  for (const cplx& z : a_) m = std::max(m, std::abs(z));
  return m;
}

cplx Mat::trace() const {
  cplx t{0.0, 0.0};
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

Mat operator+(Mat a, const Mat& b) {
  a += b;
  return a;
}

Mat operator-(Mat a, const Mat& b) {
  a -= b;
  return a;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_dim_match(a, b, "operator*");
  const int n = a.dim();
  Mat r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const cplx aik = a.at(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  }
  return r;
}

Mat operator*(cplx s, Mat a) {
  a *= s;
  return a;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  require_dim_match(a, b, "max_abs_diff");
  double m = 0.0;
  for (size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

void require_dim_match(const Mat& a, const Mat& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw Error("dim_mismatch",
                std::string(where) + ": matrix dimensions do not match");
  }
}

void require_valid_dim(int n, const char* where) {
  if (n < 1 || n > kMaxDim) {
    throw Error("bad_dim", std::string(where) + ": dimension must be in [1, " +
                               std::to_string(kMaxDim) + "]");
  }
}

}  // namespace opalg
