/**
 * @file  matrix.hpp
 * @brief Dense square complex matrices with value semantics.
 *
 * Everything in this toolkit happens inside matrix algebras of dimension
 * at most 64, so a plain dense representation is used throughout.  The
 * arithmetic here is deliberately small: products, sums, adjoints and the
 * handful of norms the rest of the library needs.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opalg {

using cplx = std::complex<double>;

/// Hard cap on matrix dimension accepted anywhere in the library.
inline constexpr int kMaxDim = 64;

/// Thrown for every precondition violation in the core library; `code` is a
/// short stable identifier so bindings can map failures without parsing text.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

/// Dense n-by-n complex matrix, row major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n);

  static Mat zero(int n) { return Mat(n); }
  static Mat identity(int n);
  /// Builds from row-major real/imaginary parts; `im` may be empty (real).
  static Mat from_parts(int n, const std::vector<double>& re,
                        const std::vector<double>& im);

  int dim() const { return n_; }
  bool empty() const { return n_ == 0; }

  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  Mat adjoint() const;
  /// Hermitian average (a + a*)/2; used to kill round-off drift.
  Mat hermitized() const;
  bool is_hermitian(double tol) const;
  bool all_finite() const;

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(cplx s);

  double frobenius() const;
  /// Largest absolute entry; cheap scale estimate.
  double max_abs() const;
  cplx trace() const;

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(cplx s, Mat a);

/// ‖a − b‖_max; convenience for tests and tolerancing.
double max_abs_diff(const Mat& a, const Mat& b);

void require_dim_match(const Mat& a, const Mat& b, const char* where = "operands");
void require_valid_dim(int n, const char* where = "dimension");

}  // namespace opalg
