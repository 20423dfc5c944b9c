/**
 * @file  algebra.hpp
 * @brief Validated operator types and spectral calculus.
 *
 * The library works inside the positive unit ball of a matrix algebra: most
 * quantities are positive contractions (0 <= a <= 1), projections, or
 * Hermitian elements.  Each wrapper validates its defining property at
 * construction — eigenvalues that stray outside the admissible set by more
 * than round-off are a caller bug and get rejected, while round-off sized
 * violations are clipped so that downstream spectral arithmetic never sees
 * an inadmissible operator.
 */
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "opalg/eig.hpp"
#include "opalg/matrix.hpp"

namespace opalg {

/// Hermitian element of the algebra (validated at construction).
class HermMatrix {
 public:
  explicit HermMatrix(Mat m, double tol = 1e-9);
  const Mat& mat() const { return m_; }
  operator const Mat&() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  Mat m_;
};

/// Positive contraction: 0 <= a <= 1.  Eigenvalues within 1e-9 of [0, 1]
/// are clipped onto the interval; anything worse is rejected.
class PosContraction {
 public:
  explicit PosContraction(const Mat& m, double tol = 1e-9);
  const Mat& mat() const { return m_; }
  operator const Mat&() const { return m_; }
  int dim() const { return m_.dim(); }
  /// Spectral decomposition computed during validation (ascending).
  const EigResult& eig() const { return eig_; }
  /// Positive square root (free: reuses the cached decomposition).
  Mat sqrt() const;
  /// 1 - a.
  Mat complement() const;

 private:
  Mat m_;
  EigResult eig_;
};

/// Orthogonal projection.  Accepts ‖p² − p‖ <= 1e-8 and snaps the spectrum
/// to {0, 1} so later algebra sees an exact idempotent.
class Projection {
 public:
  explicit Projection(const Mat& m, double tol = 1e-8);
  const Mat& mat() const { return m_; }
  operator const Mat&() const { return m_; }
  int dim() const { return m_.dim(); }
  int rank() const { return rank_; }
  Mat complement() const;

 private:
  Mat m_;
  int rank_ = 0;
};

/// Positive functional of norm at most one, represented by a density-like
/// matrix: rho >= 0 with trace(rho) <= 1.
class Quasistate {
 public:
  explicit Quasistate(const Mat& m, double tol = 1e-9);
  const Mat& mat() const { return m_; }
  int dim() const { return m_.dim(); }

 private:
  Mat m_;
};

/// phi(a) = Re tr(rho a); the imaginary part must vanish for Hermitian a
/// and is checked against 1e-12 scale.
double quasistate_eval(const Quasistate& rho, const Mat& a);

/// Ambient subalgebra descriptions used by the compactness checks.
///
/// `block` carries a list of diagonal block sizes plus a liveness flag per
/// block; a dead block is pinned to zero, which makes the algebra
/// non-unital (a matrix "corner").  Closure of the described set under
/// +, scalar, product and adjoint is spot-checked by sampling at
/// construction.
struct SubalgebraSpec {
  enum class Kind { full, diagonal, block, point_constrained };

  Kind kind = Kind::full;
  int dim = 0;
  std::vector<int> block_sizes;  // only for Kind::block
  std::vector<bool> block_live;  // parallel to block_sizes
  std::string description;       // only for Kind::point_constrained

  static SubalgebraSpec full_algebra(int n);
  static SubalgebraSpec diagonal(int n);
  static SubalgebraSpec block_diag(std::vector<int> sizes,
                                   std::vector<bool> live = {});
  static SubalgebraSpec point_constrained(const std::string& description);

  bool is_matrix_model() const { return kind != Kind::point_constrained; }
  bool is_unital() const;
  /// Entry (i, j) may be nonzero for members.
  bool mask(int i, int j) const;
  /// Nearest pattern member (zero out masked entries).
  Mat compress(const Mat& m) const;
  bool contains(const Mat& m, double tol) const;
};

// ---------------------------------------------------------------------------
// Spectral calculus
// ---------------------------------------------------------------------------

/// 1 − a (complement within the unit interval of the algebra).
Mat complement(const Mat& a);

/// f applied eigenvalue-wise to a Hermitian matrix.
Mat func_calc(const Mat& a, const std::function<double(double)>& f);

/// Positive part a_+ (so a = a_+ - a_- with a_± >= 0 and a_+ a_- = 0).
Mat pos_part(const Mat& a);

/// max(0, largest eigenvalue): the norm ‖a_+‖ without forming a_+.
double pos_part_norm(const Mat& a);

/// a <= b in the positive-semidefinite order, up to tol.
bool psd_leq(const Mat& a, const Mat& b, double tol = 1e-9);

/// Positive square root of a PSD matrix (small negative eigenvalues are
/// clipped; genuine negativity is rejected).
Mat sqrt_psd(const Mat& a, double tol = 1e-9);

/// Support projection of a PSD matrix: spectral projection above `thr`.
Projection support_projection(const Mat& a, double thr = 1e-9);

/// a ⊙ b = sqrt(a) b sqrt(a); the operator-weighted compression of b by a.
Mat odot(const PosContraction& a, const Mat& b);

/// Range projection [qp] of the product qp, for projections with
/// ‖p q⊥‖ < 1: the spectral projection of qpq above (1 - ‖pq⊥‖²)/2.
/// Satisfies p(q - [qp]) = 0 and sits below q.
Projection range_projection(const Projection& p, const Projection& q);

// ---------------------------------------------------------------------------
// Serialization: {"dim": n, "re": [[...]], "im": [[...]]}
// ---------------------------------------------------------------------------

/// Deterministic JSON with 17 significant digits per entry.
std::string matrix_to_json(const Mat& m);
/// Parses and validates (finite entries, square shape, dim <= 64).
Mat matrix_from_json(const std::string& text);

}  // namespace opalg
