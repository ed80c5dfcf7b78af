#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <string>

#include "entlab/errors.hpp"

namespace entlab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;

enum class Field { Real, Complex };

/// Schatten index p in [1, inf]; p = inf selects the operator norm and
/// the induced intrinsic metric.
struct NormSpec {
  double p;

  static NormSpec schatten(double p) {
    require(p >= 1.0, ErrorCode::InvalidParameter,
            "Schatten index must satisfy p >= 1, got " + std::to_string(p));
    return NormSpec{p};
  }
  static NormSpec op() { return NormSpec{std::numeric_limits<double>::infinity()}; }
  static NormSpec frobenius() { return NormSpec{2.0}; }
  static NormSpec trace_class() { return NormSpec{1.0}; }

  bool is_inf() const { return std::isinf(p); }
  std::string label() const;
};

/// Square complex matrix with a field tag. Real-tagged matrices have
/// exactly zero imaginary parts, enforced at construction.
class DenseMatrix {
 public:
  DenseMatrix(Mat entries, Field field);

  static DenseMatrix from_real(const RealMat& m);
  static DenseMatrix from_complex(Mat m) { return DenseMatrix(std::move(m), Field::Complex); }
  static DenseMatrix zero(int n, Field field);
  static DenseMatrix identity(int n, Field field);

  int n() const { return static_cast<int>(entries_.rows()); }
  Field field() const { return field_; }
  const Mat& entries() const { return entries_; }
  RealMat real_entries() const { return entries_.real(); }

  bool same_shape(const DenseMatrix& other) const {
    return n() == other.n() && field_ == other.field_;
  }

 private:
  Mat entries_;
  Field field_;
};

struct SpectralDecomposition {
  Vec eigenvalues;   // sorted by (argument, modulus), deterministic
  Mat eigenvectors;  // columns orthonormal
  double residual;   // achieved max-abs reconstruction residual
  double orthonormality_defect;
  int cleanup_sweeps;

  Mat reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

/// Numeric tolerances used by the kernel; every default below is a
/// configuration value, and achieved residuals are reported back.
struct MatTolerances {
  double normality_rel = 1e-8;       // ||mm* - m*m|| <= rel * ||m||^2
  double cluster_gap = 1e-6;         // stage-2 refinement grouping
  double cleanup_offdiag = 1e-13;    // target off-diagonal after sweeps
  int max_cleanup_sweeps = 16;
  double reconstruction_rel = 1e-9;  // invariant on the decomposition
  double skew_tol = 1e-12;           // tangent-vector admission
  double branch_pair_tol = 1e-7;     // -1 eigenvalue detection for SO logs
};

inline const MatTolerances& default_tolerances() {
  static const MatTolerances tols{};
  return tols;
}

double max_abs(const Mat& m);
double operator_norm(const Mat& m);

/// Schatten p-norm of an arbitrary square matrix via singular values.
double schatten_norm(const Mat& m, NormSpec p);
double schatten_norm(const DenseMatrix& m, NormSpec p);

/// Eigendecomposition of a normal matrix. Reduces to Hermitian problems:
/// first the Hermitian part, then per-cluster refinement with the
/// skew-Hermitian part, then pairwise cleanup sweeps for anything the
/// two stages left coupled.
SpectralDecomposition eig_normal(const Mat& m,
                                 const MatTolerances& tols = default_tolerances());
SpectralDecomposition eig_normal(const DenseMatrix& m,
                                 const MatTolerances& tols = default_tolerances());

/// Same decomposition without the normality precheck and the norm-based
/// invariant asserts; for matrices normal by construction in hot loops.
SpectralDecomposition eig_normal_fast(const Mat& m,
                                      const MatTolerances& tols = default_tolerances());

/// exp of a skew-Hermitian (or real skew-symmetric) matrix; the result is
/// unitary (orthogonal for real input).
Mat expm_skew(const Mat& x, Field field);

/// Principal logarithm of a unitary matrix: eigenvalue arguments in
/// (-pi, pi], ties at -pi mapped to +pi, so ||x||_op <= pi. For real
/// orthogonal input the -1 eigenvalues are paired into real 2x2 blocks;
/// odd multiplicity within tolerance raises a branch-ambiguity error.
Mat logm_unitary(const Mat& u, Field field,
                 const MatTolerances& tols = default_tolerances());

/// Principal log without the unitarity precheck and round-trip
/// verification; for inputs unitary by construction in hot loops.
Mat logm_unitary_fast(const Mat& u, Field field,
                      const MatTolerances& tols = default_tolerances());

Mat commutator(const Mat& x, const Mat& y);

/// Exact skew-Hermitian projection (m - m*)/2, real part only for Real.
Mat skew_part(const Mat& m, Field field);

}  // namespace entlab
