#pragma once

#include <string>
#include <vector>

#include "entlab/matcore.hpp"
#include "entlab/rng.hpp"

namespace entlab {

enum class GroupFamily { U, SO };

struct GroupSpec {
  GroupFamily family;
  int n;

  static GroupSpec unitary(int n) { return validated({GroupFamily::U, n}); }
  static GroupSpec special_orthogonal(int n) {
    return validated({GroupFamily::SO, n});
  }
  static GroupSpec validated(GroupSpec g);

  int lie_dim() const {
    return family == GroupFamily::U ? n * n : n * (n - 1) / 2;
  }
  Field field() const {
    return family == GroupFamily::U ? Field::Complex : Field::Real;
  }
  std::string name() const {
    return (family == GroupFamily::U ? "U(" : "SO(") + std::to_string(n) + ")";
  }
  bool operator==(const GroupSpec& o) const {
    return family == o.family && n == o.n;
  }
};

/// Unitary / special orthogonal matrix with its validity witnesses (the
/// achieved unitarity and determinant defects).
class GroupElement {
 public:
  static GroupElement make(DenseMatrix m, GroupSpec group);
  static GroupElement identity(GroupSpec group);

  const DenseMatrix& matrix() const { return matrix_; }
  const Mat& entries() const { return matrix_.entries(); }
  const GroupSpec& group() const { return group_; }
  double unitarity_defect() const { return unitarity_defect_; }

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& rhs) const;

 private:
  GroupElement(DenseMatrix m, GroupSpec g, double ud)
      : matrix_(std::move(m)), group_(g), unitarity_defect_(ud) {}
  DenseMatrix matrix_;
  GroupSpec group_;
  double unitarity_defect_;
};

/// Skew-Hermitian (skew-symmetric for SO) matrix in the Lie algebra.
class TangentVector {
 public:
  static TangentVector make(DenseMatrix m, GroupSpec group);
  /// Projects away the tiny symmetric part accumulated by arithmetic
  /// before validating; the result is exactly skew.
  static TangentVector from_raw(const Mat& m, GroupSpec group);
  static TangentVector zero(GroupSpec group);

  const DenseMatrix& matrix() const { return matrix_; }
  const Mat& entries() const { return matrix_.entries(); }
  const GroupSpec& group() const { return group_; }

  TangentVector scaled(double t) const;

 private:
  TangentVector(DenseMatrix m, GroupSpec g) : matrix_(std::move(m)), group_(g) {}
  DenseMatrix matrix_;
  GroupSpec group_;
};

/// Haar sample via Gaussian orthonormalization with the diagonal-phase
/// correction that makes the distribution exactly invariant; SO samples
/// get one column sign flipped when the determinant lands at -1.
GroupElement haar_sample(const GroupSpec& group, RandomStream& rng);

/// R-linear orthogonal projection M(n) -> Lie algebra, (m - m*)/2
/// restricted to the real part for SO; orthogonal for Re tr(a*b).
TangentVector project_tangent(const GroupSpec& group, const DenseMatrix& m);

/// Gaussian skew matrix rescaled so ||x||_p = radius * u, u uniform (0,1].
TangentVector random_tangent(const GroupSpec& group, NormSpec p, double radius,
                             RandomStream& rng);

/// Orthonormal basis of the Lie algebra under Re tr(a*b).
std::vector<Mat> lie_algebra_basis(const GroupSpec& group);

/// Typed wrappers over the matcore kernel.
GroupElement exp_tangent(const TangentVector& x);
TangentVector log_element(const GroupElement& u);
TangentVector commutator(const TangentVector& x, const TangentVector& y);

}  // namespace entlab
