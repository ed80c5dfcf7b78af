#include "entlab/groups.hpp"

#include <Eigen/QR>
#include <cmath>

namespace entlab {

GroupSpec GroupSpec::validated(GroupSpec g) {
  require(g.n >= 1, ErrorCode::InvalidParameter, "group dimension must be >= 1");
  if (g.family == GroupFamily::SO)
    require(g.n >= 2, ErrorCode::InvalidParameter,
            "SO(n) requires n >= 2; SO(1) is trivial and excluded");
  return g;
}

GroupElement GroupElement::make(DenseMatrix m, GroupSpec group) {
  GroupSpec::validated(group);
  require(m.n() == group.n, ErrorCode::InvalidParameter,
          "element dimension does not match " + group.name());
  const Mat& u = m.entries();
  double ud = max_abs(u.adjoint() * u - Mat::Identity(group.n, group.n));
  require(ud <= 1e-10, ErrorCode::InvalidParameter,
          "unitarity defect " + std::to_string(ud) + " exceeds 1e-10");
  if (group.family == GroupFamily::SO) {
    require(m.field() == Field::Real, ErrorCode::InvalidParameter,
            "SO element must be real");
    double det = u.real().determinant();
    require(std::abs(det - 1.0) <= 1e-10, ErrorCode::InvalidParameter,
            "SO determinant " + std::to_string(det) + " is not +1");
  } else {
    require(m.field() == Field::Complex, ErrorCode::InvalidParameter,
            "U element must be complex-tagged");
  }
  return GroupElement(std::move(m), group, ud);
}

GroupElement GroupElement::identity(GroupSpec group) {
  return make(DenseMatrix::identity(group.n, group.field()), group);
}

GroupElement GroupElement::inverse() const {
  Mat inv = entries().adjoint();
  if (group_.family == GroupFamily::SO) {
    Mat r = Mat::Zero(group_.n, group_.n);
    r.real() = inv.real();
    return make(DenseMatrix(std::move(r), Field::Real), group_);
  }
  return make(DenseMatrix(std::move(inv), Field::Complex), group_);
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  require(group_ == rhs.group_, ErrorCode::InvalidParameter,
          "group mismatch in element product");
  Mat prod = entries() * rhs.entries();
  if (group_.family == GroupFamily::SO) {
    Mat r = Mat::Zero(group_.n, group_.n);
    r.real() = prod.real();
    return make(DenseMatrix(std::move(r), Field::Real), group_);
  }
  return make(DenseMatrix(std::move(prod), Field::Complex), group_);
}

TangentVector TangentVector::make(DenseMatrix m, GroupSpec group) {
  GroupSpec::validated(group);
  require(m.n() == group.n, ErrorCode::InvalidParameter,
          "tangent dimension does not match " + group.name());
  double sd = max_abs(m.entries() + m.entries().adjoint());
  require(sd <= 1e-12, ErrorCode::InvalidParameter,
          "skew-Hermitian defect " + std::to_string(sd) + " exceeds 1e-12");
  if (group.family == GroupFamily::SO)
    require(m.field() == Field::Real, ErrorCode::InvalidParameter,
            "so(n) tangent must be real");
  return TangentVector(std::move(m), group);
}

TangentVector TangentVector::from_raw(const Mat& m, GroupSpec group) {
  Mat s = skew_part(m, group.field());
  return make(DenseMatrix(std::move(s), group.field()), group);
}

TangentVector TangentVector::zero(GroupSpec group) {
  return TangentVector(DenseMatrix::zero(group.n, group.field()), group);
}

TangentVector TangentVector::scaled(double t) const {
  return TangentVector(DenseMatrix(Mat(t * entries()), matrix_.field()), group_);
}

GroupElement haar_sample(const GroupSpec& group, RandomStream& rng) {
  GroupSpec::validated(group);
  const int n = group.n;
  if (group.family == GroupFamily::U) {
    Mat g(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
      Complex d = r(j, j);
      double a = std::abs(d);
      Complex phase = (a > 0.0) ? d / a : Complex(1.0, 0.0);
      q.col(j) *= phase;
    }
    return GroupElement::make(DenseMatrix(std::move(q), Field::Complex), group);
  }
  RealMat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.next_gaussian();
  Eigen::HouseholderQR<RealMat> qr(g);
  RealMat q = qr.householderQ();
  RealMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(n - 1) = -q.col(n - 1);
  return GroupElement::make(DenseMatrix::from_real(q), group);
}

TangentVector project_tangent(const GroupSpec& group, const DenseMatrix& m) {
  GroupSpec::validated(group);
  require(m.n() == group.n, ErrorCode::InvalidParameter,
          "projection input dimension does not match " + group.name());
  return TangentVector::from_raw(m.entries(), group);
}

TangentVector random_tangent(const GroupSpec& group, NormSpec p, double radius,
                             RandomStream& rng) {
  require(radius > 0.0, ErrorCode::InvalidParameter,
          "random_tangent radius must be positive");
  const int n = group.n;
  Mat g(n, n);
  if (group.family == GroupFamily::U) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
  } else {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = Complex(rng.next_gaussian(), 0.0);
  }
  Mat x = skew_part(g, group.field());
  double nx = schatten_norm(x, p);
  if (nx == 0.0) return TangentVector::zero(group);
  double target = radius * rng.next_open_double();
  x *= target / nx;
  return TangentVector::make(DenseMatrix(std::move(x), group.field()), group);
}

std::vector<Mat> lie_algebra_basis(const GroupSpec& group) {
  GroupSpec::validated(group);
  const int n = group.n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Mat> basis;
  basis.reserve(group.lie_dim());
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Mat b = Mat::Zero(n, n);
      b(j, k) = Complex(inv_sqrt2, 0.0);
      b(k, j) = Complex(-inv_sqrt2, 0.0);
      basis.push_back(std::move(b));
      if (group.family == GroupFamily::U) {
        Mat c = Mat::Zero(n, n);
        c(j, k) = Complex(0.0, inv_sqrt2);
        c(k, j) = Complex(0.0, inv_sqrt2);
        basis.push_back(std::move(c));
      }
    }
  }
  if (group.family == GroupFamily::U) {
    for (int j = 0; j < n; ++j) {
      Mat d = Mat::Zero(n, n);
      d(j, j) = Complex(0.0, 1.0);
      basis.push_back(std::move(d));
    }
  }
  return basis;
}

GroupElement exp_tangent(const TangentVector& x) {
  Mat u = expm_skew(x.entries(), x.group().field());
  return GroupElement::make(DenseMatrix(std::move(u), x.group().field()),
                            x.group());
}

TangentVector log_element(const GroupElement& u) {
  Mat x = logm_unitary(u.entries(), u.group().field());
  return TangentVector::make(DenseMatrix(std::move(x), u.group().field()),
                             u.group());
}

TangentVector commutator(const TangentVector& x, const TangentVector& y) {
  require(x.group() == y.group(), ErrorCode::InvalidParameter,
          "commutator group mismatch");
  Mat c = commutator(x.entries(), y.entries());
  return TangentVector::from_raw(c, x.group());
}

}  // namespace entlab
