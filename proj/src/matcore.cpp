#include "entlab/matcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace entlab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Stable Jacobi rotation for the 2x2 Hermitian block [[a, b],[conj(b), d]]
/// (a, d real): a unitary R with R* H R diagonal. The half-angle tangent
/// form stays accurate as |b| -> 0, where eigenvector formulas based on
/// lambda - a cancel catastrophically.
Eigen::Matrix2cd herm2x2_rotation(double a, Complex b, double d) {
  Eigen::Matrix2cd r = Eigen::Matrix2cd::Identity();
  double bn = std::abs(b);
  if (bn == 0.0) return r;
  Complex phase = b / bn;  // b = bn * phase
  double tau = (d - a) / (2.0 * bn);
  double t = (tau >= 0.0 ? 1.0 : -1.0) /
             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;
  r(0, 0) = Complex(c, 0.0);
  r(0, 1) = Complex(s, 0.0);
  r(1, 0) = -s * std::conj(phase);
  r(1, 1) = c * std::conj(phase);
  return r;
}

double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi) a = kPi;  // branch tie at -pi maps to +pi
  return a;
}

double offdiag_max(const Mat& t) {
  double off = 0.0;
  const int n = static_cast<int>(t.rows());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j) off = std::max(off, std::abs(t(i, j)));
  return off;
}

SpectralDecomposition eig_normal_core(const Mat& m, const MatTolerances& tols,
                                      bool full_checks) {
  const int n = static_cast<int>(m.rows());
  require(n >= 1 && m.rows() == m.cols(), ErrorCode::InvalidParameter,
          "eig_normal needs a square matrix");

  const double scale = std::max(1.0, max_abs(m));
  if (full_checks) {
    double mnorm = operator_norm(m);
    double defect = operator_norm(m * m.adjoint() - m.adjoint() * m);
    double tol = tols.normality_rel * std::max(mnorm * mnorm, 1e-300);
    require(defect <= tol, ErrorCode::NotNormal,
            "normality defect " + std::to_string(defect) + " exceeds " +
                std::to_string(tol));
  }

  // Stage 1: Hermitian part.
  Mat a = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  require(es.info() == Eigen::Success, ErrorCode::NumericFailure,
          "Hermitian eigensolver failed on the Hermitian part");
  Mat v = es.eigenvectors();
  Eigen::VectorXd avals = es.eigenvalues();

  // Stage 2: refine clusters of the Hermitian spectrum with the skew part.
  Mat b = (m - m.adjoint()) / Complex(0.0, 2.0);
  const double gap = tols.cluster_gap * scale;
  int lo = 0;
  while (lo < n) {
    int hi = lo;
    while (hi + 1 < n && avals(hi + 1) - avals(hi) <= gap) ++hi;
    if (hi > lo) {
      int w = hi - lo + 1;
      Mat bc = v.middleCols(lo, w).adjoint() * b * v.middleCols(lo, w);
      bc = Mat((bc + bc.adjoint()) / 2.0).eval();
      Eigen::SelfAdjointEigenSolver<Mat> es2(bc);
      require(es2.info() == Eigen::Success, ErrorCode::NumericFailure,
              "Hermitian eigensolver failed on a cluster compression");
      v.middleCols(lo, w) = v.middleCols(lo, w) * es2.eigenvectors();
    }
    lo = hi + 1;
  }

  // Cleanup sweeps: pairwise rotations for coupling the two stages left
  // behind (near-degenerate in one Hermitian component, split in the other).
  Mat t = v.adjoint() * m * v;
  const double target = tols.cleanup_offdiag * scale;
  int sweeps = 0;
  for (; sweeps < tols.max_cleanup_sweeps; ++sweeps) {
    if (offdiag_max(t) <= target) break;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double coupling = std::max(std::abs(t(i, j)), std::abs(t(j, i)));
        if (coupling <= target) continue;
        Complex tij = t(i, j), tji = t(j, i), tii = t(i, i), tjj = t(j, j);
        Complex hb = (tij + std::conj(tji)) / 2.0;
        double ha = tii.real(), hd = tjj.real();
        Complex sb = (tij - std::conj(tji)) / Complex(0.0, 2.0);
        double sa = tii.imag(), sd = tjj.imag();
        double hgap = std::hypot(ha - hd, 2.0 * std::abs(hb));
        double sgap = std::hypot(sa - sd, 2.0 * std::abs(sb));
        bool use_h = (hgap >= sgap && std::abs(hb) > 0.0) || std::abs(sb) == 0.0;
        Eigen::Matrix2cd r = use_h ? herm2x2_rotation(ha, hb, hd)
                                   : herm2x2_rotation(sa, sb, sd);
        Mat cols(n, 2);
        cols.col(0) = t.col(i);
        cols.col(1) = t.col(j);
        cols = cols * r;
        t.col(i) = cols.col(0);
        t.col(j) = cols.col(1);
        Mat rows(2, n);
        rows.row(0) = t.row(i);
        rows.row(1) = t.row(j);
        rows = r.adjoint() * rows;
        t.row(i) = rows.row(0);
        t.row(j) = rows.row(1);
        Mat vc(n, 2);
        vc.col(0) = v.col(i);
        vc.col(1) = v.col(j);
        vc = vc * r;
        v.col(i) = vc.col(0);
        v.col(j) = vc.col(1);
      }
    }
  }
  {
    double off = offdiag_max(t);
    require(off <= 1e-9 * scale, ErrorCode::NumericFailure,
            "eigen cleanup did not converge after " + std::to_string(sweeps) +
                " sweeps, off-diagonal " + std::to_string(off));
  }

  Vec lambda(n);
  for (int k = 0; k < n; ++k) lambda(k) = t(k, k);

  // Deterministic order: argument, then modulus, then eigenvector entries.
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) perm[k] = k;
  std::sort(perm.begin(), perm.end(), [&](int x, int y) {
    double ax = principal_arg(lambda(x)), ay = principal_arg(lambda(y));
    if (ax != ay) return ax < ay;
    double mx = std::abs(lambda(x)), my = std::abs(lambda(y));
    if (mx != my) return mx < my;
    for (int r = 0; r < n; ++r) {
      Complex vx = v(r, x), vy = v(r, y);
      if (vx.real() != vy.real()) return vx.real() < vy.real();
      if (vx.imag() != vy.imag()) return vx.imag() < vy.imag();
    }
    return false;
  });

  SpectralDecomposition out;
  out.eigenvalues = Vec(n);
  out.eigenvectors = Mat(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = lambda(perm[k]);
    out.eigenvectors.col(k) = v.col(perm[k]);
  }
  out.cleanup_sweeps = sweeps;

  if (full_checks) {
    out.orthonormality_defect = operator_norm(
        out.eigenvectors.adjoint() * out.eigenvectors - Mat::Identity(n, n));
    out.residual = operator_norm(out.reconstruct() - m);
    require(out.orthonormality_defect <= 1e-10, ErrorCode::NumericFailure,
            "eigenvector orthonormality defect " +
                std::to_string(out.orthonormality_defect));
    require(out.residual <= tols.reconstruction_rel * (1.0 + operator_norm(m)),
            ErrorCode::NumericFailure,
            "reconstruction residual " + std::to_string(out.residual));
  } else {
    out.orthonormality_defect = max_abs(out.eigenvectors.adjoint() *
                                        out.eigenvectors - Mat::Identity(n, n));
    out.residual = max_abs(out.reconstruct() - m);
  }
  return out;
}

}  // namespace

std::string NormSpec::label() const {
  if (is_inf()) return "inf";
  double r = std::round(p);
  if (std::abs(p - r) < 1e-12) return std::to_string(static_cast<long long>(r));
  return std::to_string(p);
}

DenseMatrix::DenseMatrix(Mat entries, Field field)
    : entries_(std::move(entries)), field_(field) {
  require(entries_.rows() >= 1 && entries_.rows() == entries_.cols(),
          ErrorCode::InvalidParameter, "matrix must be square with n >= 1");
  if (field_ == Field::Real) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j)
      for (Eigen::Index i = 0; i < entries_.rows(); ++i)
        require(entries_(i, j).imag() == 0.0, ErrorCode::InvalidParameter,
                "real-tagged matrix has a nonzero imaginary entry");
  }
}

DenseMatrix DenseMatrix::from_real(const RealMat& m) {
  Mat c = Mat::Zero(m.rows(), m.cols());
  c.real() = m;
  return DenseMatrix(std::move(c), Field::Real);
}

DenseMatrix DenseMatrix::zero(int n, Field field) {
  return DenseMatrix(Mat::Zero(n, n), field);
}

DenseMatrix DenseMatrix::identity(int n, Field field) {
  return DenseMatrix(Mat::Identity(n, n), field);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

double operator_norm(const Mat& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double schatten_norm(const Mat& m, NormSpec p) {
  require(p.p >= 1.0, ErrorCode::InvalidParameter, "Schatten index p < 1");
  if (p.is_inf()) return operator_norm(m);
  if (p.p == 2.0) return m.norm();  // Frobenius, exact from entries
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) acc += std::pow(s(k), p.p);
  return std::pow(acc, 1.0 / p.p);
}

double schatten_norm(const DenseMatrix& m, NormSpec p) {
  return schatten_norm(m.entries(), p);
}

SpectralDecomposition eig_normal(const Mat& m, const MatTolerances& tols) {
  return eig_normal_core(m, tols, /*full_checks=*/true);
}

SpectralDecomposition eig_normal(const DenseMatrix& m, const MatTolerances& tols) {
  return eig_normal_core(m.entries(), tols, /*full_checks=*/true);
}

SpectralDecomposition eig_normal_fast(const Mat& m, const MatTolerances& tols) {
  return eig_normal_core(m, tols, /*full_checks=*/false);
}

Mat expm_skew(const Mat& x, Field field) {
  const int n = static_cast<int>(x.rows());
  require(n >= 1 && x.rows() == x.cols(), ErrorCode::InvalidParameter,
          "expm_skew needs a square matrix");
  double skew_defect = max_abs(x + x.adjoint());
  require(skew_defect <= 1e-10 * std::max(1.0, max_abs(x)),
          ErrorCode::InvalidParameter,
          "expm_skew input is not skew-Hermitian, defect " +
              std::to_string(skew_defect));

  Mat h = x / Complex(0.0, 1.0);  // -i x
  h = Mat((h + h.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  require(es.info() == Eigen::Success, ErrorCode::NumericFailure,
          "Hermitian eigensolver failed in expm_skew");
  Vec phase(n);
  for (int k = 0; k < n; ++k) {
    double th = es.eigenvalues()(k);
    phase(k) = Complex(std::cos(th), std::sin(th));
  }
  Mat u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
  if (field == Field::Real) {
    Mat ur = Mat::Zero(n, n);
    ur.real() = u.real();
    return ur;
  }
  return u;
}

namespace {

Mat logm_unitary_core(const Mat& u, Field field, const MatTolerances& tols,
                      bool full_checks) {
  const int n = static_cast<int>(u.rows());
  require(n >= 1 && u.rows() == u.cols(), ErrorCode::InvalidParameter,
          "logm_unitary needs a square matrix");
  if (full_checks) {
    double unit_defect = operator_norm(u.adjoint() * u - Mat::Identity(n, n));
    require(unit_defect <= 1e-8, ErrorCode::InvalidParameter,
            "logm_unitary input is not unitary, defect " +
                std::to_string(unit_defect));
  }

  SpectralDecomposition sd = eig_normal_core(u, tols, /*full_checks=*/false);

  if (field == Field::Complex) {
    Vec largs(n);
    for (int k = 0; k < n; ++k)
      largs(k) = Complex(0.0, principal_arg(sd.eigenvalues(k)));
    Mat x = sd.eigenvectors * largs.asDiagonal() * sd.eigenvectors.adjoint();
    return (x - x.adjoint()) / 2.0;
  }

  // Real orthogonal input: the non-(-1) part is real by conjugate symmetry
  // of the eigenprojectors; the -1 eigenspace is handled as explicit
  // pi-rotation planes on a real orthonormal basis.
  std::vector<int> minus_one;
  Mat x = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (std::abs(sd.eigenvalues(k) + Complex(1.0, 0.0)) <= tols.branch_pair_tol) {
      minus_one.push_back(k);
    } else {
      double th = principal_arg(sd.eigenvalues(k));
      if (th != 0.0)
        x += Complex(0.0, th) * sd.eigenvectors.col(k) *
             sd.eigenvectors.col(k).adjoint();
    }
  }
  RealMat xr = x.real();

  if (!minus_one.empty()) {
    require(minus_one.size() % 2 == 0, ErrorCode::BranchAmbiguity,
            "odd -1 eigenvalue multiplicity " +
                std::to_string(minus_one.size()) +
                " within tolerance; cannot pair into real rotation planes");
    Mat p = Mat::Zero(n, n);
    for (int k : minus_one)
      p += sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint();
    RealMat pr = (p.real() + p.real().transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<RealMat> pe(pr);
    require(pe.info() == Eigen::Success, ErrorCode::NumericFailure,
            "projector eigensolver failed in logm_unitary");
    std::vector<int> basis_cols;
    for (int k = 0; k < n; ++k)
      if (pe.eigenvalues()(k) > 0.5) basis_cols.push_back(k);
    require(basis_cols.size() == minus_one.size(), ErrorCode::BranchAmbiguity,
            "-1 eigenspace projector rank does not match its multiplicity");
    for (std::size_t j = 0; j + 1 < basis_cols.size(); j += 2) {
      Eigen::VectorXd f1 = pe.eigenvectors().col(basis_cols[j]);
      Eigen::VectorXd f2 = pe.eigenvectors().col(basis_cols[j + 1]);
      xr += kPi * (f1 * f2.transpose() - f2 * f1.transpose());
    }
  }

  xr = RealMat((xr - xr.transpose()) / 2.0).eval();
  Mat out = Mat::Zero(n, n);
  out.real() = xr;

  if (full_checks || !minus_one.empty()) {
    double rt = max_abs(expm_skew(out, Field::Real) - u);
    require(rt <= 1e-9, ErrorCode::NumericFailure,
            "log/exp round trip residual " + std::to_string(rt));
  }
  return out;
}

}  // namespace

Mat logm_unitary(const Mat& u, Field field, const MatTolerances& tols) {
  return logm_unitary_core(u, field, tols, /*full_checks=*/true);
}

Mat logm_unitary_fast(const Mat& u, Field field, const MatTolerances& tols) {
  return logm_unitary_core(u, field, tols, /*full_checks=*/false);
}

Mat commutator(const Mat& x, const Mat& y) {
  require(x.rows() == y.rows() && x.cols() == y.cols() && x.rows() == x.cols(),
          ErrorCode::InvalidParameter, "commutator dimension mismatch");
  return x * y - y * x;
}

Mat skew_part(const Mat& m, Field field) {
  Mat s = (m - m.adjoint()) / 2.0;
  if (field == Field::Real) {
    Mat sr = Mat::Zero(m.rows(), m.cols());
    sr.real() = (s.real() - s.real().transpose()) / 2.0;
    return sr;
  }
  return s;
}

}  // namespace entlab
