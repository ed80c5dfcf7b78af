#include "entlab/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace entlab {

namespace {

constexpr double kPi = std::numbers::pi;

double principal_arg(Complex z) {
  double a = std::arg(z);
  if (a <= -kPi) a = kPi;
  return a;
}

double arc_dist(Complex a, Complex b) {
  return std::abs(principal_arg(a * std::conj(b)));
}

double lp_norm(const std::vector<double>& v, NormSpec p) {
  if (p.is_inf()) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (double x : v) acc += std::pow(std::abs(x), p.p);
  return std::pow(acc, 1.0 / p.p);
}

/// ||log w||_p from the eigenvalue arguments alone; the singular values of
/// the principal log are exactly those arc lengths. For SO inputs an odd
/// -1 multiplicity is a branch ambiguity, matching the realified log.
double log_norm(const Mat& w, Field field, NormSpec p) {
  SpectralDecomposition sd = eig_normal_fast(w);
  const int n = static_cast<int>(sd.eigenvalues.size());
  std::vector<double> args(n);
  int minus_one = 0;
  for (int k = 0; k < n; ++k) {
    args[k] = principal_arg(sd.eigenvalues(k));
    if (std::abs(sd.eigenvalues(k) + Complex(1.0, 0.0)) <=
        default_tolerances().branch_pair_tol)
      ++minus_one;
  }
  if (field == Field::Real)
    require(minus_one % 2 == 0, ErrorCode::BranchAmbiguity,
            "odd -1 eigenvalue multiplicity in an SO logarithm");
  return lp_norm(args, p);
}

struct EigAngles {
  std::vector<double> theta;
  Mat vectors;
};

EigAngles unitary_angles(const Mat& w) {
  SpectralDecomposition sd = eig_normal_fast(w);
  EigAngles out;
  const int n = static_cast<int>(sd.eigenvalues.size());
  out.theta.resize(n);
  for (int k = 0; k < n; ++k) out.theta[k] = principal_arg(sd.eigenvalues(k));
  out.vectors = std::move(sd.eigenvectors);
  return out;
}

}  // namespace

double extrinsic_dist(const GroupElement& u, const GroupElement& v, NormSpec p) {
  require(u.group() == v.group(), ErrorCode::InvalidParameter,
          "extrinsic_dist group mismatch");
  return schatten_norm(Mat(u.entries() - v.entries()), p);
}

double intrinsic_dist(const GroupElement& u, const GroupElement& v, NormSpec p) {
  require(u.group() == v.group(), ErrorCode::InvalidParameter,
          "intrinsic_dist group mismatch");
  Mat w = u.entries().adjoint() * v.entries();
  return log_norm(w, u.group().field(), p);
}

GeodesicPoint geodesic_point(const GroupElement& u, const GroupElement& v,
                             double t) {
  require(u.group() == v.group(), ErrorCode::InvalidParameter,
          "geodesic_point group mismatch");
  require(t >= 0.0 && t <= 1.0, ErrorCode::InvalidParameter,
          "geodesic parameter must lie in [0, 1]");
  const Field field = u.group().field();
  Mat w = u.entries().adjoint() * v.entries();
  bool warn = false;
  {
    SpectralDecomposition sd = eig_normal_fast(w);
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k)
      if (std::abs(sd.eigenvalues(k) + Complex(1.0, 0.0)) <= 1e-6) warn = true;
  }
  Mat x = logm_unitary(w, field);
  Mat point = u.entries() * expm_skew(Mat(t * x), field);
  if (field == Field::Real) {
    Mat pr = Mat::Zero(point.rows(), point.cols());
    pr.real() = point.real();
    point = std::move(pr);
  }
  return GeodesicPoint{
      GroupElement::make(DenseMatrix(std::move(point), field), u.group()), warn};
}

double discrete_path_length(const std::vector<GroupElement>& points, NormSpec p) {
  require(points.size() >= 2, ErrorCode::InvalidParameter,
          "discrete_path_length needs at least two points");
  for (std::size_t i = 1; i < points.size(); ++i)
    require(points[i].group() == points[0].group(), ErrorCode::InvalidParameter,
            "discrete_path_length points must share one group");
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    acc += intrinsic_dist(points[i], points[i + 1], p);
  return acc;
}

double grassmann_dist(const Mat& basis_e, const Mat& basis_f) {
  require(basis_e.rows() == basis_f.rows() && basis_e.cols() == basis_f.cols(),
          ErrorCode::InvalidParameter,
          "grassmann_dist needs equal-shape subspace bases");
  require(basis_e.cols() >= 1 && basis_e.cols() <= basis_e.rows(),
          ErrorCode::InvalidParameter, "subspace basis shape is invalid");
  const Eigen::Index k = basis_e.cols();
  double ortho = std::max(
      max_abs(basis_e.adjoint() * basis_e - Mat::Identity(k, k)),
      max_abs(basis_f.adjoint() * basis_f - Mat::Identity(k, k)));
  require(ortho <= 1e-8, ErrorCode::InvalidParameter,
          "subspace basis is not orthonormal, defect " + std::to_string(ortho));
  Mat overlap = basis_e.adjoint() * basis_f;
  Eigen::JacobiSVD<Mat> svd(overlap);
  double smin = svd.singularValues()(k - 1);
  return std::acos(std::clamp(smin, 0.0, 1.0));
}

Mat coset_subspace_basis(const GroupElement& u, int k) {
  require(k >= 1 && k <= u.group().n, ErrorCode::InvalidParameter,
          "subspace dimension out of range");
  return u.entries().leftCols(k);
}

std::string QuotientResult::flags() const {
  std::ostringstream os;
  os << method;
  if (heuristic) os << ";heuristic";
  if (restarts_run > 0) {
    os << ";restarts=" << restarts_run << ";stable=" << stable_run;
    os << (certified_stable ? ";certified" : ";uncertified");
  }
  if (cross_check_value >= 0.0) os << ";cross-check=" << cross_check_value;
  return os.str();
}

namespace {

/// Local minimization state for inf_h ||log(w h)||_p over the subgroup.
class CosetMinimizer {
 public:
  CosetMinimizer(const SpaceSpec& space, Mat w, NormSpec p)
      : space_(space), w_(std::move(w)), p_(p),
        n_(space.group().n), m_(space.dim_h()) {}

  double true_value(const Mat& h) const {
    return log_norm(w_ * h, space_.group().field(), p_);
  }

  /// Surrogate G = sum |theta_k|^q and its gradient in the exp chart at h.
  void surrogate(const Mat& h, double q, double* g_out,
                 Eigen::VectorXd* grad_out) const {
    Mat uh = w_ * h;
    EigAngles ea = unitary_angles(uh);
    double g = 0.0;
    for (double th : ea.theta) g += std::pow(std::abs(th), q);
    *g_out = g;
    if (!grad_out) return;
    grad_out->resize(m_);
    for (int i = 0; i < m_; ++i) {
      const Mat& b = space_.h_basis()[i];
      double acc = 0.0;
      for (int k = 0; k < n_; ++k) {
        double th = ea.theta[k];
        if (th == 0.0) continue;
        Complex r = ea.vectors.col(k).adjoint() * (b * ea.vectors.col(k));
        double w_k = q * std::pow(std::abs(th), q - 1.0) *
                     (th >= 0.0 ? 1.0 : -1.0);
        acc += w_k * r.imag();
      }
      (*grad_out)(i) = acc;
    }
  }

  Mat step(const Mat& h, const Eigen::VectorXd& delta) const {
    Mat x = space_.h_from_coefficients(delta);
    return h * expm_skew(x, space_.group().field());
  }

  /// Gradient descent with Barzilai-Borwein steps and Armijo backtracking.
  Mat descend(Mat h, double q, int max_iters) const {
    double g;
    Eigen::VectorXd grad;
    surrogate(h, q, &g, &grad);
    double bb = 0.1 / std::max(1.0, grad.norm());
    Eigen::VectorXd prev_grad = grad;
    Eigen::VectorXd prev_move = Eigen::VectorXd::Zero(m_);
    for (int it = 0; it < max_iters; ++it) {
      double gn = grad.norm();
      if (gn <= 1e-12 * std::max(1.0, g)) break;
      double step = std::clamp(bb, 1e-12, 10.0);
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        Eigen::VectorXd move = -step * grad;
        Mat h_trial = this->step(h, move);
        double g_trial;
        surrogate(h_trial, q, &g_trial, nullptr);
        if (g_trial <= g - 1e-4 * step * gn * gn) {
          h = std::move(h_trial);
          g = g_trial;
          prev_move = move;
          accepted = true;
          break;
        }
        step /= 2.0;
        if (step < 1e-14) break;
      }
      if (!accepted) break;
      prev_grad = grad;
      surrogate(h, q, &g, &grad);
      Eigen::VectorXd y = grad - prev_grad;
      double sy = prev_move.dot(y);
      double ss = prev_move.dot(prev_move);
      bb = (sy > 1e-300) ? ss / sy : 2.0 * step;
    }
    return h;
  }

  /// Move against the h-projection of the current log; exact equalization
  /// whenever that projection commutes with log(w h) (it does for SU).
  Mat snap(Mat h, double* best) const {
    for (int round = 0; round < 4; ++round) {
      Mat y = logm_unitary_fast(w_ * h, space_.group().field());
      Mat xc = space_.project_h(y);
      if (max_abs(xc) <= 1e-14) break;
      Mat h_trial = h * expm_skew(skew_part(Mat(-xc), space_.group().field()),
                                  space_.group().field());
      double v = true_value(h_trial);
      if (v < *best - 1e-15) {
        *best = v;
        h = std::move(h_trial);
      } else {
        break;
      }
    }
    return h;
  }

  /// One local search from h0; returns achieved true objective.
  double run_from(Mat h0, int max_iters, Mat* h_out) const {
    std::vector<double> ladder;
    if (p_.is_inf()) {
      ladder = {8.0, 32.0};
    } else if (p_.p >= 2.0) {
      ladder = {p_.p};
    } else {
      ladder = {2.0};
    }
    Mat h = std::move(h0);
    for (double q : ladder) h = descend(std::move(h), q, max_iters);
    double best = true_value(h);
    h = snap(std::move(h), &best);
    if (h_out) *h_out = h;
    return best;
  }

  const SpaceSpec& space() const { return space_; }
  const Mat& w() const { return w_; }

 private:
  const SpaceSpec& space_;
  Mat w_;
  NormSpec p_;
  int n_, m_;
};

/// Polar factor (closest unitary) of a square block; for the real field the
/// determinant is pushed to +1 by a last-column flip.
Mat polar_unitary(const Mat& a, Field field) {
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat u = svd.matrixU() * svd.matrixV().adjoint();
  if (field == Field::Real) {
    RealMat ur = u.real();
    if (ur.determinant() < 0.0) ur.col(ur.cols() - 1) = -ur.col(ur.cols() - 1);
    Mat out = Mat::Zero(u.rows(), u.cols());
    out.real() = ur;
    return out;
  }
  return u;
}

/// Alignment start: the polar factor of the subgroup-structured
/// compression of w*, the best structured approximation of w^-1.
Mat informed_start(const SpaceSpec& space, const Mat& w) {
  const GroupSpec& g = space.group();
  const int n = g.n;
  Mat wa = w.adjoint();
  const SubgroupSpec& sub = space.subgroup();
  std::vector<int> partition;
  if (sub.variant == SubgroupSpec::Variant::Grassmann)
    partition = {sub.grassmann_k, n - sub.grassmann_k};
  else if (sub.variant == SubgroupSpec::Variant::BlockDiagonal)
    partition = sub.partition;
  if (!partition.empty()) {
    Mat h0 = Mat::Zero(n, n);
    int off = 0;
    for (int size : partition) {
      h0.block(off, off, size, size) =
          polar_unitary(wa.block(off, off, size, size), g.field());
      off += size;
    }
    return h0;
  }
  if (sub.variant == SubgroupSpec::Variant::TensorFactor) {
    int m = sub.tensor_m, k = sub.tensor_k;
    Mat avg = Mat::Zero(k, k);
    for (int i = 0; i < m; ++i) avg += wa.block(i * k, i * k, k, k);
    avg /= static_cast<double>(m);
    Mat pk = polar_unitary(avg, g.field());
    Mat h0 = Mat::Zero(n, n);
    for (int i = 0; i < m; ++i) h0.block(i * k, i * k, k, k) = pk;
    return h0;
  }
  return Mat::Identity(n, n);
}

/// Deterministic extra starts exploring log branches of the SU quotient:
/// central elements exp(2 pi i j / n) I realized inside SU(n).
std::vector<Mat> su_center_starts(const SpaceSpec& space) {
  std::vector<Mat> out;
  const int n = space.group().n;
  for (int j = 1; j < n; ++j) {
    Complex z = std::polar(1.0, 2.0 * kPi * j / n);
    out.push_back(z * Mat::Identity(n, n));
  }
  return out;
}

QuotientResult quotient_generic(const SpaceSpec& space, const Mat& w, NormSpec p,
                                const QuotientOptions& opts) {
  QuotientResult res;
  res.method = "generic";
  res.heuristic = space.subgroup().variant == SubgroupSpec::Variant::Custom;

  CosetMinimizer mini(space, w, p);
  RandomStream root(opts.seed);

  double best = mini.true_value(Mat::Identity(space.group().n, space.group().n));
  {
    Mat h_id = Mat::Identity(space.group().n, space.group().n);
    double v = mini.run_from(h_id, opts.max_iterations, nullptr);
    best = std::min(best, v);
  }
  int stable = 1;
  int run = 1;

  std::vector<Mat> starts;
  starts.push_back(informed_start(space, w));
  if (space.subgroup().variant == SubgroupSpec::Variant::SpecialUnitary)
    for (Mat& s : su_center_starts(space)) starts.push_back(std::move(s));

  auto absorb = [&](double v) {
    ++run;
    if (v < best - 1e-12) {
      best = v;
      stable = 1;
    } else {
      ++stable;
    }
  };

  for (const Mat& h0 : starts) {
    if (run >= opts.restarts) break;
    absorb(mini.run_from(h0, opts.max_iterations, nullptr));
  }
  while (run < opts.restarts) {
    if (opts.early_stop && stable >= opts.stable_k) break;
    RandomStream rs = root.child(static_cast<std::uint64_t>(run));
    Mat x0 = random_h_element(space, kPi, rs);
    Mat h0 = expm_skew(x0, space.group().field());
    absorb(mini.run_from(h0, opts.max_iterations, nullptr));
  }

  res.value = best;
  res.restarts_run = run;
  res.stable_run = stable;
  res.certified_stable = stable >= opts.stable_k;
  return res;
}

}  // namespace

QuotientResult quotient_dist_full(const SpaceSpec& space, const GroupElement& u,
                                  const GroupElement& v, NormSpec p,
                                  const QuotientOptions& opts) {
  require(u.group() == space.group() && v.group() == space.group(),
          ErrorCode::InvalidParameter,
          "quotient_dist elements must live in the parent group of the space");

  QuotientResult res;

  if (space.subgroup().variant == SubgroupSpec::Variant::Full) {
    res.value = 0.0;
    res.method = "closed-form";
    return res;
  }
  if (space.is_trivial_subgroup()) {
    res.value = intrinsic_dist(u, v, p);
    res.method = "intrinsic";
    return res;
  }

  Mat w = u.entries().adjoint() * v.entries();

  const bool want_closed = opts.mode != QuotientOptions::Mode::Generic;
  if (want_closed && p.is_inf()) {
    if (auto k = space.grassmann_k()) {
      res.value = grassmann_dist(coset_subspace_basis(u, *k),
                                 coset_subspace_basis(v, *k));
      res.method = "closed-form";
      if (opts.cross_check) {
        QuotientResult gen = quotient_generic(space, w, p, opts);
        res.cross_check_value = gen.value;
        res.restarts_run = gen.restarts_run;
        res.stable_run = gen.stable_run;
        res.certified_stable = gen.certified_stable;
      }
      return res;
    }
    if (space.subgroup().variant == SubgroupSpec::Variant::SpecialUnitary) {
      Complex du = u.entries().determinant();
      Complex dv = v.entries().determinant();
      res.value = arc_dist(du, dv) / space.group().n;
      res.method = "closed-form";
      if (opts.cross_check) {
        QuotientResult gen = quotient_generic(space, w, p, opts);
        res.cross_check_value = gen.value;
        res.restarts_run = gen.restarts_run;
        res.stable_run = gen.stable_run;
        res.certified_stable = gen.certified_stable;
      }
      return res;
    }
  }
  require(opts.mode != QuotientOptions::Mode::ClosedForm,
          ErrorCode::UnsupportedInvariant,
          "no closed form for " + space.name() + " at p = " + p.label());

  return quotient_generic(space, w, p, opts);
}

double quotient_dist(const SpaceSpec& space, const GroupElement& u,
                     const GroupElement& v, NormSpec p) {
  return quotient_dist_full(space, u, v, p).value;
}

double spectral_matching_dist(const GroupElement& u, const GroupElement& v,
                              NormSpec p) {
  require(u.group() == v.group(), ErrorCode::InvalidParameter,
          "spectral_matching_dist group mismatch");
  const int n = u.group().n;
  require(n <= 6, ErrorCode::TooLarge,
          "exhaustive permutation matching requires n <= 6");
  SpectralDecomposition su = eig_normal_fast(u.entries());
  SpectralDecomposition sv = eig_normal_fast(v.entries());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> gaps(n);
  do {
    for (int k = 0; k < n; ++k)
      gaps[k] = arc_dist(su.eigenvalues(k), sv.eigenvalues(perm[k]));
    best = std::min(best, lp_norm(gaps, p));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace entlab
