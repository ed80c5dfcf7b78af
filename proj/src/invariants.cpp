#include "entlab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace entlab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Eigenvalue clamp of -ix onto [-1, 1]: the Frobenius projection of a
/// skew-Hermitian element onto the operator-norm unit ball.
Mat clip_to_unit_ball(const Mat& x, Field field) {
  Mat h = x / Complex(0.0, 1.0);
  h = Mat((h + h.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec clipped(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    clipped(k) = Complex(0.0, std::clamp(es.eigenvalues()(k), -1.0, 1.0));
  Mat out = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  return skew_part(out, field);
}

/// Extreme eigenpair (by |lambda|) of the Hermitian matrix -iy.
void extreme_eigenpair(const Mat& y, double* lambda, Vec* v) {
  Mat h = y / Complex(0.0, 1.0);
  h = Mat((h + h.adjoint()) / 2.0).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::Index lo = 0, hi = es.eigenvalues().size() - 1;
  if (std::abs(es.eigenvalues()(lo)) >= std::abs(es.eigenvalues()(hi))) {
    *lambda = es.eigenvalues()(lo);
    *v = es.eigenvectors().col(lo);
  } else {
    *lambda = es.eigenvalues()(hi);
    *v = es.eigenvectors().col(hi);
  }
}

bool has_conditional_expectation(const SubgroupSpec& s) {
  return s.variant == SubgroupSpec::Variant::Grassmann ||
         s.variant == SubgroupSpec::Variant::BlockDiagonal ||
         s.variant == SubgroupSpec::Variant::TensorFactor;
}

/// Torus description: one generator per angle slot. Lattice shifts act per
/// slot; SU carries the trace constraint sum(angles) = 0 on subgroup logs.
struct TorusDescriptor {
  std::vector<Mat> generators;  // exp(sum phi_s G_s) is the torus element
  bool trace_constrained = false;
  bool valid = false;
};

TorusDescriptor subgroup_torus(const SpaceSpec& space) {
  TorusDescriptor td;
  const GroupSpec& g = space.group();
  const int n = g.n;
  const SubgroupSpec& sub = space.subgroup();

  auto u_diag_slot = [&](std::initializer_list<int> idx) {
    Mat m = Mat::Zero(n, n);
    for (int i : idx) m(i, i) = Complex(0.0, 1.0);
    return m;
  };
  auto so_plane_slot = [&](int a, int b) {
    Mat m = Mat::Zero(n, n);
    m(a, b) = Complex(-1.0, 0.0);
    m(b, a) = Complex(1.0, 0.0);
    return m;
  };

  std::vector<int> partition;
  switch (sub.variant) {
    case SubgroupSpec::Variant::Grassmann:
      partition = {sub.grassmann_k, n - sub.grassmann_k};
      break;
    case SubgroupSpec::Variant::BlockDiagonal:
      partition = sub.partition;
      break;
    case SubgroupSpec::Variant::Full:
      partition = {n};
      break;
    default:
      break;
  }

  if (!partition.empty()) {
    td.valid = true;
    int off = 0;
    for (int size : partition) {
      if (g.family == GroupFamily::U) {
        for (int i = 0; i < size; ++i)
          td.generators.push_back(u_diag_slot({off + i}));
      } else {
        for (int i = 0; i + 1 < size; i += 2)
          td.generators.push_back(so_plane_slot(off + i, off + i + 1));
      }
      off += size;
    }
    return td;
  }

  if (sub.variant == SubgroupSpec::Variant::TensorFactor) {
    td.valid = true;
    const int m = sub.tensor_m, k = sub.tensor_k;
    if (g.family == GroupFamily::U) {
      for (int i = 0; i < k; ++i) {
        Mat slot = Mat::Zero(n, n);
        for (int c = 0; c < m; ++c) slot(c * k + i, c * k + i) = Complex(0.0, 1.0);
        td.generators.push_back(std::move(slot));
      }
    } else {
      for (int i = 0; i + 1 < k; i += 2) {
        Mat slot = Mat::Zero(n, n);
        for (int c = 0; c < m; ++c) {
          slot(c * k + i, c * k + i + 1) = Complex(-1.0, 0.0);
          slot(c * k + i + 1, c * k + i) = Complex(1.0, 0.0);
        }
        td.generators.push_back(std::move(slot));
      }
    }
    return td;
  }

  if (sub.variant == SubgroupSpec::Variant::SpecialUnitary) {
    td.valid = true;
    td.trace_constrained = true;
    for (int i = 0; i < n; ++i) td.generators.push_back(u_diag_slot({i}));
    return td;
  }

  return td;  // Custom / Trivial: no torus description
}

double canonical_angle(double phi) {
  double a = std::remainder(phi, 2.0 * kPi);  // (-pi, pi]
  if (a <= -kPi) a = kPi;
  return a;
}

}  // namespace

double kappa_witness_ratio(const SpaceSpec& space, const Mat& x) {
  double nx = operator_norm(x);
  require(nx > 0.0, ErrorCode::InvalidParameter, "witness must be nonzero");
  return operator_norm(space.project_x(x)) / nx;
}

KappaResult kappa(const SpaceSpec& space, int effort, std::uint64_t seed) {
  require(effort >= 1, ErrorCode::InvalidParameter,
          "kappa needs a positive restart budget");
  KappaResult out;
  const SubgroupSpec& sub = space.subgroup();

  if (sub.variant == SubgroupSpec::Variant::Full) {
    out.lower = out.upper = 0.0;
    out.method = "degenerate";
    return out;
  }
  if (space.grassmann_k() || sub.variant == SubgroupSpec::Variant::SpecialUnitary ||
      space.is_trivial_subgroup()) {
    out.lower = out.upper = 1.0;
    out.method = "closed-form";
    return out;
  }

  const Field field = space.group().field();
  out.method = "estimated-lower-bound";
  out.upper = has_conditional_expectation(sub)
                  ? 2.0
                  : std::sqrt(static_cast<double>(space.group().n));
  out.restarts = effort;

  RandomStream root(seed);
  double best = 0.0;
  Mat best_x;
  for (int r = 0; r < effort; ++r) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(r));
    Mat x = Mat::Zero(space.group().n, space.group().n);
    for (const Mat& b : lie_algebra_basis(space.group()))
      x += rs.next_gaussian() * b;
    double nx = operator_norm(x);
    if (nx == 0.0) continue;
    x /= nx;
    double f = operator_norm(space.project_x(x));
    double step = 0.35;
    for (int it = 0; it < 90; ++it) {
      Mat y = space.project_x(x);
      double lambda;
      Vec v;
      extreme_eigenpair(y, &lambda, &v);
      double sgn = lambda >= 0.0 ? 1.0 : -1.0;
      Mat grad = space.project_x(
          skew_part(Mat(Complex(0.0, 1.0) * v * v.adjoint()), field));
      bool improved = false;
      for (int bt = 0; bt < 8; ++bt) {
        Mat x_trial = clip_to_unit_ball(Mat(x + step * sgn * grad), field);
        double f_trial = operator_norm(space.project_x(x_trial));
        if (f_trial > f + 1e-14) {
          x = std::move(x_trial);
          f = f_trial;
          step *= 1.25;
          improved = true;
          break;
        }
        step /= 2.0;
      }
      if (!improved && step < 1e-10) break;
    }
    if (f > best) {
      best = f;
      best_x = x;
    }
  }
  out.lower = best;
  if (best_x.size() > 0)
    out.witness = DenseMatrix(skew_part(best_x, field), field);
  return out;
}

std::optional<double> theta_torus_search(const SpaceSpec& space,
                                         const ThetaSearchOptions& opts) {
  TorusDescriptor td = subgroup_torus(space);
  if (!td.valid || td.generators.empty()) return std::nullopt;
  const int slots = static_cast<int>(td.generators.size());
  const int max_den =
      opts.max_denominator > 0 ? opts.max_denominator : space.group().n;
  const int l = opts.lattice_l;

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_angles;
  std::vector<int> digits(slots, 0);
  const int base = 2 * l + 1;

  for (int den = 1; den <= max_den; ++den) {
    const double unit = 2.0 * kPi / den;
    std::fill(digits.begin(), digits.end(), 0);
    while (true) {
      // Decode the configuration and test exceptionality: no subgroup log
      // below operator norm pi. Unconstrained lattices minimize shifts per
      // slot, so only canonical angles at pi matter; under the SU trace
      // constraint any nonzero winding of the canonical angles forces a
      // shifted slot past pi as well.
      double total = 0.0;
      double value = 0.0;
      bool at_pi = false;
      std::vector<double> angles(slots);
      for (int s = 0; s < slots; ++s) {
        double canon = canonical_angle((digits[s] - l) * unit);
        double arc = std::abs(canon);
        angles[s] = canon;
        total += canon;
        value = std::max(value, arc);
        if (arc >= kPi - 1e-9) at_pi = true;
      }
      bool member = true;
      bool exceptional = at_pi;
      if (td.trace_constrained) {
        double rem = std::remainder(total, 2.0 * kPi);
        member = std::abs(rem) <= 1e-9;
        double winding = (total - rem) / (2.0 * kPi);
        if (member && std::abs(winding) > 0.5) exceptional = true;
      }
      if (member && exceptional && value > 1e-12 && value < best) {
        best = value;
        best_angles = angles;
      }

      int pos = 0;
      while (pos < slots && ++digits[pos] == base) digits[pos++] = 0;
      if (pos == slots) break;
    }
  }
  if (!std::isfinite(best)) return std::nullopt;

  // Matrix-level audit of the winning configuration: exponentiate it and
  // recompute its distance to the identity through the log.
  {
    const Field field = space.group().field();
    const int n = space.group().n;
    Mat x = Mat::Zero(n, n);
    for (int s = 0; s < slots; ++s) x += best_angles[s] * td.generators[s];
    x = skew_part(x, field);
    Mat u = expm_skew(x, field);
    double audited = schatten_norm(logm_unitary(u, field), NormSpec::op());
    require(std::abs(audited - best) <= 1e-9, ErrorCode::NumericFailure,
            "torus-search witness audit mismatch: " + std::to_string(audited) +
                " vs " + std::to_string(best));
  }
  return best;
}

ThetaResult theta(const SpaceSpec& space, const ThetaSearchOptions& opts) {
  ThetaResult out;
  const SubgroupSpec& sub = space.subgroup();
  switch (sub.variant) {
    case SubgroupSpec::Variant::Full:
    case SubgroupSpec::Variant::Trivial:
      out.value = kPi;
      out.method = "catalog";
      return out;
    case SubgroupSpec::Variant::Grassmann:
      out.value = kPi;
      out.method = "catalog";
      out.torus_search_value = theta_torus_search(space, opts);
      return out;
    case SubgroupSpec::Variant::BlockDiagonal:
      if (space.grassmann_k()) {
        out.value = kPi;
        out.method = "catalog";
        out.torus_search_value = theta_torus_search(space, opts);
        return out;
      }
      [[fallthrough]];
    case SubgroupSpec::Variant::TensorFactor:
      out.value = 2.0;
      out.method = "catalog";
      out.extrinsic_scale_flag = true;
      out.torus_search_value = theta_torus_search(space, opts);
      return out;
    case SubgroupSpec::Variant::SpecialUnitary: {
      auto v = theta_torus_search(space, opts);
      require(v.has_value(), ErrorCode::NumericFailure,
              "torus search found no exceptional configuration for SU");
      out.value = *v;
      out.method = "torus-search";
      out.torus_search_value = v;
      return out;
    }
    case SubgroupSpec::Variant::Custom:
      fail(ErrorCode::UnsupportedInvariant,
           "theta needs a torus parameterization; none for Custom subgroups");
  }
  return out;
}

DiameterResult diameter(const SpaceSpec& space, int samples, std::uint64_t seed) {
  DiameterResult out;
  const SubgroupSpec& sub = space.subgroup();
  if (sub.variant == SubgroupSpec::Variant::Full) {
    out.value = 0.0;
    out.method = "degenerate";
    return out;
  }
  if (space.is_trivial_subgroup()) {
    out.value = kPi;  // diam U(n) = diam SO(n) = pi
    out.method = "catalog";
    return out;
  }
  if (space.grassmann_k()) {
    out.value = kPi / 2.0;
    out.method = "catalog";
    return out;
  }
  if (sub.variant == SubgroupSpec::Variant::SpecialUnitary) {
    out.value = kPi / space.group().n;  // circle of radius 1/n
    out.method = "catalog";
    return out;
  }

  RandomStream root(seed);
  QuotientOptions qopts;
  qopts.restarts = 12;
  qopts.stable_k = 4;
  qopts.max_iterations = 120;
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(i));
    GroupElement u = haar_sample(space.group(), rs);
    GroupElement v = haar_sample(space.group(), rs);
    qopts.seed = rs.next_u64();
    best = std::max(best,
                    quotient_dist_full(space, u, v, NormSpec::op(), qopts).value);
  }
  out.value = std::min(best, kPi);
  out.method = "mc-lower-bound";
  return out;
}

Json InvariantReport::to_json() const {
  Json j;
  j["space"] = space;
  j["dim"] = dim_m;
  j["degenerate"] = degenerate;
  Json k;
  k["lower"] = kappa.lower;
  k["upper"] = kappa.upper;
  k["method"] = kappa.method;
  j["kappa"] = std::move(k);
  Json t;
  t["value"] = theta.value;
  t["method"] = theta.method;
  t["extrinsic_scale_flag"] = theta.extrinsic_scale_flag;
  if (theta.torus_search_value)
    t["torus_search_value"] = *theta.torus_search_value;
  j["theta"] = std::move(t);
  Json d;
  d["value"] = diameter.value;
  d["method"] = diameter.method;
  j["diameter"] = std::move(d);
  return j;
}

InvariantReport invariant_report(const SpaceSpec& space, int kappa_effort,
                                 int diameter_samples, std::uint64_t seed) {
  InvariantReport rep;
  rep.space = space.name();
  rep.dim_m = space.dim_m();
  rep.degenerate = space.subgroup().variant == SubgroupSpec::Variant::Full;
  rep.kappa = kappa(space, kappa_effort, seed);
  rep.theta = theta(space);
  rep.diameter = diameter(space, diameter_samples, seed + 1);
  return rep;
}

CoveringCaseReport classify_covering_case(const SpaceSpec& space,
                                                double alpha) {
  require(alpha > 0.0 && alpha <= 0.5, ErrorCode::InvalidParameter,
          "alpha must lie in (0, 1/2]");
  CoveringCaseReport out;
  const GroupSpec& g = space.group();
  const int n = g.n;
  const SubgroupSpec& sub = space.subgroup();

  if (sub.variant == SubgroupSpec::Variant::Full || space.dim_m() == 0) {
    out.result = CoveringCase::None;
    out.diagnostics = "zero-dimensional quotient";
    return out;
  }

  // Hypothesis min{theta, diam, 1/kappa} >= alpha, assembled from the
  // stored invariants; kappa enters through the bracket's upper end so the
  // check errs on the safe side.
  {
    ThetaResult th = theta(space);
    double theta_val = th.value;
    if (th.torus_search_value)
      theta_val = std::min(theta_val, *th.torus_search_value);
    DiameterResult di = diameter(space, 32, 29);
    KappaResult ka = kappa(space, 16, 31);
    double m = std::min({theta_val, di.value, 1.0 / ka.upper});
    out.hypothesis_ok = m >= alpha;
    std::ostringstream os;
    os << "min{theta=" << theta_val << ", diam>=" << di.value
       << ", 1/kappa>=" << 1.0 / ka.upper << "} vs alpha=" << alpha;
    out.diagnostics = os.str();
  }

  std::vector<int> partition;
  if (sub.variant == SubgroupSpec::Variant::Grassmann)
    partition = {sub.grassmann_k, n - sub.grassmann_k};
  else if (sub.variant == SubgroupSpec::Variant::BlockDiagonal)
    partition = sub.partition;

  // (c): a block carrying a full unitary/orthogonal factor of dim >= alpha n.
  if (partition.size() >= 2) {
    for (std::size_t j = 0; j < partition.size(); ++j) {
      if (partition[j] >= alpha * n) {
        out.result = CoveringCase::C;
        std::ostringstream os;
        os << "block " << j << " of size " << partition[j] << " >= alpha*n";
        out.witness = os.str();
        return out;
      }
    }
  }

  // (b): a reducing subspace with alpha n <= dim E <= (1 - alpha) n.
  {
    std::set<int> reducing_dims;
    if (partition.size() >= 2) {
      // any union of blocks reduces H
      std::size_t m = partition.size();
      for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); ++mask) {
        int d = 0;
        for (std::size_t j = 0; j < m; ++j)
          if (mask & (std::size_t(1) << j)) d += partition[j];
        if (d >= 1 && d < n) reducing_dims.insert(d);
      }
    } else if (sub.variant == SubgroupSpec::Variant::TensorFactor) {
      for (int j = 1; j < sub.tensor_m; ++j)
        reducing_dims.insert(j * sub.tensor_k);
    } else if (space.is_trivial_subgroup()) {
      for (int d = 1; d < n; ++d) reducing_dims.insert(d);
    }
    for (int d : reducing_dims) {
      if (d >= alpha * n && d <= (1.0 - alpha) * n) {
        out.result = CoveringCase::B;
        std::ostringstream os;
        os << "reducing subspace of dimension " << d;
        out.witness = os.str();
        return out;
      }
    }
  }

  // (a): dim H <= (1 - alpha) dim G, real dimensions.
  if (space.dim_h() <= (1.0 - alpha) * g.lie_dim()) {
    out.result = CoveringCase::A;
    std::ostringstream os;
    os << "dim H = " << space.dim_h() << " <= (1-alpha) dim G = "
       << (1.0 - alpha) * g.lie_dim();
    out.witness = os.str();
    return out;
  }

  out.result = CoveringCase::None;
  return out;
}

}  // namespace entlab
