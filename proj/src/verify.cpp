#include "entlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entlab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Tracks the worst (largest) margin and the witness that produced it.
class WorstTracker {
 public:
  void observe(double margin, Json witness) {
    if (!seen_ || margin > worst_) {
      worst_ = margin;
      witness_ = std::move(witness);
      seen_ = true;
    }
  }
  double worst() const { return seen_ ? worst_ : 0.0; }
  const Json& witness() const { return witness_; }
  bool seen() const { return seen_; }

 private:
  bool seen_ = false;
  double worst_ = 0.0;
  Json witness_;
};

GroupElement element_from(const GroupSpec& g, const Mat& m) {
  return GroupElement::make(DenseMatrix(m, g.field()), g);
}

Json tangent_pair_witness(const TangentVector& x, const TangentVector& y) {
  Json w;
  w["x"] = matrix_to_json(x.matrix());
  w["y"] = matrix_to_json(y.matrix());
  return w;
}

/// Finalizes a report: re-evaluates the stored witness through the given
/// closure and records whether the worst margin reproduces to 1e-10.
template <typename Reeval>
void finalize(CheckReport* rep, const WorstTracker& tracker, Reeval reeval) {
  rep->worst_margin = tracker.worst();
  rep->pass = tracker.worst() <= rep->tolerance;
  if (tracker.seen()) {
    rep->witness = tracker.witness();
    rep->witness_reproduced_margin = reeval(tracker.witness());
    rep->witness_reproducible =
        std::abs(rep->witness_reproduced_margin - rep->worst_margin) <= 1e-10;
  } else {
    rep->witness_reproducible = true;
  }
}

}  // namespace

Json CheckReport::to_json() const {
  Json j;
  j["name"] = name;
  j["trials"] = trials;
  j["worst_margin"] = worst_margin;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  j["witness"] = witness;
  j["witness_reproduced_margin"] = witness_reproduced_margin;
  j["witness_reproducible"] = witness_reproducible;
  j["details"] = details;
  return j;
}

PhiBoundSpec PhiBoundSpec::make(double theta) {
  require(theta > 0.0 && theta < 2.0 * kPi / 3.0, ErrorCode::InvalidParameter,
          "phi bound is defined for theta in (0, 2 pi / 3)");
  PhiBoundSpec out;
  out.theta = theta;
  double prod = 1.0;
  for (int k = 1; k < 400; ++k) {
    double factor = 1.0 - 2.0 * std::sin(theta / std::pow(2.0, k + 1));
    if (factor >= 1.0 - 1e-14) break;
    prod *= factor;
  }
  out.bound = prod;
  require(out.bound > 0.0 && out.bound <= 1.0, ErrorCode::NumericFailure,
          "phi product bound left (0, 1]");
  return out;
}

CheckReport check_exp_lipschitz(const GroupSpec& group, NormSpec p, int trials,
                                std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  CheckReport rep;
  rep.name = "exp-lipschitz/" + group.name() + "/p=" + p.label();
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double tol = 1e-9;

  auto margin_for = [&](const TangentVector& x, const TangentVector& y) {
    GroupElement ex = exp_tangent(x), ey = exp_tangent(y);
    double rhs = schatten_norm(Mat(x.entries() - y.entries()), p);
    double ext = extrinsic_dist(ex, ey, p);
    double intr = intrinsic_dist(ex, ey, p);
    return std::max(ext - rhs - tol, intr - rhs - tol);
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    TangentVector x = random_tangent(group, NormSpec::op(), kPi, rs);
    TangentVector y = random_tangent(group, NormSpec::op(), kPi, rs);
    tracker.observe(margin_for(x, y), tangent_pair_witness(x, y));
  }
  finalize(&rep, tracker, [&](const Json& w) {
    TangentVector x = TangentVector::make(matrix_from_json(w.at("x")), group);
    TangentVector y = TangentVector::make(matrix_from_json(w.at("y")), group);
    return margin_for(x, y);
  });
  return rep;
}

CheckReport check_phi_lower_bound(const GroupSpec& group, NormSpec p,
                                  double theta, int trials,
                                  std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  PhiBoundSpec bound = PhiBoundSpec::make(theta);
  CheckReport rep;
  rep.name = "phi-lower-bound/" + group.name() + "/p=" + p.label() +
             "/theta=" + std::to_string(theta);
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double tol = 1e-9;

  auto margin_for = [&](const TangentVector& x, const TangentVector& y) {
    double dxy = schatten_norm(Mat(x.entries() - y.entries()), p);
    if (dxy <= 1e-12) return -1.0;  // degenerate pair, skipped
    GroupElement ex = exp_tangent(x), ey = exp_tangent(y);
    double lhs = extrinsic_dist(ex, ey, p);
    return bound.bound * dxy - lhs - tol;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  double min_ratio = std::numeric_limits<double>::infinity();
  int skipped = 0;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    TangentVector x = random_tangent(group, NormSpec::op(), theta, rs);
    TangentVector y = random_tangent(group, NormSpec::op(), theta, rs);
    double dxy = schatten_norm(Mat(x.entries() - y.entries()), p);
    if (dxy <= 1e-12) {
      ++skipped;
      continue;
    }
    GroupElement ex = exp_tangent(x), ey = exp_tangent(y);
    double lhs = extrinsic_dist(ex, ey, p);
    min_ratio = std::min(min_ratio, lhs / dxy);
    tracker.observe(bound.bound * dxy - lhs - tol, tangent_pair_witness(x, y));
  }
  rep.details["phi_bound"] = bound.bound;
  rep.details["min_ratio"] = min_ratio;
  rep.details["skipped_degenerate"] = skipped;
  finalize(&rep, tracker, [&](const Json& w) {
    TangentVector x = TangentVector::make(matrix_from_json(w.at("x")), group);
    TangentVector y = TangentVector::make(matrix_from_json(w.at("y")), group);
    return margin_for(x, y);
  });
  if (theta <= kPi / 4.0 + 1e-12 && min_ratio < 0.4) rep.pass = false;
  return rep;
}

CheckReport report_phi_min_ratio(const GroupSpec& group, NormSpec p,
                                 double theta, int trials, std::uint64_t seed) {
  require(theta > 0.0 && theta < kPi, ErrorCode::InvalidParameter,
          "ratio report covers theta in (0, pi)");
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  CheckReport rep;
  rep.name = "phi-min-ratio/" + group.name() + "/p=" + p.label() +
             "/theta=" + std::to_string(theta);
  rep.trials = trials;
  rep.tolerance = 0.0;
  RandomStream root(seed);
  double min_ratio = std::numeric_limits<double>::infinity();
  Json witness;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    TangentVector x = random_tangent(group, NormSpec::op(), theta, rs);
    TangentVector y = random_tangent(group, NormSpec::op(), theta, rs);
    double dxy = schatten_norm(Mat(x.entries() - y.entries()), p);
    if (dxy <= 1e-12) continue;
    double ratio =
        extrinsic_dist(exp_tangent(x), exp_tangent(y), p) / dxy;
    if (ratio < min_ratio) {
      min_ratio = ratio;
      witness = tangent_pair_witness(x, y);
    }
  }
  rep.details["min_ratio"] = min_ratio;
  rep.details["note"] = "no hard threshold for this radius";
  rep.worst_margin = 0.0;
  rep.pass = min_ratio > 0.0;
  rep.witness = std::move(witness);
  rep.witness_reproducible = true;
  rep.witness_reproduced_margin = 0.0;
  return rep;
}

CheckReport check_bch_defect(const GroupSpec& group, NormSpec p, int trials,
                             std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  CheckReport rep;
  rep.name = "bch-defect/" + group.name() + "/p=" + p.label();
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double tol = 1e-8;

  auto defect = [&](const TangentVector& x, const TangentVector& y) {
    GroupElement exy =
        exp_tangent(TangentVector::from_raw(x.entries() + y.entries(), group));
    GroupElement exey = exp_tangent(x) * exp_tangent(y);
    return intrinsic_dist(exy, exey, p);
  };
  auto margin_for = [&](const TangentVector& x, const TangentVector& y) {
    double comm = schatten_norm(commutator(x, y).entries(), p);
    return defect(x, y) - comm - tol;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    TangentVector x = random_tangent(group, NormSpec::op(), 1.2, rs);
    TangentVector y = random_tangent(group, NormSpec::op(), 1.2, rs);
    tracker.observe(margin_for(x, y), tangent_pair_witness(x, y));
  }

  // Quadratic-scaling audit: defect(t x, t y)/t^2 tends to ||[x, y]||/2
  // (the series expansion fixes the factor 1/2), estimated by Richardson
  // extrapolation from t = 1e-2 and 1e-3.
  {
    RandomStream rs = root.child("richardson");
    double worst_rel = 0.0;
    double worst_stated_ratio = 0.0;
    const int rich_trials = std::max(4, trials / 64);
    for (int t = 0; t < rich_trials; ++t) {
      TangentVector x = random_tangent(group, NormSpec::op(), 1.0, rs);
      TangentVector y = random_tangent(group, NormSpec::op(), 1.0, rs);
      double comm = schatten_norm(commutator(x, y).entries(), p);
      if (comm < 1e-6) continue;
      double t1 = 1e-2, t2 = 1e-3;
      double r1 = defect(x.scaled(t1), y.scaled(t1)) / (t1 * t1);
      double r2 = defect(x.scaled(t2), y.scaled(t2)) / (t2 * t2);
      double extrapolated = (t1 * r2 - t2 * r1) / (t1 - t2);
      double rel = std::abs(extrapolated - comm / 2.0) / (comm / 2.0);
      worst_rel = std::max(worst_rel, rel);
      worst_stated_ratio = std::max(worst_stated_ratio, extrapolated / comm);
    }
    rep.details["richardson_trials"] = rich_trials;
    rep.details["richardson_worst_rel_error_vs_half_comm"] = worst_rel;
    rep.details["richardson_worst_ratio_vs_comm"] = worst_stated_ratio;
    rep.details["richardson_pass"] = worst_rel <= 0.10;
  }

  finalize(&rep, tracker, [&](const Json& w) {
    TangentVector x = TangentVector::make(matrix_from_json(w.at("x")), group);
    TangentVector y = TangentVector::make(matrix_from_json(w.at("y")), group);
    return margin_for(x, y);
  });
  if (!rep.details.value("richardson_pass", false)) rep.pass = false;
  return rep;
}

CheckReport check_geodesic_minimality(const GroupSpec& group, NormSpec p,
                                      int base_points, int competitors,
                                      std::uint64_t seed) {
  require(base_points >= 1 && competitors >= 1, ErrorCode::InvalidParameter,
          "base_points and competitors must be >= 1");
  CheckReport rep;
  rep.name = "geodesic-minimality/" + group.name() + "/p=" + p.label();
  rep.trials = base_points * competitors;
  rep.tolerance = 0.0;
  const double tol = 1e-8;

  RandomStream root(seed);
  double worst_refinement = 0.0;
  double worst_margin = -std::numeric_limits<double>::infinity();
  int worst_base = 0, worst_comp = 0;

  auto competitor_path = [&](const TangentVector& x, RandomStream cs)
      -> std::vector<GroupElement> {
    const int segs = 8 << cs.next_below(4);  // 8, 16, 32 or 64
    std::vector<GroupElement> path;
    path.reserve(segs + 1);
    for (int i = 0; i <= segs; ++i)
      path.push_back(exp_tangent(x.scaled(static_cast<double>(i) / segs)));
    // midpoint displacement, amplitude decaying with the dyadic level
    int levels = 0;
    for (int s = segs; s > 1; s >>= 1) ++levels;
    double amplitude = 0.45;
    for (int level = 1; level <= levels; ++level) {
      int step = segs >> level;
      if (step < 1) break;
      for (int m = step; m < segs; m += 2 * step) {
        TangentVector d = random_tangent(group, NormSpec::op(), amplitude, cs);
        path[m] = path[m] * exp_tangent(d);
      }
      amplitude /= 2.0;
    }
    return path;
  };
  auto base_tangent = [&](int b) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(b));
    return random_tangent(group, NormSpec::op(), kPi - 0.1, rs);
  };

  for (int b = 0; b < base_points; ++b) {
    TangentVector x = base_tangent(b);
    const double geodesic_length = schatten_norm(x.matrix(), p);

    {
      std::vector<GroupElement> samples;
      const int segs = 64;
      for (int i = 0; i <= segs; ++i)
        samples.push_back(exp_tangent(x.scaled(static_cast<double>(i) / segs)));
      double len = discrete_path_length(samples, p);
      worst_refinement =
          std::max(worst_refinement, std::abs(len - geodesic_length));
    }

    for (int c = 0; c < competitors; ++c) {
      RandomStream cs = root.child(static_cast<std::uint64_t>(b))
                            .child(static_cast<std::uint64_t>(c));
      double len = discrete_path_length(competitor_path(x, cs), p);
      double margin = geodesic_length - len - tol;
      if (margin > worst_margin) {
        worst_margin = margin;
        worst_base = b;
        worst_comp = c;
      }
    }
  }

  // Serialize the worst competitor in full so the margin reproduces from
  // the witness alone.
  WorstTracker tracker;
  {
    TangentVector x = base_tangent(worst_base);
    RandomStream cs = root.child(static_cast<std::uint64_t>(worst_base))
                          .child(static_cast<std::uint64_t>(worst_comp));
    std::vector<GroupElement> path = competitor_path(x, cs);
    Json w;
    w["x"] = matrix_to_json(x.matrix());
    Json pts = Json::array();
    for (const GroupElement& g : path) pts.push_back(matrix_to_json(g.matrix()));
    w["path"] = std::move(pts);
    tracker.observe(worst_margin, std::move(w));
  }

  rep.details["refinement_worst_error"] = worst_refinement;
  rep.details["refinement_pass"] = worst_refinement <= 1e-9;
  finalize(&rep, tracker, [&](const Json& w) {
    TangentVector x = TangentVector::make(matrix_from_json(w.at("x")), group);
    std::vector<GroupElement> path;
    for (const Json& m : w.at("path"))
      path.push_back(GroupElement::make(matrix_from_json(m), group));
    double len = discrete_path_length(path, p);
    return schatten_norm(x.matrix(), p) - len - tol;
  });
  if (!rep.details.value("refinement_pass", false)) rep.pass = false;
  return rep;
}

CheckReport check_log_ball(const GroupSpec& group, int trials,
                           std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  CheckReport rep;
  rep.name = "log-ball/" + group.name();
  rep.trials = trials;
  rep.tolerance = 0.0;

  auto surjectivity_margin = [&](const GroupElement& u) {
    Mat x = logm_unitary(u.entries(), group.field());
    double resid = operator_norm(expm_skew(x, group.field()) - u.entries());
    double norm_excess = operator_norm(x) - kPi - 1e-12;
    return std::max(resid - 1e-9, norm_excess);
  };
  auto injectivity_margin = [&](const TangentVector& x) {
    Mat y = logm_unitary(expm_skew(x.entries(), group.field()), group.field());
    return max_abs(y - x.entries()) - 1e-8;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    GroupElement u = haar_sample(group, rs);
    Json w1;
    w1["kind"] = "surjectivity";
    w1["u"] = matrix_to_json(u.matrix());
    tracker.observe(surjectivity_margin(u), std::move(w1));

    TangentVector x = random_tangent(group, NormSpec::op(), kPi - 0.05, rs);
    Json w2;
    w2["kind"] = "injectivity";
    w2["x"] = matrix_to_json(x.matrix());
    tracker.observe(injectivity_margin(x), std::move(w2));
  }
  finalize(&rep, tracker, [&](const Json& w) {
    if (w.at("kind").get<std::string>() == "surjectivity") {
      GroupElement u =
          GroupElement::make(matrix_from_json(w.at("u")), group);
      return surjectivity_margin(u);
    }
    TangentVector x = TangentVector::make(matrix_from_json(w.at("x")), group);
    return injectivity_margin(x);
  });
  return rep;
}

CheckReport check_chart_lower_lipschitz(const SpaceSpec& space, int trials,
                          std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  require(space.grassmann_k().has_value(), ErrorCode::UnsupportedInvariant,
          "chart lower-Lipschitz check needs a catalog space with kappa = 1 (Grassmann)");
  CheckReport rep;
  rep.name = "chart-lower-lipschitz/" + space.name();
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double lambda = 0.4;
  const double quotient_slack = 1e-3;
  const Field field = space.group().field();

  // One-sided slack: the quotient value is an upper-bound-style report, and
  // subtracting the slack from the required side means an understated
  // distance can only make this margin larger, never falsely negative.
  auto margin_for = [&](const Mat& x, const Mat& xp) {
    GroupElement ex = element_from(space.group(), expm_skew(x, field));
    GroupElement exp_ = element_from(space.group(), expm_skew(xp, field));
    double q = quotient_dist(space, ex, exp_, NormSpec::op());
    double sep = operator_norm(Mat(x - xp));
    return lambda * sep - quotient_slack - q;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    Mat x = random_x_element(space, 0.12, rs);
    Mat xp = random_x_element(space, 0.12, rs);
    Json w;
    w["x"] = matrix_to_json(DenseMatrix(x, field));
    w["xp"] = matrix_to_json(DenseMatrix(xp, field));
    tracker.observe(margin_for(x, xp), std::move(w));
  }

  // Wider one-sided regime: x' = 0, radius 5/9.
  {
    RandomStream rs = root.child("radial");
    double worst = -std::numeric_limits<double>::infinity();
    const int radial_trials = std::max(8, trials / 4);
    Mat zero = Mat::Zero(space.group().n, space.group().n);
    for (int t = 0; t < radial_trials; ++t) {
      Mat x = random_x_element(space, 5.0 / 9.0, rs);
      worst = std::max(worst, margin_for(x, zero));
    }
    rep.details["radial_trials"] = radial_trials;
    rep.details["radial_worst_margin"] = worst;
    rep.details["radial_pass"] = worst <= 0.0;
  }

  finalize(&rep, tracker, [&](const Json& w) {
    Mat x = matrix_from_json(w.at("x")).entries();
    Mat xp = matrix_from_json(w.at("xp")).entries();
    return margin_for(x, xp);
  });
  if (!rep.details.value("radial_pass", false)) rep.pass = false;
  return rep;
}

CheckReport check_su_circle(int n, int trials, std::uint64_t seed) {
  require(n >= 2, ErrorCode::InvalidParameter, "su-circle check needs n >= 2");
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  CheckReport rep;
  rep.name = "su-circle/U(" + std::to_string(n) + ")";
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double tol = 1e-6;

  SpaceSpec space =
      SpaceSpec::make(GroupSpec::unitary(n), SubgroupSpec::special_unitary());

  auto margin_for = [&](const GroupElement& u, const GroupElement& v,
                        std::uint64_t qseed) {
    QuotientOptions opts;
    opts.mode = QuotientOptions::Mode::Generic;
    opts.restarts = 16;
    opts.stable_k = 6;
    opts.seed = qseed;
    double generic = quotient_dist_full(space, u, v, NormSpec::op(), opts).value;
    Complex du = u.entries().determinant();
    Complex dv = v.entries().determinant();
    double closed = std::abs(std::arg(du * std::conj(dv))) / n;
    return std::abs(generic - closed) - tol;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    GroupElement u = haar_sample(space.group(), rs);
    GroupElement v = haar_sample(space.group(), rs);
    Json w;
    w["u"] = matrix_to_json(u.matrix());
    w["v"] = matrix_to_json(v.matrix());
    w["qseed"] = t;
    tracker.observe(margin_for(u, v, t), std::move(w));
  }
  finalize(&rep, tracker, [&](const Json& w) {
    GroupElement u = GroupElement::make(matrix_from_json(w.at("u")),
                                        space.group());
    GroupElement v = GroupElement::make(matrix_from_json(w.at("v")),
                                        space.group());
    return margin_for(u, v, w.at("qseed").get<std::uint64_t>());
  });
  return rep;
}

CheckReport check_spectral_variation(const GroupSpec& group, NormSpec p,
                                     int trials, std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidParameter, "trials must be >= 1");
  require(group.n <= 6, ErrorCode::TooLarge,
          "spectral variation check is exhaustive and needs n <= 6");
  CheckReport rep;
  rep.name = "spectral-variation/" + group.name() + "/p=" + p.label();
  rep.trials = trials;
  rep.tolerance = 0.0;
  const double tol = 1e-8;

  auto margin_for = [&](const GroupElement& u, const GroupElement& v) {
    return spectral_matching_dist(u, v, p) - intrinsic_dist(u, v, p) - tol;
  };

  RandomStream root(seed);
  WorstTracker tracker;
  for (int t = 0; t < trials; ++t) {
    RandomStream rs = root.child(static_cast<std::uint64_t>(t));
    GroupElement u = haar_sample(group, rs);
    GroupElement v = haar_sample(group, rs);
    Json w;
    w["u"] = matrix_to_json(u.matrix());
    w["v"] = matrix_to_json(v.matrix());
    tracker.observe(margin_for(u, v), std::move(w));
  }
  finalize(&rep, tracker, [&](const Json& w) {
    GroupElement u = GroupElement::make(matrix_from_json(w.at("u")), group);
    GroupElement v = GroupElement::make(matrix_from_json(w.at("v")), group);
    return margin_for(u, v);
  });
  return rep;
}

Json SuiteResult::to_json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = pass;
  Json arr = Json::array();
  for (const CheckReport& r : reports) arr.push_back(r.to_json());
  j["reports"] = std::move(arr);
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "exp_lipschitz",   "phi_lower_bound", "bch_defect",
      "geodesic_minimality", "log_ball",    "chart_lower_lipschitz",
      "su_circle",       "spectral_variation",
  };
  return names;
}

SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed) {
  SuiteResult out;
  out.suite = name;
  const GroupSpec u3 = GroupSpec::unitary(3);
  const GroupSpec so4 = GroupSpec::special_orthogonal(4);
  const std::vector<NormSpec> norms = {NormSpec::trace_class(),
                                       NormSpec::frobenius(), NormSpec::op()};

  if (name == "exp_lipschitz") {
    for (const GroupSpec& g : {u3, so4})
      for (NormSpec p : norms)
        out.reports.push_back(check_exp_lipschitz(g, p, trials, seed));
  } else if (name == "phi_lower_bound") {
    for (NormSpec p : norms) {
      out.reports.push_back(
          check_phi_lower_bound(u3, p, kPi / 4.0, trials, seed));
      out.reports.push_back(check_phi_lower_bound(u3, p, 0.01, trials, seed));
    }
    out.reports.push_back(
        report_phi_min_ratio(u3, NormSpec::op(), 2.9, trials, seed));
  } else if (name == "bch_defect") {
    for (const GroupSpec& g : {u3, so4})
      for (NormSpec p : norms)
        out.reports.push_back(check_bch_defect(g, p, trials, seed));
  } else if (name == "geodesic_minimality") {
    out.reports.push_back(check_geodesic_minimality(
        u3, NormSpec::op(), std::max(1, trials / 50), 50, seed));
  } else if (name == "log_ball") {
    out.reports.push_back(check_log_ball(GroupSpec::unitary(4), trials, seed));
    out.reports.push_back(check_log_ball(so4, trials, seed));
  } else if (name == "chart_lower_lipschitz") {
    SpaceSpec g42 =
        SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
    out.reports.push_back(check_chart_lower_lipschitz(g42, trials, seed));
  } else if (name == "su_circle") {
    out.reports.push_back(check_su_circle(2, trials, seed));
    out.reports.push_back(check_su_circle(3, trials, seed));
  } else if (name == "spectral_variation") {
    out.reports.push_back(
        check_spectral_variation(GroupSpec::unitary(4), NormSpec::op(), trials, seed));
    out.reports.push_back(
        check_spectral_variation(u3, NormSpec::trace_class(), trials, seed));
  } else {
    fail(ErrorCode::InvalidParameter, "unknown verify suite: " + name);
  }

  out.pass = true;
  for (const CheckReport& r : out.reports)
    if (!r.pass) out.pass = false;
  return out;
}

}  // namespace entlab
