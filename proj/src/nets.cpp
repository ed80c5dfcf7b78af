#include "entlab/nets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace entlab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Coset distance with cheap sound bounds. The operator-norm gap of the
/// representatives gives rho_inf exactly through 2 asin(sigma/2); every
/// Schatten index is sandwiched between that and its n^{1/p} multiple,
/// and quotients only shrink distances. Exact values go through the
/// quotient machinery; the bounds only short-circuit decisions they
/// already determine.
class CosetDistance {
 public:
  CosetDistance(const SpaceSpec& space, NormSpec p)
      : space_(space), p_(p), n_(space.group().n) {
    trivial_ = space.is_trivial_subgroup();
    grass_k_ = space.grassmann_k().value_or(0);
    cheap_exact_ = trivial_ || (grass_k_ > 0 && p.is_inf());
    so3_ = trivial_ && space.group().family == GroupFamily::SO && n_ == 3;
    circle_ = trivial_ && space.group().family == GroupFamily::U && n_ == 1;
    p_blowup_ = p.is_inf() ? 1.0 : std::pow(static_cast<double>(n_), 1.0 / p.p);
    qopts_.restarts = 16;
    qopts_.stable_k = 6;
    qopts_.max_iterations = 120;
  }

  double exact(const GroupElement& a, const GroupElement& b) const {
    if (trivial_ && p_.is_inf()) return trivial_op_dist(a, b);
    if (grass_k_ > 0 && p_.is_inf())
      return grassmann_dist(coset_subspace_basis(a, grass_k_),
                            coset_subspace_basis(b, grass_k_));
    if (trivial_) return intrinsic_dist(a, b, p_);
    return quotient_dist_full(space_, a, b, p_, qopts_).value;
  }

  /// Sound lower bound (0 when nothing cheap is available).
  double lower(const GroupElement& a, const GroupElement& b) const {
    if (cheap_exact_) return exact(a, b);
    if (!trivial_) return 0.0;
    double s = operator_norm(Mat(a.entries() - b.entries()));
    return 2.0 * std::asin(std::clamp(s / 2.0, 0.0, 1.0));
  }

  /// Sound upper bound.
  double upper(const GroupElement& a, const GroupElement& b) const {
    if (cheap_exact_) return exact(a, b);
    double s = operator_norm(Mat(a.entries() - b.entries()));
    return p_blowup_ * 2.0 * std::asin(std::clamp(s / 2.0, 0.0, 1.0));
  }

  bool cheap_exact() const { return cheap_exact_; }

 private:
  /// Intrinsic operator-norm distance on the full group, via the chord
  /// identity rho = 2 asin(sigma_max(u - v)/2). The max rotation angle has
  /// closed forms on the circle and on SO(3).
  double trivial_op_dist(const GroupElement& a, const GroupElement& b) const {
    if (circle_) {
      Complex w = a.entries()(0, 0) * std::conj(b.entries()(0, 0));
      return std::abs(std::arg(w));
    }
    if (so3_) {
      double tr = a.entries().real().cwiseProduct(b.entries().real()).sum();
      return std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
    }
    double s = operator_norm(Mat(a.entries() - b.entries()));
    return 2.0 * std::asin(std::clamp(s / 2.0, 0.0, 1.0));
  }

  const SpaceSpec& space_;
  NormSpec p_;
  int n_;
  bool trivial_ = false;
  int grass_k_ = 0;
  bool cheap_exact_ = false;
  bool so3_ = false;
  bool circle_ = false;
  double p_blowup_ = 1.0;
  QuotientOptions qopts_;
};

/// Separation test dist(a, b) > eps via bounds first, exact only when the
/// bounds straddle the threshold.
bool separated(const CosetDistance& d, const GroupElement& a,
               const GroupElement& b, double eps) {
  double lb = d.lower(a, b);
  if (lb > eps) return true;
  if (d.cheap_exact()) return false;  // lower() was exact
  double ub = d.upper(a, b);
  if (ub <= eps) return false;
  return d.exact(a, b) > eps;
}

double min_dist_to_set(const CosetDistance& d, const GroupElement& probe,
                       const std::vector<GroupElement>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const GroupElement& e : set) {
    double lb = d.lower(probe, e);
    if (lb >= best) continue;
    double v = d.cheap_exact() ? lb : d.exact(probe, e);
    best = std::min(best, v);
    if (best == 0.0) break;
  }
  return best;
}

// ---- exact finite-space quantities for audit_chain ----

int max_separated_subset(const std::vector<std::uint32_t>& conflict, int n) {
  // maximum independent set over the conflict graph, branch and bound
  std::unordered_map<std::uint32_t, int> memo;
  std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1u);
  std::function<int(std::uint32_t)> mis = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = __builtin_ctz(mask);
    std::uint32_t without = mask & ~(1u << v);
    int best = mis(without);  // exclude v
    std::uint32_t rest = without & ~conflict[v];
    best = std::max(best, 1 + mis(rest));  // include v
    memo.emplace(mask, best);
    return best;
  };
  return mis(full);
}

int min_cover(const std::vector<std::uint32_t>& sets, int n) {
  require(!sets.empty(), ErrorCode::NumericFailure, "cover family is empty");
  std::uint32_t full = (1u << n) - 1u;
  {
    std::uint32_t reach = 0;
    for (std::uint32_t s : sets) reach |= s;
    require((reach & full) == full, ErrorCode::NumericFailure,
            "cover family does not cover the point set");
  }
  std::unordered_map<std::uint32_t, int> memo;
  std::function<int(std::uint32_t)> cover = [&](std::uint32_t mask) -> int {
    if (mask == 0) return 0;
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    int v = __builtin_ctz(mask);
    int best = n + 1;
    for (std::uint32_t s : sets) {
      if (!(s & (1u << v))) continue;
      best = std::min(best, 1 + cover(mask & ~s));
    }
    memo.emplace(mask, best);
    return best;
  };
  return cover(full);
}

void bron_kerbosch(std::uint32_t r, std::uint32_t p, std::uint32_t x,
                   const std::vector<std::uint32_t>& adj,
                   std::vector<std::uint32_t>* out) {
  if (p == 0 && x == 0) {
    out->push_back(r);
    return;
  }
  std::uint32_t pivot_candidates = p | x;
  int pivot = __builtin_ctz(pivot_candidates);
  std::uint32_t ext = p & ~adj[pivot];
  while (ext) {
    int v = __builtin_ctz(ext);
    ext &= ext - 1;
    bron_kerbosch(r | (1u << v), p & adj[v], x & adj[v], adj, out);
    p &= ~(1u << v);
    x |= (1u << v);
  }
}

/// Minimum cover by sets of diameter <= 2 eps: every such set extends to a
/// maximal clique of the (d <= 2 eps)-graph, so covering with maximal
/// cliques is exact.
int min_diameter_cover(const RealMat& dist, double two_eps) {
  const int n = static_cast<int>(dist.rows());
  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && dist(i, j) <= two_eps) adj[i] |= (1u << j);
  std::vector<std::uint32_t> cliques;
  bron_kerbosch(0, (1u << n) - 1u, 0, adj, &cliques);
  return min_cover(cliques, n);
}

ChainReport audit_chain_impl(const RealMat& dist, double eps,
                             const RealMat* cand) {
  const int n = static_cast<int>(dist.rows());
  require(n >= 1 && dist.rows() == dist.cols(), ErrorCode::InvalidParameter,
          "audit_chain needs a square distance matrix");
  require(n <= 18, ErrorCode::TooLarge,
          "audit_chain is exact and limited to 18 points");
  require(eps > 0.0, ErrorCode::InvalidParameter, "epsilon must be positive");

  ChainReport rep;

  // N~: maximum eps-separated subset (strict separation)
  std::vector<std::uint32_t> conflict(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && dist(i, j) <= eps) conflict[i] |= (1u << j);
  rep.n_tilde = max_separated_subset(conflict, n);

  // N'': centers restricted to the points
  std::vector<std::uint32_t> point_balls(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dist(i, j) <= eps) point_balls[i] |= (1u << j);
  rep.n_double_prime = min_cover(point_balls, n);

  // N: centers from the candidate grid (points always included)
  std::vector<std::uint32_t> cand_balls = point_balls;
  if (cand) {
    require(cand->cols() == n, ErrorCode::InvalidParameter,
            "candidate distance rows must match the point count");
    for (Eigen::Index c = 0; c < cand->rows(); ++c) {
      std::uint32_t ball = 0;
      for (int j = 0; j < n; ++j)
        if ((*cand)(c, j) <= eps) ball |= (1u << j);
      cand_balls.push_back(ball);
    }
  }
  rep.n_grid = min_cover(cand_balls, n);

  rep.n_prime = min_diameter_cover(dist, 2.0 * eps);
  rep.n_prime_half = min_diameter_cover(dist, eps);

  rep.holds = rep.n_prime <= rep.n_grid && rep.n_grid <= rep.n_double_prime &&
              rep.n_double_prime <= rep.n_tilde &&
              rep.n_tilde <= rep.n_prime_half;
  return rep;
}

}  // namespace

Json ChainReport::to_json() const {
  Json j;
  j["n_prime"] = n_prime;
  j["n"] = n_grid;
  j["n_double_prime"] = n_double_prime;
  j["n_tilde"] = n_tilde;
  j["n_prime_half"] = n_prime_half;
  j["holds"] = holds;
  return j;
}

ChainReport audit_chain(const RealMat& dist, double epsilon) {
  return audit_chain_impl(dist, epsilon, nullptr);
}

ChainReport audit_chain(const RealMat& dist, double epsilon,
                        const RealMat& candidate_dist) {
  return audit_chain_impl(dist, epsilon, &candidate_dist);
}

namespace {

/// theta scale for the achieved-constant reports; spaces without a torus
/// description fall back to the diameter.
double theta_scale(const SpaceSpec& space) {
  try {
    return theta(space).value;
  } catch (const Error&) {
    return diameter(space).value;
  }
}

}  // namespace

NetReport build_net(const SpaceSpec& space, double epsilon, NormSpec p,
                    const NetOptions& opts) {
  NetReport rep;
  rep.space = space.name();
  rep.epsilon = epsilon;
  rep.p = p;
  rep.dim_m = space.dim_m();
  require(space.dim_m() >= 1, ErrorCode::InvalidParameter,
          "build_net needs a space with positive dimension");

  DiameterResult diam = diameter(space);
  rep.diam_used = diam.value;
  require(epsilon > 0.0 && epsilon <= diam.value + 1e-12,
          ErrorCode::InvalidParameter,
          "epsilon must lie in (0, diam] = (0, " + std::to_string(diam.value) +
              "]");

  const int d = space.dim_m();
  const int n = space.group().n;
  const Field field = space.group().field();
  const double p_factor =
      p.is_inf() ? 1.0
                 : std::max(1.0, std::pow(static_cast<double>(n),
                                          1.0 / p.p - 0.5));
  const double delta = 2.0 * epsilon / (std::sqrt(static_cast<double>(d)) *
                                        p_factor);

  // Coordinate box enclosing the operator-norm ball: the i-th coordinate
  // of any x with ||x||_op <= diam is bounded by the trace norm of the
  // i-th basis element times diam.
  std::vector<int> steps(d);
  double count_est = 1.0;
  for (int i = 0; i < d; ++i) {
    double coord_limit =
        schatten_norm(space.x_basis()[i], NormSpec::trace_class()) *
            diam.value +
        delta / 2.0;
    steps[i] = static_cast<int>(std::floor(coord_limit / delta));
    count_est *= 2.0 * steps[i] + 1.0;
  }
  require(count_est <= static_cast<double>(opts.max_grid_points),
          ErrorCode::InvalidParameter,
          "grid would need about " + std::to_string(count_est) +
              " points; over the configured limit");

  // Operator-norm cull: a grid point can be the rounding of a ball point
  // only within (delta/2) sqrt(d) of the ball in Frobenius norm.
  const double keep_limit =
      diam.value + delta / 2.0 * std::sqrt(static_cast<double>(d)) + 1e-12;

  CosetDistance dist(space, p);
  std::vector<GroupElement> net;
  std::vector<int> digit(d);
  for (int i = 0; i < d; ++i) digit[i] = -steps[i];
  Eigen::VectorXd coords(d);
  const double prune = epsilon / 4.0;
  while (true) {
    for (int i = 0; i < d; ++i) coords(i) = digit[i] * delta;
    Mat x = space.x_from_coefficients(coords);
    if (operator_norm(x) <= keep_limit) {
      Mat u = expm_skew(skew_part(x, field), field);
      GroupElement g =
          GroupElement::make(DenseMatrix(std::move(u), field), space.group());
      bool duplicate = false;
      for (const GroupElement& e : net) {
        if (!separated(dist, g, e, prune)) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) net.push_back(std::move(g));
    }
    int pos = 0;
    while (pos < d && ++digit[pos] > steps[pos]) {
      digit[pos] = -steps[pos];
      ++pos;
    }
    if (pos == d) break;
  }

  rep.cardinality = static_cast<int>(net.size());
  rep.achieved_big_c = std::pow(static_cast<double>(rep.cardinality),
                                1.0 / static_cast<double>(d)) *
                       epsilon / diam.value;

  RandomStream audit_rng = RandomStream(opts.audit_seed).child("net-audit");
  rep.audit.samples = opts.audit_samples;
  double worst = 0.0;
  for (int i = 0; i < opts.audit_samples; ++i) {
    GroupElement probe = haar_sample(space.group(), audit_rng);
    worst = std::max(worst, min_dist_to_set(dist, probe, net));
  }
  rep.audit.max_distance = worst;
  rep.audit.pass = worst <= epsilon * (1.0 + 1e-6);

  if (opts.keep_elements) rep.elements = std::move(net);
  return rep;
}

PackReport greedy_pack(const SpaceSpec& space, double epsilon, NormSpec p,
                       int budget, std::uint64_t seed) {
  require(epsilon > 0.0, ErrorCode::InvalidParameter, "epsilon must be positive");
  require(budget >= 1, ErrorCode::InvalidParameter, "budget must be positive");
  PackReport rep;
  rep.space = space.name();
  rep.epsilon = epsilon;
  rep.p = p;
  rep.seed = seed;
  rep.budget = budget;
  rep.dim_m = space.dim_m();
  rep.theta_used = theta_scale(space);

  CosetDistance dist(space, p);
  RandomStream rng = RandomStream(seed).child("greedy-pack");

  // Greedy packing from a Haar candidate stream of `budget` points. A
  // candidate joins iff its distance to every accepted point exceeds eps. Among the candidates that still qualify we
  // take the tightest fit (smallest distance to the accepted set), which
  // drives spacings toward eps and the count toward the packing number;
  // the run ends when no streamed candidate qualifies, i.e. after a full
  // budget of consecutive rejections.
  std::vector<GroupElement> pool;
  pool.reserve(budget);
  for (int i = 0; i < budget; ++i) pool.push_back(haar_sample(space.group(), rng));
  std::vector<double> min_dist(pool.size(),
                               std::numeric_limits<double>::infinity());
  std::vector<bool> used(pool.size(), false);

  std::vector<GroupElement> accepted;
  while (true) {
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i] || min_dist[i] <= epsilon) continue;
      if (best < 0 || min_dist[i] < best_dist) {
        best_dist = min_dist[i];
        best = static_cast<int>(i);
      }
    }
    if (best < 0) break;
    used[best] = true;
    accepted.push_back(pool[best]);
    const GroupElement& added = accepted.back();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (used[i] || min_dist[i] <= epsilon) continue;
      double lb = dist.lower(pool[i], added);
      double v = (dist.cheap_exact() || lb >= min_dist[i])
                     ? lb
                     : dist.exact(pool[i], added);
      min_dist[i] = std::min(min_dist[i], v);
    }
  }
  pool.clear();

  // Full pairwise verification of strict separation. Pairs certified by
  // the sound lower bound contribute that bound to min_pairwise, so the
  // reported value never overstates the separation.
  double min_pair = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < accepted.size(); ++i) {
    for (std::size_t j = i + 1; j < accepted.size(); ++j) {
      double lb = dist.lower(accepted[i], accepted[j]);
      double v = (dist.cheap_exact() || lb > epsilon)
                     ? lb
                     : dist.exact(accepted[i], accepted[j]);
      min_pair = std::min(min_pair, v);
      require(v > epsilon, ErrorCode::NumericFailure,
              "greedy pack separation violated in post-hoc verification");
    }
  }
  rep.min_pairwise = accepted.size() > 1 ? min_pair : 0.0;
  rep.cardinality = static_cast<int>(accepted.size());
  rep.achieved_c = std::pow(static_cast<double>(rep.cardinality),
                            1.0 / std::max(1, rep.dim_m)) *
                   epsilon / rep.theta_used;
  rep.elements = std::move(accepted);
  return rep;
}

ProfileReport entropy_profile(const SpaceSpec& space,
                              const std::vector<double>& epsilons, NormSpec p,
                              int budget, std::uint64_t seed) {
  require(epsilons.size() >= 4, ErrorCode::InvalidParameter,
          "entropy_profile needs at least 4 epsilon values");
  double theta_val = theta_scale(space);
  double diam_val = diameter(space).value;
  double cap = std::min(theta_val, diam_val);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    require(epsilons[i] > 0.0 && epsilons[i] <= cap + 1e-12,
            ErrorCode::InvalidParameter,
            "epsilon values must lie in (0, min(theta, diam)]");
    if (i > 0)
      require(epsilons[i] >= epsilons[i - 1], ErrorCode::InvalidParameter,
              "epsilon values must be sorted ascending");
  }
  require(epsilons.back() > epsilons.front(), ErrorCode::InvalidParameter,
          "epsilon sweep must not be constant");

  ProfileReport rep;
  rep.space = space.name();
  rep.p = p;
  rep.dim_m = space.dim_m();
  rep.theta_used = theta_val;
  rep.seed = seed;
  rep.budget = budget;

  RandomStream root(seed);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(epsilons.size());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    PackReport pr = greedy_pack(space, epsilons[i], p, budget,
                                root.child(static_cast<std::uint64_t>(i)).key());
    ProfilePoint pt;
    pt.epsilon = epsilons[i];
    pt.cardinality = pr.cardinality;
    pt.achieved_c = pr.achieved_c;
    rep.points.push_back(pt);
    double x = std::log(1.0 / epsilons[i]);
    double y = std::log(static_cast<double>(std::max(1, pr.cardinality)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double denom = m * sxx - sx * sx;
  require(std::abs(denom) > 1e-12, ErrorCode::InvalidParameter,
          "epsilon sweep has zero-variance abscissa");
  rep.slope = (m * sxy - sx * sy) / denom;
  rep.intercept = (sy - rep.slope * sx) / m;
  double rss = 0.0;
  for (const ProfilePoint& pt : rep.points) {
    double x = std::log(1.0 / pt.epsilon);
    double y = std::log(static_cast<double>(std::max(1, pt.cardinality)));
    double r = y - (rep.intercept + rep.slope * x);
    rss += r * r;
  }
  rep.residual_rms = std::sqrt(rss / m);
  return rep;
}

VolumeReport ball_volume_mc(const SpaceSpec& space, double epsilon, int samples,
                            std::uint64_t seed) {
  require(samples >= 1, ErrorCode::InvalidParameter, "samples must be positive");
  VolumeReport rep;
  rep.space = space.name();
  rep.epsilon = epsilon;
  rep.samples = samples;
  rep.seed = seed;
  rep.dim_m = space.dim_m();
  DiameterResult diam = diameter(space);
  rep.diam_used = diam.value;
  require(epsilon > 0.0 && epsilon <= diam.value + 1e-12,
          ErrorCode::InvalidParameter, "epsilon must lie in (0, diam]");

  CosetDistance dist(space, NormSpec::op());
  GroupElement base = GroupElement::identity(space.group());
  RandomStream rng = RandomStream(seed).child("ball-volume");
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    GroupElement u = haar_sample(space.group(), rng);
    if (dist.exact(base, u) <= epsilon) ++hits;
  }
  rep.hits = hits;
  rep.fraction = static_cast<double>(hits) / samples;

  const double z = 2.5758293035489004;  // 99% two-sided normal quantile
  double nn = samples;
  double ph = rep.fraction;
  double denom = 1.0 + z * z / nn;
  double center = (ph + z * z / (2.0 * nn)) / denom;
  double half = z / denom *
                std::sqrt(ph * (1.0 - ph) / nn + z * z / (4.0 * nn * nn));
  rep.wilson_low = std::max(0.0, center - half);
  rep.wilson_high = std::min(1.0, center + half);

  const double d = std::max(1, rep.dim_m);
  rep.c1_achieved = std::pow(rep.wilson_low, 1.0 / d) * diam.value / epsilon;
  rep.big_c1_achieved = std::pow(rep.wilson_high, 1.0 / d) * diam.value / epsilon;
  return rep;
}

// ---- serialization ----

Json NetReport::to_json(bool include_elements) const {
  Json j;
  j["space"] = space;
  j["epsilon"] = epsilon;
  j["p"] = p.label();
  j["cardinality"] = cardinality;
  j["construction"] = construction;
  Json a;
  a["samples"] = audit.samples;
  a["max_distance"] = audit.max_distance;
  a["pass"] = audit.pass;
  j["audit"] = std::move(a);
  Json b;
  b["achieved_C"] = achieved_big_c;
  b["diam"] = diam_used;
  b["dim"] = dim_m;
  j["bound_comparison"] = std::move(b);
  if (include_elements) {
    Json arr = Json::array();
    for (const GroupElement& e : elements) arr.push_back(matrix_to_json(e.matrix()));
    j["elements"] = std::move(arr);
  }
  return j;
}

std::string NetReport::csv_row() const {
  std::ostringstream os;
  os << space << "," << fmt17(epsilon) << "," << p.label() << "," << cardinality
     << "," << fmt17(achieved_big_c) << "," << (audit.pass ? "pass" : "fail");
  return os.str();
}

Json PackReport::to_json(bool include_elements) const {
  Json j;
  j["space"] = space;
  j["epsilon"] = epsilon;
  j["p"] = p.label();
  j["cardinality"] = cardinality;
  j["min_pairwise"] = min_pairwise;
  j["seed"] = seed;
  j["budget"] = budget;
  Json b;
  b["achieved_c"] = achieved_c;
  b["theta"] = theta_used;
  b["dim"] = dim_m;
  j["bound_comparison"] = std::move(b);
  if (include_elements) {
    Json arr = Json::array();
    for (const GroupElement& e : elements) arr.push_back(matrix_to_json(e.matrix()));
    j["elements"] = std::move(arr);
  }
  return j;
}

std::string PackReport::csv_row() const {
  std::ostringstream os;
  os << space << "," << fmt17(epsilon) << "," << p.label() << "," << cardinality
     << "," << fmt17(achieved_c) << ",ok";
  return os.str();
}

Json ProfileReport::to_json() const {
  Json j;
  j["space"] = space;
  j["p"] = p.label();
  j["dim"] = dim_m;
  j["theta"] = theta_used;
  j["seed"] = seed;
  j["budget"] = budget;
  Json pts = Json::array();
  for (const ProfilePoint& pt : points) {
    Json e;
    e["epsilon"] = pt.epsilon;
    e["cardinality"] = pt.cardinality;
    e["achieved_c"] = pt.achieved_c;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  j["slope"] = slope;
  j["intercept"] = intercept;
  j["residual_rms"] = residual_rms;
  return j;
}

std::string ProfileReport::csv_rows() const {
  std::ostringstream os;
  for (const ProfilePoint& pt : points)
    os << space << "," << fmt17(pt.epsilon) << "," << p.label() << ","
       << pt.cardinality << "," << fmt17(pt.achieved_c) << ",ok\n";
  return os.str();
}

Json VolumeReport::to_json() const {
  Json j;
  j["space"] = space;
  j["epsilon"] = epsilon;
  j["samples"] = samples;
  j["hits"] = hits;
  j["fraction"] = fraction;
  j["wilson_low"] = wilson_low;
  j["wilson_high"] = wilson_high;
  j["c1_achieved"] = c1_achieved;
  j["C1_achieved"] = big_c1_achieved;
  j["diam"] = diam_used;
  j["dim"] = dim_m;
  j["seed"] = seed;
  return j;
}

std::string VolumeReport::csv_row() const {
  std::ostringstream os;
  os << space << "," << fmt17(epsilon) << ",inf," << hits << ","
     << fmt17(fraction) << ",ok";
  return os.str();
}

}  // namespace entlab
