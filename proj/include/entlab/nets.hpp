#pragma once

#include <cstdint>
#include <vector>

#include "entlab/invariants.hpp"
#include "entlab/metrics.hpp"
#include "entlab/spaces.hpp"

namespace entlab {

struct AuditOutcome {
  int samples = 0;
  double max_distance = 0.0;
  bool pass = false;
};

struct NetReport {
  std::string space;
  double epsilon = 0.0;
  NormSpec p = NormSpec::op();
  int cardinality = 0;
  std::string construction = "grid-exp";
  AuditOutcome audit;
  double achieved_big_c = 0.0;  // cardinality^{1/d} * eps / diam
  double diam_used = 0.0;
  int dim_m = 0;
  std::vector<GroupElement> elements;
  Json to_json(bool include_elements = false) const;
  std::string csv_row() const;
};

struct PackReport {
  std::string space;
  double epsilon = 0.0;
  NormSpec p = NormSpec::op();
  int cardinality = 0;
  double min_pairwise = 0.0;  // verified post hoc, must exceed epsilon
  std::uint64_t seed = 0;
  int budget = 0;
  double achieved_c = 0.0;  // cardinality^{1/d} * eps / theta
  double theta_used = 0.0;
  int dim_m = 0;
  std::vector<GroupElement> elements;
  Json to_json(bool include_elements = false) const;
  std::string csv_row() const;
};

struct NetOptions {
  int audit_samples = 2000;
  std::uint64_t audit_seed = 99;
  long max_grid_points = 4000000;
  bool keep_elements = true;
};

/// Covering net from a delta-grid in x-basis coordinates over
/// B_X(diam M), mapped through q o exp (a contraction), pruned at eps/4,
/// and audited with Haar-projected probes. A failed audit is flagged,
/// never silently passed.
NetReport build_net(const SpaceSpec& space, double epsilon, NormSpec p,
                    const NetOptions& opts = {});

/// Greedy packing over a Haar candidate stream: accept iff separated from
/// every accepted point by more than eps; stop after `budget` consecutive
/// rejections. Cardinality is a lower bound for the packing number.
PackReport greedy_pack(const SpaceSpec& space, double epsilon, NormSpec p,
                       int budget, std::uint64_t seed);

struct ChainReport {
  int n_prime = 0;        // sets of diameter <= 2 eps
  int n_grid = 0;         // ball centers from the candidate grid
  int n_double_prime = 0; // ball centers in the point set
  int n_tilde = 0;        // maximal eps-separated subset
  int n_prime_half = 0;   // N'(eps/2), the chain's right end
  bool holds = false;
  Json to_json() const;
};

/// Exact N' <= N <= N'' <= N~ <= N'(eps/2) on a finite metric space given
/// by its distance matrix; centers for N come from `candidate_dist` rows
/// (candidate-to-point distances) plus the points themselves.
ChainReport audit_chain(const RealMat& dist, double epsilon);
ChainReport audit_chain(const RealMat& dist, double epsilon,
                        const RealMat& candidate_dist);

struct ProfilePoint {
  double epsilon = 0.0;
  int cardinality = 0;
  double achieved_c = 0.0;
};

struct ProfileReport {
  std::string space;
  NormSpec p = NormSpec::op();
  std::vector<ProfilePoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  int dim_m = 0;
  double theta_used = 0.0;
  std::uint64_t seed = 0;
  int budget = 0;
  Json to_json() const;
  std::string csv_rows() const;
};

/// Greedy packings across an epsilon sweep and the least-squares slope of
/// log N~ against log(1/eps).
ProfileReport entropy_profile(const SpaceSpec& space,
                              const std::vector<double>& epsilons, NormSpec p,
                              int budget, std::uint64_t seed);

struct VolumeReport {
  std::string space;
  double epsilon = 0.0;
  int samples = 0;
  int hits = 0;
  double fraction = 0.0;
  double wilson_low = 0.0;   // 99% interval
  double wilson_high = 0.0;
  double c1_achieved = 0.0;  // fraction^{1/d} * diam / eps from interval ends
  double big_c1_achieved = 0.0;
  double diam_used = 0.0;
  int dim_m = 0;
  std::uint64_t seed = 0;
  Json to_json() const;
  std::string csv_row() const;
};

/// Haar measure of the ball of radius eps around the base coset.
VolumeReport ball_volume_mc(const SpaceSpec& space, double epsilon, int samples,
                            std::uint64_t seed);

}  // namespace entlab
