#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entlab/groups.hpp"
#include "entlab/spaces.hpp"

namespace entlab {

enum class MetricKind { Extrinsic, Intrinsic };

/// Norm distance ||u - v||_p in the ambient matrix space.
double extrinsic_dist(const GroupElement& u, const GroupElement& v, NormSpec p);

/// Geodesic distance ||log(u^-1 v)||_p; one-parameter arcs realize it.
double intrinsic_dist(const GroupElement& u, const GroupElement& v, NormSpec p);

inline double group_dist(const GroupElement& u, const GroupElement& v,
                         NormSpec p, MetricKind kind) {
  return kind == MetricKind::Extrinsic ? extrinsic_dist(u, v, p)
                                       : intrinsic_dist(u, v, p);
}

struct GeodesicPoint {
  GroupElement point;
  /// Set when the spectrum of u^-1 v meets -1 within tolerance: the
  /// connecting shortest arc is then possibly non-unique. The returned
  /// curve still uses the principal branch.
  bool nonunique_warning;
};

GeodesicPoint geodesic_point(const GroupElement& u, const GroupElement& v,
                             double t);

double discrete_path_length(const std::vector<GroupElement>& points, NormSpec p);

/// Largest principal angle between equal-dimension subspaces given by
/// orthonormal basis columns: arccos of sigma_min(E* F), in [0, pi/2].
double grassmann_dist(const Mat& basis_e, const Mat& basis_f);

struct QuotientOptions {
  enum class Mode { Auto, ClosedForm, Generic };
  Mode mode = Mode::Auto;
  int restarts = 64;
  int stable_k = 8;       // certificate: best unchanged over last k restarts
  bool early_stop = true; // stop once the certificate is reached
  int max_iterations = 200;
  bool cross_check = false;  // on catalog spaces, also run the minimizer
  std::uint64_t seed = 0x5eedc0de0ddba11ull;
};

struct QuotientResult {
  double value = 0.0;
  std::string method;        // "closed-form", "generic", "intrinsic"
  bool heuristic = false;    // generic fallback on a non-catalog subgroup
  int restarts_run = 0;
  int stable_run = 0;        // trailing restarts with the best unchanged
  bool certified_stable = false;
  double cross_check_value = -1.0;  // minimizer value when cross-checked
  std::string flags() const;
};

/// Upper bound on the quotient distance inf_{h in H} rho(u, v h) with a
/// stability certificate; closed forms on catalog spaces at p = inf.
QuotientResult quotient_dist_full(const SpaceSpec& space, const GroupElement& u,
                                  const GroupElement& v, NormSpec p,
                                  const QuotientOptions& opts = {});

double quotient_dist(const SpaceSpec& space, const GroupElement& u,
                     const GroupElement& v, NormSpec p);

/// Optimal-permutation matching distance between eigenvalue multisets on
/// the torus: min over permutations of the l_p norm of arc-length gaps.
/// Exhaustive over permutations; requires n <= 6.
double spectral_matching_dist(const GroupElement& u, const GroupElement& v,
                              NormSpec p);

/// First k columns of an element, the subspace its coset represents under
/// the identification u H ~ u E_k.
Mat coset_subspace_basis(const GroupElement& u, int k);

}  // namespace entlab
