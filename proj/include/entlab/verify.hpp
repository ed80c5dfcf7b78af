#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entlab/invariants.hpp"
#include "entlab/metrics.hpp"
#include "entlab/nets.hpp"

namespace entlab {

/// Machine-readable outcome of one property suite run. `worst_margin` is
/// the signed excess of the checked quantity over its allowed bound
/// (tolerance included), so pass holds iff worst_margin <= 0. The witness
/// serializes the inputs of the worst trial and must reproduce its margin
/// on re-evaluation to 1e-10.
struct CheckReport {
  std::string name;
  int trials = 0;
  double worst_margin = 0.0;
  Json witness;
  double witness_reproduced_margin = 0.0;
  bool witness_reproducible = false;
  bool pass = false;
  double tolerance = 0.0;
  Json details;
  Json to_json() const;
};

/// Truncated product bound on the exponential's lower Lipschitz constant:
/// prod_{k>=1} (1 - |1 - e^{i theta / 2^k}|), factors dropped once they
/// pass 1 - 1e-14. Defined for theta in (0, 2 pi / 3).
struct PhiBoundSpec {
  double theta = 0.0;
  double bound = 0.0;
  static PhiBoundSpec make(double theta);
};

CheckReport check_exp_lipschitz(const GroupSpec& group, NormSpec p, int trials,
                                std::uint64_t seed);

CheckReport check_phi_lower_bound(const GroupSpec& group, NormSpec p,
                                  double theta, int trials, std::uint64_t seed);

/// Report-only companion for radii where no product bound is available
/// (theta up to pi): records the empirical minimum ratio with no hard
/// threshold and always passes.
CheckReport report_phi_min_ratio(const GroupSpec& group, NormSpec p,
                                 double theta, int trials, std::uint64_t seed);

CheckReport check_bch_defect(const GroupSpec& group, NormSpec p, int trials,
                             std::uint64_t seed);

CheckReport check_geodesic_minimality(const GroupSpec& group, NormSpec p,
                                      int base_points, int competitors,
                                      std::uint64_t seed);

CheckReport check_log_ball(const GroupSpec& group, int trials,
                           std::uint64_t seed);

CheckReport check_chart_lower_lipschitz(const SpaceSpec& space, int trials,
                          std::uint64_t seed);

CheckReport check_su_circle(int n, int trials, std::uint64_t seed);

CheckReport check_spectral_variation(const GroupSpec& group, NormSpec p,
                                     int trials, std::uint64_t seed);

struct SuiteResult {
  std::string suite;
  std::vector<CheckReport> reports;
  bool pass = false;
  Json to_json() const;
};

const std::vector<std::string>& suite_names();

/// Runs one named suite over its canonical groups and norms, scaled by
/// `trials`. Unknown names raise invalid-parameter.
SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed);

}  // namespace entlab
