#pragma once

#include <optional>
#include <string>

#include "entlab/metrics.hpp"
#include "entlab/spaces.hpp"

namespace entlab {

/// kappa(M) = ||P_X||, operator norm to operator norm. Closed form 1 on
/// the catalog spaces that admit it; otherwise a certified lower bound
/// from projected ascent plus the a-priori conditional-expectation upper
/// bound, reported as a bracket.
struct KappaResult {
  double lower = 1.0;
  double upper = 1.0;
  std::string method;  // "closed-form" | "estimated-lower-bound" | "degenerate"
  std::optional<DenseMatrix> witness;  // ascent maximizer, ||x||_inf <= 1
  int restarts = 0;
};

KappaResult kappa(const SpaceSpec& space, int effort, std::uint64_t seed = 17);

/// Direct norm evaluation of an ascent witness, ||P_X x||_inf / ||x||_inf.
double kappa_witness_ratio(const SpaceSpec& space, const Mat& x);

/// theta(M) per the woven-subgroup definition; catalog values for the
/// structured families, torus-lattice search otherwise. The block-diagonal
/// and tensor-factor catalog value 2 is stored on the extrinsic scale
/// (flagged); the torus search reports the intrinsic-scale value next to
/// it for comparison.
struct ThetaResult {
  double value = 0.0;
  std::string method;  // "catalog" | "torus-search" | "degenerate"
  bool extrinsic_scale_flag = false;
  std::optional<double> torus_search_value;
};

struct ThetaSearchOptions {
  int lattice_l = 3;        // entries in {-L..L} * (2 pi / denominator)
  int max_denominator = 0;  // 0: up to n
  int shift_range = 2;      // lattice shifts checked per slot
};

ThetaResult theta(const SpaceSpec& space, const ThetaSearchOptions& opts = {});

/// Torus-lattice upper bound on theta alone (the generic search path).
std::optional<double> theta_torus_search(const SpaceSpec& space,
                                         const ThetaSearchOptions& opts = {});

struct DiameterResult {
  double value = 0.0;
  std::string method;  // "catalog" | "mc-lower-bound" | "degenerate"
};

DiameterResult diameter(const SpaceSpec& space, int samples = 64,
                        std::uint64_t seed = 23);

struct InvariantReport {
  std::string space;
  int dim_m = 0;
  bool degenerate = false;
  KappaResult kappa;
  ThetaResult theta;
  DiameterResult diameter;
  Json to_json() const;
};

InvariantReport invariant_report(const SpaceSpec& space, int kappa_effort = 64,
                                 int diameter_samples = 64,
                                 std::uint64_t seed = 17);

enum class CoveringCase { A, B, C, None };

struct CoveringCaseReport {
  CoveringCase result = CoveringCase::None;
  std::string witness;      // reducing subspace / dimension description
  bool hypothesis_ok = false;
  std::string diagnostics;
  const char* case_name() const {
    switch (result) {
      case CoveringCase::A: return "a";
      case CoveringCase::B: return "b";
      case CoveringCase::C: return "c";
      case CoveringCase::None: return "none";
    }
    return "none";
  }
};

/// Checks the small-invariant hypothesis and the structural conditions
/// behind the two-sided covering estimates. A block carrying a full
/// unitary factor of dimension >= alpha n wins first, then a reducing
/// subspace with alpha n <= dim E <= (1-alpha) n, then the dimension
/// count; tensor factors land in case b and large blocks in case c.
CoveringCaseReport classify_covering_case(const SpaceSpec& space,
                                                double alpha);

}  // namespace entlab
