#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entlab/groups.hpp"
#include "entlab/matrix_json.hpp"

namespace entlab {

/// Subgroup descriptor for the homogeneous-space catalog. Grassmann(k) is
/// BlockDiagonal([k, n-k]) with the coset-to-subspace identification
/// u H ~ u E_k; Trivial is the empty Custom basis spelled as a variant.
struct SubgroupSpec {
  enum class Variant {
    Full,
    Trivial,
    Grassmann,
    BlockDiagonal,
    TensorFactor,
    SpecialUnitary,
    Custom,
  };

  Variant variant = Variant::Full;
  int grassmann_k = 0;
  std::vector<int> partition;
  int tensor_m = 0, tensor_k = 0;
  std::vector<DenseMatrix> custom_basis;

  static SubgroupSpec full() { return {Variant::Full, 0, {}, 0, 0, {}}; }
  static SubgroupSpec trivial() { return {Variant::Trivial, 0, {}, 0, 0, {}}; }
  static SubgroupSpec grassmann(int k) {
    return {Variant::Grassmann, k, {}, 0, 0, {}};
  }
  static SubgroupSpec block_diagonal(std::vector<int> part) {
    return {Variant::BlockDiagonal, 0, std::move(part), 0, 0, {}};
  }
  static SubgroupSpec tensor_factor(int m, int k) {
    return {Variant::TensorFactor, 0, {}, m, k, {}};
  }
  static SubgroupSpec special_unitary() {
    return {Variant::SpecialUnitary, 0, {}, 0, 0, {}};
  }
  static SubgroupSpec custom(std::vector<DenseMatrix> basis) {
    return {Variant::Custom, 0, {}, 0, 0, std::move(basis)};
  }

  std::string name() const;
};

/// Homogeneous space M = G/H with the derived tangent split
/// g = h (+) x, both bases orthonormal under Re tr(a*b).
class SpaceSpec {
 public:
  static SpaceSpec make(GroupSpec group, SubgroupSpec subgroup);

  const GroupSpec& group() const { return group_; }
  const SubgroupSpec& subgroup() const { return subgroup_; }
  const std::vector<Mat>& h_basis() const { return h_basis_; }
  const std::vector<Mat>& x_basis() const { return x_basis_; }
  int dim_m() const { return static_cast<int>(x_basis_.size()); }
  int dim_h() const { return static_cast<int>(h_basis_.size()); }

  std::string name() const;

  /// Normalized 2-block partition when this space is a Grassmannian
  /// (Grassmann variant or a 2-block BlockDiagonal); empty otherwise.
  std::optional<int> grassmann_k() const;
  bool is_trivial_subgroup() const { return h_basis_.empty(); }

  /// Project a Lie-algebra element onto span(h_basis) coefficients.
  Eigen::VectorXd h_coefficients(const Mat& x) const;
  Mat project_h(const Mat& x) const;
  Mat project_x(const Mat& x) const;
  Mat h_from_coefficients(const Eigen::VectorXd& c) const;
  Mat x_from_coefficients(const Eigen::VectorXd& c) const;

  Json to_json() const;
  static SpaceSpec from_json(const Json& j);

 private:
  SpaceSpec(GroupSpec g, SubgroupSpec s) : group_(g), subgroup_(std::move(s)) {}
  GroupSpec group_;
  SubgroupSpec subgroup_;
  std::vector<Mat> h_basis_;
  std::vector<Mat> x_basis_;
};

/// Real inner product Re tr(a*b) the splits are orthonormal under.
inline double lie_inner(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace().real();
}

/// Gaussian element of span(x_basis), rescaled so the operator norm is
/// radius * u with u uniform on (0, 1]; always inside the closed ball.
Mat random_x_element(const SpaceSpec& space, double radius, RandomStream& rng);

/// Same construction inside span(h_basis).
Mat random_h_element(const SpaceSpec& space, double radius, RandomStream& rng);

}  // namespace entlab
