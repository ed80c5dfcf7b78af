#include "entlab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace entlab {

namespace {

/// Structural basis of the subalgebra h for the catalog variants. All the
/// returned elements are orthonormal under Re tr(a*b) by construction.
std::vector<Mat> structural_h_basis(const GroupSpec& g, const SubgroupSpec& s) {
  const int n = g.n;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Mat> basis;

  auto block_basis = [&](const std::vector<int>& partition) {
    int offset = 0;
    for (int size : partition) {
      GroupSpec sub{g.family, size};
      if (g.family == GroupFamily::SO && size < 2) {
        offset += size;
        continue;  // so(1) = 0
      }
      for (const Mat& b : lie_algebra_basis(sub)) {
        Mat e = Mat::Zero(n, n);
        e.block(offset, offset, size, size) = b;
        basis.push_back(std::move(e));
      }
      offset += size;
    }
  };

  switch (s.variant) {
    case SubgroupSpec::Variant::Full:
      return lie_algebra_basis(g);
    case SubgroupSpec::Variant::Trivial:
      return {};
    case SubgroupSpec::Variant::Grassmann: {
      block_basis({s.grassmann_k, n - s.grassmann_k});
      return basis;
    }
    case SubgroupSpec::Variant::BlockDiagonal: {
      block_basis(s.partition);
      return basis;
    }
    case SubgroupSpec::Variant::TensorFactor: {
      GroupSpec sub{g.family, s.tensor_k};
      const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(s.tensor_m));
      for (const Mat& b : lie_algebra_basis(sub)) {
        Mat e = Mat::Zero(n, n);
        for (int i = 0; i < s.tensor_m; ++i)
          e.block(i * s.tensor_k, i * s.tensor_k, s.tensor_k, s.tensor_k) = b;
        basis.push_back(inv_sqrt_m * e);
      }
      return basis;
    }
    case SubgroupSpec::Variant::SpecialUnitary: {
      // Off-diagonal pairs plus the traceless diagonal ladder.
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          Mat b = Mat::Zero(n, n);
          b(j, k) = Complex(inv_sqrt2, 0.0);
          b(k, j) = Complex(-inv_sqrt2, 0.0);
          basis.push_back(std::move(b));
          Mat c = Mat::Zero(n, n);
          c(j, k) = Complex(0.0, inv_sqrt2);
          c(k, j) = Complex(0.0, inv_sqrt2);
          basis.push_back(std::move(c));
        }
      }
      for (int l = 1; l < n; ++l) {
        Mat d = Mat::Zero(n, n);
        double norm = std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) d(j, j) = Complex(0.0, 1.0 / norm);
        d(l, l) = Complex(0.0, -static_cast<double>(l) / norm);
        basis.push_back(std::move(d));
      }
      return basis;
    }
    case SubgroupSpec::Variant::Custom: {
      // Orthonormalize the supplied spanning set over R.
      for (const DenseMatrix& raw : s.custom_basis) {
        require(raw.n() == n, ErrorCode::InvalidSubgroup,
                "custom basis element has wrong dimension");
        Mat v = skew_part(raw.entries(), g.field());
        for (const Mat& b : basis) v -= lie_inner(b, v) * b;
        double nv = std::sqrt(lie_inner(v, v));
        if (nv > 1e-10) basis.push_back(v / nv);
      }
      return basis;
    }
  }
  return basis;
}

void check_custom_subalgebra(const std::vector<Mat>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Mat c = commutator(basis[i], basis[j]);
      Mat res = c;
      for (const Mat& b : basis) res -= lie_inner(b, c) * b;
      double defect = std::sqrt(std::max(0.0, lie_inner(res, res)));
      require(defect <= 1e-8, ErrorCode::InvalidSubgroup,
              "custom basis is not closed under commutators, defect " +
                  std::to_string(defect));
    }
  }
}

}  // namespace

std::string SubgroupSpec::name() const {
  std::ostringstream os;
  switch (variant) {
    case Variant::Full: return "Full";
    case Variant::Trivial: return "Trivial";
    case Variant::Grassmann:
      os << "Grassmann(" << grassmann_k << ")";
      return os.str();
    case Variant::BlockDiagonal: {
      os << "BlockDiagonal([";
      for (std::size_t i = 0; i < partition.size(); ++i)
        os << (i ? "," : "") << partition[i];
      os << "])";
      return os.str();
    }
    case Variant::TensorFactor:
      os << "TensorFactor(" << tensor_m << "," << tensor_k << ")";
      return os.str();
    case Variant::SpecialUnitary: return "SpecialUnitary";
    case Variant::Custom:
      os << "Custom(" << custom_basis.size() << ")";
      return os.str();
  }
  return "?";
}

SpaceSpec SpaceSpec::make(GroupSpec group, SubgroupSpec subgroup) {
  GroupSpec::validated(group);
  const int n = group.n;
  switch (subgroup.variant) {
    case SubgroupSpec::Variant::Grassmann:
      require(subgroup.grassmann_k >= 1 && subgroup.grassmann_k < n,
              ErrorCode::InvalidParameter, "Grassmann(k) needs 1 <= k < n");
      break;
    case SubgroupSpec::Variant::BlockDiagonal: {
      require(!subgroup.partition.empty(), ErrorCode::InvalidParameter,
              "BlockDiagonal needs a non-empty partition");
      int sum = 0;
      for (int b : subgroup.partition) {
        require(b >= 1, ErrorCode::InvalidParameter,
                "partition blocks must be positive");
        sum += b;
      }
      require(sum == n, ErrorCode::InvalidParameter,
              "partition must sum to n = " + std::to_string(n));
      break;
    }
    case SubgroupSpec::Variant::TensorFactor:
      require(subgroup.tensor_m >= 1 && subgroup.tensor_k >= 1 &&
                  subgroup.tensor_m * subgroup.tensor_k == n,
              ErrorCode::InvalidParameter, "TensorFactor needs m*k = n");
      break;
    case SubgroupSpec::Variant::SpecialUnitary:
      require(group.family == GroupFamily::U, ErrorCode::InvalidParameter,
              "SpecialUnitary subgroup lives in U(n)");
      break;
    default:
      break;
  }

  SpaceSpec space(group, std::move(subgroup));
  space.h_basis_ = structural_h_basis(group, space.subgroup_);
  if (space.subgroup_.variant == SubgroupSpec::Variant::Custom)
    check_custom_subalgebra(space.h_basis_);

  // Trace-orthogonal complement from the ambient basis.
  for (const Mat& cand : lie_algebra_basis(group)) {
    Mat v = cand;
    for (const Mat& b : space.h_basis_) v -= lie_inner(b, v) * b;
    for (const Mat& b : space.x_basis_) v -= lie_inner(b, v) * b;
    // second Gram-Schmidt pass for numerical orthogonality
    for (const Mat& b : space.h_basis_) v -= lie_inner(b, v) * b;
    for (const Mat& b : space.x_basis_) v -= lie_inner(b, v) * b;
    double nv = std::sqrt(std::max(0.0, lie_inner(v, v)));
    if (nv > 0.5) space.x_basis_.push_back(v / nv);
  }

  require(static_cast<int>(space.h_basis_.size() + space.x_basis_.size()) ==
              group.lie_dim(),
          ErrorCode::NumericFailure,
          "tangent split dimensions do not add up to dim g");
  for (const Mat& h : space.h_basis_)
    for (const Mat& x : space.x_basis_)
      require(std::abs(lie_inner(h, x)) <= 1e-10, ErrorCode::NumericFailure,
              "tangent split cross Gram entry exceeds 1e-10");
  return space;
}

std::string SpaceSpec::name() const {
  return group_.name() + "/" + subgroup_.name();
}

std::optional<int> SpaceSpec::grassmann_k() const {
  if (subgroup_.variant == SubgroupSpec::Variant::Grassmann)
    return subgroup_.grassmann_k;
  if (subgroup_.variant == SubgroupSpec::Variant::BlockDiagonal &&
      subgroup_.partition.size() == 2)
    return subgroup_.partition[0];
  return std::nullopt;
}

Eigen::VectorXd SpaceSpec::h_coefficients(const Mat& x) const {
  Eigen::VectorXd c(h_basis_.size());
  for (std::size_t i = 0; i < h_basis_.size(); ++i)
    c(i) = lie_inner(h_basis_[i], x);
  return c;
}

Mat SpaceSpec::project_h(const Mat& x) const {
  Mat out = Mat::Zero(group_.n, group_.n);
  for (const Mat& b : h_basis_) out += lie_inner(b, x) * b;
  return out;
}

Mat SpaceSpec::project_x(const Mat& x) const {
  Mat out = Mat::Zero(group_.n, group_.n);
  for (const Mat& b : x_basis_) out += lie_inner(b, x) * b;
  return out;
}

Mat SpaceSpec::h_from_coefficients(const Eigen::VectorXd& c) const {
  Mat out = Mat::Zero(group_.n, group_.n);
  for (std::size_t i = 0; i < h_basis_.size(); ++i) out += c(i) * h_basis_[i];
  return out;
}

Mat SpaceSpec::x_from_coefficients(const Eigen::VectorXd& c) const {
  Mat out = Mat::Zero(group_.n, group_.n);
  for (std::size_t i = 0; i < x_basis_.size(); ++i) out += c(i) * x_basis_[i];
  return out;
}

Json SpaceSpec::to_json() const {
  Json g;
  g["family"] = group_.family == GroupFamily::U ? "U" : "SO";
  g["n"] = group_.n;
  Json s;
  switch (subgroup_.variant) {
    case SubgroupSpec::Variant::Full: s["variant"] = "Full"; break;
    case SubgroupSpec::Variant::Trivial: s["variant"] = "Trivial"; break;
    case SubgroupSpec::Variant::Grassmann:
      s["variant"] = "Grassmann";
      s["k"] = subgroup_.grassmann_k;
      break;
    case SubgroupSpec::Variant::BlockDiagonal:
      s["variant"] = "BlockDiagonal";
      s["partition"] = subgroup_.partition;
      break;
    case SubgroupSpec::Variant::TensorFactor:
      s["variant"] = "TensorFactor";
      s["m"] = subgroup_.tensor_m;
      s["k"] = subgroup_.tensor_k;
      break;
    case SubgroupSpec::Variant::SpecialUnitary:
      s["variant"] = "SpecialUnitary";
      break;
    case SubgroupSpec::Variant::Custom: {
      s["variant"] = "Custom";
      Json arr = Json::array();
      for (const DenseMatrix& b : subgroup_.custom_basis)
        arr.push_back(matrix_to_json(b));
      s["basis"] = std::move(arr);
      break;
    }
  }
  Json out;
  out["group"] = std::move(g);
  out["subgroup"] = std::move(s);
  return out;
}

namespace {

Mat random_span_element(const std::vector<Mat>& basis, int n, double radius,
                        RandomStream& rng) {
  Mat x = Mat::Zero(n, n);
  if (basis.empty()) return x;
  for (const Mat& b : basis) x += rng.next_gaussian() * b;
  double nx = operator_norm(x);
  if (nx == 0.0) return x;
  return x * (radius * rng.next_open_double() / nx);
}

}  // namespace

Mat random_x_element(const SpaceSpec& space, double radius, RandomStream& rng) {
  require(radius > 0.0, ErrorCode::InvalidParameter, "radius must be positive");
  return random_span_element(space.x_basis(), space.group().n, radius, rng);
}

Mat random_h_element(const SpaceSpec& space, double radius, RandomStream& rng) {
  require(radius > 0.0, ErrorCode::InvalidParameter, "radius must be positive");
  return random_span_element(space.h_basis(), space.group().n, radius, rng);
}

SpaceSpec SpaceSpec::from_json(const Json& j) {
  require(j.is_object() && j.contains("group") && j.contains("subgroup"),
          ErrorCode::IoFailure, "space JSON needs group and subgroup");
  const Json& g = j.at("group");
  std::string fam = g.at("family").get<std::string>();
  int n = g.at("n").get<int>();
  require(fam == "U" || fam == "SO", ErrorCode::IoFailure,
          "group family must be U or SO");
  GroupSpec group = fam == "U" ? GroupSpec::unitary(n)
                               : GroupSpec::special_orthogonal(n);
  const Json& s = j.at("subgroup");
  std::string variant = s.at("variant").get<std::string>();
  SubgroupSpec sub;
  if (variant == "Full") {
    sub = SubgroupSpec::full();
  } else if (variant == "Trivial") {
    sub = SubgroupSpec::trivial();
  } else if (variant == "Grassmann") {
    sub = SubgroupSpec::grassmann(s.at("k").get<int>());
  } else if (variant == "BlockDiagonal") {
    sub = SubgroupSpec::block_diagonal(s.at("partition").get<std::vector<int>>());
  } else if (variant == "TensorFactor") {
    sub = SubgroupSpec::tensor_factor(s.at("m").get<int>(), s.at("k").get<int>());
  } else if (variant == "SpecialUnitary") {
    sub = SubgroupSpec::special_unitary();
  } else if (variant == "Custom") {
    std::vector<DenseMatrix> basis;
    for (const Json& b : s.at("basis")) basis.push_back(matrix_from_json(b));
    sub = SubgroupSpec::custom(std::move(basis));
  } else {
    fail(ErrorCode::IoFailure, "unknown subgroup variant " + variant);
  }
  return SpaceSpec::make(group, std::move(sub));
}

}  // namespace entlab
