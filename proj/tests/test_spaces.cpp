#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entlab/invariants.hpp"
#include "entlab/metrics.hpp"
#include "test_support.hpp"

using namespace entlab;
using entlab::test::haar;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("tangent split dimensions match the closed-form counts") {
  // real Grassmann G(3,1): k(n-k) = 2
  SpaceSpec g31 = SpaceSpec::make(GroupSpec::special_orthogonal(3),
                                  SubgroupSpec::grassmann(1));
  CHECK(g31.dim_m() == 2);

  // complex Grassmann G(4,2): 2k(n-k) = 8
  SpaceSpec g42 = SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
  CHECK(g42.dim_m() == 8);

  // U(n)/SU(n): 1
  SpaceSpec su3 = SpaceSpec::make(GroupSpec::unitary(3),
                                  SubgroupSpec::special_unitary());
  CHECK(su3.dim_m() == 1);

  // block diagonal in U(6): n^2 - sum n_j^2 = 36 - 12 = 24
  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(6),
                                 SubgroupSpec::block_diagonal({2, 2, 2}));
  CHECK(bd.dim_m() == 24);
  CHECK(bd.dim_h() == 12);

  // tensor factor in U(4) = U(2x2): dim h = k^2 = 4
  SpaceSpec tf = SpaceSpec::make(GroupSpec::unitary(4),
                                 SubgroupSpec::tensor_factor(2, 2));
  CHECK(tf.dim_h() == 4);
  CHECK(tf.dim_m() == 12);

  // trivial subgroup: everything is transverse
  SpaceSpec triv = SpaceSpec::make(GroupSpec::special_orthogonal(3),
                                   SubgroupSpec::trivial());
  CHECK(triv.dim_m() == 3);
  CHECK(triv.is_trivial_subgroup());
}

TEST_CASE("tangent split is orthonormal with zero cross Gram") {
  for (SpaceSpec space :
       {SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2)),
        SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::tensor_factor(2, 2)),
        SpaceSpec::make(GroupSpec::special_orthogonal(4),
                        SubgroupSpec::block_diagonal({2, 2}))}) {
    auto check_orthonormal = [](const std::vector<Mat>& basis) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
          CHECK(std::abs(lie_inner(basis[i], basis[j]) - (i == j ? 1.0 : 0.0)) <=
                1e-12);
    };
    check_orthonormal(space.h_basis());
    check_orthonormal(space.x_basis());
    for (const Mat& h : space.h_basis())
      for (const Mat& x : space.x_basis())
        CHECK(std::abs(lie_inner(h, x)) <= 1e-10);
    CHECK(space.dim_m() + space.dim_h() == space.group().lie_dim());
  }
}

TEST_CASE("grassmann x basis consists of off-diagonal blocks") {
  SpaceSpec g42 = SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
  for (const Mat& x : g42.x_basis()) {
    CHECK(max_abs(x.block(0, 0, 2, 2)) <= 1e-14);
    CHECK(max_abs(x.block(2, 2, 2, 2)) <= 1e-14);
  }
}

TEST_CASE("special unitary complement is the scalar direction") {
  SpaceSpec su3 = SpaceSpec::make(GroupSpec::unitary(3),
                                  SubgroupSpec::special_unitary());
  REQUIRE(su3.x_basis().size() == 1);
  Mat expect = Complex(0, 1) / std::sqrt(3.0) * Mat::Identity(3, 3);
  double align = std::abs(lie_inner(su3.x_basis()[0], expect));
  CHECK(align == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("custom subgroups must close under commutators") {
  // span{ rotation generator in the (0,1) plane } closes trivially
  GroupSpec so3 = GroupSpec::special_orthogonal(3);
  Mat j = Mat::Zero(3, 3);
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  SpaceSpec ok = SpaceSpec::make(
      so3, SubgroupSpec::custom({DenseMatrix(j, Field::Real)}));
  CHECK(ok.dim_h() == 1);

  // two rotation planes whose commutator leaves the span: rejected
  Mat k = Mat::Zero(3, 3);
  k(1, 2) = -1.0;
  k(2, 1) = 1.0;
  CHECK_THROWS_AS(SpaceSpec::make(so3, SubgroupSpec::custom(
                                           {DenseMatrix(j, Field::Real),
                                            DenseMatrix(k, Field::Real)})),
                  Error);
}

TEST_CASE("space spec JSON round trip") {
  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(6),
                                 SubgroupSpec::block_diagonal({2, 2, 2}));
  SpaceSpec back = SpaceSpec::from_json(bd.to_json());
  CHECK(back.name() == bd.name());
  CHECK(back.dim_m() == bd.dim_m());

  SpaceSpec g42 = SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
  CHECK(SpaceSpec::from_json(g42.to_json()).dim_m() == 8);
}

TEST_CASE("kappa closed forms and brackets") {
  SpaceSpec g42 = SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
  KappaResult kg = kappa(g42, 4);
  CHECK(kg.method == "closed-form");
  CHECK(kg.lower == doctest::Approx(1.0));
  CHECK(kg.upper == doctest::Approx(1.0));

  SpaceSpec su = SpaceSpec::make(GroupSpec::unitary(3),
                                 SubgroupSpec::special_unitary());
  CHECK(kappa(su, 4).lower == doctest::Approx(1.0));

  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(6),
                                 SubgroupSpec::block_diagonal({2, 2, 2}));
  KappaResult kb = kappa(bd, 48, 17);
  CHECK(kb.method == "estimated-lower-bound");
  CHECK(kb.lower > 1.0 + 1e-3);
  CHECK(kb.upper == doctest::Approx(2.0));
  CHECK(kb.lower <= kb.upper + 1e-9);
  REQUIRE(kb.witness.has_value());
  // the ascent witness must reproduce its ratio under direct evaluation
  double audited = kappa_witness_ratio(bd, kb.witness->entries());
  CHECK(audited == doctest::Approx(kb.lower).epsilon(1e-9));

  CHECK_THROWS_AS((void)kappa(bd, 0), Error);
}

TEST_CASE("kappa estimate is monotone in effort") {
  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(6),
                                 SubgroupSpec::block_diagonal({2, 2, 2}));
  double prev = 0.0;
  for (int effort : {1, 4, 12, 32}) {
    double cur = kappa(bd, effort, 17).lower;
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("theta catalog values and torus search") {
  SpaceSpec g31 = SpaceSpec::make(GroupSpec::special_orthogonal(3),
                                  SubgroupSpec::grassmann(1));
  ThetaResult t1 = theta(g31);
  CHECK(t1.method == "catalog");
  CHECK(t1.value == doctest::Approx(kPi));
  REQUIRE(t1.torus_search_value.has_value());
  CHECK(*t1.torus_search_value == doctest::Approx(kPi).epsilon(1e-6));

  SpaceSpec bd111 = SpaceSpec::make(GroupSpec::unitary(3),
                                    SubgroupSpec::block_diagonal({1, 1, 1}));
  ThetaResult t2 = theta(bd111);
  CHECK(t2.value == doctest::Approx(2.0));
  CHECK(t2.extrinsic_scale_flag);
  REQUIRE(t2.torus_search_value.has_value());
  CHECK(*t2.torus_search_value == doctest::Approx(kPi).epsilon(1e-9));

  SpaceSpec su2 = SpaceSpec::make(GroupSpec::unitary(2),
                                  SubgroupSpec::special_unitary());
  ThetaResult t3 = theta(su2);
  CHECK(t3.method == "torus-search");
  CHECK(t3.value == doctest::Approx(kPi).epsilon(1e-9));

  SpaceSpec su3 = SpaceSpec::make(GroupSpec::unitary(3),
                                  SubgroupSpec::special_unitary());
  CHECK(theta(su3).value == doctest::Approx(2 * kPi / 3).epsilon(1e-9));

  GroupSpec so3 = GroupSpec::special_orthogonal(3);
  Mat j = Mat::Zero(3, 3);
  j(0, 1) = -1.0;
  j(1, 0) = 1.0;
  SpaceSpec custom = SpaceSpec::make(
      so3, SubgroupSpec::custom({DenseMatrix(j, Field::Real)}));
  CHECK_THROWS_AS((void)theta(custom), Error);
}

TEST_CASE("diameter catalog and monte carlo") {
  SpaceSpec u3 = SpaceSpec::make(GroupSpec::unitary(3), SubgroupSpec::trivial());
  DiameterResult d1 = diameter(u3);
  CHECK(d1.method == "catalog");
  CHECK(d1.value == doctest::Approx(kPi));

  SpaceSpec g42 = SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2));
  CHECK(diameter(g42).value == doctest::Approx(kPi / 2));

  SpaceSpec su2 = SpaceSpec::make(GroupSpec::unitary(2),
                                  SubgroupSpec::special_unitary());
  CHECK(diameter(su2).value == doctest::Approx(kPi / 2));  // pi/n at n=2

  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(4),
                                 SubgroupSpec::block_diagonal({2, 1, 1}));
  DiameterResult d2 = diameter(bd, 12, 3);
  CHECK(d2.method == "mc-lower-bound");
  CHECK(d2.value > 0.5);          // these quotients have diam >= pi/2
  CHECK(d2.value <= kPi + 1e-9);  // never above the ambient cap
}

TEST_CASE("monte carlo max never exceeds the catalog diameter") {
  SpaceSpec g31 = SpaceSpec::make(GroupSpec::special_orthogonal(3),
                                  SubgroupSpec::grassmann(1));
  double catalog = diameter(g31).value;
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 48; ++s) {
    GroupElement u = haar(g31.group(), 3000 + s);
    GroupElement v = haar(g31.group(), 3100 + s);
    worst = std::max(worst, quotient_dist(g31, u, v, NormSpec::op()));
  }
  CHECK(worst <= catalog + 1e-6);
}

TEST_CASE("theorem 11 classification") {
  // tensor factors always satisfy (b) at alpha = 1/3
  SpaceSpec tf = SpaceSpec::make(GroupSpec::unitary(4),
                                 SubgroupSpec::tensor_factor(2, 2));
  CoveringCaseReport ct = classify_covering_case(tf, 1.0 / 3.0);
  CHECK(std::string(ct.case_name()) == "b");
  CHECK(ct.hypothesis_ok);

  // a block of size >= n/3 carries a full unitary factor: case (c)
  SpaceSpec bd = SpaceSpec::make(GroupSpec::unitary(6),
                                 SubgroupSpec::block_diagonal({2, 2, 2}));
  CoveringCaseReport cc = classify_covering_case(bd, 1.0 / 3.0);
  CHECK(std::string(cc.case_name()) == "c");

  // zero-dimensional quotient
  SpaceSpec full = SpaceSpec::make(GroupSpec::unitary(3), SubgroupSpec::full());
  CoveringCaseReport cn = classify_covering_case(full, 1.0 / 3.0);
  CHECK(std::string(cn.case_name()) == "none");
  CHECK(cn.diagnostics == "zero-dimensional quotient");

  // SU(n) acts irreducibly and its dimension count fails (a)
  SpaceSpec su3 = SpaceSpec::make(GroupSpec::unitary(3),
                                  SubgroupSpec::special_unitary());
  CHECK(std::string(classify_covering_case(su3, 1.0 / 3.0).case_name()) ==
        "none");

  CHECK_THROWS_AS((void)classify_covering_case(tf, 0.7), Error);
}

TEST_CASE("invariant report for the projective plane") {
  SpaceSpec g31 = SpaceSpec::make(GroupSpec::special_orthogonal(3),
                                  SubgroupSpec::grassmann(1));
  InvariantReport rep = invariant_report(g31, 8, 8);
  CHECK(rep.dim_m == 2);
  CHECK(rep.kappa.lower == doctest::Approx(1.0));
  CHECK(rep.theta.value == doctest::Approx(kPi));
  CHECK(rep.diameter.value == doctest::Approx(kPi / 2));
  CHECK(!rep.degenerate);
  Json j = rep.to_json();
  CHECK(j.at("dim").get<int>() == 2);
  CHECK(j.at("kappa").at("method").get<std::string>() == "closed-form");

  SpaceSpec full = SpaceSpec::make(GroupSpec::unitary(2), SubgroupSpec::full());
  InvariantReport dg = invariant_report(full, 2, 2);
  CHECK(dg.degenerate);
  CHECK(dg.dim_m == 0);
}

TEST_CASE("invariant bounds from the report") {
  for (SpaceSpec space :
       {SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::grassmann(2)),
        SpaceSpec::make(GroupSpec::unitary(4), SubgroupSpec::tensor_factor(2, 2)),
        SpaceSpec::make(GroupSpec::unitary(2), SubgroupSpec::special_unitary())}) {
    InvariantReport rep = invariant_report(space, 6, 6);
    CHECK(rep.kappa.lower >= 1.0 - 1e-9);
    CHECK(rep.theta.value <= kPi + 1e-9);
    CHECK(rep.diameter.value <= kPi + 1e-9);
  }
}
