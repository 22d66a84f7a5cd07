#include "doctest.h"
#include "support.hpp"

#include <functional>

using namespace gcm;
using namespace gcm::test;

namespace {

GKPair kaehler_pair() {
  ModelPtr m = abelian(4);
  return gk_validate(make_complex(m, standard_I(4, -1)), make_symplectic(m, standard_omega(4), Form(4)));
}

ErrorKind kind_of(const std::function<void()> &f) {
  try {
    f();
  } catch (const Error &e) {
    return e.kind();
  }
  return ErrorKind::SyntaxError;
}

} // namespace

TEST_CASE("determinant and leading minors") {
  Mat a(3, 3);
  int vals[3][3] = {{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      a(i, j) = vals[i][j];
  CHECK(determinant(a) == Scalar(18));
  CHECK(leading_minors(a) == std::vector<Scalar>{Scalar(2), Scalar(5), Scalar(18)});
  SampleRng rng(50);
  for (int k = 0; k < 10; ++k) {
    Mat b(4, 4), c(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        b(i, j) = rng.scalar();
        c(i, j) = rng.scalar();
      }
    CHECK(determinant(b * c) == determinant(b) * determinant(c));
  }
}

TEST_CASE("Kahler torus bigrading") {
  GKPair p = kaehler_pair();
  CHECK(p.projectors_commute);
  CHECK(p.dims_ok);
  int total = 0;
  for (const auto &[rs, range] : p.blocks)
    total += range.second - range.first;
  CHECK(total == 16);
  CHECK(p.dim_rs(0, 0) == 4);
  CHECK(p.dim_rs(-2, 0) == 1);
}

TEST_CASE("delta components sum to d_H") {
  GKPair p = kaehler_pair();
  SampleRng rng(51);
  for (int k = 0; k < 10; ++k) {
    DeltaComponents d = delta_components(p, rng.form(4));
    CHECK(d.residual.is_zero());
    CHECK(d.delbar1_ok);
    CHECK(d.delbar2_ok);
  }
  CHECK(delta_squares(p).ok);
}

TEST_CASE("bigraded cohomology") {
  BigradedCohomology bc = bigraded_cohomology(kaehler_pair());
  CHECK(bc.total == 16);
  CHECK(bc.intersection_ok);
  CHECK(bc.marginal_ok);
  CHECK(bc.delbar_sums_ok);
  CHECK(bc.ddbar1);
  CHECK(bc.ddbar2);
}

TEST_CASE("invalid pairs") {
  ModelPtr m = abelian(4);
  GCSPtr I = make_complex(m, standard_I(4, -1));
  // The opposite orientation gives an indefinite metric.
  GCSPtr flipped = make_complex(m, standard_I(4, 1));
  GCSPtr w = make_symplectic(m, standard_omega(4), Form(4));
  CHECK(kind_of([&] { gk_validate(flipped, w); }) == ErrorKind::MetricNotPositive);
  CHECK(kind_of([&] { gk_validate(I, make_general(m, Scalar(-1) * I->J)); }) == ErrorKind::MetricNotPositive);
  // A sheared complex structure: x1 -> x2 - x4, x2 -> -x1 - x3.
  GCSPtr other = make_complex(m, [] {
    Mat J(4, 4);
    J(1, 0) = 1;
    J(3, 0) = -1;
    J(0, 1) = -1;
    J(2, 1) = -1;
    J(3, 2) = 1;
    J(2, 3) = -1;
    return J;
  }());
  CHECK(kind_of([&] { gk_validate(I, other); }) == ErrorKind::NotCommuting);
}

TEST_CASE("algebroid decomposition requires complementary pieces") {
  GKPair p = kaehler_pair();
  ModelPtr m = abelian(4);
  CHECK(algebroid_split_check(m, p.plus_basis, p.minus_basis).ok());
  CHECK(kind_of([&] { algebroid_split_check(m, p.plus_basis, p.plus_basis); }) ==
        ErrorKind::NotADecomposition);
}
