#include "doctest.h"
#include "support.hpp"

using namespace gcm;
using namespace gcm::test;

TEST_CASE("d squares to zero on valid models") {
  SampleRng rng(2);
  for (ModelPtr m : {kodaira_thurston(), iwasawa(), kodaira_thurston(6, Form::gens(6, {1, 2, 5}))}) {
    CHECK(validate_model(*m).ok);
    for (int k = 0; k < 20; ++k) {
      Form a = rng.form(m->dim());
      CHECK(m->d(m->d(a)).is_zero());
      CHECK(m->d_H(m->d_H(a)).is_zero());
    }
  }
}

TEST_CASE("d is the dual of the bracket on 1-forms") {
  // d alpha(X, Y) = -alpha([X, Y]) for left-invariant forms.
  ModelPtr m = iwasawa();
  SampleRng rng(3);
  for (int k = 0; k < 20; ++k) {
    Vec X(6), Y(6);
    for (int j = 0; j < 6; ++j) {
      X[j] = rng.scalar(false);
      Y[j] = rng.scalar(false);
    }
    Form alpha = rng.form(6, 1, false);
    Scalar lhs = contract(Y, contract(X, m->d(alpha))).coeff(0);
    Scalar rhs = -contract(m->bracket(X, Y), alpha).coeff(0);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Jacobi and twist failures are named") {
  std::vector<Form> st(4, Form(4));
  st[1] = Form::gens(4, {3, 4});
  st[3] = Form::gens(4, {1, 2});
  LieModel bad(4, st, Form(4));
  ValidationReport r = validate_model(bad);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.jacobi_failures.empty());
  CHECK(r.jacobi_failures.front() == "d(d e2) = -e1^e2^e3");
  CHECK_THROWS_AS(require_valid(bad), Error);

  ModelPtr twisted = kodaira_thurston(6, Form::gens(6, {3, 4, 5}));
  ValidationReport t = validate_model(*twisted);
  CHECK_FALSE(t.ok);
  CHECK(t.twist_failures.size() == 1);
  try {
    require_valid(*twisted);
    FAIL("expected TwistNotClosed");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::TwistNotClosed);
  }
}

TEST_CASE("known invariant Betti numbers") {
  CHECK(de_rham_betti(*kodaira_thurston()) == std::vector<int>{1, 3, 4, 3, 1});
  CHECK(de_rham_betti(*abelian(4)) == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(de_rham_betti(*iwasawa()) == std::vector<int>{1, 4, 8, 10, 8, 4, 1});
  // The tangent algebroid computes the same numbers by a different route.
  CHECK(algebroid_betti(tangent_algebroid(iwasawa())) ==
        std::vector<int>{1, 4, 8, 10, 8, 4, 1});
}

TEST_CASE("twisted Euler characteristic vanishes and total is bounded by Betti sum") {
  for (ModelPtr m : {kodaira_thurston(4, Form::gens(4, {1, 2, 3})), abelian(6, Form::gens(6, {1, 3, 5})),
                     iwasawa()->with_twist(Form::gens(6, {1, 2, 5}))}) {
    TwistedCohomology H = twisted_cohomology(m);
    CHECK(H.even.dim() == H.odd.dim());
    int betti = 0;
    for (int b : de_rham_betti(*m))
      betti += b;
    CHECK(H.total() <= betti);
  }
}
