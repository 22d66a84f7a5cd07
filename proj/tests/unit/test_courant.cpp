#include "doctest.h"
#include "support.hpp"

using namespace gcm;
using namespace gcm::test;

TEST_CASE("Clifford relation v.v.phi = <v,v> phi") {
  SampleRng rng(12);
  for (int k = 0; k < 30; ++k) {
    GenElem v = rng.gen_elem(4);
    Form phi = rng.form(4);
    CHECK(clifford_act(v, clifford_act(v, phi)) == phi * pairing(v, v));
  }
}

TEST_CASE("pairing matrix reproduces the pairing") {
  SampleRng rng(13);
  Mat P = pairing_matrix(4);
  for (int k = 0; k < 20; ++k) {
    GenElem a = rng.gen_elem(4), b = rng.gen_elem(4);
    Vec pb = gcm::apply(P, b.to_vec());
    Scalar s;
    Vec av = a.to_vec();
    for (std::size_t i = 0; i < av.size(); ++i)
      s += av[i] * pb[i];
    CHECK(s == pairing(a, b));
    CHECK(pairing(a, b) == pairing(b, a));
  }
}

TEST_CASE("Dorfman bracket of vector fields is the Lie bracket") {
  ModelPtr m = iwasawa();
  SampleRng rng(14);
  for (int k = 0; k < 10; ++k) {
    GenElem a = rng.gen_elem(6), b = rng.gen_elem(6);
    a.cov = Vec(6);
    b.cov = Vec(6);
    GenElem c = dorfman(*m, a, b);
    CHECK(c.vec == m->bracket(a.vec, b.vec));
    CHECK(is_zero(c.cov));
  }
}

TEST_CASE("Dorfman bracket symmetric part is d of the pairing") {
  // [a,b] + [b,a] = 2 d<a,b>, which vanishes on invariant sections.
  ModelPtr m = kodaira_thurston(4, Form::gens(4, {1, 2, 3}));
  SampleRng rng(15);
  for (int k = 0; k < 20; ++k) {
    GenElem a = rng.gen_elem(4), b = rng.gen_elem(4);
    CHECK((dorfman(*m, a, b) + dorfman(*m, b, a)).is_zero());
  }
}

TEST_CASE("axiom suite passes on valid models and catches faults") {
  ModelPtr kt = kodaira_thurston(4, Form::gens(4, {1, 2, 3}));
  CHECK(courant_axiom_suite(*kt, 40).ok);
  CHECK_FALSE(courant_axiom_suite(*kt, 40, 1, BracketFault::DropLieDerivative).ok);
  CHECK_FALSE(courant_axiom_suite(*kt, 40, 1, BracketFault::DropContraction).ok);
  // Dropping a closed twist gives the untwisted bracket, which is still Courant.
  CHECK(courant_axiom_suite(*kt, 40, 1, BracketFault::DropTwist).ok);
}

TEST_CASE("B-shift preserves the pairing and composes additively") {
  SampleRng rng(16);
  for (int k = 0; k < 20; ++k) {
    Form B1 = rng.form(4, 2), B2 = rng.form(4, 2);
    GenElem a = rng.gen_elem(4), b = rng.gen_elem(4);
    CHECK(pairing(b_shift(B1, a), b_shift(B1, b)) == pairing(a, b));
    CHECK(b_shift(B1, b_shift(B2, a)) == b_shift(B1 + B2, a));
  }
}
