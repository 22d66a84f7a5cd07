#include "doctest.h"
#include "support.hpp"

using namespace gcm;
using namespace gcm::test;

namespace {

Form mu() { return Form::gens(4, {1, 3}) + Form::gens(4, {2, 4}); }

FamilySpec shift_family(const Scalar &scale) {
  FamilySpec f;
  f.model = abelian(4);
  f.kind = FamilyKind::Symplectic;
  f.vars = {"t"};
  f.omega = PolyForm::constant(1, standard_omega(4));
  f.omega.add_term({1}, mu() * scale);
  f.B = PolyForm(4, 1);
  f.basepoint = {Scalar(0)};
  f.samples = {Vec{Scalar::frac(1, 2)}};
  return f;
}

} // namespace

TEST_CASE("parameter polynomials") {
  ParamPoly t = ParamPoly::var(2, 0), s = ParamPoly::var(2, 1);
  ParamPoly p = (t + s) * (t - s);
  CHECK(p == t * t - s * s);
  Vec pt = {Scalar(3), Scalar::frac(1, 2)};
  CHECK(p.eval(pt) == Scalar(9) - Scalar::frac(1, 4));
  CHECK(p.derivative(0) == t * Scalar(2));
  CHECK(p.degree() == 2);
  CHECK(ParamPoly::constant(2, Scalar(5)).is_constant());
}

TEST_CASE("exp_wedge agrees with the finite series") {
  SampleRng rng(40);
  Form a = rng.form(4, 2);
  PolyForm e = exp_wedge(PolyForm::constant(0, a));
  Form series = Form::scalar(4, Scalar(1)) + a + wedge(a, a) * Scalar::frac(1, 2);
  CHECK(e.eval({}) == series);
}

TEST_CASE("graph of the deformation") {
  FamilySpec f = shift_family(Scalar(1));
  CHECK(family_validate(f).ok);
  GraphEpsilon g = graph_epsilon(f, f.samples.front());
  CHECK(g.skew);
  CHECK(g.round_trip);
  GraphEpsilon zero = graph_epsilon(f, f.basepoint);
  CHECK(zero.cochain.is_zero());
}

TEST_CASE("Kodaira-Spencer class is linear in the deformation") {
  KSReport a = ks_class(shift_family(Scalar(1)), 0);
  KSReport b = ks_class(shift_family(Scalar(3)), 0);
  CHECK(a.closed);
  CHECK(a.jj_identity);
  CHECK(b.cochain == a.cochain * Scalar(3));
  GCSPtr s0 = shift_family(Scalar(1)).base();
  CHECK(pullback_cochain(*s0, a.cochain) == mu() * Scalar::frac(1, 2, true));
}

TEST_CASE("Gauss-Manin derivative of the canonical section") {
  FamilySpec f = shift_family(Scalar(1));
  GMResult gm = gm_derivative(f, canonical_section(f), 0);
  CHECK(gm.parity == 0);
  // d/dt exp(i omega(t)) at t = 0 is i mu ^ exp(i omega).
  Form expected = wedge(mu() * Scalar::I(), exp_wedge(PolyForm::constant(0, standard_omega(4) * Scalar::I())).eval({}));
  CHECK(gm.derivative == expected);
}

TEST_CASE("transversality with one global constant") {
  FamilySpec f = shift_family(Scalar(1));
  std::optional<Scalar> c;
  for (int p = -2; p <= 2; ++p) {
    TransversalityReport r = transversality_check(f, p, 0, c);
    CHECK(r.transversal);
    CHECK(r.components);
    CHECK(r.matches);
  }
  REQUIRE(c);
  CHECK(*c == Scalar::frac(1, 2));
}

TEST_CASE("constant family has zero Kodaira-Spencer class and no immersion") {
  FamilySpec f = shift_family(Scalar(0));
  KSReport ks = ks_class(f, 0);
  CHECK(is_zero(ks.cls));
  GCYReport g = gcy_check(*f.base(), &f);
  REQUIRE(g.period_immersion);
  CHECK_FALSE(*g.period_immersion);
  CHECK(g.ks_rank == g.period_rank);
}

TEST_CASE("Q is constant along flat sections") {
  FamilySpec f = shift_family(Scalar(1));
  PolyForm s1 = canonical_section(f);
  PolyForm s2 = s1.map_forms([](const Form &a) { return a.conj(); });
  QConstancyReport q = q_constancy(f, s1, s2, 0);
  CHECK(q.flat_constant);
  CHECK(q.leibniz);
  CHECK(q.derivative == q.predicted);
}

TEST_CASE("symplectic filtration along a rescaling") {
  FamilySpec f = shift_family(Scalar(0));
  f.omega = PolyForm::constant(1, standard_omega(4));
  f.omega.add_term({1}, standard_omega(4));
  for (int p : {-2, 0, 2}) {
    SympFiltrationReport r = symp_filtration_check(f, p);
    CHECK_FALSE(r.skipped);
    CHECK(r.ok);
  }
}
