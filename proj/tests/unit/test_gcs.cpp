#include "doctest.h"
#include "support.hpp"

using namespace gcm;
using namespace gcm::test;

static int binom(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

TEST_CASE("J is orthogonal and squares to -1") {
  ModelPtr m = abelian(4);
  for (GCSPtr s : {make_complex(m, standard_I(4)), make_symplectic(m, standard_omega(4), Form(4))}) {
    Mat P = pairing_matrix(4);
    CHECK(s->J * s->J == Scalar(-1) * Mat::identity(8));
    CHECK(s->J.transpose() * P * s->J == P);
  }
}

TEST_CASE("spin operator intertwines the Clifford action") {
  ModelPtr m = kodaira_thurston();
  GCSPtr s = make_symplectic(m, Form::gens(4, {1, 4}) + Form::gens(4, {2, 3}), Form::gens(4, {1, 2}));
  SparseMat N = spin_operator(s->J);
  SampleRng rng(30);
  for (int k = 0; k < 10; ++k) {
    GenElem v = rng.gen_elem(4);
    Form phi = rng.form(4);
    Vec lhs = vec_sub(N.apply(clifford_act(v, phi).to_vec()), clifford_act(v, Form::from_vec(4, N.apply(phi.to_vec()))).to_vec());
    GenElem Jv = GenElem::from_vec(4, gcm::apply(s->J, v.to_vec()));
    CHECK(lhs == clifford_act(Jv, phi).to_vec());
  }
}

TEST_CASE("grading dimensions are binomial and the spinor spans U_{-n}") {
  for (int dim : {4, 6}) {
    ModelPtr m = abelian(dim);
    int n = dim / 2;
    for (GCSPtr s : {make_complex(m, standard_I(dim)), make_symplectic(m, standard_omega(dim), Form(dim))}) {
      GradingReport g = grading_projectors(*s);
      CHECK(g.ok);
      for (int k = -n; k <= n; ++k)
        CHECK(g.dims[k + n] == binom(2 * n, k + n));
      Form rho = extract_pure_spinor(*s);
      CHECK(s->grade_of(rho) == -n);
      for (const auto &l : s->lbasis)
        CHECK(clifford_act(l, rho).is_zero());
    }
  }
}

TEST_CASE("symplectic spinor is exp(-B + i omega)") {
  ModelPtr m = abelian(4);
  Form w = standard_omega(4), B = Form::gens(4, {1, 3});
  GCSPtr s = make_symplectic(m, w, B);
  Form x = Scalar::I() * w - B;
  Form expected = Form::scalar(4, Scalar(1)) + x + wedge(x, x) * Scalar::frac(1, 2);
  REQUIRE(s->spinor);
  // Spinors are defined up to scale; compare after normalizing the 0-form part.
  CHECK(*s->spinor * s->spinor->coeff(0).inverse() == expected);
}

TEST_CASE("d_H splits into del and delbar exactly when integrable") {
  ModelPtr kt = kodaira_thurston();
  GCSPtr good = make_complex(kt, standard_I(4));
  CHECK(delbar_residual_zero(*good));
  Mat bad(4, 4);
  bad(2, 0) = 1;
  bad(3, 1) = 1;
  bad(0, 2) = -1;
  bad(1, 3) = -1;
  CHECK_THROWS_AS(make_complex(kt, bad), Error);
  GCSPtr diag = make_general(kt, complex_J(bad), true);
  CHECK_FALSE(diag->integrable);
  std::string witness;
  CHECK_FALSE(delbar_residual_zero(*diag, &witness));
  CHECK_FALSE(witness.empty());
}

TEST_CASE("constructor errors") {
  ModelPtr m = abelian(4);
  auto kind_of = [](auto f) {
    try {
      f();
    } catch (const Error &e) {
      return e.kind();
    }
    return ErrorKind::SyntaxError;
  };
  CHECK(kind_of([&] { make_symplectic(m, Form::gens(4, {1, 2}), Form(4)); }) == ErrorKind::DegenerateOmega);
  CHECK(kind_of([&] { make_symplectic(kodaira_thurston(), standard_omega(4), Form(4)); }) ==
        ErrorKind::OmegaNotClosed);
  CHECK(kind_of([&] { make_complex(m, Mat::identity(4)); }) == ErrorKind::NotAlmostComplex);
  // A complex structure needs a twist of type (2,1)+(1,2); e135 has a (3,0) part.
  ModelPtr t6 = abelian(6, Form::gens(6, {1, 3, 5}));
  CHECK(kind_of([&] { make_complex(t6, standard_I(6)); }) == ErrorKind::TwistWrongType);
}

TEST_CASE("phi intertwines the Clifford action up to the measured constant") {
  GCSPtr s = make_symplectic(abelian(4), standard_omega(4), Form(4));
  PsiReport p = measure_psi_constant(*s);
  CHECK(p.uniform);
  CHECK(p.constant == Scalar(2));
  // phi maps closed k-forms into U_{k-n}.
  for (int k = 0; k <= 4; ++k) {
    QuotientFrame hk = de_rham(*s->model, k);
    for (const auto &z : hk.reps())
      CHECK(s->grade_of(symp_phi(*s, Form::from_vec(4, z))) == k - 2);
  }
}
