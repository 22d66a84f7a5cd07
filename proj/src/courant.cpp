#include "gcm/courant.hpp"
#include "gcm/error.hpp"

#include <sstream>

namespace gcm {

GenElem GenElem::x(int dim, int k, const Scalar &c) {
  GenElem g(dim);
  g.vec.at(k - 1) = c;
  return g;
}

GenElem GenElem::e(int dim, int k, const Scalar &c) {
  GenElem g(dim);
  g.cov.at(k - 1) = c;
  return g;
}

GenElem GenElem::from_vec(int dim, const Vec &v) {
  if (static_cast<int>(v.size()) != 2 * dim)
    throw Error(ErrorKind::DimensionMismatch, "generalized vector length");
  return GenElem(Vec(v.begin(), v.begin() + dim), Vec(v.begin() + dim, v.end()));
}

Vec GenElem::to_vec() const {
  Vec v = vec;
  v.insert(v.end(), cov.begin(), cov.end());
  return v;
}

Form GenElem::covector_form() const {
  Form f(dim());
  for (int k = 0; k < dim(); ++k)
    f.add_term(Blade(1) << k, cov[k]);
  return f;
}

GenElem GenElem::conj() const { return GenElem(vec_conj(vec), vec_conj(cov)); }

GenElem operator+(const GenElem &a, const GenElem &b) {
  return GenElem(vec_add(a.vec, b.vec), vec_add(a.cov, b.cov));
}

GenElem operator-(const GenElem &a, const GenElem &b) {
  return GenElem(vec_sub(a.vec, b.vec), vec_sub(a.cov, b.cov));
}

GenElem operator*(const Scalar &c, const GenElem &a) {
  return GenElem(vec_scale(a.vec, c), vec_scale(a.cov, c));
}

std::string GenElem::str() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const Scalar &c, const std::string &name) {
    if (c.is_zero())
      return;
    std::string cs = c.str();
    bool compound = !c.is_real() && sgn(c.re) != 0;
    if (compound)
      cs = "(" + cs + ")";
    bool neg = !compound && cs[0] == '-';
    if (neg)
      cs = cs.substr(1);
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (cs != "1")
      os << cs << " ";
    os << name;
  };
  for (int k = 0; k < dim(); ++k)
    emit(vec[k], "x" + std::to_string(k + 1));
  for (int k = 0; k < dim(); ++k)
    emit(cov[k], "e" + std::to_string(k + 1));
  return first ? "0" : os.str();
}

GenElem covector_from_form(const Form &f) {
  GenElem g(f.dim());
  for (const auto &[b, c] : f.terms()) {
    if (blade_degree(b) != 1)
      throw Error(ErrorKind::DimensionMismatch, "expected a 1-form");
    g.cov[__builtin_ctz(b)] = c;
  }
  return g;
}

Scalar pairing(const GenElem &a, const GenElem &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "pairing");
  Scalar s;
  for (int k = 0; k < a.dim(); ++k) {
    if (!a.cov[k].is_zero() && !b.vec[k].is_zero())
      s += a.cov[k] * b.vec[k];
    if (!b.cov[k].is_zero() && !a.vec[k].is_zero())
      s += b.cov[k] * a.vec[k];
  }
  return s * Scalar::frac(1, 2);
}

Mat pairing_matrix(int dim) {
  Mat P(2 * dim, 2 * dim);
  for (int k = 0; k < dim; ++k) {
    P(k, dim + k) = Scalar::frac(1, 2);
    P(dim + k, k) = Scalar::frac(1, 2);
  }
  return P;
}

GenElem dorfman(const LieModel &m, const GenElem &a, const GenElem &b, BracketFault fault,
                const Form *twist) {
  int n = m.dim();
  if (a.dim() != n || b.dim() != n)
    throw Error(ErrorKind::DimensionMismatch, "Dorfman bracket");
  const Form &H = twist ? *twist : m.H();
  Form xi = a.covector_form(), eta = b.covector_form();
  Form cov(n);
  if (fault != BracketFault::DropLieDerivative)
    cov += contract(a.vec, m.d(eta));
  if (fault != BracketFault::DropContraction)
    cov -= contract(b.vec, m.d(xi));
  if (fault != BracketFault::DropTwist)
    cov += contract(a.vec, contract(b.vec, H));
  GenElem out = covector_from_form(cov);
  out.vec = m.bracket(a.vec, b.vec);
  return out;
}

GenElem b_shift(const Form &B, const GenElem &a) {
  if (!B.is_zero() && (B.min_degree() != 2 || B.max_degree() != 2))
    throw Error(ErrorKind::DimensionMismatch, "B must be a 2-form");
  GenElem out = a;
  GenElem add = covector_from_form(contract(a.vec, B));
  out.cov = vec_add(out.cov, add.cov);
  return out;
}

Form b_shift_form(const Form &B, const Form &omega) { return wedge(exp_wedge(B), omega); }

Form clifford_act(const GenElem &a, const Form &omega) {
  if (a.dim() != omega.dim())
    throw Error(ErrorKind::DimensionMismatch, "Clifford action");
  return contract(a.vec, omega) + wedge(a.covector_form(), omega);
}

long SampleRng::integer(long lo, long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(gen_() % span);
}

Scalar SampleRng::scalar(bool complex) {
  Scalar re = Scalar::frac(integer(-3, 3), integer(1, 2));
  if (!complex)
    return re;
  Scalar im = Scalar::frac(integer(-3, 3), integer(1, 2), true);
  return re + im;
}

GenElem SampleRng::gen_elem(int dim, bool complex) {
  GenElem g(dim);
  for (int k = 0; k < dim; ++k) {
    g.vec[k] = scalar(complex);
    g.cov[k] = scalar(complex);
  }
  return g;
}

Form SampleRng::form(int dim, int degree, bool complex) {
  Form f(dim);
  for (Blade b = 0; b < (Blade(1) << dim); ++b) {
    if (degree >= 0 && blade_degree(b) != degree)
      continue;
    if (integer(0, 2) == 0)
      continue;
    f.add_term(b, scalar(complex));
  }
  return f;
}

AxiomReport courant_axiom_suite(const LieModel &m, int samples, std::uint64_t seed,
                                BracketFault fault, const Form *twist) {
  AxiomReport rep;
  rep.samples = samples;
  rep.notes = "invariant sections: functions are constants, so C3 holds identically "
              "and the d<a,b> correction in C4 vanishes";
  SampleRng rng(seed);
  int n = m.dim();
  auto br = [&](const GenElem &a, const GenElem &b) { return dorfman(m, a, b, fault, twist); };
  auto fail = [&](bool &flag, const std::string &axiom, const GenElem &a, const GenElem &b,
                  const GenElem *c) {
    if (!flag)
      return;
    flag = false;
    rep.ok = false;
    if (rep.first_failure.empty()) {
      rep.first_failure = axiom + " a=" + a.str() + " b=" + b.str();
      if (c)
        rep.first_failure += " c=" + c->str();
    }
  };
  for (int s = 0; s < samples; ++s) {
    GenElem a = rng.gen_elem(n), b = rng.gen_elem(n), c = rng.gen_elem(n);
    GenElem ab = br(a, b);
    // C1: [a,[b,c]] = [[a,b],c] + [b,[a,c]]
    GenElem lhs = br(a, br(b, c));
    GenElem rhs = br(ab, c) + br(b, br(a, c));
    if (!(lhs == rhs))
      fail(rep.c1, "C1", a, b, &c);
    // C2: anchor is a bracket homomorphism
    if (ab.vec != m.bracket(a.vec, b.vec))
      fail(rep.c2, "C2", a, b, nullptr);
    // C4: [a,b] + [b,a] = d<a,b> = 0 on invariant sections
    if (!(ab + br(b, a)).is_zero())
      fail(rep.c4, "C4", a, b, nullptr);
    // C5: rho(a)<b,c> = 0 = <[a,b],c> + <b,[a,c]>
    if (!(pairing(ab, c) + pairing(b, br(a, c))).is_zero())
      fail(rep.c5, "C5", a, b, &c);
  }
  return rep;
}

} // namespace gcm
