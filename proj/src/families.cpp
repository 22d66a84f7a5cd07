#include "gcm/families.hpp"
#include "gcm/error.hpp"

#include <sstream>

namespace gcm {

// ---------------------------------------------------------------- ParamPoly

ParamPoly ParamPoly::constant(int nvars, const Scalar &c) {
  ParamPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

ParamPoly ParamPoly::var(int nvars, int j) {
  ParamPoly p(nvars);
  Exponents e(nvars, 0);
  e.at(j) = 1;
  p.add_term(e, Scalar(1));
  return p;
}

void ParamPoly::add_term(const Exponents &e, const Scalar &c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "exponent vector length");
  if (c.is_zero())
    return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero())
    terms_.erase(it);
}

bool ParamPoly::is_constant() const {
  for (const auto &[e, c] : terms_)
    for (int x : e)
      if (x != 0)
        return false;
  return true;
}

int ParamPoly::degree() const {
  int d = 0;
  for (const auto &[e, c] : terms_) {
    int s = 0;
    for (int x : e)
      s += x;
    d = std::max(d, s);
  }
  return d;
}

namespace {

Scalar monomial(const Exponents &e, const Vec &point) {
  Scalar v(1);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k)
      v *= point.at(i);
  return v;
}

Exponents add_exps(const Exponents &a, const Exponents &b) {
  Exponents e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    e[i] = a[i] + b[i];
  return e;
}

} // namespace

Scalar ParamPoly::eval(const Vec &point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "parameter point has wrong length");
  Scalar s;
  for (const auto &[e, c] : terms_)
    s += c * monomial(e, point);
  return s;
}

ParamPoly ParamPoly::derivative(int j) const {
  ParamPoly out(nvars_);
  for (const auto &[e, c] : terms_) {
    if (e[j] == 0)
      continue;
    Exponents f = e;
    f[j] -= 1;
    out.add_term(f, c * Scalar(e[j]));
  }
  return out;
}

ParamPoly &ParamPoly::operator+=(const ParamPoly &o) {
  if (nvars_ == 0 && terms_.empty())
    nvars_ = o.nvars_;
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

ParamPoly &ParamPoly::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, v] : terms_)
    v *= c;
  return *this;
}

ParamPoly operator*(const ParamPoly &a, const ParamPoly &b) {
  ParamPoly out(std::max(a.nvars_, b.nvars_));
  for (const auto &[e1, c1] : a.terms_)
    for (const auto &[e2, c2] : b.terms_)
      out.add_term(add_exps(e1, e2), c1 * c2);
  return out;
}

std::string ParamPoly::str(const std::vector<std::string> &names) const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += names.at(i);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    std::string cs = c.str();
    bool compound = !c.is_real() && sgn(c.re) != 0;
    bool neg = !compound && cs[0] == '-';
    if (neg)
      cs = cs.substr(1);
    if (compound)
      cs = "(" + cs + ")";
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    if (mono.empty())
      os << cs;
    else if (cs == "1")
      os << mono;
    else
      os << cs << "*" << mono;
  }
  return os.str();
}

// ----------------------------------------------------------------- PolyForm

PolyForm PolyForm::constant(int nvars, const Form &f) {
  PolyForm p(f.dim(), nvars);
  p.add_term(Exponents(nvars, 0), f);
  return p;
}

void PolyForm::add_term(const Exponents &e, const Form &f) {
  if (f.is_zero())
    return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero())
    terms_.erase(it);
}

void PolyForm::add_blade(Blade mask, const ParamPoly &c) {
  for (const auto &[e, v] : c.terms())
    add_term(e, Form::blade(dim_, mask, v));
}

int PolyForm::degree() const {
  int d = 0;
  for (const auto &[e, f] : terms_) {
    int s = 0;
    for (int x : e)
      s += x;
    d = std::max(d, s);
  }
  return d;
}

Form PolyForm::eval(const Vec &point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "parameter point has wrong length");
  Form out(dim_);
  for (const auto &[e, f] : terms_)
    out += f * monomial(e, point);
  return out;
}

PolyForm PolyForm::derivative(int j) const {
  PolyForm out(dim_, nvars_);
  for (const auto &[e, f] : terms_) {
    if (e[j] == 0)
      continue;
    Exponents g = e;
    g[j] -= 1;
    out.add_term(g, f * Scalar(e[j]));
  }
  return out;
}

ParamPoly PolyForm::coeff(Blade mask) const {
  ParamPoly out(nvars_);
  for (const auto &[e, f] : terms_)
    out.add_term(e, f.coeff(mask));
  return out;
}

PolyForm &PolyForm::operator+=(const PolyForm &o) {
  if (dim_ == 0) {
    dim_ = o.dim_;
    nvars_ = o.nvars_;
  }
  for (const auto &[e, f] : o.terms_)
    add_term(e, f);
  return *this;
}

PolyForm wedge(const PolyForm &a, const PolyForm &b) {
  PolyForm out(a.dim(), a.nvars());
  for (const auto &[e1, f1] : a.terms())
    for (const auto &[e2, f2] : b.terms())
      out.add_term(add_exps(e1, e2), wedge(f1, f2));
  return out;
}

PolyForm exp_wedge(const PolyForm &a) {
  PolyForm total = PolyForm::constant(a.nvars(), Form::scalar(a.dim(), Scalar(1)));
  PolyForm term = total;
  for (int k = 1; k <= a.dim(); ++k) {
    term = wedge(term, a) * Scalar(k).inverse();
    if (term.is_zero())
      break;
    total += term;
  }
  return total;
}

ParamPoly mukai_poly(const PolyForm &a, const PolyForm &b) {
  ParamPoly out(a.nvars());
  for (const auto &[e1, f1] : a.terms())
    for (const auto &[e2, f2] : b.terms())
      out.add_term(add_exps(e1, e2), mukai_pairing(f1, f2));
  return out;
}

// --------------------------------------------------------------- FamilySpec

const char *to_string(FamilyKind k) {
  switch (k) {
  case FamilyKind::Symplectic:
    return "symplectic";
  case FamilyKind::Complex:
    return "complex";
  case FamilyKind::General:
    return "general";
  }
  return "?";
}

namespace {

Mat eval_entries(const std::vector<ParamPoly> &entries, int size, const Vec &t) {
  if (static_cast<int>(entries.size()) != size * size)
    throw Error(ErrorKind::DimensionMismatch, "family matrix has wrong number of entries");
  Mat M(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      M(i, j) = entries[std::size_t(i) * size + j].eval(t);
  return M;
}

Mat diff_entries(const std::vector<ParamPoly> &entries, int size, int var, const Vec &t) {
  std::vector<ParamPoly> d;
  for (const auto &e : entries)
    d.push_back(e.derivative(var));
  return eval_entries(d, size, t);
}

Mat neg(const Mat &a) { return Scalar(-1) * a; }

} // namespace

Mat FamilySpec::J_at(const Vec &t) const {
  int dim = model->dim();
  switch (kind) {
  case FamilyKind::Symplectic:
    return symplectic_J(contraction_matrix(omega.eval(t)), contraction_matrix(B.eval(t)));
  case FamilyKind::Complex:
    return complex_J(eval_entries(entries, dim, t));
  case FamilyKind::General:
    return eval_entries(entries, 2 * dim, t);
  }
  return Mat();
}

Mat FamilySpec::J_dot(int j) const {
  int dim = model->dim();
  if (j < 0 || j >= m())
    throw Error(ErrorKind::IndexOutOfRange, "family direction " + std::to_string(j + 1));
  switch (kind) {
  case FamilyKind::Symplectic: {
    Mat W = contraction_matrix(omega.eval(basepoint));
    Mat Bx = contraction_matrix(B.eval(basepoint));
    Mat Wd = contraction_matrix(omega.derivative(j).eval(basepoint));
    Mat Bd = contraction_matrix(B.derivative(j).eval(basepoint));
    auto Pi = inverse(W);
    if (!Pi)
      throw Error(ErrorKind::DegenerateOmega, "omega degenerate at the basepoint");
    const Mat &P = *Pi;
    Mat Pd = neg(P * Wd * P);
    Mat tl = Pd * Bx + P * Bd;
    Mat tr = neg(Pd);
    Mat bl = Wd + Bd * P * Bx + Bx * Pd * Bx + Bx * P * Bd;
    Mat br = neg(Bd * P + Bx * Pd);
    Mat J(2 * dim, 2 * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        J(a, b) = tl(a, b);
        J(a, dim + b) = tr(a, b);
        J(dim + a, b) = bl(a, b);
        J(dim + a, dim + b) = br(a, b);
      }
    return J;
  }
  case FamilyKind::Complex: {
    Mat Id = diff_entries(entries, dim, j, basepoint);
    Mat J(2 * dim, 2 * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        J(a, b) = -Id(a, b);
        J(dim + a, dim + b) = Id(b, a);
      }
    return J;
  }
  case FamilyKind::General:
    return diff_entries(entries, 2 * dim, j, basepoint);
  }
  return Mat();
}

GCSPtr FamilySpec::at(const Vec &t) const {
  int dim = model->dim();
  switch (kind) {
  case FamilyKind::Symplectic:
    return make_symplectic(model, omega.eval(t), B.eval(t));
  case FamilyKind::Complex:
    return make_complex(model, eval_entries(entries, dim, t));
  case FamilyKind::General:
    return make_general(model, eval_entries(entries, 2 * dim, t));
  }
  return nullptr;
}

std::string FamilySpec::point_str(const Vec &t) const {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i)
      s += ",";
    s += (i < vars.size() ? vars[i] : "t" + std::to_string(i + 1)) + "=" + t[i].str();
  }
  return s;
}

FamilyValidation family_validate(const FamilySpec &f) {
  FamilyValidation rep;
  std::vector<Vec> pts{f.basepoint};
  pts.insert(pts.end(), f.samples.begin(), f.samples.end());
  for (const auto &t : pts) {
    try {
      f.at(t);
    } catch (const Error &e) {
      rep.ok = false;
      rep.failures.push_back(f.point_str(t) + ": " + e.what());
    }
  }
  return rep;
}

// ------------------------------------------------------------ graph epsilon

Form matrix_to_cochain(const Mat &E) {
  int r = E.rows();
  Form c(r);
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      c.add_term((Blade(1) << a) | (Blade(1) << b), E(a, b));
  return c;
}

GraphEpsilon graph_epsilon(const GCStruct &s0, const GCStruct &st) {
  int r = static_cast<int>(s0.lbasis.size());
  Mat U(r, r), W(r, r);
  for (int c = 0; c < r; ++c)
    for (int a = 0; a < r; ++a) {
      U(a, c) = pairing(st.lbasis[c], s0.lbar_dual[a]);
      W(a, c) = pairing(st.lbasis[c], s0.lbasis[a]);
    }
  auto Ui = inverse(U);
  if (!Ui)
    throw Error(ErrorKind::GraphConditionFailed, "L_t meets conj(L_0)");
  GraphEpsilon g;
  g.E = W * *Ui;
  g.cochain = matrix_to_cochain(g.E);
  g.skew = (g.E + g.E.transpose()).is_zero();

  int dim = s0.dim();
  std::vector<Vec> cols, conj_cols;
  for (int b = 0; b < r; ++b) {
    GenElem v = s0.lbasis[b];
    for (int a = 0; a < r; ++a)
      if (!g.E(a, b).is_zero())
        v = v + g.E(a, b) * s0.lbar_dual[a];
    cols.push_back(v.to_vec());
    conj_cols.push_back(v.conj().to_vec());
  }
  cols.insert(cols.end(), conj_cols.begin(), conj_cols.end());
  Mat M = Mat::from_columns(2 * dim, cols);
  auto Mi = inverse(M);
  if (!Mi) {
    g.round_trip = false;
    return g;
  }
  Mat D(2 * dim, 2 * dim);
  for (int k = 0; k < 2 * dim; ++k)
    D(k, k) = k < r ? Scalar::I() : -Scalar::I();
  g.round_trip = M * D * *Mi == st.J;
  return g;
}

GraphEpsilon graph_epsilon(const FamilySpec &f, const Vec &t) {
  GCSPtr s0 = f.base();
  GCSPtr st = f.at(t);
  try {
    return graph_epsilon(*s0, *st);
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::GraphConditionFailed)
      throw Error(ErrorKind::GraphConditionFailed, "at " + f.point_str(t));
    throw;
  }
}

// ----------------------------------------------------------------- KS class

KSReport ks_from_jdot(const GCStruct &s0, const Mat &Jdot) {
  KSReport rep;
  int r = static_cast<int>(s0.lbasis.size());
  int dim = s0.dim();
  Scalar inv2i = Scalar(0, 2).inverse();
  rep.E = Mat(r, r);
  std::vector<GenElem> images;
  for (int b = 0; b < r; ++b)
    images.push_back(GenElem::from_vec(dim, gcm::apply(Jdot, s0.lbasis[b].to_vec())));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      rep.E(a, b) = pairing(s0.lbasis[a], images[b]) * inv2i;
  rep.cochain = matrix_to_cochain(rep.E);
  const LieAlgebroid &L = s0.L();
  rep.closed = L.d(rep.cochain).is_zero();
  if (rep.closed)
    rep.cls = *algebroid_cohomology(L, 2).class_of(rep.cochain.to_vec());

  // eps as an endomorphism of E_C in the frame (l_b, lbar^b)
  std::vector<Vec> cols;
  for (const auto &l : s0.lbasis)
    cols.push_back(l.to_vec());
  for (const auto &l : s0.lbar_dual)
    cols.push_back(l.to_vec());
  Mat M = Mat::from_columns(2 * dim, cols);
  Mat Eh(2 * dim, 2 * dim);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      Eh(r + a, b) = rep.E(a, b);
  Mat eps = M * Eh * *inverse(M);
  rep.jj_identity = Jdot == Scalar(0, 2) * eps - Scalar(0, 2) * eps.conj();
  return rep;
}

KSReport ks_class(const FamilySpec &f, int j) {
  GCSPtr s0 = f.base();
  KSReport rep = ks_from_jdot(*s0, f.J_dot(j));
  rep.direction = j;
  if (!rep.closed)
    throw Error(ErrorKind::NotClosed,
                "d_L of the Kodaira-Spencer cochain is " + s0->L().d(rep.cochain).str());
  return rep;
}

Form pullback_cochain(const GCStruct &s, const Form &cochain) {
  int dim = s.dim();
  int r = static_cast<int>(s.lbasis.size());
  Mat A(dim, r);
  for (int a = 0; a < r; ++a)
    for (int k = 0; k < dim; ++k)
      A(k, a) = s.lbasis[a].vec[k];
  auto Psi = inverse(A);
  if (!Psi)
    throw Error(ErrorKind::WrongType, "anchor of L is not invertible");
  std::vector<Form> images;
  for (int a = 0; a < r; ++a) {
    Form f(dim);
    for (int k = 0; k < dim; ++k)
      f.add_term(Blade(1) << k, (*Psi)(a, k));
    images.push_back(f);
  }
  Form out(dim);
  for (const auto &[mask, c] : cochain.terms()) {
    Form t = Form::scalar(dim, c);
    for (int a = 0; a < r; ++a)
      if (mask & (Blade(1) << a))
        t = wedge(t, images[a]);
    out += t;
  }
  return out;
}

// ------------------------------------------------------------- Gauss-Manin

GMResult gm_derivative(const FamilySpec &f, const PolyForm &section, int j) {
  const LieModel &m = *f.model;
  for (const auto &[e, form] : section.terms())
    if (!m.d_H(form).is_zero())
      throw Error(ErrorKind::SectionNotClosed, "d_H of the section is nonzero");
  GMResult res;
  res.derivative = section.derivative(j).eval(f.basepoint);
  TwistedCohomology H = twisted_cohomology(f.model);
  int par = res.derivative.parity();
  if (par < 0) {
    Form base = section.eval(f.basepoint);
    par = base.parity() < 0 ? 0 : base.parity();
    if (!res.derivative.is_zero())
      throw Error(ErrorKind::SectionNotClosed, "section mixes parities");
  }
  res.parity = par;
  auto c = H.part(par).class_of(res.derivative.to_vec());
  if (!c)
    throw Error(ErrorKind::SectionNotClosed, "derivative is not closed");
  res.cls = *c;
  return res;
}

PolyForm canonical_section(const FamilySpec &f) {
  if (f.kind != FamilyKind::Symplectic)
    throw Error(ErrorKind::WrongType, "canonical section needs a symplectic family");
  PolyForm a = f.B * Scalar(-1) + f.omega * Scalar::I();
  return exp_wedge(a);
}

// ----------------------------------------------------------- transversality

Vec projector_derivative(const GCStruct &s0, const SparseMat &Ndot, int k, const Vec &v) {
  int n = s0.n();
  Vec w = v, wd(v.size());
  for (int j = -n; j <= n; ++j) {
    if (j == k)
      continue;
    Scalar ij(0, j);
    Scalar denom = Scalar(0, j - k).inverse();
    Vec nw = s0.N.apply(w), nwd = s0.N.apply(wd), ndw = Ndot.apply(w);
    for (std::size_t t = 0; t < w.size(); ++t) {
      nw[t] += ij * w[t];
      nwd[t] += ndw[t] + ij * wd[t];
    }
    w = vec_scale(nw, denom);
    wd = vec_scale(nwd, denom);
  }
  return wd;
}

Form cochain_action(const GCStruct &s, const Form &cochain, const Form &spinor) {
  int r = static_cast<int>(s.lbar_dual.size());
  Form out(s.dim());
  for (const auto &[mask, c] : cochain.terms()) {
    Form t = spinor;
    for (int a = r - 1; a >= 0; --a)
      if (mask & (Blade(1) << a))
        t = clifford_act(s.lbar_dual[a], t);
    out += t * c;
  }
  return out;
}

namespace {

// Eigenframe coordinates belonging to grades <= p with the parity of p.
std::vector<int> filtration_coords(const GCStruct &s, int p) {
  std::vector<int> cs;
  for (int k = -s.n(); k <= std::min(p, s.n()); ++k)
    if (((p - k) % 2 + 2) % 2 == 0)
      for (int c = s.grade_begin(k); c < s.grade_end(k); ++c)
        cs.push_back(c);
  return cs;
}

// Solves d_H s1 = 0 with (1 - P0) s1 = Pdot s0; returns s1 in eigen coords.
std::optional<Vec> first_order_extension(const GCStruct &s0, const SparseMat &Nd, int p,
                                         const Vec &z) {
  int size = s0.size();
  std::vector<int> coords = filtration_coords(s0, p);
  Vec pd(size);
  for (int k = -s0.n(); k <= std::min(p, s0.n()); ++k)
    if (((p - k) % 2 + 2) % 2 == 0)
      pd = vec_add(pd, projector_derivative(s0, Nd, k, z));
  Vec q = s0.to_eigen(pd);
  for (int c : coords)
    q[c] = Scalar();
  Vec rhs = vec_scale(gcm::apply(s0.Dt, q), Scalar(-1));
  Mat A(size, static_cast<int>(coords.size()));
  for (int i = 0; i < size; ++i)
    for (std::size_t c = 0; c < coords.size(); ++c)
      A(i, static_cast<int>(c)) = s0.Dt(i, coords[c]);
  auto x = solve(A, rhs);
  if (!x)
    return std::nullopt;
  for (std::size_t c = 0; c < coords.size(); ++c)
    q[coords[c]] = (*x)[c];
  return q;
}

Vec grade_part(const GCStruct &s, int k, const Vec &w) {
  Vec out(s.size());
  if (k < -s.n() || k > s.n())
    return out;
  for (int c = s.grade_begin(k); c < s.grade_end(k); ++c)
    out[c] = w[c];
  return out;
}

} // namespace

TransversalityReport transversality_check(const FamilySpec &f, int p, int j,
                                          std::optional<Scalar> &constant) {
  TransversalityReport rep;
  rep.p = p;
  rep.direction = j;
  GCSPtr s0 = f.base();
  const GCStruct &s = *s0;
  int n = s.n(), size = s.size();
  if (!ddbar_check(s).holds) {
    rep.skipped = true;
    rep.reason = "basepoint fails the ddbar-lemma";
    return rep;
  }
  Mat Jd = f.J_dot(j);
  SparseMat Nd = spin_operator(Jd);
  KSReport ks = ks_from_jdot(s, Jd);
  TwistedCohomology H = twisted_cohomology(f.model);

  if (p >= -n && p <= n)
    for (int c = s.grade_begin(p); c < s.grade_end(p); ++c) {
      Vec w = s.to_eigen(projector_derivative(s, Nd, p, s.V.column(c)));
      for (int k = -n; k <= n; ++k) {
        if (k == p - 2 || k == p || k == p + 2)
          continue;
        if (!is_zero(grade_part(s, k, w)))
          rep.components = false;
      }
    }

  std::vector<int> coords = filtration_coords(s, p);
  std::vector<Vec> span_vs;
  for (int c : coords)
    span_vs.push_back(s.V.column(c));
  Subspace Zp = kernel_on(dH_op(*s.model), Subspace::span(size, span_vs), size);
  Subspace Fp2 = filtration_step(s, H, p + 2);
  int par = ((s.parity + p + n) % 2 + 2) % 2;

  std::vector<QuotientFrame> dbar = delbar_cohomology(s);
  bool has_target = p + 2 <= n && p >= -n;
  std::vector<Vec> a_cls, b_cls;
  for (const auto &z : Zp.basis()) {
    auto w = first_order_extension(s, Nd, p, z);
    if (!w) {
      rep.extended = false;
      rep.failure = "no closed first-order extension (ExtensionFailed)";
      continue;
    }
    Vec s1 = s.from_eigen(*w);
    auto cls = H.part(par).class_of(s1);
    if (!cls || !Fp2.contains(*cls)) {
      rep.transversal = false;
      if (rep.failure.empty())
        rep.failure = "derivative leaves F^" + std::to_string(p + 2);
    }
    if (!has_target)
      continue;
    Vec a0 = grade_part(s, p, s.to_eigen(z));
    Vec b0 = grade_part(s, p + 2, *w);
    Form act = cochain_action(s, ks.cochain, Form::from_vec(s.dim(), s.from_eigen(a0)));
    Vec k0 = s.to_eigen(act.to_vec());
    auto ca = dbar[p + n].class_of(a0);
    auto cb = dbar[p + 2 + n].class_of(b0);
    auto ck = dbar[p + 2 + n].class_of(k0);
    if (!ca || !cb || !ck || !is_zero(vec_sub(k0, grade_part(s, p + 2, k0)))) {
      rep.matches = false;
      if (rep.failure.empty())
        rep.failure = "graded pieces are not delbar-closed";
      continue;
    }
    a_cls.push_back(*ca);
    b_cls.push_back(*cb);
    if (!constant && !is_zero(*ck)) {
      for (std::size_t i = 0; i < ck->size(); ++i)
        if (!(*ck)[i].is_zero()) {
          constant = (*cb)[i] / (*ck)[i];
          break;
        }
    }
    Vec predicted = constant ? vec_scale(*ck, *constant) : *ck;
    if (*cb != predicted) {
      rep.matches = false;
      if (rep.failure.empty())
        rep.failure = "graded derivative differs from the Clifford action";
    }
  }
  rep.constant = constant;

  if (has_target) {
    int src = dbar[p + n].dim(), dst = dbar[p + 2 + n].dim();
    std::vector<Vec> sel_a, sel_b;
    Subspace acc(src);
    for (std::size_t i = 0; i < a_cls.size(); ++i) {
      Subspace next = sum(acc, Subspace::span(src, {a_cls[i]}));
      if (next.dim() > acc.dim()) {
        acc = next;
        sel_a.push_back(a_cls[i]);
        sel_b.push_back(b_cls[i]);
      }
    }
    if (static_cast<int>(sel_a.size()) == src && src > 0) {
      Mat A = Mat::from_columns(src, sel_a);
      Mat Bm = Mat::from_columns(dst, sel_b);
      rep.induced = Bm * *inverse(A);
    } else {
      rep.induced = Mat(dst, src);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- holomorphy

HolomorphyReport holomorphy_check(const FamilySpec &f) {
  if (f.m() != 2)
    throw Error(ErrorKind::DimensionMismatch, "holomorphy needs a two-parameter family");
  HolomorphyReport rep;
  rep.k1 = ks_class(f, 0).cls;
  rep.k2 = ks_class(f, 1).cls;
  rep.residual = vec_sub(rep.k2, vec_scale(rep.k1, Scalar::I()));
  rep.holomorphic = is_zero(rep.residual);
  return rep;
}

// --------------------------------------------------- symplectic filtrations

SympFiltrationReport symp_filtration_check(const FamilySpec &f, int p) {
  if (f.kind != FamilyKind::Symplectic)
    throw Error(ErrorKind::WrongType, "symplectic family expected");
  SympFiltrationReport rep;
  GCSPtr s0 = f.base();
  if (!lefschetz_check(*s0).holds) {
    rep.skipped = true;
    rep.reason = "strong Lefschetz fails at the basepoint";
    return rep;
  }
  const LieModel &m = *f.model;
  int n = m.n(), size = m.spinor_dim();
  TwistedCohomology H = twisted_cohomology(f.model);
  std::vector<Vec> pts{f.basepoint};
  pts.insert(pts.end(), f.samples.begin(), f.samples.end());
  int par = ((p + n) % 2 + 2) % 2;
  for (const auto &t : pts) {
    GCSPtr st = f.at(t);
    Subspace lhs = filtration_step(*st, H, p);
    Form rho = *st->spinor;
    std::vector<Vec> vs;
    for (int k = p + n; k >= 0; k -= 2) {
      if (k > m.dim())
        continue;
      QuotientFrame hk = de_rham(m, k);
      for (const auto &z : hk.cycles().basis())
        vs.push_back(wedge(rho, Form::from_vec(m.dim(), z)).to_vec());
    }
    Subspace rhs = H.classes_of(Subspace::span(size, vs), par);
    if (lhs != rhs)
      rep.ok = false;
    rep.dims.emplace_back(f.point_str(t), lhs.dim());
  }
  return rep;
}

// ---------------------------------------------------------------------- GCY

GCYReport gcy_check(const GCStruct &s, const FamilySpec *f) {
  if (!s.spinor)
    throw Error(ErrorKind::NoInvariantSpinor, "structure has no invariant pure spinor");
  const Form &rho = *s.spinor;
  Form drho = s.model->d_H(rho);
  if (!drho.is_zero())
    throw Error(ErrorKind::SpinorNotClosed, "d_H rho = " + drho.str());
  GCYReport rep;
  const LieAlgebroid &L = s.L();
  int n = s.n(), r = L.rank();
  std::vector<QuotientFrame> dbar = delbar_cohomology(s);
  for (int k = 0; k <= r; ++k) {
    QuotientFrame HL = algebroid_cohomology(L, k);
    const QuotientFrame &T = dbar[k];  // grade k - n
    rep.dims.emplace_back(HL.dim(), T.dim());
    auto image_of = [&](const Vec &cochain) -> std::optional<Vec> {
      Form act = cochain_action(s, Form::from_vec(r, cochain), rho);
      return T.class_of(s.to_eigen(act.to_vec()));
    };
    std::vector<Vec> cols;
    bool ok = true;
    for (const auto &rep_vec : HL.reps()) {
      auto c = image_of(rep_vec);
      if (!c) {
        ok = false;
        rep.failure = "image of a cocycle is not delbar-closed in degree " + std::to_string(k);
        break;
      }
      cols.push_back(*c);
    }
    for (const auto &b : HL.boundaries().basis()) {
      auto c = image_of(b);
      if (!c || !is_zero(*c)) {
        ok = false;
        rep.failure = "image of a coboundary is not exact in degree " + std::to_string(k);
      }
    }
    if (ok && HL.dim() > 0) {
      int rk = rank(Mat::from_columns(T.dim(), cols));
      ok = rk == HL.dim() && rk == T.dim();
      if (k == 2)
        rep.injective_h2 = rk == HL.dim();
    } else if (ok) {
      ok = T.dim() == 0;
    }
    if (!ok && k == 2)
      rep.injective_h2 = false;
    rep.iso = rep.iso && ok;
  }
  if (f) {
    TwistedCohomology H = twisted_cohomology(s.model);
    Subspace Fn = filtration_step(s, H, -n);
    std::vector<Vec> ks_vecs, nabla_vecs;
    for (int j = 0; j < f->m(); ++j) {
      Mat Jd = f->J_dot(j);
      ks_vecs.push_back(ks_from_jdot(s, Jd).cls);
      auto w = first_order_extension(s, spin_operator(Jd), -n, rho.to_vec());
      if (!w) {
        rep.period_immersion = false;
        rep.failure = "canonical line does not extend to first order";
        return rep;
      }
      auto cls = H.part(s.parity).class_of(s.from_eigen(*w));
      nabla_vecs.push_back(Fn.reduce(*cls));
    }
    int a = Subspace::span(static_cast<int>(ks_vecs.front().size()), ks_vecs).dim();
    int b = Subspace::span(H.part(s.parity).dim(), nabla_vecs).dim();
    rep.ks_rank = a;
    rep.period_rank = b;
    rep.period_immersion = b == f->m();
  }
  return rep;
}

// ------------------------------------------------------------ Q constancy

QConstancyReport q_constancy(const FamilySpec &f, const PolyForm &s1, const PolyForm &s2,
                             int j, std::uint64_t seed) {
  QConstancyReport rep;
  const LieModel &m = *f.model;
  int dim = m.dim(), mv = f.m();
  SampleRng rng(seed);
  Exponents e1(mv, 0), e2(mv, 0);
  e1[j] = 1;
  e2[j] = 2;
  auto flat = [&](const PolyForm &s) {
    PolyForm out = PolyForm::constant(mv, s.eval(f.basepoint));
    int par = s.eval(f.basepoint).parity();
    Form b1 = rng.form(dim), b2 = rng.form(dim);
    auto keep = [&](const Form &x) {
      Form y(dim);
      for (const auto &[mask, c] : x.terms())
        if (blade_degree(mask) % 2 != par)
          y.add_term(mask, c);
      return y;
    };
    out.add_term(e1, m.d_H(keep(b1)));
    out.add_term(e2, m.d_H(keep(b2)));
    return out;
  };
  rep.flat_constant = mukai_poly(flat(s1), flat(s2)).is_constant();

  GMResult g1 = gm_derivative(f, s1, j), g2 = gm_derivative(f, s2, j);
  TwistedCohomology H = twisted_cohomology(f.model);
  auto rep_of = [&](const GMResult &g) {
    Vec v(m.spinor_dim());
    const auto &reps = H.part(g.parity).reps();
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (!g.cls[i].is_zero())
        v = vec_add(v, vec_scale(reps[i], g.cls[i]));
    return Form::from_vec(dim, v);
  };
  rep.derivative = mukai_poly(s1, s2).derivative(j).eval(f.basepoint);
  rep.predicted = mukai_pairing(rep_of(g1), s2.eval(f.basepoint)) +
                  mukai_pairing(s1.eval(f.basepoint), rep_of(g2));
  rep.leibniz = rep.derivative == rep.predicted;
  return rep;
}

} // namespace gcm
