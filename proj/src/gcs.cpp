#include "gcm/gcs.hpp"
#include "gcm/error.hpp"

namespace gcm {

const char *to_string(StructKind k) {
  switch (k) {
  case StructKind::General:
    return "general";
  case StructKind::Symplectic:
    return "symplectic";
  case StructKind::Complex:
    return "complex";
  }
  return "?";
}

SparseMat clifford_matrix(const GenElem &a) {
  int dim = a.dim();
  int size = 1 << dim;
  std::vector<Vec> cols;
  cols.reserve(size);
  for (int b = 0; b < size; ++b)
    cols.push_back(clifford_act(a, Form::blade(dim, Blade(b))).to_vec());
  return SparseMat::from_columns(size, cols);
}

SparseMat spin_operator(const Mat &J) {
  int dim = J.rows() / 2;
  int size = 1 << dim;
  Scalar half = Scalar::frac(1, 2);
  Scalar trace;
  for (int i = 0; i < dim; ++i)
    trace += J(i, i);
  std::vector<Vec> cols;
  cols.reserve(size);
  for (int m = 0; m < size; ++m) {
    Form phi = Form::blade(dim, Blade(m));
    Form out = phi * (trace * half);
    for (int i = 0; i < dim; ++i) {
      Form ix = contract(i + 1, phi);
      for (int j = 0; j < dim; ++j) {
        const Scalar &A = J(i, j);
        if (!A.is_zero() && !ix.is_zero())
          out -= wedge(Form::gens(dim, {j + 1}), ix) * A;
      }
    }
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        const Scalar &C = J(dim + a, b);
        if (!C.is_zero())
          out += wedge(Form::gens(dim, {a + 1, b + 1}), phi) * (C * half);
        const Scalar &Bm = J(a, dim + b);
        if (!Bm.is_zero())
          out += contract(a + 1, contract(b + 1, phi)) * (Bm * half);
      }
    cols.push_back(out.to_vec());
  }
  return SparseMat::from_columns(size, cols);
}

Mat contraction_matrix(const Form &alpha) {
  int dim = alpha.dim();
  Mat M(dim, dim);
  for (int b = 0; b < dim; ++b) {
    Form c = contract(b + 1, alpha);
    for (const auto &[mask, v] : c.terms()) {
      if (blade_degree(mask) != 1)
        throw Error(ErrorKind::DimensionMismatch, "expected a 2-form");
      M(__builtin_ctz(mask), b) = v;
    }
  }
  return M;
}

Mat b_field_matrix(const Form &B) {
  int dim = B.dim();
  Mat E = Mat::identity(2 * dim);
  Mat Bx = contraction_matrix(B);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      E(dim + a, b) = Bx(a, b);
  return E;
}

namespace {

Mat block(const Mat &tl, const Mat &tr, const Mat &bl, const Mat &br) {
  int d = tl.rows();
  Mat J(2 * d, 2 * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      J(i, j) = tl(i, j);
      J(i, d + j) = tr(i, j);
      J(d + i, j) = bl(i, j);
      J(d + i, d + j) = br(i, j);
    }
  return J;
}

// Pi_k v by the Lagrange product over the known spectrum {-ij}.
Vec lagrange_project(const SparseMat &N, int n, int k, const Vec &v) {
  Vec w = v;
  for (int j = -n; j <= n; ++j) {
    if (j == k)
      continue;
    Vec nw = N.apply(w);
    Scalar ij = Scalar(0, j);
    for (std::size_t t = 0; t < w.size(); ++t)
      nw[t] += ij * w[t];
    Scalar denom = Scalar(0, j - k).inverse();
    w = vec_scale(nw, denom);
  }
  return w;
}

bool is_real(const Mat &M) { return M.is_real(); }

Form normalize_first(const Form &f) {
  if (f.is_zero())
    return f;
  // first term in (degree, mask) order gets coefficient 1
  Blade best = 0;
  int best_deg = 1 << 20;
  for (const auto &[b, c] : f.terms()) {
    int d = blade_degree(b);
    if (d < best_deg || (d == best_deg && b < best)) {
      best = b;
      best_deg = d;
    }
  }
  return f * f.coeff(best).inverse();
}

void build_frame(GCStruct &s) {
  int n = s.n(), size = s.size();
  s.N = spin_operator(s.J);
  std::vector<Vec> cols;
  s.offset.assign(1, 0);
  for (int k = -n; k <= n; ++k) {
    std::vector<Vec> imgs;
    for (int b = 0; b < size; ++b)
      imgs.push_back(lagrange_project(s.N, n, k, unit_vec(size, b)));
    Subspace Uk = Subspace::span(size, imgs);
    Scalar lambda(0, -k);
    for (const auto &u : Uk.basis()) {
      Vec nu = s.N.apply(u);
      if (nu != vec_scale(u, lambda))
        throw Error(ErrorKind::SpectrumViolation,
                    "U_" + std::to_string(k) + " is not an eigenspace of the spinorial action");
      cols.push_back(u);
    }
    s.offset.push_back(static_cast<int>(cols.size()));
  }
  if (static_cast<int>(cols.size()) != size)
    throw Error(ErrorKind::SpectrumViolation,
                "eigenspaces span " + std::to_string(cols.size()) + " of " +
                    std::to_string(size) + " dimensions");
  s.V = Mat::from_columns(size, cols);
  auto inv = inverse(s.V);
  if (!inv)
    throw Error(ErrorKind::SpectrumViolation, "eigenframe is singular");
  s.Vinv = *inv;
  s.Dt = s.Vinv * (s.model->dH_matrix().dense() * s.V);
}

std::shared_ptr<GCStruct> build(ModelPtr m, const Mat &J, bool allow_nonintegrable) {
  int dim = m->dim();
  if (J.rows() != 2 * dim || J.cols() != 2 * dim)
    throw Error(ErrorKind::DimensionMismatch,
                "J must be " + std::to_string(2 * dim) + "x" + std::to_string(2 * dim));
  if (!is_real(J))
    throw Error(ErrorKind::WrongType, "J must have real rational entries");
  Mat Id = Mat::identity(2 * dim);
  if (J * J != Scalar(-1) * Id)
    throw Error(ErrorKind::NotAlmostComplex, "J^2 != -1");
  Mat P = pairing_matrix(dim);
  if (J.transpose() * P * J != P)
    throw Error(ErrorKind::NotOrthogonal, "<Ja, Jb> != <a, b>");

  auto s = std::make_shared<GCStruct>();
  s->model = m;
  s->J = J;
  Subspace Lsp = kernel(J - Scalar::I() * Id);
  for (const auto &v : Lsp.basis())
    s->lbasis.push_back(GenElem::from_vec(dim, v));
  SubbundleCheck chk = check_subbundle(*m, s->lbasis);
  s->integrable = chk.independent && chk.isotropic && chk.closed;
  s->integrability_witness = chk.witness;
  if (!s->integrable && !allow_nonintegrable)
    throw Error(ErrorKind::NotIntegrable, chk.witness);
  if (s->integrable)
    s->algebroid = algebroid_from_basis(m, s->lbasis);

  int r = static_cast<int>(s->lbasis.size());
  Mat G(r, r);
  for (int c = 0; c < r; ++c)
    for (int b = 0; b < r; ++b)
      G(c, b) = pairing(s->lbasis[c].conj(), s->lbasis[b]);
  auto Ginv = inverse(G);
  if (!Ginv)
    throw Error(ErrorKind::NotOrthogonal, "L and conj(L) are not paired");
  for (int a = 0; a < r; ++a) {
    GenElem e(dim);
    for (int c = 0; c < r; ++c)
      if (!(*Ginv)(a, c).is_zero())
        e = e + (*Ginv)(a, c) * s->lbasis[c].conj();
    s->lbar_dual.push_back(e);
  }

  build_frame(*s);
  try {
    s->spinor = normalize_first(extract_pure_spinor(*s));
  } catch (const Error &) {
    s->spinor.reset();
  }
  Vec k0 = s->V.column(0);
  int par = Form::from_vec(dim, k0).parity();
  s->parity = par < 0 ? 0 : par;
  return s;
}

} // namespace

const LieAlgebroid &GCStruct::L() const {
  if (!algebroid)
    throw Error(ErrorKind::NotIntegrable, integrability_witness);
  return *algebroid;
}

int GCStruct::grade_dim(int k) const {
  if (k < -n() || k > n())
    return 0;
  return grade_end(k) - grade_begin(k);
}

Subspace GCStruct::U(int k) const {
  if (k < -n() || k > n())
    return Subspace(size());
  std::vector<Vec> vs;
  for (int c = grade_begin(k); c < grade_end(k); ++c)
    vs.push_back(V.column(c));
  return Subspace::span(size(), vs);
}

Subspace GCStruct::eigen_U(int k) const {
  if (k < -n() || k > n())
    return Subspace(size());
  return Subspace::coordinate(size(), grade_begin(k), grade_end(k));
}

Vec GCStruct::project(int k, const Vec &v) const {
  Vec w = to_eigen(v);
  for (int c = 0; c < size(); ++c)
    if (k < -n() || k > n() || c < grade_begin(k) || c >= grade_end(k))
      w[c] = Scalar();
  return from_eigen(w);
}

Form GCStruct::project(int k, const Form &a) const {
  return Form::from_vec(dim(), project(k, a.to_vec()));
}

std::optional<int> GCStruct::grade_of(const Form &a) const {
  if (a.is_zero())
    return std::nullopt;
  Vec w = to_eigen(a.to_vec());
  std::optional<int> found;
  for (int k = -n(); k <= n(); ++k)
    for (int c = grade_begin(k); c < grade_end(k); ++c)
      if (!w[c].is_zero()) {
        if (found && *found != k)
          return std::nullopt;
        found = k;
      }
  return found;
}

Mat symplectic_J(const Mat &Omega, const Mat &Bx) {
  auto P = inverse(Omega);
  if (!P)
    throw Error(ErrorKind::DegenerateOmega, "omega is degenerate");
  Mat PB = *P * Bx;
  return block(PB, Scalar(-1) * *P, Omega + Bx * PB, Scalar(-1) * (Bx * *P));
}

Mat complex_J(const Mat &I) {
  int d = I.rows();
  return block(Scalar(-1) * I, Mat(d, d), Mat(d, d), I.transpose());
}

GCSPtr make_general(ModelPtr m, const Mat &J, bool allow_nonintegrable) {
  return build(std::move(m), J, allow_nonintegrable);
}

GCSPtr make_symplectic(ModelPtr m, const Form &omega, const Form &B) {
  int dim = m->dim();
  if (omega.dim() != dim || B.dim() != dim)
    throw Error(ErrorKind::DimensionMismatch, "omega/B dimension");
  if (omega.is_zero() || omega.min_degree() != 2 || omega.max_degree() != 2)
    throw Error(ErrorKind::DegenerateOmega, "omega must be a nonzero 2-form");
  if (!B.is_zero() && (B.min_degree() != 2 || B.max_degree() != 2))
    throw Error(ErrorKind::BMismatch, "B must be a 2-form");
  Form top = Form::scalar(dim, Scalar(1));
  for (int k = 0; k < m->n(); ++k)
    top = wedge(top, omega);
  if (top.is_zero())
    throw Error(ErrorKind::DegenerateOmega, "omega^" + std::to_string(m->n()) + " = 0");
  Form dw = m->d(omega);
  if (!dw.is_zero())
    throw Error(ErrorKind::OmegaNotClosed, "d omega = " + dw.str());
  Form dB = m->d(B);
  if (dB != m->H())
    throw Error(ErrorKind::BMismatch, "dB = " + dB.str() + " but H = " + m->H().str());

  SymplecticData sd;
  sd.omega = omega;
  sd.B = B;
  sd.Omega = contraction_matrix(omega);
  sd.P = *inverse(sd.Omega);
  sd.Bx = contraction_matrix(B);
  auto s = build(m, symplectic_J(sd.Omega, sd.Bx), false);
  s->kind = StructKind::Symplectic;
  Form rho = exp_wedge(-B + Scalar::I() * omega);
  if (s->spinor && normalize_first(rho) != *s->spinor)
    throw Error(ErrorKind::SpectrumViolation, "canonical line is not spanned by e^{-B+i omega}");
  s->spinor = rho;
  s->symp = sd;
  return s;
}

GCSPtr make_complex(ModelPtr m, const Mat &I) {
  int dim = m->dim();
  if (I.rows() != dim || I.cols() != dim)
    throw Error(ErrorKind::DimensionMismatch, "I must be " + std::to_string(dim) + "x" +
                                                   std::to_string(dim));
  if (I * I != Scalar(-1) * Mat::identity(dim))
    throw Error(ErrorKind::NotAlmostComplex, "I^2 != -1");
  Mat J = complex_J(I);
  auto s = build(m, J, true);
  if (!s->integrable) {
    auto plain = m->with_twist(Form(dim));
    SubbundleCheck chk = check_subbundle(*plain, s->lbasis);
    if (chk.closed)
      throw Error(ErrorKind::TwistWrongType,
                  "H has a (3,0)+(0,3) component: " + s->integrability_witness);
    throw Error(ErrorKind::NotIntegrable, chk.witness);
  }
  s->kind = StructKind::Complex;
  s->I = I;
  return s;
}

GradingReport grading_projectors(const GCStruct &s) {
  GradingReport rep;
  int n = s.n(), size = s.size();
  for (int k = -n; k <= n; ++k)
    rep.dims.push_back(s.grade_dim(k));
  auto fail = [&](bool &flag, const std::string &msg) {
    if (flag) {
      flag = false;
      rep.ok = false;
      if (rep.failure.empty())
        rep.failure = msg;
    }
  };
  // Lagrange projectors checked directly against the operator N.
  for (int b = 0; b < size; ++b) {
    Vec e = unit_vec(size, b);
    Vec total(size);
    for (int k = -n; k <= n; ++k) {
      Vec pk = lagrange_project(s.N, n, k, e);
      total = vec_add(total, pk);
      for (int j = -n; j <= n; ++j) {
        Vec pjk = lagrange_project(s.N, n, j, pk);
        if ((j == k && pjk != pk) || (j != k && !is_zero(pjk)))
          fail(rep.orthogonal, "Pi_j Pi_k != delta_jk Pi_k");
      }
    }
    if (total != e)
      fail(rep.resolution, "sum of projectors != identity");
  }
  for (int k = -n; k <= n; ++k)
    if (s.U(k).conj() != s.U(-k))
      fail(rep.conj_swap, "conj(U_" + std::to_string(k) + ") != U_" + std::to_string(-k));
  auto shifts = [&](const GenElem &a, int shift, bool &flag, const std::string &name) {
    SparseMat C = clifford_matrix(a);
    for (int k = -n; k <= n; ++k)
      for (int c = s.grade_begin(k); c < s.grade_end(k); ++c) {
        Vec w = s.to_eigen(C.apply(s.V.column(c)));
        for (int j = -n; j <= n; ++j) {
          if (j == k + shift)
            continue;
          for (int t = s.grade_begin(j); t < s.grade_end(j); ++t)
            if (!w[t].is_zero()) {
              fail(flag, name + " does not shift U_" + std::to_string(k) + " by " +
                             std::to_string(shift));
              return;
            }
        }
      }
  };
  for (const auto &l : s.lbasis)
    shifts(l, -1, rep.lowering, "Clifford action of L");
  for (const auto &l : s.lbar_dual)
    shifts(l, +1, rep.raising, "Clifford action of conj(L)");
  return rep;
}

DelDelbar del_delbar(const GCStruct &s, const Form &a, int k) {
  Form d = s.model->d_H(a);
  DelDelbar out;
  out.del = s.project(k - 1, d);
  out.delbar = s.project(k + 1, d);
  out.residual = d - out.del - out.delbar;
  return out;
}

bool delbar_residual_zero(const GCStruct &s, std::string *witness) {
  int n = s.n();
  for (int k = -n; k <= n; ++k)
    for (int c = s.grade_begin(k); c < s.grade_end(k); ++c)
      for (int j = -n; j <= n; ++j) {
        if (j == k - 1 || j == k + 1)
          continue;
        for (int r = s.grade_begin(j); r < s.grade_end(j); ++r)
          if (!s.Dt(r, c).is_zero()) {
            if (witness) {
              Form u = Form::from_vec(s.dim(), s.V.column(c));
              *witness = "d_H maps " + u.str() + " in U_" + std::to_string(k) +
                         " to a nonzero U_" + std::to_string(j) + " component";
            }
            return false;
          }
      }
  return true;
}

Form extract_pure_spinor(const GCStruct &s) {
  int size = s.size();
  std::vector<SparseMat> cl;
  for (const auto &l : s.lbasis)
    cl.push_back(clifford_matrix(l));
  LinOp op = [&cl](const Vec &v) {
    Vec out;
    for (const auto &C : cl) {
      Vec w = C.apply(v);
      out.insert(out.end(), w.begin(), w.end());
    }
    return out;
  };
  Subspace K = kernel_on(op, Subspace::full(size), size * static_cast<int>(cl.size()));
  if (K.dim() != 1)
    throw Error(ErrorKind::NoInvariantSpinor,
                "joint kernel of L has dimension " + std::to_string(K.dim()));
  return Form::from_vec(s.dim(), K.basis()[0]);
}

namespace {

const SymplecticData &require_symp(const GCStruct &s) {
  if (s.kind != StructKind::Symplectic || !s.symp)
    throw Error(ErrorKind::WrongType, "structure is not of symplectic type");
  return *s.symp;
}

} // namespace

Form beta_contract(const GCStruct &s, const Form &a) {
  const SymplecticData &sd = require_symp(s);
  int dim = s.dim();
  Form out(dim);
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q)
      if (!sd.P(p, q).is_zero())
        out += contract(p + 1, contract(q + 1, a)) * sd.P(p, q);
  return out * Scalar::frac(1, 2);
}

Form symp_phi(const GCStruct &s, const Form &a) {
  const SymplecticData &sd = require_symp(s);
  // e^{Lambda/2i} a, then wedge with e^{-B + i omega}
  Scalar c = Scalar(0, 2).inverse();
  Form term = a, total = a;
  for (int m = 1; !term.is_zero(); ++m) {
    term = beta_contract(s, term) * (c * Scalar(m).inverse());
    total += term;
  }
  return wedge(exp_wedge(-sd.B + Scalar::I() * sd.omega), total);
}

Form symp_delta(const GCStruct &s, const Form &a) {
  const LieModel &m = *s.model;
  return beta_contract(s, m.d(a)) - m.d(beta_contract(s, a));
}

GenElem psi(const GCStruct &s, const Vec &X) {
  int r = static_cast<int>(s.lbasis.size());
  Mat A(s.dim(), r);
  for (int a = 0; a < r; ++a)
    for (int k = 0; k < s.dim(); ++k)
      A(k, a) = s.lbasis[a].vec[k];
  auto c = solve(A, X);
  if (!c)
    throw Error(ErrorKind::WrongType, "anchor of L is not onto");
  GenElem out(s.dim());
  for (int a = 0; a < r; ++a)
    if (!(*c)[a].is_zero())
      out = out + (*c)[a] * s.lbasis[a];
  return out;
}

PsiReport measure_psi_constant(const GCStruct &s) {
  require_symp(s);
  PsiReport rep;
  int dim = s.dim();
  int r = static_cast<int>(s.lbasis.size());
  bool have = false;
  for (int k = 1; k <= dim; ++k) {
    // psi^{-1}(e^k) in conj(L): pairs with psi(x_j) to delta_jk
    GenElem lbar(dim);
    for (int a = 0; a < r; ++a) {
      const Scalar &y = s.lbasis[a].vec[k - 1];
      if (!y.is_zero())
        lbar = lbar + y * s.lbar_dual[a];
    }
    for (Blade b = 0; b < (Blade(1) << dim); ++b) {
      Form alpha = Form::blade(dim, b);
      Form lhs = clifford_act(lbar, symp_phi(s, alpha));
      Form rhs = symp_phi(s, wedge(Form::gens(dim, {k}), alpha));
      if (rhs.is_zero()) {
        if (!lhs.is_zero()) {
          rep.uniform = false;
          rep.failure = "nonzero action on e" + std::to_string(k) + " ^ " + alpha.str();
        }
        continue;
      }
      auto [blade, coeff] = *rhs.terms().begin();
      Scalar c = lhs.coeff(blade) / coeff;
      if (lhs != rhs * c || (have && c != rep.constant)) {
        rep.uniform = false;
        if (rep.failure.empty())
          rep.failure = "non-uniform constant at e" + std::to_string(k) + " ^ " + alpha.str();
        continue;
      }
      rep.constant = c;
      have = true;
    }
  }
  return rep;
}

} // namespace gcm
