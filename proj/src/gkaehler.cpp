#include "gcm/gkaehler.hpp"
#include "gcm/error.hpp"

namespace gcm {

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n)
    return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

std::vector<GenElem> span_intersection(int dim, const std::vector<GenElem> &a,
                                       const std::vector<GenElem> &b) {
  std::vector<Vec> va, vb;
  for (const auto &g : a)
    va.push_back(g.to_vec());
  for (const auto &g : b)
    vb.push_back(g.to_vec());
  Subspace s = intersect(Subspace::span(2 * dim, va), Subspace::span(2 * dim, vb));
  std::vector<GenElem> out;
  for (const auto &v : s.basis())
    out.push_back(GenElem::from_vec(dim, v));
  return out;
}

std::vector<GenElem> conj_all(const std::vector<GenElem> &a) {
  std::vector<GenElem> out;
  for (const auto &g : a)
    out.push_back(g.conj());
  return out;
}

// Bidegree of every eigenframe coordinate.
std::vector<Bidegree> coord_bidegrees(const GKPair &p) {
  std::vector<Bidegree> out(p.size());
  for (const auto &[rs, range] : p.blocks)
    for (int c = range.first; c < range.second; ++c)
      out[c] = rs;
  return out;
}

Mat bigraded_dH(const GKPair &p) {
  return p.Vinv * p.s1->model->dH_matrix().dense() * p.V;
}

// Component of D shifting bidegree by (a, b).
Mat shift_part(const Mat &D, const std::vector<Bidegree> &bd, int a, int b) {
  Mat out(D.rows(), D.cols());
  for (int i = 0; i < D.rows(); ++i)
    for (int j = 0; j < D.cols(); ++j)
      if (bd[i].first == bd[j].first + a && bd[i].second == bd[j].second + b)
        out(i, j) = D(i, j);
  return out;
}

Scalar pair_jdot(const GenElem &a, const Mat &Jdot, const GenElem &b) {
  GenElem jb = GenElem::from_vec(a.dim(), gcm::apply(Jdot, b.to_vec()));
  return pairing(a, jb) * Scalar(0, 2).inverse();
}

} // namespace

int GKPair::dim_rs(int r, int s) const {
  auto it = blocks.find({r, s});
  return it == blocks.end() ? 0 : it->second.second - it->second.first;
}

Vec GKPair::project(int r, int s, const Vec &v) const {
  Vec w = gcm::apply(Vinv, v), out(w.size());
  auto it = blocks.find({r, s});
  if (it != blocks.end())
    for (int c = it->second.first; c < it->second.second; ++c)
      out[c] = w[c];
  return gcm::apply(V, out);
}

Subspace GKPair::U(int r, int s) const {
  std::vector<Vec> vs;
  auto it = blocks.find({r, s});
  if (it != blocks.end())
    for (int c = it->second.first; c < it->second.second; ++c)
      vs.push_back(V.column(c));
  return Subspace::span(size(), vs);
}

Scalar determinant(const Mat &a) {
  Mat t = a;
  int n = t.rows();
  Scalar d(1);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && t(piv, c).is_zero())
      ++piv;
    if (piv == n)
      return Scalar();
    if (piv != c) {
      for (int q = 0; q < n; ++q)
        std::swap(t(piv, q), t(c, q));
      d = -d;
    }
    d *= t(c, c);
    for (int r = c + 1; r < n; ++r) {
      Scalar f = t(r, c) / t(c, c);
      for (int q = c; q < n; ++q)
        t(r, q) -= f * t(c, q);
    }
  }
  return d;
}

std::vector<Scalar> leading_minors(const Mat &a) {
  std::vector<Scalar> out;
  for (int k = 1; k <= a.rows(); ++k) {
    Mat sub(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        sub(r, c) = a(r, c);
    out.push_back(determinant(sub));
  }
  return out;
}

GKPair gk_validate(GCSPtr s1, GCSPtr s2) {
  if (s1->model != s2->model && s1->dim() != s2->dim())
    throw Error(ErrorKind::DimensionMismatch, "structures live on different models");
  const Mat &J1 = s1->J, &J2 = s2->J;
  if (J1 * J2 != J2 * J1)
    throw Error(ErrorKind::NotCommuting, "J1 J2 != J2 J1");
  GKPair p;
  p.s1 = s1;
  p.s2 = s2;
  p.G = Scalar(-1) * (J1 * J2);
  int dim = s1->dim(), n = s1->n(), size = s1->size();
  Mat S = p.G.transpose() * pairing_matrix(dim);
  if (S != S.transpose() || !S.is_real())
    throw Error(ErrorKind::MetricNotPositive, "<G., .> is not real symmetric");
  auto minors = leading_minors(S);
  for (std::size_t k = 0; k < minors.size(); ++k)
    if (sgn(minors[k].re) <= 0)
      throw Error(ErrorKind::MetricNotPositive,
                  "leading minor " + std::to_string(k + 1) + " is " + minors[k].str());

  p.plus_basis = span_intersection(dim, s1->lbasis, s2->lbasis);
  p.minus_basis = span_intersection(dim, s1->lbasis, conj_all(s2->lbasis));
  try {
    p.plus = algebroid_from_basis(s1->model, p.plus_basis);
    p.minus = algebroid_from_basis(s1->model, p.minus_basis);
  } catch (const Error &e) {
    throw Error(ErrorKind::SplitNotIntegrable, e.what());
  }

  std::vector<Vec> cols;
  for (int r = -n; r <= n; ++r)
    for (int s = -n; s <= n; ++s) {
      Subspace u = intersect(s1->U(r), s2->U(s));
      int begin = static_cast<int>(cols.size());
      for (const auto &v : u.basis())
        cols.push_back(v);
      if (u.dim() > 0)
        p.blocks[{r, s}] = {begin, static_cast<int>(cols.size())};
      long expect = 0;
      if (((r + s + n) % 2 + 2) % 2 == 0)
        expect = binom(n, (r + s + n) / 2) * binom(n, (r - s + n) / 2);
      if (u.dim() != expect)
        p.dims_ok = false;
    }
  if (static_cast<int>(cols.size()) != size)
    throw Error(ErrorKind::NotCommuting, "joint eigenspaces do not span the spinors");
  p.V = Mat::from_columns(size, cols);
  p.Vinv = *inverse(p.V);

  for (int c = 0; c < size; ++c) {
    Vec v = unit_vec(size, c);
    for (int r = -n; r <= n && p.projectors_commute; ++r)
      for (int s = -n; s <= n; ++s)
        if (s1->project(r, s2->project(s, v)) != s2->project(s, s1->project(r, v))) {
          p.projectors_commute = false;
          break;
        }
  }
  return p;
}

DeltaComponents delta_components(const GKPair &p, const Form &a) {
  const GCStruct &s1 = *p.s1, &s2 = *p.s2;
  const LieModel &m = *s1.model;
  int n = p.n(), dim = s1.dim();
  auto bd = coord_bidegrees(p);
  Mat D = bigraded_dH(p);
  Vec w = gcm::apply(p.Vinv, a.to_vec());
  auto comp = [&](int x, int y) {
    return Form::from_vec(dim, gcm::apply(p.V, gcm::apply(shift_part(D, bd, x, y), w)));
  };
  DeltaComponents out;
  out.delta_plus = comp(-1, -1);
  out.delta_minus = comp(-1, 1);
  out.delta_bar_plus = comp(1, 1);
  out.delta_bar_minus = comp(1, -1);
  out.residual = m.d_H(a) - out.delta_plus - out.delta_minus - out.delta_bar_plus -
                 out.delta_bar_minus;
  Form db1(dim), db2(dim);
  for (int k = -n; k <= n; ++k) {
    db1 += del_delbar(s1, s1.project(k, a), k).delbar;
    db2 += del_delbar(s2, s2.project(k, a), k).delbar;
  }
  out.delbar1_ok = db1 == out.delta_bar_plus + out.delta_bar_minus;
  out.delbar2_ok = db2 == out.delta_bar_plus + out.delta_minus;
  return out;
}

DeltaSquares delta_squares(const GKPair &p) {
  auto bd = coord_bidegrees(p);
  Mat D = bigraded_dH(p);
  Mat pp = shift_part(D, bd, 1, 1), pm = shift_part(D, bd, 1, -1);
  Mat mp = shift_part(D, bd, -1, 1), mm = shift_part(D, bd, -1, -1);
  DeltaSquares out;
  out.residual_zero = (D - pp - pm - mp - mm).is_zero();
  auto add = [&](const char *name, const Mat &x) {
    bool z = x.is_zero();
    out.identities.emplace_back(name, z);
    out.ok = out.ok && z;
  };
  add("(2,2)", pp * pp);
  add("(-2,-2)", mm * mm);
  add("(2,-2)", pm * pm);
  add("(-2,2)", mp * mp);
  add("(2,0)", pp * pm + pm * pp);
  add("(0,2)", pp * mp + mp * pp);
  add("(-2,0)", mm * mp + mp * mm);
  add("(0,-2)", mm * pm + pm * mm);
  add("(0,0)", pp * mm + mm * pp + pm * mp + mp * pm);
  out.ok = out.ok && out.residual_zero;
  return out;
}

BigradedCohomology bigraded_cohomology(const GKPair &p) {
  const GCStruct &s1 = *p.s1, &s2 = *p.s2;
  int n = p.n(), size = p.size();
  BigradedCohomology out;
  auto bd = coord_bidegrees(p);
  Mat Dpp = shift_part(bigraded_dH(p), bd, 1, 1);
  LinOp d = [&Dpp](const Vec &v) { return gcm::apply(Dpp, v); };
  auto block_space = [&](int r, int s) {
    auto it = p.blocks.find({r, s});
    if (it == p.blocks.end())
      return Subspace(size);
    return Subspace::coordinate(size, it->second.first, it->second.second);
  };
  TwistedCohomology H = twisted_cohomology(s1.model);
  LinOp dH = dH_op(*s1.model);
  auto classes_in = [&](const Subspace &S, int par) {
    return H.classes_of(kernel_on(dH, S, size), par);
  };
  std::map<int, Subspace> H1, H2;
  std::map<int, int> par1, par2;
  for (int k = -n; k <= n; ++k) {
    par1[k] = ((s1.parity + k + n) % 2 + 2) % 2;
    par2[k] = ((s2.parity + k + n) % 2 + 2) % 2;
    H1[k] = classes_in(s1.U(k), par1[k]);
    H2[k] = classes_in(s2.U(k), par2[k]);
  }
  std::vector<int> db1 = delbar_dims(s1), db2 = delbar_dims(s2);
  std::map<int, int> sum_r, sum_s;
  std::map<int, Subspace> marg_r, marg_s;
  for (int r = -n; r <= n; ++r)
    for (int s = -n; s <= n; ++s) {
      QuotientFrame q = complex_cohomology(d, size, block_space(r, s), block_space(r - 1, s - 1));
      out.delta_dims[{r, s}] = q.dim();
      out.total += q.dim();
      sum_r[r] += q.dim();
      sum_s[s] += q.dim();
      int par = par1[r];
      Subspace cls = classes_in(p.U(r, s), par);
      out.classes[{r, s}] = cls;
      Subspace inter = par1[r] == par2[s] ? intersect(H1[r], H2[s]) : Subspace(cls.ambient());
      if (cls != inter)
        out.intersection_ok = false;
      if (!marg_r.count(r))
        marg_r[r] = Subspace(cls.ambient());
      marg_r[r] = sum(marg_r[r], cls);
      if (!marg_s.count(s))
        marg_s[s] = Subspace(H.part(par2[s]).dim());
      if (par1[r] == par2[s])
        marg_s[s] = sum(marg_s[s], cls);
    }
  for (int k = -n; k <= n; ++k) {
    if (marg_r[k] != H1[k] || marg_s[k] != H2[k])
      out.marginal_ok = false;
    if (sum_r[k] != db1[k + n] || sum_s[k] != db2[k + n])
      out.delbar_sums_ok = false;
  }
  out.twisted_total = H.total();
  out.total_ok = out.total == out.twisted_total;
  out.ddbar1 = ddbar_check(s1).holds;
  out.ddbar2 = ddbar_check(s2).holds;
  return out;
}

SplitReport algebroid_split_check(ModelPtr m, const std::vector<GenElem> &A1,
                                  const std::vector<GenElem> &A2) {
  std::vector<GenElem> all = A1;
  all.insert(all.end(), A2.begin(), A2.end());
  LieAlgebroid L;
  try {
    algebroid_from_basis(m, A1);
    algebroid_from_basis(m, A2);
    L = algebroid_from_basis(m, all);
  } catch (const Error &e) {
    throw Error(ErrorKind::NotADecomposition, e.what());
  }
  int r = L.rank();
  Blade low = (Blade(1) << A1.size()) - 1;
  CEData d1{r, {}}, d2{r, {}};
  SplitReport rep;
  for (int k = 0; k < r; ++k) {
    bool first = k < static_cast<int>(A1.size());
    Form g1(r), g2(r);
    for (const auto &[mask, c] : L.ce.dgen[k].terms()) {
      int a = blade_degree(mask & low), b = blade_degree(mask & ~low);
      // generator bidegree (1,0) or (0,1); d1 adds (1,0), d2 adds (0,1)
      int da = a - (first ? 1 : 0), db = b - (first ? 0 : 1);
      if (da == 1 && db == 0)
        g1.add_term(mask, c);
      else if (da == 0 && db == 1)
        g2.add_term(mask, c);
      else
        rep.no_cross_terms = false;
    }
    d1.dgen.push_back(g1);
    d2.dgen.push_back(g2);
  }
  Mat M1 = d1.matrix().dense(), M2 = d2.matrix().dense();
  rep.square1 = (M1 * M1).is_zero();
  rep.square2 = (M2 * M2).is_zero();
  rep.anticommute = (M1 * M2 + M2 * M1).is_zero();
  return rep;
}

GKDeformationReport gk_deformation_report(const FamilySpec &f1, const FamilySpec &f2) {
  GKPair p = gk_validate(f1.base(), f2.base());
  if (f1.m() == f2.m())
    for (const auto &t : f1.samples)
      gk_validate(f1.at(t), f2.at(t));
  GKDeformationReport rep;
  const LieAlgebroid &Lp = *p.plus, &Lm = *p.minus;
  int rp = Lp.rank(), rm = Lm.rank();
  QuotientFrame Hp = algebroid_cohomology(Lp, 2), Hm = algebroid_cohomology(Lm, 2);
  rep.plus_residual = Vec(Hp.dim());
  rep.minus_residual = Vec(Hm.dim());
  for (int j = 0; j < std::min(f1.m(), f2.m()); ++j) {
    ks_class(f1, j);
    ks_class(f2, j);
    Mat J1 = f1.J_dot(j), J2 = f2.J_dot(j);
    Mat E1(rp, rp), E2(rp, rp);
    for (int a = 0; a < rp; ++a)
      for (int b = 0; b < rp; ++b) {
        E1(a, b) = pair_jdot(Lp.basis[a], J1, Lp.basis[b]);
        E2(a, b) = pair_jdot(Lp.basis[a], J2, Lp.basis[b]);
      }
    Mat F1(rm, rm), F2(rm, rm);
    for (int a = 0; a < rm; ++a)
      for (int b = 0; b < rm; ++b) {
        F1(a, b) = pair_jdot(Lm.basis[a], J1, Lm.basis[b]);
        F2(a, b) = pair_jdot(Lm.basis[a].conj(), J2, Lm.basis[b].conj()).conj();
      }
    rep.plus_cochain = rep.plus_cochain && E1 == E2;
    rep.minus_cochain = rep.minus_cochain && F1 == F2;
    auto cls = [](const QuotientFrame &Hq, const Mat &E) {
      return *Hq.class_of(matrix_to_cochain(E).to_vec());
    };
    Vec dp = vec_sub(cls(Hp, E1), cls(Hp, E2));
    Vec dm = vec_sub(cls(Hm, F1), cls(Hm, F2));
    if (!is_zero(dp)) {
      rep.plus_class = false;
      rep.plus_residual = dp;
    }
    if (!is_zero(dm)) {
      rep.minus_class = false;
      rep.minus_residual = dm;
    }
  }
  return rep;
}

void gk_deformation_check(const FamilySpec &f1, const FamilySpec &f2) {
  GKDeformationReport rep = gk_deformation_report(f1, f2);
  if (rep.compatible())
    return;
  auto vs = [](const Vec &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? ", " : "") + v[i].str();
    return s + ")";
  };
  throw Error(ErrorKind::CompatibilityFailed,
              "residual in H^2(L1+) " + vs(rep.plus_residual) + ", in H^2(L1-) " +
                  vs(rep.minus_residual));
}

} // namespace gcm
