#include "gcm/cohomology.hpp"
#include "gcm/error.hpp"

namespace gcm {

std::optional<Vec> TwistedCohomology::class_of(const Form &a) const {
  if (a.is_zero())
    return Vec(even.dim());
  int par = a.parity();
  if (par < 0)
    return std::nullopt;
  return part(par).class_of(a.to_vec());
}

Subspace TwistedCohomology::classes_of(const Subspace &s, int parity) const {
  return part(parity).classes_of(s);
}

Subspace parity_subspace(int dim, int parity) {
  int size = 1 << dim;
  std::vector<Vec> vs;
  for (int b = 0; b < size; ++b)
    if (blade_degree(Blade(b)) % 2 == parity)
      vs.push_back(unit_vec(size, b));
  return Subspace::span(size, vs);
}

LinOp dH_op(const LieModel &m) {
  return [&m](const Vec &v) { return m.dH_matrix().apply(v); };
}

TwistedCohomology twisted_cohomology(ModelPtr m) {
  TwistedCohomology H;
  H.model = m;
  int dim = m->dim(), size = m->spinor_dim();
  LinOp d = dH_op(*m);
  H.even = complex_cohomology(d, size, parity_subspace(dim, 0), parity_subspace(dim, 1));
  H.odd = complex_cohomology(d, size, parity_subspace(dim, 1), parity_subspace(dim, 0));
  return H;
}

QuotientFrame de_rham(const LieModel &m, int k) {
  int dim = m.dim(), size = m.spinor_dim();
  LinOp d = [&m](const Vec &v) { return m.d_matrix().apply(v); };
  Subspace prev = k > 0 ? degree_subspace(dim, k - 1) : Subspace(size);
  return complex_cohomology(d, size, degree_subspace(dim, k), prev);
}

std::vector<int> de_rham_betti(const LieModel &m) {
  std::vector<int> out;
  for (int k = 0; k <= m.dim(); ++k)
    out.push_back(de_rham(m, k).dim());
  return out;
}

namespace {

Mat shifted_blocks(const GCStruct &s, int shift) {
  Mat out(s.size(), s.size());
  int n = s.n();
  for (int k = -n; k <= n; ++k) {
    int j = k + shift;
    if (j < -n || j > n)
      continue;
    for (int r = s.grade_begin(j); r < s.grade_end(j); ++r)
      for (int c = s.grade_begin(k); c < s.grade_end(k); ++c)
        out(r, c) = s.Dt(r, c);
  }
  return out;
}

LinOp mat_op(const Mat &M) {
  return [&M](const Vec &v) { return apply(M, v); };
}

// F(c) = sum of U_k with k <= c, k = c mod 2, in eigenframe coordinates.
Subspace filtered(const GCStruct &s, int c) {
  int n = s.n();
  std::vector<Vec> vs;
  for (int k = -n; k <= std::min(c, n); ++k) {
    if (((c - k) % 2 + 2) % 2 != 0)
      continue;
    for (int t = s.grade_begin(k); t < s.grade_end(k); ++t)
      vs.push_back(unit_vec(s.size(), t));
  }
  return Subspace::span(s.size(), vs);
}

Form eigen_to_form(const GCStruct &s, const Vec &w) {
  return Form::from_vec(s.dim(), s.from_eigen(w));
}

} // namespace

Mat del_matrix(const GCStruct &s) { return shifted_blocks(s, -1); }
Mat delbar_matrix(const GCStruct &s) { return shifted_blocks(s, +1); }

std::vector<QuotientFrame> delbar_cohomology(const GCStruct &s) {
  Mat db = delbar_matrix(s);
  LinOp op = mat_op(db);
  std::vector<QuotientFrame> out;
  for (int k = -s.n(); k <= s.n(); ++k)
    out.push_back(complex_cohomology(op, s.size(), s.eigen_U(k), s.eigen_U(k - 1)));
  return out;
}

std::vector<int> delbar_dims(const GCStruct &s) {
  std::vector<int> out;
  for (const auto &q : delbar_cohomology(s))
    out.push_back(q.dim());
  return out;
}

FrolicherReport frolicher_pages(const GCStruct &s) {
  FrolicherReport rep;
  int n = s.n(), size = s.size();
  LinOp D = mat_op(s.Dt);
  // Z_r(c) = {x in F(c) : Dx in F(c+1-2r)}; Z_r = F for r <= 0.
  auto Z = [&](int r, int c) {
    if (r <= 0)
      return filtered(s, c);
    return preimage_in(D, filtered(s, c), filtered(s, c + 1 - 2 * r));
  };
  int max_r = 2 * n + 3;
  for (int r = 1; r <= max_r; ++r) {
    std::vector<int> page;
    for (int c = -n; c <= n; ++c) {
      Subspace zr = Z(r, c);
      Subspace denom = sum(Z(r - 1, c - 2), Z(r - 1, c + 2 * r - 3).map(D, size));
      page.push_back(zr.dim() - intersect(zr, denom).dim());
    }
    rep.pages.push_back(page);
  }
  // first page equal to every later page
  rep.stable_page = max_r;
  for (int r = max_r; r >= 1; --r) {
    if (rep.pages[r - 1] != rep.pages.back())
      break;
    rep.stable_page = r;
  }
  for (int v : rep.pages.front())
    rep.e1_total += v;
  for (int v : rep.pages.back())
    rep.einf_total += v;
  rep.twisted_total = twisted_cohomology(s.model).total();
  rep.degenerates = rep.pages.front() == rep.pages.back();
  rep.converges = rep.einf_total == rep.twisted_total;
  return rep;
}

DDbarReport ddbar_check(const GCStruct &s) {
  DDbarReport rep;
  Mat del = del_matrix(s), db = delbar_matrix(s);
  Subspace im_del = image(del), im_db = image(db);
  Subspace ker_del = kernel(del), ker_db = kernel(db);
  Subspace im_ddb = image(del * db);
  Subspace a = intersect(im_del, ker_db);
  Subspace b = intersect(im_db, ker_del);
  rep.del_side = a == im_ddb;
  rep.delbar_side = b == im_ddb;
  rep.holds = rep.del_side && rep.delbar_side;
  if (!rep.holds) {
    const Subspace &bad = rep.del_side ? b : a;
    for (const auto &v : bad.basis())
      if (!im_ddb.contains(v)) {
        rep.witness = eigen_to_form(s, v);
        rep.witness_note = rep.del_side ? "in Im delbar and Ker del but not in Im del delbar"
                                        : "in Im del and Ker delbar but not in Im del delbar";
        break;
      }
  }
  return rep;
}

int HodgeFiltration::dim(int p) const {
  auto it = F.find(p);
  return it == F.end() ? 0 : it->second.dim();
}

Subspace filtration_step(const GCStruct &s, const TwistedCohomology &H, int p) {
  int n = s.n(), size = s.size();
  int par = ((s.parity + p + n) % 2 + 2) % 2;
  std::vector<Vec> vs;
  for (int k = -n; k <= std::min(p, n); ++k) {
    if (((p - k) % 2 + 2) % 2 != 0)
      continue;
    for (int c = s.grade_begin(k); c < s.grade_end(k); ++c)
      vs.push_back(s.V.column(c));
  }
  Subspace S = Subspace::span(size, vs);
  Subspace Zp = kernel_on(dH_op(*s.model), S, size);
  return H.classes_of(Zp, par);
}

HodgeFiltration hodge_filtration(const GCStruct &s, const TwistedCohomology &H,
                                 const std::optional<bool> &ddbar) {
  HodgeFiltration hf;
  int n = s.n();
  hf.n = n;
  hf.tau = s.parity;
  for (int p = -n - 2; p <= n; ++p)
    hf.F[p] = filtration_step(s, H, p);
  for (int p = -n; p <= n; ++p)
    if (!hf.F[p].contains(hf.F[p - 2]))
      hf.nested = false;
  hf.top_ok = hf.F[n].dim() == H.part(hf.parity_of(n)).dim() &&
              hf.F[n - 1].dim() == H.part(hf.parity_of(n - 1)).dim();
  for (int p = -n - 2; p <= n; ++p) {
    int q = -p - 2;
    Subspace other = hf.F.count(q) ? hf.F[q].conj() : Subspace(hf.F[p].ambient());
    Subspace whole = Subspace::full(H.part(hf.parity_of(p)).dim());
    if (!direct_sum_equals(hf.F[p], other, whole)) {
      hf.hodge_ok = false;
      hf.failing_p.push_back(p);
    }
  }
  if (ddbar && *ddbar) {
    std::vector<int> db = delbar_dims(s);
    bool ok = true;
    for (int p = -n; p <= n; ++p)
      if (hf.F[p].dim() - hf.F[p - 2].dim() != db[p + n])
        ok = false;
    hf.graded_ok = ok;
  }
  return hf;
}

namespace {

Mat mukai_matrix(int dim) {
  int size = 1 << dim;
  Mat M(size, size);
  Blade top = Blade(size - 1);
  for (int a = 0; a < size; ++a) {
    Blade b = top & ~Blade(a);
    M(a, b) = mukai_pairing(Form::blade(dim, Blade(a)), Form::blade(dim, b));
  }
  return M;
}

Scalar bilinear(const Mat &M, const Vec &a, const Vec &b) {
  Vec Mb = apply(M, b);
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !Mb[i].is_zero())
      s += a[i] * Mb[i];
  return s;
}

} // namespace

std::optional<int> mukai_differential_sign(const LieModel &m) {
  int dim = m.dim(), size = m.spinor_dim();
  int sign = 0;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      Form fa = Form::blade(dim, Blade(a)), fb = Form::blade(dim, Blade(b));
      Scalar x = mukai_pairing(m.d_H(fa), fb), y = mukai_pairing(fa, m.d_H(fb));
      if (x.is_zero() && y.is_zero())
        continue;
      int s;
      if (x == y)
        s = 1;
      else if (x == -y)
        s = -1;
      else
        return std::nullopt;
      if (sign != 0 && s != sign)
        return std::nullopt;
      sign = s;
    }
  return sign;
}

MukaiReport mukai_Q(const GCStruct &s, const TwistedCohomology &H, std::uint64_t seed) {
  MukaiReport rep;
  int dim = s.dim(), size = s.size(), n = s.n();
  Mat M = mukai_matrix(dim);
  auto qmat = [&](const QuotientFrame &q) {
    int k = q.dim();
    Mat Q(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        Q(i, j) = bilinear(M, q.reps()[i], q.reps()[j]);
    return Q;
  };
  rep.Q_even = qmat(H.even);
  rep.Q_odd = qmat(H.odd);
  rep.nondegenerate = (rep.Q_even.rows() == 0 || inverse(rep.Q_even).has_value()) &&
                      (rep.Q_odd.rows() == 0 || inverse(rep.Q_odd).has_value());

  SampleRng rng(seed);
  for (int trial = 0; trial < 4; ++trial) {
    Vec db = s.model->d_H(rng.form(dim)).to_vec();
    for (const QuotientFrame *q : {&H.even, &H.odd})
      for (const auto &c : q->reps())
        if (!bilinear(M, db, c).is_zero() || !bilinear(M, c, db).is_zero())
          rep.descends = false;
  }

  std::vector<Subspace> closed;
  for (int k = -n; k <= n; ++k)
    closed.push_back(kernel_on(dH_op(*s.model), s.U(k), size));
  for (int j = -n; j <= n; ++j)
    for (int k = -n; k <= n; ++k) {
      if (j + k == 0)
        continue;
      for (const auto &a : closed[j + n].basis())
        for (const auto &b : closed[k + n].basis())
          if (!bilinear(M, a, b).is_zero())
            rep.graded = false;
    }

  Mat Mt = s.V.transpose() * M * s.V;
  for (int j = -n; j <= n; ++j)
    for (int k = -n; k <= n; ++k) {
      int rows = s.grade_dim(j), cols = s.grade_dim(k);
      Mat blk(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
          blk(r, c) = Mt(s.grade_begin(j) + r, s.grade_begin(k) + c);
      if (j + k != 0 && !blk.is_zero())
        rep.form_level = false;
      if (j + k == 0 && rank(blk) != rows)
        rep.form_level = false;
    }
  rep.sign = mukai_differential_sign(*s.model);
  if (s.spinor)
    rep.spinor_pairing = mukai_pairing(*s.spinor, s.spinor->conj());
  return rep;
}

LefschetzReport lefschetz_check(const GCStruct &s) {
  if (s.kind != StructKind::Symplectic || !s.symp)
    throw Error(ErrorKind::WrongType, "Lefschetz check needs a symplectic structure");
  const LieModel &m = *s.model;
  int n = s.n();
  LefschetzReport rep;
  for (int k = 0; k <= n; ++k) {
    QuotientFrame src = de_rham(m, k), dst = de_rham(m, 2 * n - k);
    Form wk = Form::scalar(m.dim(), Scalar(1));
    for (int t = 0; t < n - k; ++t)
      wk = wedge(wk, s.symp->omega);
    std::vector<Vec> cols;
    for (const auto &r : src.reps())
      cols.push_back(*dst.class_of(wedge(wk, Form::from_vec(m.dim(), r)).to_vec()));
    bool iso = src.dim() == dst.dim();
    if (iso && src.dim() > 0) {
      Mat L = Mat::from_columns(dst.dim(), cols);
      Subspace ker = kernel(L);
      iso = ker.dim() == 0;
      if (!iso && !rep.kernel_witness) {
        Vec w(m.spinor_dim());
        const Vec &c = ker.basis()[0];
        for (int i = 0; i < src.dim(); ++i)
          if (!c[i].is_zero())
            w = vec_add(w, vec_scale(src.reps()[i], c[i]));
        rep.kernel_witness = Form::from_vec(m.dim(), w);
        rep.witness_degree = k;
      }
    }
    rep.iso.push_back(iso);
    rep.holds = rep.holds && iso;
  }
  return rep;
}

MHSReport weight_mhs_check(const GCStruct &s, const TwistedCohomology &H, bool ddbar_holds) {
  if (s.kind != StructKind::Complex)
    throw Error(ErrorKind::WrongType, "mixed Hodge structure check needs complex type");
  MHSReport rep;
  if (!ddbar_holds) {
    rep.skipped = true;
    rep.reason = "ddbar-lemma fails";
    return rep;
  }
  int dim = s.dim(), n = s.n(), size = s.size();
  LinOp d = dH_op(*s.model);
  // W[par][j] for j = 0..dim+1
  std::vector<std::vector<Subspace>> W(2);
  for (int par = 0; par < 2; ++par)
    for (int j = 0; j <= dim + 1; ++j) {
      std::vector<Vec> vs;
      for (int b = 0; b < size; ++b) {
        int deg = blade_degree(Blade(b));
        if (deg >= j && deg % 2 == par)
          vs.push_back(unit_vec(size, b));
      }
      Subspace S = Subspace::span(size, vs);
      W[par].push_back(H.classes_of(kernel_on(d, S, size), par));
    }
  HodgeFiltration hf = hodge_filtration(s, H);
  rep.jumps.assign(dim + 1, std::vector<int>(2 * n + 1, 0));
  for (int j = 0; j <= dim; ++j) {
    int gr = 0;
    for (int par = 0; par < 2; ++par)
      gr += W[par][j].dim() - W[par][j + 1].dim();
    rep.gr_dims.push_back(gr);
    for (int i = -n - 2; i <= n; ++i) {
      int par = hf.parity_of(i);
      const Subspace &Wj = W[par][j], &Wj1 = W[par][j + 1];
      auto induced = [&](int p) {
        Subspace f = hf.F.count(p) ? hf.F.at(p) : Subspace(Wj.ambient());
        return sum(intersect(f, Wj), Wj1);
      };
      Subspace A = induced(i);
      Subspace B = induced(-i - 2).conj();
      int grd = Wj.dim() - Wj1.dim();
      int a = A.dim() - Wj1.dim(), b = B.dim() - Wj1.dim();
      bool ok = a + b == grd && sum(A, B).dim() == Wj.dim();
      if (!ok) {
        rep.holds = false;
        rep.failures.push_back("F^{" + std::to_string(i) + "," + std::to_string(j) +
                               "} + conj F^{" + std::to_string(-i - 2) + "," +
                               std::to_string(j) + "} != Gr^" + std::to_string(j));
      }
      if (i >= -n) {
        Subspace prev = induced(i - 2);
        rep.jumps[j][i + n] = A.dim() - prev.dim();
      }
    }
  }
  return rep;
}

HodgeReport hodge_report(const GCStruct &s, const TwistedCohomology &H) {
  HodgeReport rep;
  rep.even = H.even.dim();
  rep.odd = H.odd.dim();
  rep.delbar = delbar_dims(s);
  rep.frolicher_degenerates = frolicher_pages(s).degenerates;
  rep.ddbar_holds = ddbar_check(s).holds;
  HodgeFiltration hf = hodge_filtration(s, H, rep.ddbar_holds);
  rep.hodge_ok = hf.hodge_ok && hf.nested && hf.top_ok;
  for (const auto &[p, sub] : hf.F)
    rep.filtration_dims[p] = sub.dim();
  rep.consistent = rep.ddbar_holds == (rep.frolicher_degenerates && rep.hodge_ok);
  return rep;
}

} // namespace gcm
