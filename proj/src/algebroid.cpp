#include "gcm/algebroid.hpp"
#include "gcm/error.hpp"

namespace gcm {

GenElem LieAlgebroid::element(const Vec &c) const {
  GenElem g(model->dim());
  for (int a = 0; a < rank(); ++a)
    if (!c[a].is_zero())
      g = g + c[a] * basis[a];
  return g;
}

std::optional<Vec> LieAlgebroid::coords(const GenElem &g) const {
  std::vector<Vec> fam;
  for (const auto &b : basis)
    fam.push_back(b.to_vec());
  return Coordinatizer(fam).coords(g.to_vec());
}

namespace {

std::string pair_name(int a, int b) {
  return "(l" + std::to_string(a + 1) + ", l" + std::to_string(b + 1) + ")";
}

} // namespace

SubbundleCheck check_subbundle(const LieModel &m, const std::vector<GenElem> &basis) {
  SubbundleCheck out;
  int r = static_cast<int>(basis.size());
  std::vector<Vec> fam;
  for (const auto &b : basis) {
    if (b.dim() != m.dim())
      throw Error(ErrorKind::DimensionMismatch, "basis element dimension");
    fam.push_back(b.to_vec());
  }
  Subspace span = Subspace::span(2 * m.dim(), fam);
  if (span.dim() != r) {
    out.independent = false;
    out.witness = "basis is linearly dependent";
    return out;
  }
  for (int a = 0; a < r; ++a)
    for (int b = a; b < r; ++b) {
      Scalar p = pairing(basis[a], basis[b]);
      if (!p.is_zero()) {
        out.isotropic = false;
        out.witness = "<l" + std::to_string(a + 1) + ", l" + std::to_string(b + 1) +
                      "> = " + p.str();
        return out;
      }
    }
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      GenElem br = dorfman(m, basis[a], basis[b]);
      Vec res = span.reduce(br.to_vec());
      if (!is_zero(res)) {
        out.closed = false;
        out.witness = "[" + pair_name(a, b) + "] = " + br.str() + ", residual " +
                      GenElem::from_vec(m.dim(), res).str();
        return out;
      }
    }
  return out;
}

LieAlgebroid algebroid_from_basis(ModelPtr m, std::vector<GenElem> basis) {
  SubbundleCheck chk = check_subbundle(*m, basis);
  if (!chk.independent)
    throw Error(ErrorKind::DimensionMismatch, chk.witness);
  if (!chk.isotropic)
    throw Error(ErrorKind::NotIsotropic, chk.witness);
  if (!chk.closed)
    throw Error(ErrorKind::NotClosedUnderBracket, chk.witness);

  LieAlgebroid L;
  L.model = m;
  L.basis = std::move(basis);
  int r = L.rank();
  std::vector<Vec> fam;
  for (const auto &b : L.basis)
    fam.push_back(b.to_vec());
  Coordinatizer coord(fam);
  L.table.assign(r, std::vector<Vec>(r));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      L.table[a][b] = *coord.coords(dorfman(*m, L.basis[a], L.basis[b]).to_vec());

  std::vector<Vec> cols;
  for (const auto &b : L.basis)
    cols.push_back(b.vec);
  L.anchor = Mat::from_columns(m->dim(), cols);

  // (d eps^k)(l_a, l_b) = -eps^k([l_a, l_b]) on invariant cochains.
  L.ce.rank = r;
  L.ce.dgen.assign(r, Form(r));
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      for (int k = 0; k < r; ++k) {
        const Scalar &c = L.table[a][b][k];
        if (!c.is_zero())
          L.ce.dgen[k].add_term((Blade(1) << a) | (Blade(1) << b), -c);
      }
  return L;
}

Form algebroid_differential(const LieAlgebroid &L, const Form &c) {
  if (c.dim() != L.rank())
    throw Error(ErrorKind::DimensionMismatch, "cochain rank");
  return L.d(c);
}

Subspace degree_subspace(int rank, int k) {
  int size = 1 << rank;
  std::vector<Vec> vs;
  for (int b = 0; b < size; ++b)
    if (blade_degree(Blade(b)) == k)
      vs.push_back(unit_vec(size, b));
  return Subspace::span(size, vs);
}

QuotientFrame complex_cohomology(const LinOp &d, int ambient, const Subspace &src,
                                 const Subspace &prev) {
  Subspace cycles = kernel_on(d, src, ambient);
  Subspace bounds = prev.map(d, ambient);
  return QuotientFrame(cycles, bounds);
}

QuotientFrame algebroid_cohomology(const LieAlgebroid &L, int k) {
  int r = L.rank();
  int size = 1 << r;
  LinOp d = [&L, r](const Vec &v) { return L.d(Form::from_vec(r, v)).to_vec(); };
  Subspace prev = k > 0 ? degree_subspace(r, k - 1) : Subspace(size);
  return complex_cohomology(d, size, degree_subspace(r, k), prev);
}

std::vector<int> algebroid_betti(const LieAlgebroid &L) {
  std::vector<int> out;
  for (int k = 0; k <= L.rank(); ++k)
    out.push_back(algebroid_cohomology(L, k).dim());
  return out;
}

LieAlgebroid tangent_algebroid(ModelPtr m) {
  std::vector<GenElem> basis;
  for (int k = 1; k <= m->dim(); ++k)
    basis.push_back(GenElem::x(m->dim(), k));
  return algebroid_from_basis(m, basis);
}

} // namespace gcm
