#include "gcm/liemodel.hpp"
#include "gcm/error.hpp"

namespace gcm {

Form CEData::apply(const Form &a) const {
  Form out(rank);
  for (const auto &[mask, c] : a.terms()) {
    // d(e^{i1}..e^{ik}) = sum_j (-1)^j e^{i1}..d(e^{ij})..e^{ik}
    int j = 0;
    for (int g = 0; g < rank; ++g) {
      Blade bit = Blade(1) << g;
      if (!(mask & bit))
        continue;
      const Form &dg = dgen[g];
      if (!dg.is_zero()) {
        Blade before = mask & (bit - 1);
        Blade after = mask & ~((bit << 1) - 1);
        Form term = wedge(wedge(Form::blade(rank, before), dg), Form::blade(rank, after));
        out += term * ((j & 1) ? -c : c);
      }
      ++j;
    }
  }
  return out;
}

SparseMat CEData::matrix() const {
  int size = 1 << rank;
  std::vector<Vec> cols;
  cols.reserve(size);
  for (int b = 0; b < size; ++b)
    cols.push_back(apply(Form::blade(rank, Blade(b))).to_vec());
  return SparseMat::from_columns(size, cols);
}

LieModel::LieModel(int dim, std::vector<Form> structure, Form H) : dim_(dim), H_(std::move(H)) {
  if (dim <= 0 || dim % 2 != 0)
    throw Error(ErrorKind::DimensionOdd, "model dimension " + std::to_string(dim));
  if (static_cast<int>(structure.size()) != dim)
    throw Error(ErrorKind::DimensionMismatch, "structure list length");
  for (const auto &f : structure)
    if (f.dim() != dim)
      throw Error(ErrorKind::DimensionMismatch, "structure form dimension");
  if (H_.dim() == 0)
    H_ = Form(dim);
  if (H_.dim() != dim)
    throw Error(ErrorKind::DimensionMismatch, "twist dimension");
  ce_.rank = dim;
  ce_.dgen = std::move(structure);
  d_ = ce_.matrix();
  int size = 1 << dim;
  std::vector<Vec> cols;
  cols.reserve(size);
  for (int b = 0; b < size; ++b)
    cols.push_back(d_H(Form::blade(dim, Blade(b))).to_vec());
  dH_ = SparseMat::from_columns(size, cols);
}

Form LieModel::d_H(const Form &a) const { return ce_.apply(a) + wedge(H_, a); }

Vec LieModel::bracket(const Vec &X, const Vec &Y) const {
  Vec out(dim_);
  for (int k = 0; k < dim_; ++k) {
    const Form &dk = ce_.dgen[k];
    if (dk.is_zero())
      continue;
    Form v = contract(Y, contract(X, dk));
    out[k] = -v.coeff(0);
  }
  return out;
}

std::shared_ptr<const LieModel> LieModel::with_twist(const Form &H) const {
  return std::make_shared<LieModel>(dim_, ce_.dgen, H);
}

ValidationReport validate_model(const LieModel &m) {
  ValidationReport rep;
  for (int k = 0; k < m.dim(); ++k) {
    const Form &dk = m.structure()[k];
    if (!dk.is_zero() && (dk.min_degree() != 2 || dk.max_degree() != 2))
      rep.shape_failures.push_back("d e" + std::to_string(k + 1) + " is not a 2-form");
    Form dd = m.d(dk);
    if (!dd.is_zero())
      rep.jacobi_failures.push_back("d(d e" + std::to_string(k + 1) + ") = " + dd.str());
  }
  const Form &H = m.H();
  if (!H.is_zero() && (H.min_degree() != 3 || H.max_degree() != 3))
    rep.shape_failures.push_back("H is not a 3-form");
  Form dH = m.d(H);
  if (!dH.is_zero())
    rep.twist_failures.push_back("dH = " + dH.str());
  rep.ok = rep.jacobi_failures.empty() && rep.twist_failures.empty() &&
           rep.shape_failures.empty();
  return rep;
}

void require_valid(const LieModel &m) {
  ValidationReport rep = validate_model(m);
  if (!rep.jacobi_failures.empty())
    throw Error(ErrorKind::JacobiFailure, rep.jacobi_failures.front());
  if (!rep.twist_failures.empty())
    throw Error(ErrorKind::TwistNotClosed, rep.twist_failures.front());
  if (!rep.shape_failures.empty())
    throw Error(ErrorKind::TwistNotClosed, rep.shape_failures.front());
}

Form ce_differential(const LieModel &m, const Form &a) { return m.d(a); }

} // namespace gcm
