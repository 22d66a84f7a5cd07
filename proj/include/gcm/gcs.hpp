#pragma once
#include "gcm/algebroid.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gcm {

enum class StructKind { General, Symplectic, Complex };
const char *to_string(StructKind k);

struct SymplecticData {
  Form omega, B;
  Mat Omega;  // X -> i_X omega
  Mat P;      // Omega^{-1}
  Mat Bx;     // X -> i_X B
};

// Matrix of the Clifford action of a on the 2^dim spinor space.
SparseMat clifford_matrix(const GenElem &a);
// Spinorial action of an element J of so(E): for J = [[A, Bm], [C, -A^T]],
// N = -sum A_ij e^j ^ i_{x_i} + 1/2 sum C_ab e^a ^ e^b + 1/2 sum Bm_ab i_a i_b
// + tr(A)/2. It satisfies [N, c(v)] = c(Jv).
SparseMat spin_operator(const Mat &J);
// Matrix of the pairing-preserving map X + xi -> X + xi + i_X B.
Mat b_field_matrix(const Form &B);
// Matrix of X -> i_X alpha for a 2-form alpha.
Mat contraction_matrix(const Form &two_form);

class GCStruct {
public:
  ModelPtr model;
  Mat J;
  StructKind kind = StructKind::General;
  std::optional<SymplecticData> symp;
  std::optional<Mat> I;

  bool integrable = false;
  std::string integrability_witness;
  std::vector<GenElem> lbasis;     // +i eigenspace of J
  std::vector<GenElem> lbar_dual;  // in conj(L), <lbar_dual[a], lbasis[b]> = delta_ab
  std::optional<LieAlgebroid> algebroid;
  int parity = 0;
  std::optional<Form> spinor;

  SparseMat N;
  Mat V, Vinv;              // eigenframe: columns of V are bases of U_{-n}, ..., U_n
  std::vector<int> offset;  // U_k occupies columns [offset[k+n], offset[k+n+1])
  Mat Dt;                   // d_H in the eigenframe

  int dim() const { return model->dim(); }
  int n() const { return model->n(); }
  int size() const { return model->spinor_dim(); }
  const LieAlgebroid &L() const;

  int grade_dim(int k) const;
  int grade_begin(int k) const { return offset[k + n()]; }
  int grade_end(int k) const { return offset[k + n() + 1]; }
  // U_k as a subspace of forms, and as a coordinate subspace of the eigenframe.
  Subspace U(int k) const;
  Subspace eigen_U(int k) const;
  Vec to_eigen(const Vec &v) const { return apply(Vinv, v); }
  Vec from_eigen(const Vec &w) const { return apply(V, w); }
  Vec project(int k, const Vec &v) const;
  Form project(int k, const Form &a) const;
  // Grade of a form lying in a single U_k, or nullopt.
  std::optional<int> grade_of(const Form &a) const;
};

using GCSPtr = std::shared_ptr<const GCStruct>;

// Generic constructor. Throws NotAlmostComplex, NotOrthogonal, NotIntegrable,
// SpectrumViolation. With allow_nonintegrable the structure is built anyway
// (for diagnostics) and `integrable` records the verdict.
GCSPtr make_general(ModelPtr m, const Mat &J, bool allow_nonintegrable = false);
// Throws DegenerateOmega, OmegaNotClosed, BMismatch.
GCSPtr make_symplectic(ModelPtr m, const Form &omega, const Form &B);
// Throws NotAlmostComplex, NotIntegrable, TwistWrongType.
GCSPtr make_complex(ModelPtr m, const Mat &I);

// J = [[P Bx, -P], [Omega + Bx P Bx, -Bx P]] with P = Omega^{-1}.
Mat symplectic_J(const Mat &Omega, const Mat &Bx);
Mat complex_J(const Mat &I);

struct GradingReport {
  bool ok = true;
  std::vector<int> dims;  // dim U_k for k = -n..n
  bool resolution = true, orthogonal = true, conj_swap = true, lowering = true,
       raising = true;
  std::string failure;
};
// Verifies the projector identities and the Clifford raising/lowering rules.
GradingReport grading_projectors(const GCStruct &s);

struct DelDelbar {
  Form del, delbar, residual;
};
DelDelbar del_delbar(const GCStruct &s, const Form &a, int k);
// Residual of d_H - del - delbar on every basis spinor; zero iff integrable.
bool delbar_residual_zero(const GCStruct &s, std::string *witness = nullptr);

// Pure spinor of the canonical line obtained as the joint kernel of the
// Clifford action of L; throws NoInvariantSpinor if that kernel is not a line.
Form extract_pure_spinor(const GCStruct &s);

// Symplectic type only (WrongType otherwise).
Form beta_contract(const GCStruct &s, const Form &a);
Form symp_phi(const GCStruct &s, const Form &a);
Form symp_delta(const GCStruct &s, const Form &a);

struct PsiReport {
  bool uniform = true;
  Scalar constant;  // c with psi^{-1}(xi) . phi(alpha) = c phi(xi ^ alpha)
  std::string failure;
};
PsiReport measure_psi_constant(const GCStruct &s);

// Element of L with anchor X (L must project isomorphically to T).
GenElem psi(const GCStruct &s, const Vec &X);

} // namespace gcm
