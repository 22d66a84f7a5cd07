#pragma once
#include "gcm/cohomology.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcm {

using Exponents = std::vector<int>;

// Exact polynomial in parameters t_1..t_m with Gaussian-rational coefficients.
class ParamPoly {
public:
  ParamPoly() = default;
  explicit ParamPoly(int nvars) : nvars_(nvars) {}
  static ParamPoly constant(int nvars, const Scalar &c);
  static ParamPoly var(int nvars, int j);  // t_{j+1}

  int nvars() const { return nvars_; }
  const std::map<Exponents, Scalar> &terms() const { return terms_; }
  void add_term(const Exponents &e, const Scalar &c);
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;

  Scalar eval(const Vec &point) const;
  ParamPoly derivative(int j) const;

  ParamPoly &operator+=(const ParamPoly &o);
  ParamPoly &operator*=(const Scalar &c);
  friend ParamPoly operator+(ParamPoly a, const ParamPoly &b) { return a += b; }
  friend ParamPoly operator-(ParamPoly a, const ParamPoly &b) {
    return a += b * Scalar(-1);
  }
  friend ParamPoly operator*(ParamPoly a, const Scalar &c) { return a *= c; }
  friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b);
  friend bool operator==(const ParamPoly &a, const ParamPoly &b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  // "1 + 2 t1 - 1/2i t1^2 t2"
  std::string str(const std::vector<std::string> &names) const;

private:
  int nvars_ = 0;
  std::map<Exponents, Scalar> terms_;
};

// Form-valued polynomial: sum over exponent vectors of t^e * Form.
class PolyForm {
public:
  PolyForm() = default;
  PolyForm(int dim, int nvars) : dim_(dim), nvars_(nvars) {}
  static PolyForm constant(int nvars, const Form &f);

  int dim() const { return dim_; }
  int nvars() const { return nvars_; }
  const std::map<Exponents, Form> &terms() const { return terms_; }
  void add_term(const Exponents &e, const Form &f);
  // Adds c(t) * e^{mask}.
  void add_blade(Blade mask, const ParamPoly &c);
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  Form eval(const Vec &point) const;
  PolyForm derivative(int j) const;
  // Coefficient of a blade as a polynomial.
  ParamPoly coeff(Blade mask) const;
  template <class F> PolyForm map_forms(F f) const {
    PolyForm out(dim_, nvars_);
    for (const auto &[e, form] : terms_)
      out.add_term(e, f(form));
    return out;
  }

  PolyForm &operator+=(const PolyForm &o);
  friend PolyForm operator+(PolyForm a, const PolyForm &b) { return a += b; }
  friend PolyForm operator*(PolyForm a, const Scalar &c) {
    return a.map_forms([&](const Form &f) { return f * c; });
  }
  friend bool operator==(const PolyForm &a, const PolyForm &b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

private:
  int dim_ = 0, nvars_ = 0;
  std::map<Exponents, Form> terms_;
};

PolyForm wedge(const PolyForm &a, const PolyForm &b);
PolyForm exp_wedge(const PolyForm &a);
ParamPoly mukai_poly(const PolyForm &a, const PolyForm &b);

enum class FamilyKind { Symplectic, Complex, General };
const char *to_string(FamilyKind k);

// Trivialized product family over a parameter patch with fixed twist H.
struct FamilySpec {
  std::string name;
  ModelPtr model;
  FamilyKind kind = FamilyKind::Symplectic;
  std::vector<std::string> vars;
  PolyForm omega, B;                // symplectic families
  std::vector<ParamPoly> entries;   // complex: I (dim x dim), general: J (2dim x 2dim)
  Vec basepoint;
  std::vector<Vec> samples;

  int m() const { return static_cast<int>(vars.size()); }
  Mat J_at(const Vec &t) const;
  // Formal derivative of J along t_j at the basepoint.
  Mat J_dot(int j) const;
  GCSPtr at(const Vec &t) const;
  GCSPtr base() const { return at(basepoint); }
  std::string point_str(const Vec &t) const;
};

struct FamilyValidation {
  bool ok = true;
  std::vector<std::string> failures;  // "t=(...): Kind: message"
};
FamilyValidation family_validate(const FamilySpec &f);

// epsilon(t) as a matrix E with E(a,b) = <l_a, eps l_b> (a 2-cochain on L0).
struct GraphEpsilon {
  Mat E;
  Form cochain;
  bool skew = true;
  bool round_trip = true;  // rebuilding J from epsilon reproduces J(t)
};
GraphEpsilon graph_epsilon(const FamilySpec &f, const Vec &t);
GraphEpsilon graph_epsilon(const GCStruct &s0, const GCStruct &st);

Form matrix_to_cochain(const Mat &E);

struct KSReport {
  int direction = 0;
  Mat E;          // epsilon-dot as a cochain matrix
  Form cochain;   // epsilon-dot in Lambda^2 L0*
  bool closed = true;
  Vec cls;        // coordinates in H^2(L0)
  bool jj_identity = true;  // J_j = 2i eps - 2i conj(eps)
};
// epsilon-dot from a derivative J-dot of J at s0 (J0 Jdot + Jdot J0 = 0).
KSReport ks_from_jdot(const GCStruct &s0, const Mat &Jdot);
KSReport ks_class(const FamilySpec &f, int j);

// psi^* of an L-cochain when the anchor of L is invertible.
Form pullback_cochain(const GCStruct &s, const Form &cochain);

struct GMResult {
  int parity = 0;
  Vec cls;
  Form derivative;
};
GMResult gm_derivative(const FamilySpec &f, const PolyForm &section, int j);
// e^{-B(t) + i omega(t)} for symplectic families.
PolyForm canonical_section(const FamilySpec &f);

// d/dt of Pi_k(t) applied to v, given Ndot = spin(J-dot).
Vec projector_derivative(const GCStruct &s0, const SparseMat &Ndot, int k, const Vec &v);
// Clifford action of an L-cochain through conj(L) = L*.
Form cochain_action(const GCStruct &s, const Form &cochain, const Form &spinor);

struct TransversalityReport {
  int p = 0, direction = 0;
  bool skipped = false;
  std::string reason;
  bool extended = true;    // closed first-order extensions exist
  bool transversal = true; // nabla F^p in F^{p+2}
  bool components = true;  // Pi_j Pi_p' Pi_p = 0 unless j = p +- 2
  bool matches = true;     // graded map = constant * Clifford action of KS
  std::optional<Scalar> constant;
  Mat induced;             // H^p_delbar -> H^{p+2}_delbar
  std::string failure;
};
// `constant` carries the global constant across calls (measured on first use).
TransversalityReport transversality_check(const FamilySpec &f, int p, int j,
                                          std::optional<Scalar> &constant);

struct HolomorphyReport {
  bool holomorphic = true;
  Vec k1, k2, residual;  // classes in H^2(L0); residual = k2 - i k1
};
HolomorphyReport holomorphy_check(const FamilySpec &f);

struct SympFiltrationReport {
  bool skipped = false;
  std::string reason;
  bool ok = true;
  std::vector<std::pair<std::string, int>> dims;  // sample -> dim F^p
};
SympFiltrationReport symp_filtration_check(const FamilySpec &f, int p);

struct GCYReport {
  bool spinor_closed = true;
  std::vector<std::pair<int, int>> dims;  // (dim H^k(L), dim H^{k-n}_delbar)
  bool iso = true;        // a -> a.rho is an isomorphism in every degree
  bool injective_h2 = true;
  // From the family, when given: ranks of the Kodaira-Spencer map and of the
  // period differential (nabla rho modulo the canonical line).
  int ks_rank = 0, period_rank = 0;
  std::optional<bool> period_immersion;
  std::string failure;
};
GCYReport gcy_check(const GCStruct &s, const FamilySpec *f = nullptr);

struct QConstancyReport {
  bool flat_constant = true;  // Q(s0 + t d_H b, s0' + t d_H b') is constant
  bool leibniz = true;        // d/dt Q(s1, s2) = Q(nabla s1, s2) + Q(s1, nabla s2)
  Scalar derivative, predicted;
};
QConstancyReport q_constancy(const FamilySpec &f, const PolyForm &s1, const PolyForm &s2,
                             int j, std::uint64_t seed = 11);

} // namespace gcm
