#pragma once
#include "gcm/families.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcm {

using Bidegree = std::pair<int, int>;

struct GKPair {
  GCSPtr s1, s2;
  Mat G;  // -J1 J2
  std::vector<GenElem> plus_basis, minus_basis;  // L1 n L2, L1 n conj(L2)
  std::optional<LieAlgebroid> plus, minus;

  // Simultaneous eigenframe: columns of V span U_{r,s}, blocks in (r,s) order.
  Mat V, Vinv;
  std::map<Bidegree, std::pair<int, int>> blocks;  // (r,s) -> [begin, end)
  bool projectors_commute = true;
  bool dims_ok = true;  // dim U_{r,s} = C(n,p) C(n,q)

  int n() const { return s1->n(); }
  int size() const { return s1->size(); }
  int dim_rs(int r, int s) const;
  Vec project(int r, int s, const Vec &v) const;
  Subspace U(int r, int s) const;
};

Scalar determinant(const Mat &a);
// Leading principal minors of a square matrix.
std::vector<Scalar> leading_minors(const Mat &a);

// Throws NotCommuting, MetricNotPositive, SplitNotIntegrable.
GKPair gk_validate(GCSPtr s1, GCSPtr s2);

struct DeltaComponents {
  Form delta_plus, delta_minus, delta_bar_plus, delta_bar_minus;  // (-1,-1) (-1,1) (1,1) (1,-1)
  Form residual;
  bool delbar1_ok = true;  // delbar_1 = delta_bar_plus + delta_bar_minus
  bool delbar2_ok = true;  // delbar_2 = delta_bar_plus + delta_minus
};
DeltaComponents delta_components(const GKPair &p, const Form &a);

struct DeltaSquares {
  // Each bidegree component of d_H^2 in terms of the four operators; all zero
  // for a valid pair. Keys: "(2,0)" etc.
  std::vector<std::pair<std::string, bool>> identities;
  bool residual_zero = true;  // d_H has no components outside the four
  bool ok = true;
};
DeltaSquares delta_squares(const GKPair &p);

struct BigradedCohomology {
  std::map<Bidegree, int> delta_dims;        // cohomology of delta_bar_plus
  std::map<Bidegree, Subspace> classes;      // classes of d_H-closed forms in U_{r,s}
  int total = 0, twisted_total = 0;
  bool total_ok = true;
  bool intersection_ok = true;  // H^{r,s} = H^r_1 n H^s_2
  bool marginal_ok = true;      // sums over s (resp. r) recover H^r_1 (resp. H^s_2)
  bool delbar_sums_ok = true;   // delta_dims marginals equal delbar dims of s1, s2
  bool ddbar1 = true, ddbar2 = true;
};
BigradedCohomology bigraded_cohomology(const GKPair &p);

struct SplitReport {
  bool no_cross_terms = true;  // d_L has only bidegrees (1,0) and (0,1)
  bool square1 = true, square2 = true;
  bool anticommute = true;
  bool ok() const { return no_cross_terms && square1 && square2 && anticommute; }
};
// L = A1 (+) A2 with A1, A2 given by bases; throws NotADecomposition.
SplitReport algebroid_split_check(ModelPtr m, const std::vector<GenElem> &A1,
                                  const std::vector<GenElem> &A2);

struct GKDeformationReport {
  bool plus_cochain = true, minus_cochain = true;
  bool plus_class = true, minus_class = true;
  Vec plus_residual, minus_residual;  // class residuals in H^2(L1+), H^2(L1-)
  bool compatible() const { return plus_class && minus_class; }
};
GKDeformationReport gk_deformation_report(const FamilySpec &f1, const FamilySpec &f2);
// Throws CompatibilityFailed with the residual classes.
void gk_deformation_check(const FamilySpec &f1, const FamilySpec &f2);

} // namespace gcm
