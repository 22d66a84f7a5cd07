#pragma once
#include "gcm/gcs.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gcm {

// Z2-graded cohomology of d_H on invariant forms, in the standard blade frame.
// Both frames are real when H and the structure constants are, so complex
// conjugation acts on class coordinates entrywise.
struct TwistedCohomology {
  ModelPtr model;
  QuotientFrame even, odd;

  const QuotientFrame &part(int parity) const { return parity ? odd : even; }
  int total() const { return even.dim() + odd.dim(); }
  // Class coordinates (in the frame of the form's parity) of a closed form.
  std::optional<Vec> class_of(const Form &a) const;
  // Classes of the cycles inside s (all of one parity).
  Subspace classes_of(const Subspace &s, int parity) const;
};

Subspace parity_subspace(int dim, int parity);
LinOp dH_op(const LieModel &m);
TwistedCohomology twisted_cohomology(ModelPtr m);

// Untwisted invariant de Rham cohomology in degree k.
QuotientFrame de_rham(const LieModel &m, int k);
std::vector<int> de_rham_betti(const LieModel &m);

// del and delbar as matrices in the eigenframe of s.
Mat del_matrix(const GCStruct &s);
Mat delbar_matrix(const GCStruct &s);

// H^k_delbar for k = -n..n (index k+n), in eigenframe coordinates.
std::vector<QuotientFrame> delbar_cohomology(const GCStruct &s);
std::vector<int> delbar_dims(const GCStruct &s);

struct FrolicherReport {
  // pages[r-1][c+n] = dim E_r in filtration position c (U_c at E_0).
  std::vector<std::vector<int>> pages;
  int e1_total = 0, einf_total = 0, twisted_total = 0;
  int stable_page = 1;
  bool degenerates = false;
  bool converges = false;  // E_infinity total equals the twisted total
};
FrolicherReport frolicher_pages(const GCStruct &s);

struct DDbarReport {
  bool holds = true;
  bool del_side = true;     // Im del  n Ker delbar = Im del delbar
  bool delbar_side = true;  // Im delbar n Ker del = Im del delbar
  std::optional<Form> witness;
  std::string witness_note;
};
DDbarReport ddbar_check(const GCStruct &s);

struct HodgeFiltration {
  int n = 0, tau = 0;
  // F[p] for p = -n-2..n as subspaces of class coordinates of H^{parity(p)}.
  std::map<int, Subspace> F;
  bool nested = true, top_ok = true, hodge_ok = true;
  std::vector<int> failing_p;
  // Filled when the ddbar-lemma holds: dim F^p - dim F^{p-2} == dim H^p_delbar.
  std::optional<bool> graded_ok;

  int parity_of(int p) const { return ((tau + p + n) % 2 + 2) % 2; }
  int dim(int p) const;
};
HodgeFiltration hodge_filtration(const GCStruct &s, const TwistedCohomology &H,
                                 const std::optional<bool> &ddbar = std::nullopt);
// F^p at a single index, as classes in H^{parity}.
Subspace filtration_step(const GCStruct &s, const TwistedCohomology &H, int p);

struct MukaiReport {
  Mat Q_even, Q_odd;         // pairing matrices on class representatives
  bool descends = true;      // invariance under exact perturbations
  bool nondegenerate = true;
  bool graded = true;        // closed forms in U_j, U_k pair to 0 unless j+k=0
  bool form_level = true;    // U_j x U_k -> 0 unless j+k=0, perfect for j+k=0
  std::optional<int> sign;   // <d_H a, b> = sign <a, d_H b>; see mukai_differential_sign
  std::optional<Scalar> spinor_pairing;  // Q(rho, conj rho) when a spinor exists
};
MukaiReport mukai_Q(const GCStruct &s, const TwistedCohomology &H, std::uint64_t seed = 7);
// Measured sign relating <d_H a, b> and <a, d_H b> on all blade pairs: +1 or
// -1 when uniform, 0 when d_H pairs trivially (abelian, untwisted), nullopt
// when the blade pairs disagree.
std::optional<int> mukai_differential_sign(const LieModel &m);

struct LefschetzReport {
  std::vector<bool> iso;  // k = 0..n
  bool holds = true;
  std::optional<Form> kernel_witness;  // closed k-form with omega^{n-k} ^ a exact
  int witness_degree = -1;
};
LefschetzReport lefschetz_check(const GCStruct &s);

struct MHSReport {
  bool skipped = false;
  std::string reason;
  bool holds = true;
  std::vector<int> gr_dims;  // dim Gr^j for j = 0..2n
  // jumps[j][i+n]: dim F^{i,j} - dim F^{i-2,j}
  std::vector<std::vector<int>> jumps;
  std::vector<std::string> failures;
};
MHSReport weight_mhs_check(const GCStruct &s, const TwistedCohomology &H, bool ddbar_holds);

struct HodgeReport {
  int even = 0, odd = 0;
  std::vector<int> delbar;
  bool frolicher_degenerates = false;
  bool ddbar_holds = false;
  bool hodge_ok = false;
  std::map<int, int> filtration_dims;
  bool consistent = true;  // ddbar <=> (degeneration and Hodge condition)
};
HodgeReport hodge_report(const GCStruct &s, const TwistedCohomology &H);

} // namespace gcm
