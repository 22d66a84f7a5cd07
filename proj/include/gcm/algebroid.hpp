#pragma once
#include "gcm/courant.hpp"

#include <string>
#include <vector>

namespace gcm {

// Invariant complex Lie algebroid L inside E_C. Cochains are Forms over
// rank() generators: bit a stands for the dual basis element eps^a.
struct LieAlgebroid {
  ModelPtr model;
  std::vector<GenElem> basis;
  // table[a][b] holds the coordinates of [l_a, l_b] in the basis.
  std::vector<std::vector<Vec>> table;
  Mat anchor;  // dim x rank, column a is rho(l_a)
  CEData ce;

  int rank() const { return static_cast<int>(basis.size()); }
  int cochain_dim() const { return 1 << rank(); }
  Form d(const Form &c) const { return ce.apply(c); }
  const Vec &bracket_coords(int a, int b) const { return table[a][b]; }
  // Expand coordinates into an element of E_C.
  GenElem element(const Vec &coords) const;
  // Coordinates of an element of L; nullopt if it lies outside L.
  std::optional<Vec> coords(const GenElem &g) const;
};

struct SubbundleCheck {
  bool independent = true;
  bool isotropic = true;
  bool closed = true;
  std::string witness;  // offending pair and residual
};

// Non-throwing inspection of a candidate basis (independence, isotropy,
// Dorfman closure).
SubbundleCheck check_subbundle(const LieModel &m, const std::vector<GenElem> &basis);

// Throws NotIsotropic or NotClosedUnderBracket naming the offending pair.
LieAlgebroid algebroid_from_basis(ModelPtr m, std::vector<GenElem> basis);

Form algebroid_differential(const LieAlgebroid &L, const Form &c);

// Cohomology of the cochain complex in degree k, inside the 2^rank space.
QuotientFrame algebroid_cohomology(const LieAlgebroid &L, int k);
std::vector<int> algebroid_betti(const LieAlgebroid &L);

// Coordinates of the degree-k blades inside the 2^rank cochain space.
Subspace degree_subspace(int rank, int k);

// Cohomology of an arbitrary linear differential restricted to `src`, with
// boundaries coming from `prev`.
QuotientFrame complex_cohomology(const LinOp &d, int ambient, const Subspace &src,
                                 const Subspace &prev);

// The tangent algebroid T_C (basis x_1..x_dim).
LieAlgebroid tangent_algebroid(ModelPtr m);

} // namespace gcm
