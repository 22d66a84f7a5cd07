#pragma once
#include "gcm/form.hpp"
#include "gcm/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace gcm {

// Degree-one generators of a Chevalley-Eilenberg differential: dgen[k] is
// d(eps^{k+1}), a 2-form on `rank` generators. d extends as an antiderivation.
struct CEData {
  int rank = 0;
  std::vector<Form> dgen;

  Form apply(const Form &a) const;
  SparseMat matrix() const;
};

class LieModel {
public:
  // structure[k] is d e^{k+1}; H is the twisting 3-form (possibly zero).
  LieModel(int dim, std::vector<Form> structure, Form H);

  int dim() const { return dim_; }
  int n() const { return dim_ / 2; }
  int spinor_dim() const { return 1 << dim_; }
  const std::vector<Form> &structure() const { return ce_.dgen; }
  const Form &H() const { return H_; }
  const CEData &ce() const { return ce_; }

  Form d(const Form &a) const { return ce_.apply(a); }
  Form d_H(const Form &a) const;
  const SparseMat &d_matrix() const { return d_; }
  const SparseMat &dH_matrix() const { return dH_; }

  // Vector part of [X, Y]: component k is -(d e^k)(X, Y).
  Vec bracket(const Vec &X, const Vec &Y) const;
  // Same model with a different twist.
  std::shared_ptr<const LieModel> with_twist(const Form &H) const;

private:
  int dim_;
  CEData ce_;
  Form H_;
  SparseMat d_, dH_;
};

using ModelPtr = std::shared_ptr<const LieModel>;

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> jacobi_failures;  // "d(d e4) = ..."
  std::vector<std::string> twist_failures;   // "dH = ..."
  std::vector<std::string> shape_failures;   // H not pure degree 3 etc.
};

ValidationReport validate_model(const LieModel &m);
// Throws JacobiFailure or TwistNotClosed naming the offending data.
void require_valid(const LieModel &m);

Form ce_differential(const LieModel &m, const Form &a);

} // namespace gcm
