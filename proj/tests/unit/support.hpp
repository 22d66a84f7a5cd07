#pragma once
#include "gcm/error.hpp"
#include "gcm/gkaehler.hpp"
#include "gcm/model_file.hpp"

#include <string>

namespace gcm::test {

inline ModelPtr model(int dim, std::vector<Form> st, const Form &H) {
  return std::make_shared<const LieModel>(dim, std::move(st), H);
}

inline ModelPtr abelian(int dim, const Form &H = Form()) {
  return model(dim, std::vector<Form>(dim, Form(dim)), H.dim() ? H : Form(dim));
}

// d e4 = e12, optionally times a flat factor.
inline ModelPtr kodaira_thurston(int dim = 4, const Form &H = Form()) {
  std::vector<Form> st(dim, Form(dim));
  st[3] = Form::gens(dim, {1, 2});
  return model(dim, st, H.dim() ? H : Form(dim));
}

// Iwasawa: d e5 = e13 - e24, d e6 = e14 + e23.
inline ModelPtr iwasawa() {
  std::vector<Form> st(6, Form(6));
  st[4] = Form::gens(6, {1, 3}) - Form::gens(6, {2, 4});
  st[5] = Form::gens(6, {1, 4}) + Form::gens(6, {2, 3});
  return model(6, st, Form(6));
}

// x_{2k-1} -> x_{2k}, x_{2k} -> -x_{2k-1}.
inline Mat standard_I(int dim, int orientation = 1) {
  Mat I(dim, dim);
  for (int k = 0; k < dim; k += 2) {
    I(k + 1, k) = Scalar(orientation);
    I(k, k + 1) = Scalar(-orientation);
  }
  return I;
}

inline Form standard_omega(int dim) {
  Form w(dim);
  for (int k = 1; k < dim; k += 2)
    w += Form::gens(dim, {k, k + 1});
  return w;
}

inline std::string corpus_path(const std::string &name) {
  return std::string(GCM_CORPUS_DIR) + "/" + name;
}

} // namespace gcm::test
