#pragma once
#include "gcm/liemodel.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace gcm {

// X + xi in E_C = g (+) g*, stored as 2*dim coordinates: vector part first.
struct GenElem {
  Vec vec, cov;

  GenElem() = default;
  explicit GenElem(int dim) : vec(dim), cov(dim) {}
  GenElem(Vec v, Vec c) : vec(std::move(v)), cov(std::move(c)) {}
  static GenElem x(int dim, int k, const Scalar &c = Scalar(1));
  static GenElem e(int dim, int k, const Scalar &c = Scalar(1));
  static GenElem from_vec(int dim, const Vec &v);

  int dim() const { return static_cast<int>(vec.size()); }
  Vec to_vec() const;
  Form covector_form() const;
  GenElem conj() const;
  bool is_zero() const { return gcm::is_zero(vec) && gcm::is_zero(cov); }

  friend GenElem operator+(const GenElem &a, const GenElem &b);
  friend GenElem operator-(const GenElem &a, const GenElem &b);
  friend GenElem operator*(const Scalar &c, const GenElem &a);
  friend bool operator==(const GenElem &a, const GenElem &b) {
    return a.vec == b.vec && a.cov == b.cov;
  }
  std::string str() const;
};

GenElem covector_from_form(const Form &one_form);

// <X+xi, Y+eta> = (xi(Y) + eta(X)) / 2
Scalar pairing(const GenElem &a, const GenElem &b);
// Matrix P with <a,b> = a^T P b in the (vec, cov) coordinates.
Mat pairing_matrix(int dim);

enum class BracketFault {
  None,
  DropTwist,          // omit i_X i_Y H
  DropLieDerivative,  // omit i_X d eta
  DropContraction,    // omit -i_Y d xi
};

// [X+xi, Y+eta]_H = [X,Y] + i_X d eta - i_Y d xi + i_X i_Y H on invariant
// sections. `twist` overrides the model's H when non-null.
GenElem dorfman(const LieModel &m, const GenElem &a, const GenElem &b,
                BracketFault fault = BracketFault::None, const Form *twist = nullptr);

// e^B (X + xi) = X + xi + i_X B
GenElem b_shift(const Form &B, const GenElem &a);
// e^B ^ omega
Form b_shift_form(const Form &B, const Form &omega);
// (X + xi) . omega = i_X omega + xi ^ omega
Form clifford_act(const GenElem &a, const Form &omega);

// Deterministic generator of small Gaussian-rational test data.
class SampleRng {
public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
  long integer(long lo, long hi);
  Scalar scalar(bool complex = true);
  GenElem gen_elem(int dim, bool complex = true);
  Form form(int dim, int degree = -1, bool complex = true);

private:
  std::mt19937_64 gen_;
};

struct AxiomReport {
  bool ok = true;
  int samples = 0;
  bool c1 = true, c2 = true, c4 = true, c5 = true;
  std::string first_failure;  // axiom name plus witnesses
  std::string notes;
};

AxiomReport courant_axiom_suite(const LieModel &m, int samples, std::uint64_t seed = 1,
                                BracketFault fault = BracketFault::None,
                                const Form *twist = nullptr);

} // namespace gcm
