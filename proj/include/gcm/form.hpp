#pragma once
#include "gcm/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gcm {

using Blade = std::uint32_t;
using Vec = std::vector<Scalar>;

// Sign of e^a ^ e^b for disjoint ascending blades: parity of the number of
// pairs (i in a, j in b) with i > j.
inline int blade_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade t = a >> 1; t != 0; t >>= 1)
    swaps += __builtin_popcount(t & b);
  return (swaps & 1) ? -1 : 1;
}

inline int blade_degree(Blade b) { return __builtin_popcount(b); }

// Exact mixed-degree exterior form over generators e^1..e^dim.
// Blade bit k-1 stands for e^k. Zero coefficients are never stored.
class Form {
public:
  Form() = default;
  explicit Form(int dim) : dim_(dim) {}
  static Form scalar(int dim, const Scalar &c);
  static Form blade(int dim, Blade mask, const Scalar &c = Scalar(1));
  // e^{i1} ^ ... ^ e^{ik} with 1-based indices in any order.
  static Form gens(int dim, const std::vector<int> &idx, const Scalar &c = Scalar(1));
  static Form from_vec(int dim, const Vec &v);

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<Blade, Scalar> &terms() const { return coeffs_; }
  Scalar coeff(Blade b) const;
  void add_term(Blade b, const Scalar &c);

  Vec to_vec() const;
  Form degree_part(int k) const;
  // Lowest degree present, -1 if zero.
  int min_degree() const;
  int max_degree() const;
  // Parity 0/1 if every term has the same degree parity, otherwise -1.
  int parity() const;

  Form &operator+=(const Form &o);
  Form &operator-=(const Form &o);
  Form &operator*=(const Scalar &c);
  friend Form operator+(Form a, const Form &b) { return a += b; }
  friend Form operator-(Form a, const Form &b) { return a -= b; }
  friend Form operator*(Form a, const Scalar &c) { return a *= c; }
  friend Form operator*(const Scalar &c, Form a) { return a *= c; }
  Form operator-() const { return *this * Scalar(-1); }
  friend bool operator==(const Form &a, const Form &b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Form &a, const Form &b) { return !(a == b); }

  Form conj() const;

  // Blade notation, terms ordered by (degree, mask): "1/2 e1^e2 - i e3^e4".
  std::string str() const;

private:
  int dim_ = 0;
  std::map<Blade, Scalar> coeffs_;
};

Form wedge(const Form &a, const Form &b);
// Interior product with the basis vector x_k (1-based).
Form contract(int k, const Form &a);
// Interior product with X = sum X[k] x_{k+1}.
Form contract(const Vec &X, const Form &a);
Form sigma_involution(const Form &a);
// Top coefficient of a ^ sigma(b); the volume e^{1..dim} integrates to 1.
Scalar mukai_pairing(const Form &a, const Form &b);
// exp(a) = 1 + a + a^2/2 + ..., for even nilpotent a.
Form exp_wedge(const Form &a);

// Parses blade notation such as "e1^e2" into a mask. Returns false on error.
bool parse_blade(const std::string &tok, int dim, Blade &mask, int &sign);

} // namespace gcm
