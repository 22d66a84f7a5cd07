#pragma once
#include <gmpxx.h>
#include <string>

namespace gcm {

// Exact element re + im*i of Q(i). GMP keeps both parts canonical.
class Scalar {
public:
  mpq_class re, im;

  Scalar() = default;
  Scalar(long v) : re(v), im(0) {}
  Scalar(const mpq_class &r) : re(r), im(0) {}
  Scalar(const mpq_class &r, const mpq_class &i) : re(r), im(i) {}

  static Scalar I() { return Scalar(0, 1); }
  static Scalar frac(long p, long q, bool imaginary = false);

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  Scalar inverse() const;

  Scalar &operator+=(const Scalar &o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar &operator-=(const Scalar &o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar &operator*=(const Scalar &o);
  Scalar &operator/=(const Scalar &o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
  Scalar operator-() const { return Scalar(-re, -im); }

  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

  // "1/2", "-3/2i", "1-i", "2/3+1/4i"; parses back with parse_scalar.
  std::string str() const;
};

// Accepts the same grammar str() produces, plus "i", "-i" and "3/2*i".
// Returns false on malformed input.
bool parse_scalar(const std::string &text, Scalar &out);

} // namespace gcm
