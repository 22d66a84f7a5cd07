#include "gcm/scalar.hpp"
#include "gcm/error.hpp"

#include <cctype>
#include <stdexcept>

namespace gcm {

const char *to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::DimensionMismatch: return "DimensionMismatch";
  case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  case ErrorKind::AmbientMismatch: return "AmbientMismatch";
  case ErrorKind::JacobiFailure: return "JacobiFailure";
  case ErrorKind::TwistNotClosed: return "TwistNotClosed";
  case ErrorKind::NotIsotropic: return "NotIsotropic";
  case ErrorKind::NotClosedUnderBracket: return "NotClosedUnderBracket";
  case ErrorKind::NotAlmostComplex: return "NotAlmostComplex";
  case ErrorKind::NotOrthogonal: return "NotOrthogonal";
  case ErrorKind::NotIntegrable: return "NotIntegrable";
  case ErrorKind::NoInvariantSpinor: return "NoInvariantSpinor";
  case ErrorKind::DegenerateOmega: return "DegenerateOmega";
  case ErrorKind::OmegaNotClosed: return "OmegaNotClosed";
  case ErrorKind::BMismatch: return "BMismatch";
  case ErrorKind::TwistWrongType: return "TwistWrongType";
  case ErrorKind::SpectrumViolation: return "SpectrumViolation";
  case ErrorKind::WrongType: return "WrongType";
  case ErrorKind::GraphConditionFailed: return "GraphConditionFailed";
  case ErrorKind::NotClosed: return "NotClosed";
  case ErrorKind::SectionNotClosed: return "SectionNotClosed";
  case ErrorKind::ExtensionFailed: return "ExtensionFailed";
  case ErrorKind::SpinorNotClosed: return "SpinorNotClosed";
  case ErrorKind::NotCommuting: return "NotCommuting";
  case ErrorKind::MetricNotPositive: return "MetricNotPositive";
  case ErrorKind::SplitNotIntegrable: return "SplitNotIntegrable";
  case ErrorKind::NotADecomposition: return "NotADecomposition";
  case ErrorKind::CompatibilityFailed: return "CompatibilityFailed";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::UnknownGenerator: return "UnknownGenerator";
  case ErrorKind::DimensionOdd: return "DimensionOdd";
  }
  return "Unknown";
}

Scalar Scalar::frac(long p, long q, bool imaginary) {
  mpq_class v(p, q);
  v.canonicalize();
  return imaginary ? Scalar(0, v) : Scalar(v, 0);
}

Scalar Scalar::inverse() const {
  mpq_class n = re * re + im * im;
  if (sgn(n) == 0)
    throw std::domain_error("division by zero in Q(i)");
  return Scalar(re / n, -im / n);
}

Scalar &Scalar::operator*=(const Scalar &o) {
  if (sgn(im) == 0 && sgn(o.im) == 0) {
    re *= o.re;
    return *this;
  }
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string Scalar::str() const {
  if (sgn(im) == 0)
    return re.get_str();
  std::string imag;
  if (im == 1)
    imag = "i";
  else if (im == -1)
    imag = "-i";
  else
    imag = im.get_str() + "i";
  if (sgn(re) == 0)
    return imag;
  if (imag[0] != '-')
    imag = "+" + imag;
  return re.get_str() + imag;
}

namespace {

// One signed real or imaginary rational term starting at pos.
bool parse_term(const std::string &s, size_t &pos, Scalar &acc) {
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = s[pos] == '-';
    ++pos;
  }
  size_t start = pos;
  while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
    ++pos;
  std::string num = s.substr(start, pos - start);
  bool imag = false;
  if (pos < s.size() && s[pos] == '*' && pos + 1 < s.size() && s[pos + 1] == 'i')
    ++pos;
  if (pos < s.size() && s[pos] == 'i') {
    imag = true;
    ++pos;
  }
  mpq_class v;
  if (num.empty()) {
    if (!imag)
      return false;
    v = 1;
  } else {
    if (num.front() == '/' || num.back() == '/' ||
        num.find('/') != num.rfind('/'))
      return false;
    try {
      v.set_str(num, 10);
    } catch (const std::exception &) {
      return false;
    }
    if (sgn(v.get_den()) == 0)
      return false;
    v.canonicalize();
  }
  if (neg)
    v = -v;
  if (imag)
    acc.im += v;
  else
    acc.re += v;
  return true;
}

} // namespace

bool parse_scalar(const std::string &text, Scalar &out) {
  if (text.empty())
    return false;
  Scalar acc;
  size_t pos = 0;
  if (!parse_term(text, pos, acc))
    return false;
  if (pos < text.size()) {
    if (text[pos] != '+' && text[pos] != '-')
      return false;
    if (!parse_term(text, pos, acc))
      return false;
  }
  if (pos != text.size())
    return false;
  out = acc;
  return true;
}

} // namespace gcm
