#include "gcm/form.hpp"
#include "gcm/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gcm {

Form Form::scalar(int dim, const Scalar &c) { return blade(dim, 0, c); }

Form Form::blade(int dim, Blade mask, const Scalar &c) {
  Form f(dim);
  f.add_term(mask, c);
  return f;
}

Form Form::gens(int dim, const std::vector<int> &idx, const Scalar &c) {
  Form f = scalar(dim, c);
  for (int k : idx) {
    if (k < 1 || k > dim)
      throw Error(ErrorKind::IndexOutOfRange, "generator e" + std::to_string(k));
    f = wedge(f, blade(dim, Blade(1) << (k - 1)));
  }
  return f;
}

Form Form::from_vec(int dim, const Vec &v) {
  Form f(dim);
  for (std::size_t b = 0; b < v.size(); ++b)
    if (!v[b].is_zero())
      f.coeffs_.emplace_hint(f.coeffs_.end(), Blade(b), v[b]);
  return f;
}

Scalar Form::coeff(Blade b) const {
  auto it = coeffs_.find(b);
  return it == coeffs_.end() ? Scalar() : it->second;
}

void Form::add_term(Blade b, const Scalar &c) {
  if (c.is_zero())
    return;
  if (dim_ < 32 && (b >> dim_) != 0)
    throw Error(ErrorKind::IndexOutOfRange, "blade outside dimension");
  auto [it, inserted] = coeffs_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      coeffs_.erase(it);
  }
}

Vec Form::to_vec() const {
  Vec v(std::size_t(1) << dim_);
  for (const auto &[b, c] : coeffs_)
    v[b] = c;
  return v;
}

Form Form::degree_part(int k) const {
  Form f(dim_);
  for (const auto &[b, c] : coeffs_)
    if (blade_degree(b) == k)
      f.coeffs_.emplace_hint(f.coeffs_.end(), b, c);
  return f;
}

int Form::min_degree() const {
  int m = -1;
  for (const auto &term : coeffs_) {
    int d = blade_degree(term.first);
    if (m < 0 || d < m)
      m = d;
  }
  return m;
}

int Form::max_degree() const {
  int m = -1;
  for (const auto &term : coeffs_)
    m = std::max(m, blade_degree(term.first));
  return m;
}

int Form::parity() const {
  int p = -2;
  for (const auto &term : coeffs_) {
    int q = blade_degree(term.first) & 1;
    if (p == -2)
      p = q;
    else if (p != q)
      return -1;
  }
  return p == -2 ? 0 : p;
}

Form &Form::operator+=(const Form &o) {
  if (dim_ != o.dim_)
    throw Error(ErrorKind::DimensionMismatch, "form addition");
  for (const auto &[b, c] : o.coeffs_)
    add_term(b, c);
  return *this;
}

Form &Form::operator-=(const Form &o) {
  if (dim_ != o.dim_)
    throw Error(ErrorKind::DimensionMismatch, "form subtraction");
  for (const auto &[b, c] : o.coeffs_)
    add_term(b, -c);
  return *this;
}

Form &Form::operator*=(const Scalar &c) {
  if (c.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto &term : coeffs_)
    term.second *= c;
  return *this;
}

Form Form::conj() const {
  Form f(dim_);
  for (const auto &[b, c] : coeffs_)
    f.coeffs_.emplace_hint(f.coeffs_.end(), b, c.conj());
  return f;
}

std::string Form::str() const {
  if (coeffs_.empty())
    return "0";
  std::vector<Blade> order;
  for (const auto &term : coeffs_)
    order.push_back(term.first);
  std::stable_sort(order.begin(), order.end(), [](Blade a, Blade b) {
    int da = blade_degree(a), db = blade_degree(b);
    return da != db ? da < db : a < b;
  });
  std::ostringstream os;
  bool first = true;
  for (Blade b : order) {
    const Scalar &c = coeffs_.at(b);
    std::string cs = c.str();
    bool compound = !c.is_real() && sgn(c.re) != 0;
    if (compound)
      cs = "(" + cs + ")";
    bool neg = !compound && cs[0] == '-';
    if (neg)
      cs = cs.substr(1);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::string name;
    for (int k = 0; k < 32; ++k)
      if (b & (Blade(1) << k)) {
        if (!name.empty())
          name += "^";
        name += "e" + std::to_string(k + 1);
      }
    if (name.empty())
      os << cs;
    else if (cs == "1")
      os << name;
    else
      os << cs << " " << name;
  }
  return os.str();
}

Form wedge(const Form &a, const Form &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "wedge");
  Form out(a.dim());
  for (const auto &[ma, ca] : a.terms())
    for (const auto &[mb, cb] : b.terms()) {
      if (ma & mb)
        continue;
      Scalar c = ca * cb;
      if (blade_sign(ma, mb) < 0)
        c = -c;
      out.add_term(ma | mb, c);
    }
  return out;
}

Form contract(int k, const Form &a) {
  if (k < 1 || k > a.dim())
    throw Error(ErrorKind::IndexOutOfRange, "contraction with x" + std::to_string(k));
  Blade bit = Blade(1) << (k - 1);
  Form out(a.dim());
  for (const auto &[m, c] : a.terms()) {
    if (!(m & bit))
      continue;
    int before = __builtin_popcount(m & (bit - 1));
    out.add_term(m ^ bit, (before & 1) ? -c : c);
  }
  return out;
}

Form contract(const Vec &X, const Form &a) {
  if (static_cast<int>(X.size()) != a.dim())
    throw Error(ErrorKind::DimensionMismatch, "contraction vector");
  Form out(a.dim());
  for (int k = 0; k < a.dim(); ++k)
    if (!X[k].is_zero())
      out += contract(k + 1, a) * X[k];
  return out;
}

Form sigma_involution(const Form &a) {
  Form out(a.dim());
  for (const auto &[m, c] : a.terms()) {
    int k = blade_degree(m);
    out.add_term(m, ((k * (k - 1) / 2) & 1) ? -c : c);
  }
  return out;
}

Scalar mukai_pairing(const Form &a, const Form &b) {
  if (a.dim() != b.dim())
    throw Error(ErrorKind::DimensionMismatch, "Mukai pairing");
  Blade top = (Blade(1) << a.dim()) - 1;
  Scalar acc;
  for (const auto &[ma, ca] : a.terms()) {
    auto it = b.terms().find(top ^ ma);
    if (it == b.terms().end())
      continue;
    int k = blade_degree(it->first);
    Scalar c = ca * it->second;
    int s = blade_sign(ma, it->first) * (((k * (k - 1) / 2) & 1) ? -1 : 1);
    if (s < 0)
      acc -= c;
    else
      acc += c;
  }
  return acc;
}

Form exp_wedge(const Form &a) {
  Form result = Form::scalar(a.dim(), Scalar(1));
  Form power = result;
  for (int k = 1; k <= a.dim(); ++k) {
    power = wedge(power, a) * Scalar::frac(1, k);
    if (power.is_zero())
      break;
    result += power;
  }
  return result;
}

bool parse_blade(const std::string &tok, int dim, Blade &mask, int &sign) {
  mask = 0;
  sign = 1;
  std::size_t pos = 0;
  std::vector<int> idx;
  while (pos < tok.size()) {
    if (tok[pos] != 'e')
      return false;
    ++pos;
    std::size_t start = pos;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos])))
      ++pos;
    if (start == pos)
      return false;
    int k = std::stoi(tok.substr(start, pos - start));
    if (k < 1 || k > dim)
      throw Error(ErrorKind::UnknownGenerator, "e" + std::to_string(k));
    idx.push_back(k);
    if (pos < tok.size()) {
      if (tok[pos] != '^')
        return false;
      ++pos;
      if (pos == tok.size())
        return false;
    }
  }
  if (idx.empty())
    return false;
  for (int k : idx) {
    Blade bit = Blade(1) << (k - 1);
    if (mask & bit) {
      sign = 0;
      return true;
    }
    sign *= blade_sign(mask, bit);
    mask |= bit;
  }
  return true;
}

} // namespace gcm
