#include "gcm/linalg.hpp"
#include "gcm/error.hpp"

#include <algorithm>

namespace gcm {

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
}

Vec vec_add(const Vec &a, const Vec &b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero())
      r[i] += b[i];
  return r;
}

Vec vec_sub(const Vec &a, const Vec &b) {
  Vec r = a;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!b[i].is_zero())
      r[i] -= b[i];
  return r;
}

Vec vec_scale(const Vec &a, const Scalar &c) {
  Vec r(a.size());
  if (c.is_zero())
    return r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero())
      r[i] = a[i] * c;
  return r;
}

Vec vec_conj(const Vec &a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i].conj();
  return r;
}

Vec unit_vec(int n, int i) {
  Vec v(n);
  v[i] = Scalar(1);
  return v;
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, i) = Scalar(1);
  return m;
}

Mat Mat::from_columns(int rows, const std::vector<Vec> &cols) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < rows; ++i)
      m(i, j) = cols[j][i];
  return m;
}

Vec Mat::column(int j) const {
  Vec v(rows_);
  for (int i = 0; i < rows_; ++i)
    v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(int i) const {
  return Vec(d_.begin() + std::size_t(i) * cols_, d_.begin() + std::size_t(i + 1) * cols_);
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::conj() const {
  Mat c(rows_, cols_);
  for (std::size_t k = 0; k < d_.size(); ++k)
    c.d_[k] = d_[k].conj();
  return c;
}

bool Mat::is_zero() const { return gcm::is_zero(d_); }

bool Mat::is_real() const {
  return std::all_of(d_.begin(), d_.end(), [](const Scalar &s) { return s.is_real(); });
}

Mat operator*(const Mat &a, const Mat &b) {
  if (a.cols_ != b.rows_)
    throw Error(ErrorKind::DimensionMismatch, "matrix product");
  Mat c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar &aik = a(i, k);
      if (aik.is_zero())
        continue;
      for (int j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero())
          c(i, j) += aik * b(k, j);
    }
  return c;
}

Mat operator+(const Mat &a, const Mat &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix sum");
  Mat c = a;
  for (std::size_t k = 0; k < c.d_.size(); ++k)
    c.d_[k] += b.d_[k];
  return c;
}

Mat operator-(const Mat &a, const Mat &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorKind::DimensionMismatch, "matrix difference");
  Mat c = a;
  for (std::size_t k = 0; k < c.d_.size(); ++k)
    c.d_[k] -= b.d_[k];
  return c;
}

Mat operator*(const Scalar &s, const Mat &a) {
  Mat c = a;
  for (auto &x : c.d_)
    x *= s;
  return c;
}

Vec apply(const Mat &a, const Vec &v) {
  if (static_cast<int>(v.size()) != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  Vec r(a.rows());
  for (int j = 0; j < a.cols(); ++j) {
    if (v[j].is_zero())
      continue;
    for (int i = 0; i < a.rows(); ++i)
      if (!a(i, j).is_zero())
        r[i] += a(i, j) * v[j];
  }
  return r;
}

SparseMat SparseMat::from_columns(int rows, const std::vector<Vec> &cols) {
  SparseMat m(rows, static_cast<int>(cols.size()));
  m.entries_.resize(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < rows; ++i)
      if (!cols[j][i].is_zero())
        m.entries_[j].emplace_back(i, cols[j][i]);
  return m;
}

SparseMat SparseMat::from_dense(const Mat &a) {
  std::vector<Vec> cols;
  for (int j = 0; j < a.cols(); ++j)
    cols.push_back(a.column(j));
  return from_columns(a.rows(), cols);
}

Vec SparseMat::apply(const Vec &v) const {
  if (static_cast<int>(v.size()) != cols_)
    throw Error(ErrorKind::DimensionMismatch, "sparse matrix-vector product");
  Vec r(rows_);
  for (int j = 0; j < cols_; ++j) {
    if (v[j].is_zero())
      continue;
    for (const auto &[i, c] : entries_[j])
      r[i] += c * v[j];
  }
  return r;
}

Mat SparseMat::dense() const {
  Mat m(rows_, cols_);
  for (int j = 0; j < cols_; ++j)
    for (const auto &[i, c] : entries_[j])
      m(i, j) = c;
  return m;
}

std::size_t SparseMat::nonzeros() const {
  std::size_t n = 0;
  for (const auto &col : entries_)
    n += col.size();
  return n;
}

std::vector<int> rref(std::vector<Vec> &rows, int pivot_limit) {
  std::vector<int> pivots;
  if (rows.empty())
    return pivots;
  int ncols = static_cast<int>(rows[0].size());
  if (pivot_limit < 0)
    pivot_limit = ncols;
  std::size_t r = 0;
  for (int c = 0; c < pivot_limit && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero())
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[r], rows[p]);
    Scalar inv = rows[r][c].inverse();
    if (!inv.is_one())
      for (int j = c; j < ncols; ++j)
        if (!rows[r][j].is_zero())
          rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero())
        continue;
      Scalar f = rows[i][c];
      for (int j = c; j < ncols; ++j)
        if (!rows[r][j].is_zero())
          rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  // Rows past r have no pivot within the limit; keep those that are nonzero
  // beyond the limit only when the caller asked for a partial pivot search.
  if (pivot_limit == ncols)
    rows.resize(r);
  return pivots;
}

Subspace Subspace::span(int ambient, std::vector<Vec> vectors) {
  Subspace s(ambient);
  for (const auto &v : vectors)
    if (static_cast<int>(v.size()) != ambient)
      throw Error(ErrorKind::AmbientMismatch, "vector length in span");
  s.pivots_ = rref(vectors);
  s.basis_ = std::move(vectors);
  return s;
}

Subspace Subspace::full(int ambient) { return coordinate(ambient, 0, ambient); }

Subspace Subspace::coordinate(int ambient, int from, int to) {
  Subspace s(ambient);
  for (int i = from; i < to; ++i) {
    s.basis_.push_back(unit_vec(ambient, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Vec Subspace::reduce(const Vec &v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw Error(ErrorKind::AmbientMismatch, "reduce");
  Vec r = v;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Scalar f = r[pivots_[k]];
    if (f.is_zero())
      continue;
    for (int j = 0; j < ambient_; ++j)
      if (!basis_[k][j].is_zero())
        r[j] -= f * basis_[k][j];
  }
  return r;
}

bool Subspace::contains(const Subspace &o) const {
  if (o.ambient_ != ambient_)
    throw Error(ErrorKind::AmbientMismatch, "containment");
  return std::all_of(o.basis_.begin(), o.basis_.end(),
                     [&](const Vec &v) { return contains(v); });
}

Subspace Subspace::conj() const {
  std::vector<Vec> vs;
  for (const auto &v : basis_)
    vs.push_back(vec_conj(v));
  return span(ambient_, vs);
}

Subspace Subspace::quotient(const Subspace &b) const {
  if (b.ambient_ != ambient_)
    throw Error(ErrorKind::AmbientMismatch, "quotient");
  Subspace bi = intersect(*this, b);
  // Reduced vectors vanish on the pivots of bi, and so does every
  // combination of them, so the echelon span is already canonical.
  std::vector<Vec> reduced;
  for (const auto &v : basis_) {
    Vec r = bi.reduce(v);
    if (!is_zero(r))
      reduced.push_back(std::move(r));
  }
  return span(ambient_, reduced);
}

Subspace Subspace::map(const LinOp &op, int target_ambient) const {
  std::vector<Vec> imgs;
  for (const auto &v : basis_)
    imgs.push_back(op(v));
  return span(target_ambient, imgs);
}

Subspace sum(const Subspace &a, const Subspace &b) {
  if (a.ambient() != b.ambient())
    throw Error(ErrorKind::AmbientMismatch, "sum");
  std::vector<Vec> vs = a.basis();
  vs.insert(vs.end(), b.basis().begin(), b.basis().end());
  return Subspace::span(a.ambient(), vs);
}

Subspace intersect(const Subspace &a, const Subspace &b) {
  if (a.ambient() != b.ambient())
    throw Error(ErrorKind::AmbientMismatch, "intersect");
  int n = a.ambient();
  if (a.dim() == 0 || b.dim() == 0)
    return Subspace(n);
  // Zassenhaus: rows [a|a] and [b|0]; rows with vanishing left half span
  // the intersection in their right half.
  std::vector<Vec> rows;
  for (const auto &v : a.basis()) {
    Vec r(2 * n);
    std::copy(v.begin(), v.end(), r.begin());
    std::copy(v.begin(), v.end(), r.begin() + n);
    rows.push_back(std::move(r));
  }
  for (const auto &v : b.basis()) {
    Vec r(2 * n);
    std::copy(v.begin(), v.end(), r.begin());
    rows.push_back(std::move(r));
  }
  rref(rows);
  std::vector<Vec> out;
  for (const auto &r : rows) {
    bool left_zero = std::all_of(r.begin(), r.begin() + n,
                                 [](const Scalar &s) { return s.is_zero(); });
    if (left_zero)
      out.emplace_back(r.begin() + n, r.end());
  }
  return Subspace::span(n, out);
}

bool direct_sum_equals(const Subspace &a, const Subspace &b, const Subspace &whole) {
  return a.dim() + b.dim() == whole.dim() && sum(a, b) == whole;
}

Subspace kernel(const Mat &a) {
  std::vector<Vec> rows;
  for (int i = 0; i < a.rows(); ++i)
    rows.push_back(a.row(i));
  std::vector<int> piv = rref(rows);
  int n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (int p : piv)
    is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    Vec v(n);
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (!rows[r][f].is_zero())
        v[piv[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return Subspace::span(n, basis);
}

Subspace image(const Mat &a) {
  std::vector<Vec> cols;
  for (int j = 0; j < a.cols(); ++j)
    cols.push_back(a.column(j));
  return Subspace::span(a.rows(), cols);
}

int rank(const Mat &a) { return image(a).dim(); }

Subspace kernel_on(const LinOp &op, const Subspace &s, int target_ambient) {
  if (s.dim() == 0)
    return Subspace(s.ambient());
  std::vector<Vec> imgs;
  for (const auto &v : s.basis())
    imgs.push_back(op(v));
  Subspace k = kernel(Mat::from_columns(target_ambient, imgs));
  std::vector<Vec> out;
  for (const auto &c : k.basis()) {
    Vec v(s.ambient());
    for (int i = 0; i < s.dim(); ++i)
      if (!c[i].is_zero())
        v = vec_add(v, vec_scale(s.basis()[i], c[i]));
    out.push_back(std::move(v));
  }
  return Subspace::span(s.ambient(), out);
}

Subspace preimage_in(const LinOp &op, const Subspace &s, const Subspace &t) {
  return kernel_on([&](const Vec &v) { return t.reduce(op(v)); }, s, t.ambient());
}

std::optional<Vec> solve(const Mat &a, const Vec &b) {
  if (static_cast<int>(b.size()) != a.rows())
    throw Error(ErrorKind::DimensionMismatch, "solve");
  int n = a.cols();
  std::vector<Vec> rows;
  for (int i = 0; i < a.rows(); ++i) {
    Vec r = a.row(i);
    r.push_back(b[i]);
    rows.push_back(std::move(r));
  }
  std::vector<int> piv = rref(rows, n);
  Vec x(n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (r < piv.size())
      x[piv[r]] = rows[r][n];
    else if (!rows[r][n].is_zero())
      return std::nullopt;
  }
  return x;
}

std::optional<Mat> inverse(const Mat &a) {
  if (a.rows() != a.cols())
    throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  int n = a.rows();
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) {
    Vec r = a.row(i);
    r.resize(2 * n);
    r[n + i] = Scalar(1);
    rows.push_back(std::move(r));
  }
  std::vector<int> piv = rref(rows, n);
  if (static_cast<int>(piv.size()) != n)
    return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      inv(i, j) = rows[i][n + j];
  return inv;
}

Coordinatizer::Coordinatizer(const std::vector<Vec> &family) {
  k_ = static_cast<int>(family.size());
  if (k_ == 0)
    return;
  n_ = static_cast<int>(family[0].size());
  for (int i = 0; i < k_; ++i) {
    Vec r = family[i];
    r.resize(n_ + k_);
    r[n_ + i] = Scalar(1);
    rows_.push_back(std::move(r));
  }
  pivots_ = rref(rows_, n_);
  if (static_cast<int>(pivots_.size()) != k_)
    throw Error(ErrorKind::AmbientMismatch, "coordinatizer family is dependent");
}

std::optional<Vec> Coordinatizer::coords(const Vec &v) const {
  Vec out(k_);
  if (k_ == 0)
    return is_zero(v) ? std::optional<Vec>(out) : std::nullopt;
  Vec rem = v;
  for (int r = 0; r < k_; ++r) {
    Scalar f = rem[pivots_[r]];
    if (f.is_zero())
      continue;
    for (int j = 0; j < n_; ++j)
      if (!rows_[r][j].is_zero())
        rem[j] -= f * rows_[r][j];
    for (int j = 0; j < k_; ++j)
      if (!rows_[r][n_ + j].is_zero())
        out[j] += f * rows_[r][n_ + j];
  }
  if (!is_zero(rem))
    return std::nullopt;
  return out;
}

QuotientFrame::QuotientFrame(const Subspace &cycles, const Subspace &boundaries)
    : z_(cycles), b_(boundaries) {
  if (!z_.contains(b_))
    throw Error(ErrorKind::AmbientMismatch, "boundaries are not cycles");
  reps_ = z_.quotient(b_).basis();
  std::vector<Vec> fam = b_.basis();
  nb_ = static_cast<int>(fam.size());
  fam.insert(fam.end(), reps_.begin(), reps_.end());
  coord_ = Coordinatizer(fam);
}

std::optional<Vec> QuotientFrame::class_of(const Vec &v) const {
  auto c = coord_.coords(v);
  if (!c)
    return std::nullopt;
  return Vec(c->begin() + nb_, c->end());
}

Subspace QuotientFrame::classes_of(const Subspace &s) const {
  std::vector<Vec> cls;
  for (const auto &v : s.basis()) {
    auto c = class_of(v);
    if (!c)
      throw Error(ErrorKind::NotClosed, "class of a non-cycle requested");
    cls.push_back(*c);
  }
  return Subspace::span(dim(), cls);
}

} // namespace gcm
