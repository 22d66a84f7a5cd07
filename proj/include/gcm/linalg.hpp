#pragma once
#include "gcm/form.hpp"
#include "gcm/scalar.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace gcm {

bool is_zero(const Vec &v);
Vec vec_add(const Vec &a, const Vec &b);
Vec vec_sub(const Vec &a, const Vec &b);
Vec vec_scale(const Vec &a, const Scalar &c);
Vec vec_conj(const Vec &a);
Vec unit_vec(int n, int i);

// Dense row-major matrix over Q(i).
class Mat {
public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), d_(std::size_t(rows) * cols) {}
  static Mat identity(int n);
  static Mat from_columns(int rows, const std::vector<Vec> &cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar &operator()(int i, int j) { return d_[std::size_t(i) * cols_ + j]; }
  const Scalar &operator()(int i, int j) const { return d_[std::size_t(i) * cols_ + j]; }

  Vec column(int j) const;
  Vec row(int i) const;
  Mat transpose() const;
  Mat conj() const;
  bool is_zero() const;
  bool is_real() const;

  friend Mat operator*(const Mat &a, const Mat &b);
  friend Mat operator+(const Mat &a, const Mat &b);
  friend Mat operator-(const Mat &a, const Mat &b);
  friend Mat operator*(const Scalar &c, const Mat &a);
  friend bool operator==(const Mat &a, const Mat &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
  }
  friend bool operator!=(const Mat &a, const Mat &b) { return !(a == b); }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> d_;
};

Vec apply(const Mat &a, const Vec &v);

// Column-sparse matrix, used for operators on the spinor space.
class SparseMat {
public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {}
  static SparseMat from_columns(int rows, const std::vector<Vec> &cols);
  static SparseMat from_dense(const Mat &m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Vec apply(const Vec &v) const;
  Mat dense() const;
  std::size_t nonzeros() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<int, Scalar>>> entries_;
};

using LinOp = std::function<Vec(const Vec &)>;

// Reduces rows to reduced row-echelon form in place, searching pivots only in
// the first pivot_limit columns. Zero rows are removed; pivot columns returned.
std::vector<int> rref(std::vector<Vec> &rows, int pivot_limit = -1);

// Subspace of Q(i)^n kept as a reduced echelon basis; equal subspaces have
// identical bases.
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}
  static Subspace span(int ambient, std::vector<Vec> vectors);
  static Subspace full(int ambient);
  // Coordinate subspace spanned by unit vectors [from, to).
  static Subspace coordinate(int ambient, int from, int to);

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec> &basis() const { return basis_; }
  const std::vector<int> &pivots() const { return pivots_; }

  Vec reduce(const Vec &v) const;
  bool contains(const Vec &v) const { return is_zero(reduce(v)); }
  bool contains(const Subspace &o) const;
  Subspace conj() const;
  // Canonical complement representatives of b inside *this (b need not be a
  // subspace of *this; the complement is taken of the intersection).
  Subspace quotient(const Subspace &b) const;
  Subspace map(const LinOp &op, int target_ambient) const;

  friend bool operator==(const Subspace &a, const Subspace &b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace &a, const Subspace &b) { return !(a == b); }

private:
  int ambient_ = 0;
  std::vector<Vec> basis_;
  std::vector<int> pivots_;
};

Subspace sum(const Subspace &a, const Subspace &b);
Subspace intersect(const Subspace &a, const Subspace &b);
// True when a + b is direct and fills `whole`.
bool direct_sum_equals(const Subspace &a, const Subspace &b, const Subspace &whole);

Subspace kernel(const Mat &a);
Subspace image(const Mat &a);
int rank(const Mat &a);
// {s in S : op(s) = 0}
Subspace kernel_on(const LinOp &op, const Subspace &s, int target_ambient);
// {s in S : op(s) in T}
Subspace preimage_in(const LinOp &op, const Subspace &s, const Subspace &t);
std::optional<Vec> solve(const Mat &a, const Vec &b);
std::optional<Mat> inverse(const Mat &a);

// Coordinates with respect to an ordered independent family.
class Coordinatizer {
public:
  Coordinatizer() = default;
  explicit Coordinatizer(const std::vector<Vec> &family);
  int size() const { return k_; }
  std::optional<Vec> coords(const Vec &v) const;

private:
  int n_ = 0, k_ = 0;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

// Cohomology Z/B of a linear complex, with canonical representatives.
class QuotientFrame {
public:
  QuotientFrame() = default;
  QuotientFrame(const Subspace &cycles, const Subspace &boundaries);

  int dim() const { return static_cast<int>(reps_.size()); }
  const Subspace &cycles() const { return z_; }
  const Subspace &boundaries() const { return b_; }
  const std::vector<Vec> &reps() const { return reps_; }
  // Class coordinates of a cycle; nullopt if v is not a cycle.
  std::optional<Vec> class_of(const Vec &v) const;
  // Subspace of class space spanned by the classes of cycles in s.
  Subspace classes_of(const Subspace &s) const;
  bool is_boundary(const Vec &v) const { return b_.contains(v); }

private:
  Subspace z_, b_;
  std::vector<Vec> reps_;
  Coordinatizer coord_;
  int nb_ = 0;
};

} // namespace gcm
