#include "doctest.h"
#include "support.hpp"

#include <algorithm>
#include <numeric>

using namespace gcm;

TEST_CASE("scalar literals round-trip through str") {
  for (std::string s : {"0", "1", "-1/2", "i", "-i", "3/2i", "1-i", "2/3+1/4i", "-5/7-2/9i"}) {
    Scalar c;
    REQUIRE(parse_scalar(s, c));
    Scalar d;
    REQUIRE(parse_scalar(c.str(), d));
    CHECK(c == d);
  }
  Scalar c;
  CHECK(parse_scalar("3/2*i", c));
  CHECK(c == Scalar::frac(3, 2, true));
  CHECK_FALSE(parse_scalar("1/0", c));
  CHECK_FALSE(parse_scalar("abc", c));
  CHECK_FALSE(parse_scalar("", c));
}

TEST_CASE("scalar field axioms on samples") {
  SampleRng rng(5);
  for (int k = 0; k < 50; ++k) {
    Scalar a = rng.scalar(), b = rng.scalar(), c = rng.scalar();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero())
      CHECK(a * a.inverse() == Scalar(1));
    CHECK((a * b).conj() == a.conj() * b.conj());
  }
}

// Sign of a permutation by counting inversions, independent of blade_sign.
static int perm_sign(const std::vector<int> &p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

TEST_CASE("wedge of generators matches the permutation sign") {
  std::vector<int> idx = {1, 2, 3, 4, 5};
  do {
    Form w = Form::gens(5, {idx[0]});
    for (int k = 1; k < 5; ++k)
      w = wedge(w, Form::gens(5, {idx[k]}));
    CHECK(w == Form::gens(5, {1, 2, 3, 4, 5}, Scalar(perm_sign(idx))));
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("wedge is associative and graded commutative") {
  SampleRng rng(9);
  for (int k = 0; k < 30; ++k) {
    int p = static_cast<int>(rng.integer(0, 3)), q = static_cast<int>(rng.integer(0, 3));
    Form a = rng.form(6, p), b = rng.form(6, q), c = rng.form(6);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, b) == wedge(b, a) * Scalar((p * q) % 2 ? -1 : 1));
  }
}

TEST_CASE("contraction is an antiderivation") {
  SampleRng rng(21);
  for (int k = 0; k < 30; ++k) {
    int p = static_cast<int>(rng.integer(0, 3));
    Form a = rng.form(5, p), b = rng.form(5);
    int j = static_cast<int>(rng.integer(1, 5));
    Form lhs = contract(j, wedge(a, b));
    Form rhs = wedge(contract(j, a), b) + wedge(a, contract(j, b)) * Scalar(p % 2 ? -1 : 1);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("form printing uses degree then mask order") {
  Form f = Form::gens(4, {3, 4}) + Form::gens(4, {1}) * Scalar::frac(1, 2) +
           Form::gens(4, {1, 2}) * Scalar::I();
  CHECK(f.str() == "1/2 e1 + i e1^e2 + e3^e4");
}

TEST_CASE("rank-nullity and inverse on random matrices") {
  SampleRng rng(4);
  for (int k = 0; k < 20; ++k) {
    int r = static_cast<int>(rng.integer(1, 6)), c = static_cast<int>(rng.integer(1, 6));
    Mat a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        a(i, j) = rng.integer(0, 2) ? rng.scalar() : Scalar(0);
    Subspace K = kernel(a);
    CHECK(rank(a) + K.dim() == c);
    for (const auto &v : K.basis())
      CHECK(is_zero(gcm::apply(a, v)));
    CHECK(image(a).dim() == rank(a));
    if (r == c) {
      auto inv = inverse(a);
      CHECK(inv.has_value() == (rank(a) == r));
      if (inv)
        CHECK(*inv * a == Mat::identity(r));
    }
  }
}

TEST_CASE("subspace intersection and sum dimensions") {
  SampleRng rng(8);
  for (int k = 0; k < 20; ++k) {
    std::vector<Vec> va, vb;
    for (int i = 0; i < 3; ++i) {
      Vec x(6), y(6);
      for (int j = 0; j < 6; ++j) {
        x[j] = rng.scalar();
        y[j] = rng.scalar();
      }
      va.push_back(x);
      vb.push_back(y);
    }
    vb.push_back(va[0]);
    Subspace A = Subspace::span(6, va), B = Subspace::span(6, vb);
    CHECK(sum(A, B).dim() + intersect(A, B).dim() == A.dim() + B.dim());
    CHECK(intersect(A, B).contains(va[0]));
  }
}
