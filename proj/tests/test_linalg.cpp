#include <doctest.h>

#include <random>

#include "genus5/linalg.hpp"
#include "testutil.hpp"

using namespace genus5;
using testutil::tower;

TEST_CASE("rref, rank and nullspace over prime and extension fields") {
  const FieldTower& tw = tower();
  std::mt19937_64 rng(4242);
  for (int k : {1, 2, 3}) {
    const FieldCtx& c = tw.ctx(k);
    for (int it = 0; it < 20; ++it) {
      int rows = 3 + static_cast<int>(rng() % 5);
      int cols = 3 + static_cast<int>(rng() % 6);
      Mat m = mat_zero(k, rows, cols);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = testutil::random_elem(tw, k, rng);
      int rank = mat_rank(tw, m);
      auto ns = mat_nullspace(tw, m);
      CHECK(static_cast<int>(ns.size()) == cols - rank);
      for (auto& v : ns) {
        auto mv = mat_apply(tw, m, v);
        for (auto& e : mv) CHECK(e.is_zero());
      }
      // the canonical basis only depends on the row space: permuting rows
      // changes nothing
      Mat p = m;
      for (int i = 0; i + 1 < rows; i += 2)
        for (int j = 0; j < cols; ++j) std::swap(p.at(i, j), p.at(i + 1, j));
      CHECK(mat_nullspace(tw, p) == ns);
      (void)c;
    }
  }
}

TEST_CASE("Galois-stable solution spaces descend to GF(3)") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(2);
  GFElem z = c.gen();
  // rows (1, z, z^2) and its conjugate: solution line is spanned by (2, 2, 1)
  Mat m = mat_zero(2, 2, 3);
  m.at(0, 0) = c.one();
  m.at(0, 1) = z;
  m.at(0, 2) = c.mul(z, z);
  for (int j = 0; j < 3; ++j) m.at(1, j) = c.frobenius(m.at(0, j));
  auto ns = mat_nullspace_gf3(tw, m);
  REQUIRE(ns.size() == 1);
  REQUIRE(ns[0].size() == 3);
  CHECK(ns[0][0] == tw.ctx(1).from_int(2));
  CHECK(ns[0][1] == tw.ctx(1).from_int(2));
  CHECK(ns[0][2] == tw.ctx(1).one());
  // a single non-stable row does not descend
  Mat bad = mat_zero(2, 1, 3);
  bad.at(0, 0) = c.one();
  bad.at(0, 1) = z;
  CHECK_THROWS_AS((void)mat_nullspace_gf3(tw, bad), std::runtime_error);
}
