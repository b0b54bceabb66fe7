#include "genus5/sextic_model.hpp"

#include <random>

#include "doctest.h"
#include "genus5/linalg.hpp"
#include "testutil.hpp"

using namespace genus5;

namespace {

QuadricTriple random_triple(const FieldTower& tw, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, 2);
  QuadricTriple T;
  for (int n = 0; n < 3; ++n) {
    QuinaryQuadric q = qq_zero(1);
    for (int i = 0; i < 5; ++i)
      for (int j = i; j < 5; ++j) {
        if (i == j && (i == 0 || i == 4)) continue;
        q.qc[static_cast<size_t>(i)][static_cast<size_t>(j)] = tw.ctx(1).from_int(d(rng));
      }
    T.phi[n] = q;
  }
  return T;
}

QuadricTriple random_nondegenerate_triple(const FieldTower& tw, std::mt19937& rng) {
  for (;;) {
    QuadricTriple T = random_triple(tw, rng);
    try {
      build_sextic(tw, T);
      return T;
    } catch (const DegenerateDetA&) {
    }
  }
}

GFElem random_elem(const FieldTower& tw, int k, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, 2);
  std::vector<int> c(static_cast<size_t>(k));
  for (auto& v : c) v = d(rng);
  return tw.ctx(k).make(c);
}

std::array<std::array<GFElem, 3>, 3> random_invertible(const FieldTower& tw, int k,
                                                       std::mt19937& rng) {
  for (;;) {
    std::array<std::array<GFElem, 3>, 3> B;
    Mat m = mat_zero(k, 3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        B[i][j] = random_elem(tw, k, rng);
        m.at(i, j) = B[i][j];
      }
    if (mat_rank(tw, m) == 3) return B;
  }
}

GFElem det3(const FieldTower& tw, const std::array<std::array<GFElem, 3>, 3>& B) {
  GFElem s = tw.ctx(B[0][0].deg).zero();
  for (int j = 0; j < 3; ++j) {
    GFElem minor = tw.sub(tw.mul(B[1][(j + 1) % 3], B[2][(j + 2) % 3]),
                          tw.mul(B[1][(j + 2) % 3], B[2][(j + 1) % 3]));
    s = tw.add(s, tw.mul(B[0][j], minor));
  }
  return s;
}

}  // namespace

TEST_CASE("quadric decomposition splits off the x0 and x4 parts") {
  FieldTower tw;
  SUBCASE("pure x0*x4") {
    QuadricParts p = decompose(tw, parse_quadric(tw, "x0*x4"));
    CHECK(p.a == tw.ctx(1).one());
    CHECK(p.f.is_zero());
    CHECK(p.g.is_zero());
    CHECK(p.h.is_zero());
  }
  SUBCASE("mixed terms land in the right parts") {
    QuadricParts p = decompose(tw, parse_quadric(tw, "x0*x1 + x2*x3"));
    CHECK(p.a.is_zero());
    CHECK(p.f == tf_make(tw, 1, {{1, 0, 0, 1}}));
    CHECK(p.g.is_zero());
    CHECK(p.h == tf_make(tw, 1, {{0, 1, 1, 1}}));
  }
  SUBCASE("x0^2 is rejected") {
    CHECK_THROWS_AS(decompose(tw, parse_quadric(tw, "x0^2")), NotVanishingAtPQ);
  }
  SUBCASE("x4^2 is rejected") {
    CHECK_THROWS_AS(decompose(tw, parse_quadric(tw, "x1*x2 + x4^2")), NotVanishingAtPQ);
  }
  SUBCASE("reconstruction: parts evaluate back to the quadric") {
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
      QuadricTriple T = random_triple(tw, rng);
      for (const auto& q : T.phi) {
        QuadricParts p = decompose(tw, q);
        for (int trial = 0; trial < 10; ++trial) {
          std::array<GFElem, 5> x;
          for (auto& v : x) v = random_elem(tw, 2, rng);
          GFElem lhs = qq_eval(tw, qq_embed(tw, q, 2), x);
          GFElem rhs = tw.mul(tw.embed(p.a, 2), tw.mul(x[0], x[4]));
          rhs = tw.add(rhs, tw.mul(tf_eval(tw, tf_embed(tw, p.f, 2), x[1], x[2], x[3]), x[0]));
          rhs = tw.add(rhs, tw.mul(tf_eval(tw, tf_embed(tw, p.g, 2), x[1], x[2], x[3]), x[4]));
          rhs = tw.add(rhs, tf_eval(tw, tf_embed(tw, p.h, 2), x[1], x[2], x[3]));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("sextic construction degrees and degenerate detection") {
  FieldTower tw;
  QuadricTriple T = parse_triple(
      tw, {"x0*x4 + 2*x1^2", "x0*x1 + 2*x2^2", "x3*x4 + 2*x1*x2"});
  SexticParts parts = build_sextic_parts(tw, T);
  CHECK(!parts.sextic.is_zero());
  CHECK(parts.sextic.d == 6);
  CHECK(parts.det_a.d == 2);
  CHECK(parts.v1.d == 4);
  CHECK(parts.v2.d == 3);
  CHECK(parts.v3.d == 3);
  for (const auto& [m, c] : parts.sextic.t) CHECK(int(m[0]) + int(m[1]) + int(m[2]) == 6);

  // All three quadrics proportional makes every 2x2 minor of A vanish.
  QuadricTriple D = parse_triple(tw, {"x0*x1", "2*x0*x1", "x0*x1"});
  CHECK_THROWS_AS(build_sextic(tw, D), DegenerateDetA);
}

TEST_CASE("sextic vanishes on the image of the quadric intersection") {
  FieldTower tw;
  std::mt19937 rng(1234);
  std::vector<QuadricTriple> triples;
  triples.push_back(
      parse_triple(tw, {"x0*x4 + 2*x1^2", "x0*x1 + 2*x2^2", "x3*x4 + 2*x1*x2"}));
  for (int t = 0; t < 8; ++t) triples.push_back(random_nondegenerate_triple(tw, rng));

  for (const auto& T : triples) {
    SexticParts parts = build_sextic_parts(tw, T);
    for (int e = 1; e <= 2; ++e) {
      QuadricTriple Te;
      for (int i = 0; i < 3; ++i) Te.phi[i] = qq_embed(tw, T.phi[i], e);
      auto pts = p4_variety_points(tw, Te, e);
      CHECK(!pts.empty());  // P and Q always lie on V
      TernaryForm F = tf_embed(tw, parts.sextic, e);
      TernaryForm dA = tf_embed(tw, parts.det_a, e);
      TernaryForm v1 = tf_embed(tw, parts.v1, e), v2 = tf_embed(tw, parts.v2, e),
                  v3 = tf_embed(tw, parts.v3, e);
      for (const auto& p : pts) {
        // the plane model vanishes at the projection (p1 : p2 : p3)
        CHECK(tf_eval(tw, F, p[1], p[2], p[3]).is_zero());
        // exact relations det(A)(p)*(p0 p4, p0, p4) = (v1, v2, v3)(p)
        GFElem d = tf_eval(tw, dA, p[1], p[2], p[3]);
        CHECK(tf_eval(tw, v1, p[1], p[2], p[3]) == tw.mul(d, tw.mul(p[0], p[4])));
        CHECK(tf_eval(tw, v2, p[1], p[2], p[3]) == tw.mul(d, p[0]));
        CHECK(tf_eval(tw, v3, p[1], p[2], p[3]) == tw.mul(d, p[4]));
      }
    }
  }
}

TEST_CASE("P^4 census sizes and smoothness sweep on the smoke triple") {
  FieldTower tw;
  QuadricTriple T = parse_triple(
      tw, {"x0*x4 + 2*x1^2", "x0*x1 + 2*x2^2", "x3*x4 + 2*x1*x2"});
  long long n1 = p4_variety_count(tw, T, 1);
  auto pts = p4_variety_points(tw, T, 1);
  CHECK(n1 == static_cast<long long>(pts.size()));
  // coordinate points P and Q are always in V
  bool has_p = false, has_q = false;
  for (const auto& p : pts) {
    if (!p[0].is_zero() && p[1].is_zero() && p[2].is_zero() && p[3].is_zero() && p[4].is_zero())
      has_p = true;
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero() && p[3].is_zero() && !p[4].is_zero())
      has_q = true;
  }
  CHECK(has_p);
  CHECK(has_q);
  // the sweep covers all of P^4: count points on the zero triple
  QuadricTriple Z;
  for (int i = 0; i < 3; ++i) Z.phi[i] = qq_zero(1);
  CHECK(p4_variety_count(tw, Z, 1) == 121);
  CHECK(p4_variety_count(tw, Z, 2) == 7381);
}

TEST_CASE("basis change scales the sextic by det^2") {
  FieldTower tw;
  std::mt19937 rng(99);
  for (int k : {1, 2}) {
    for (int trial = 0; trial < 100; ++trial) {
      QuadricTriple T = random_nondegenerate_triple(tw, rng);
      TernaryForm F = build_sextic(tw, T);
      auto B = random_invertible(tw, k, rng);
      TernaryForm Fb = build_sextic(tw, triple_basis_change(tw, T, B));
      GFElem s = det3(tw, B);
      TernaryForm expected = tf_scale(tw, tf_embed(tw, F, k), tw.mul(s, s));
      CHECK(Fb == expected);
      CHECK(tf_proportional(tw, F, Fb));
    }
  }
}

TEST_CASE("swapping x0 and x4 preserves the sextic") {
  FieldTower tw;
  std::mt19937 rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    QuadricTriple T = random_nondegenerate_triple(tw, rng);
    TernaryForm F = build_sextic(tw, T);
    TernaryForm Fs = build_sextic(tw, triple_swap04(tw, T));
    CHECK(Fs == F);
    CHECK(tf_proportional(tw, F, Fs));
  }
}

TEST_CASE("shearing x0 and x4 by linear forms preserves the sextic") {
  FieldTower tw;
  std::mt19937 rng(555);
  auto random_linear = [&](int k) {
    TernaryForm f = tf_zero(k, 1);
    tf_set(tw, f, Mono3{1, 0, 0}, random_elem(tw, k, rng));
    tf_set(tw, f, Mono3{0, 1, 0}, random_elem(tw, k, rng));
    tf_set(tw, f, Mono3{0, 0, 1}, random_elem(tw, k, rng));
    return f;
  };
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QuadricTriple T = random_nondegenerate_triple(tw, rng);
    CHECK(shear_invariance_check(tw, T, random_linear(1), random_linear(1)));
    ++checked;
  }
  CHECK(checked == 200);
  // identity shear, and shears over the quadratic extension
  for (int trial = 0; trial < 40; ++trial) {
    QuadricTriple T = random_nondegenerate_triple(tw, rng);
    CHECK(shear_invariance_check(tw, T, tf_zero(1, 1), tf_zero(1, 1)));
    CHECK(shear_invariance_check(tw, T, random_linear(2), random_linear(2)));
  }
}

TEST_CASE("projective equality of forms") {
  FieldTower tw;
  TernaryForm f = tf_make(tw, 1, {{6, 0, 0, 1}, {0, 6, 0, 2}});
  CHECK(tf_proportional(tw, f, tf_scale(tw, f, tw.ctx(1).from_int(2))));
  TernaryForm g = tf_add(tw, f, tf_make(tw, 1, {{0, 0, 6, 1}}));
  CHECK(!tf_proportional(tw, f, g));
  CHECK(tf_proportional(tw, tf_zero(1, 6), tf_zero(1, 6)));
  CHECK(!tf_proportional(tw, f, tf_zero(1, 6)));
  // across fields: f over GF(3) vs zeta * f over GF(9)
  GFElem z = tw.ctx(2).gen();
  CHECK(tf_proportional(tw, f, tf_scale(tw, tf_embed(tw, f, 2), z)));
}
