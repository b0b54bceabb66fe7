#include "genus5/point_count.hpp"

#include <random>

#include "doctest.h"
#include "genus5/flatfield.hpp"

using namespace genus5;

namespace {

TernaryForm random_form(const FieldTower& tw, int d, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(0, 2);
  const FieldCtx& c = tw.ctx(1);
  for (;;) {
    TernaryForm f = tf_zero(1, d);
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) {
        int v = coef(rng);
        if (v) tf_set(tw, f, {static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                              static_cast<uint8_t>(d - a - b)}, c.from_int(v));
      }
    if (!f.is_zero()) return f;
  }
}

long long brute_plane_count(const FieldTower& tw, const TernaryForm& f, int e) {
  TernaryForm fe = tf_embed(tw, f, e);
  const FieldCtx& c = tw.ctx(e);
  const long long q = static_cast<long long>(c.order()) + 1;
  long long total = 0;
  auto probe = [&](const GFElem& x, const GFElem& y, const GFElem& z) {
    if (tf_eval(tw, fe, x, y, z).is_zero()) ++total;
  };
  for (long long i = 0; i < q; ++i)
    for (long long j = 0; j < q; ++j)
      probe(c.one(), flat_unpack(e, static_cast<uint16_t>(i)),
            flat_unpack(e, static_cast<uint16_t>(j)));
  for (long long j = 0; j < q; ++j)
    probe(c.zero(), c.one(), flat_unpack(e, static_cast<uint16_t>(j)));
  probe(c.zero(), c.zero(), c.one());
  return total;
}

// coefficient-wise Frobenius: the conjugate form sigma(F)
TernaryForm conjugate_form(const FieldTower& tw, const TernaryForm& f) {
  TernaryForm g = tf_zero(f.k, f.d);
  for (const auto& [m, v] : f.t) tf_set(tw, g, m, tw.frobenius(v));
  return g;
}

// push a form with subfield-valued coefficients down to GF(3)
TernaryForm project_form(const FieldTower& tw, const TernaryForm& f) {
  TernaryForm g = tf_zero(1, f.d);
  for (const auto& [m, v] : f.t) {
    auto down = tw.project(v, 1);
    REQUIRE(down.has_value());
    tf_set(tw, g, m, *down);
  }
  return g;
}

std::vector<long long> int_poly_mul(const std::vector<long long>& a,
                                    const std::vector<long long>& b) {
  std::vector<long long> out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

WeilPoly weil_of(std::vector<std::pair<std::vector<long long>, int>> factors) {
  std::vector<long long> acc = {1};
  for (const auto& [f, m] : factors)
    for (int i = 0; i < m; ++i) acc = int_poly_mul(acc, f);
  REQUIRE(acc.size() == 11);
  WeilPoly w;
  std::copy(acc.begin(), acc.end(), w.c.begin());
  return w;
}

// power sums of the roots of a monic integer polynomial, via Newton
std::vector<long long> power_sums(const std::array<long long, 11>& c, int upto) {
  std::vector<long long> s(static_cast<size_t>(upto) + 1, 0);
  for (int k = 1; k <= upto; ++k) {
    long long acc = static_cast<long long>(k) * c[static_cast<size_t>(10 - k)];
    for (int i = 1; i < k; ++i)
      acc += c[static_cast<size_t>(10 - i)] * s[static_cast<size_t>(k - i)];
    s[static_cast<size_t>(k)] = -acc;
  }
  return s;
}

SingularConfig five_node_config(const FieldTower& tw, const std::vector<std::string>& reps) {
  std::vector<ConfigPoint> r;
  for (const auto& s : reps) r.push_back({parse_point(tw, s), 2});
  return config_from_orbit_reps(tw, SingCase::I, r, "", "");
}

}  // namespace

TEST_CASE("plane curve counts match exhaustive enumeration") {
  FieldTower tw;
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    int d = (trial % 3 == 0) ? 4 : 6;
    TernaryForm f = random_form(tw, d, rng);
    for (int e = 1; e <= 3; ++e) {
      long long expect = brute_plane_count(tw, f, e);
      CHECK(count_plane_curve(tw, f, e) == expect);
      CHECK(count_plane_curve_reference(tw, f, e) == expect);
    }
  }
}

TEST_CASE("fast and reference kernels agree beyond brute-force range") {
  FieldTower tw;
  std::mt19937 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    TernaryForm f = random_form(tw, 6, rng);
    for (int e = 4; e <= 5; ++e) {
      int lf_fast = -1, lf_ref = -1;
      long long fast = count_plane_curve(tw, f, e, &lf_fast);
      long long ref = count_plane_curve_reference(tw, f, e, &lf_ref);
      CHECK(fast == ref);
      CHECK(lf_fast == lf_ref);
    }
  }
}

TEST_CASE("line components are flagged through the fiber counter") {
  FieldTower tw;
  std::mt19937 rng(44);
  TernaryForm quintic = random_form(tw, 5, rng);

  int lf = 0;
  TernaryForm with_inf_line = tf_mul(tw, parse_form(tw, "z"), quintic);
  long long n = count_plane_curve(tw, with_inf_line, 1, &lf);
  CHECK(lf >= 1);
  CHECK(n == brute_plane_count(tw, with_inf_line, 1));

  TernaryForm with_vert_line = tf_mul(tw, parse_form(tw, "x + 2*z"), quintic);
  lf = 0;
  n = count_plane_curve(tw, with_vert_line, 1, &lf);
  CHECK(lf >= 1);
  CHECK(n == brute_plane_count(tw, with_vert_line, 1));
}

TEST_CASE("the cuspidal cubic has q + 1 points") {
  FieldTower tw;
  TernaryForm f = parse_form(tw, "y^2*z + 2*x^3");
  long long q = 1;
  for (int e = 1; e <= 6; ++e) {
    q *= 3;
    CHECK(count_plane_curve(tw, f, e) == q + 1);
  }
}

TEST_CASE("smooth-model counts of the reference curves") {
  FieldTower tw;
  TernaryForm f2 = parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4");
  SingularConfig c2 =
      five_node_config(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1 : z2^2 : z2^2)"});
  CHECK(count_smooth_model(tw, f2, c2, 2) == 32);

  TernaryForm f1 = parse_form(tw,
      "x^4*y^2 + x^3*y^3 + x^2*y^4 + x^4*y*z + x^3*y^2*z + 2*x^2*y^3*z + 2*x*y^4*z + "
      "2*x^2*y*z^3 + x*y^2*z^3 + x^2*z^4 + 2*x*y*z^4 + y^2*z^4");
  SingularConfig c1 =
      five_node_config(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:0)", "(1:2:1)"});
  CHECK(count_smooth_model(tw, f1, c1, 2) == 32);

  CountVector v2 = count_vector(tw, f2, c2);
  CHECK(v2.n[0] == 32);
  // the smooth-model count can only exceed the plane count by the rational
  // tangent directions: at most one extra point per node
  for (int m = 1; m <= 5; ++m) {
    long long plane = count_plane_curve(tw, f2, 2 * m);
    CHECK(v2.n[static_cast<size_t>(m - 1)] >= plane - 5);
    CHECK(v2.n[static_cast<size_t>(m - 1)] <= plane + 5);
  }
}

TEST_CASE("geometric irreducibility decision") {
  FieldTower tw;
  // non-special curves are irreducible
  CHECK(is_geometrically_irreducible(
      tw, parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4")));
  // a smooth sextic is irreducible
  CHECK(is_geometrically_irreducible(tw, parse_form(tw, "x^5*y + y^5*z + z^5*x")));

  std::mt19937 rng(45);
  // visible factors over GF(3)
  CHECK_FALSE(is_geometrically_irreducible(
      tw, tf_mul(tw, parse_form(tw, "z"), random_form(tw, 5, rng))));
  CHECK_FALSE(is_geometrically_irreducible(
      tw, tf_mul(tw, parse_form(tw, "x^2 + y^2 + z^2"), random_form(tw, 4, rng))));
  CHECK_FALSE(is_geometrically_irreducible(
      tw, tf_mul(tw, random_form(tw, 3, rng), random_form(tw, 3, rng))));

  // norm of a GF(9) cubic: irreducible over GF(3), reducible geometrically
  const FieldCtx& c2 = tw.ctx(2);
  TernaryForm cub = tf_zero(2, 3);
  tf_set(tw, cub, {3, 0, 0}, c2.one());
  tf_set(tw, cub, {0, 3, 0}, c2.gen());
  tf_set(tw, cub, {0, 0, 3}, c2.mul(c2.gen(), c2.gen()));
  tf_set(tw, cub, {1, 1, 1}, c2.gen());
  TernaryForm norm9 = project_form(tw, tf_mul(tw, cub, conjugate_form(tw, cub)));
  CHECK_FALSE(is_geometrically_irreducible(tw, norm9));

  // norm of a GF(27) conic
  const FieldCtx& c3 = tw.ctx(3);
  TernaryForm con = tf_zero(3, 2);
  tf_set(tw, con, {2, 0, 0}, c3.one());
  tf_set(tw, con, {0, 2, 0}, c3.gen());
  tf_set(tw, con, {0, 1, 1}, c3.mul(c3.gen(), c3.gen()));
  tf_set(tw, con, {0, 0, 2}, c3.one());
  TernaryForm s1 = conjugate_form(tw, con);
  TernaryForm norm27 = project_form(tw, tf_mul(tw, tf_mul(tw, con, s1), conjugate_form(tw, s1)));
  CHECK_FALSE(is_geometrically_irreducible(tw, norm27));
}

TEST_CASE("Weil polynomial reconstruction from counts") {
  // ten eigenvalues all equal to -3
  CountVector tencubed;
  long long qm = 1;
  for (int m = 1; m <= 5; ++m) {
    qm *= 9;
    long long sm = 10;
    for (int i = 0; i < m; ++i) sm *= -3;
    tencubed.n[static_cast<size_t>(m - 1)] = qm + 1 - sm;
  }
  WeilPoly w = weil_from_counts(tencubed);
  WeilPoly expect = weil_of({{{3, 1}, 10}});
  CHECK(w == expect);
  CHECK(render_weil_factored(w) == "(t + 3)^10");

  // functional equation holds coefficient by coefficient
  long long scale = 1;
  for (int i = 4; i >= 0; --i) {
    scale *= 9;
    CHECK(w.c[static_cast<size_t>(i)] ==
          scale * w.c[static_cast<size_t>(10 - i)]);
  }
}

TEST_CASE("count vectors that cannot come from a genus-5 curve are rejected") {
  // Weil bound violation at m = 1
  CountVector bad1{};
  bad1.n = {9 + 1 - 31, 82, 730, 6562, 59050};
  CHECK_THROWS_AS(weil_from_counts(bad1), std::invalid_argument);

  // s1 = 1, s2 = 2 makes e2 = (s1^2 - s2)/2 non-integral
  CountVector bad2{};
  bad2.n = {9, 80, 730, 6562, 59050};
  CHECK_THROWS_AS(weil_from_counts(bad2), std::invalid_argument);

  // integral and inside every Weil bound, but with roots off |t| = 3:
  // (t^4 - 6t^3 + 28t^2 - 54t + 81)(t - 3)^2 (t + 3)^4
  WeilPoly off = weil_of({{{81, -54, 28, -6, 1}, 1}, {{-3, 1}, 2}, {{3, 1}, 4}});
  std::vector<long long> s = power_sums(off.c, 5);
  CountVector bad3{};
  long long qm = 1;
  for (int m = 1; m <= 5; ++m) {
    qm *= 9;
    long long bound = 10;
    for (int i = 0; i < m; ++i) bound *= 3;
    REQUIRE(std::llabs(s[static_cast<size_t>(m)]) <= bound);  // bounds pass...
    bad3.n[static_cast<size_t>(m - 1)] = qm + 1 - s[static_cast<size_t>(m)];
  }
  // ...but the circle test rejects it
  CHECK_THROWS_WITH_AS(weil_from_counts(bad3),
                       "point counts give a root off the Weil circle |t| = 3",
                       std::invalid_argument);
}

TEST_CASE("Weil polynomials of the reference curves") {
  FieldTower tw;
  TernaryForm f2 = parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4");
  SingularConfig c2 =
      five_node_config(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1 : z2^2 : z2^2)"});
  WeilPoly w2 = weil_polynomial(tw, f2, c2);
  CHECK(w2 == weil_of({{{9, 2, 1}, 1}, {{9, 5, 1}, 4}}));
  CHECK(render_weil_factored(w2) == "(t^2 + 2*t + 9) (t^2 + 5*t + 9)^4");

  TernaryForm f1 = parse_form(tw,
      "x^4*y^2 + x^3*y^3 + x^2*y^4 + x^4*y*z + x^3*y^2*z + 2*x^2*y^3*z + 2*x*y^4*z + "
      "2*x^2*y*z^3 + x*y^2*z^3 + x^2*z^4 + 2*x*y*z^4 + y^2*z^4");
  SingularConfig c1 =
      five_node_config(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:0)", "(1:2:1)"});
  WeilPoly w1 = weil_polynomial(tw, f1, c1);
  CHECK(w1 == weil_of({{{3, 1}, 6}, {{9, 2, 1}, 2}}));
  CHECK(render_weil_factored(w1) == "(t + 3)^6 (t^2 + 2*t + 9)^2");
}
