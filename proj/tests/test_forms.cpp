#include <doctest.h>

#include <random>

#include "genus5/forms.hpp"
#include "testutil.hpp"

using namespace genus5;
using testutil::tower;

namespace {

TernaryForm random_form(const FieldTower& tw, int k, int d, std::mt19937_64& rng) {
  TernaryForm f = tf_zero(k, d);
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) {
      GFElem v = testutil::random_elem(tw, k, rng);
      if (!v.is_zero()) tf_set(tw, f, Mono3{(uint8_t)a, (uint8_t)b, (uint8_t)(d - a - b)}, v);
    }
  return f;
}

}  // namespace

TEST_CASE("sextic monomial layout is graded-lex and self-inverse") {
  const auto& tab = sextic_monomials();
  CHECK(tab.front() == Mono3{6, 0, 0});
  CHECK(tab[1] == Mono3{5, 1, 0});
  CHECK(tab[2] == Mono3{5, 0, 1});
  CHECK(tab.back() == Mono3{0, 0, 6});
  for (int i = 0; i < 28; ++i) {
    auto m = tab[static_cast<size_t>(i)];
    CHECK(sextic_index(m[0], m[1], m[2]) == i);
    if (i > 0) CHECK(tab[static_cast<size_t>(i - 1)] > m);  // strictly descending lex
  }
}

TEST_CASE("form arithmetic: known product and evaluation homomorphism") {
  const FieldTower& tw = tower();
  std::mt19937_64 rng(31);
  // (x + y)(x + 2y) = x^2 + 2y^2 over GF(3)
  TernaryForm a = tf_make(tw, 1, {{1, 0, 0, 1}, {0, 1, 0, 1}});
  TernaryForm b = tf_make(tw, 1, {{1, 0, 0, 1}, {0, 1, 0, 2}});
  CHECK(tf_mul(tw, a, b) == tf_make(tw, 1, {{2, 0, 0, 1}, {0, 2, 0, 2}}));
  for (int it = 0; it < 20; ++it) {
    TernaryForm f = random_form(tw, 2, 3, rng);
    TernaryForm g = random_form(tw, 2, 2, rng);
    GFElem x = testutil::random_elem(tw, 2, rng);
    GFElem y = testutil::random_elem(tw, 2, rng);
    GFElem z = testutil::random_elem(tw, 2, rng);
    const FieldCtx& c = tw.ctx(2);
    CHECK(tf_eval(tw, tf_mul(tw, f, g), x, y, z) ==
          c.mul(tf_eval(tw, f, x, y, z), tf_eval(tw, g, x, y, z)));
    CHECK(tf_eval(tw, tf_add(tw, f, random_form(tw, 2, 3, rng)), x, y, z).deg == 2);
  }
}

TEST_CASE("partials follow the product rule") {
  const FieldTower& tw = tower();
  std::mt19937_64 rng(32);
  for (int var = 0; var < 3; ++var) {
    TernaryForm f = random_form(tw, 1, 3, rng);
    TernaryForm g = random_form(tw, 1, 2, rng);
    TernaryForm lhs = tf_partial(tw, tf_mul(tw, f, g), var);
    TernaryForm rhs = tf_add(tw, tf_mul(tw, tf_partial(tw, f, var), g),
                             tf_mul(tw, f, tf_partial(tw, g, var)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("coefficient vector round-trip in the canonical layout") {
  const FieldTower& tw = tower();
  std::mt19937_64 rng(33);
  TernaryForm f = random_form(tw, 1, 6, rng);
  CHECK(tf_from_vec28(tw, tf_to_vec28(tw, f)) == f);
  auto v = tf_to_vec28(tw, f);
  CHECK(v.size() == 28);
  CHECK(v[0] == tf_coeff(tw, f, Mono3{6, 0, 0}));
  CHECK(v[27] == tf_coeff(tw, f, Mono3{0, 0, 6}));
}

TEST_CASE("projective points normalize, compress and order") {
  const FieldTower& tw = tower();
  const FieldCtx& c1 = tw.ctx(1);
  const FieldCtx& c2 = tw.ctx(2);
  ProjPoint p = make_point(tw, c1.from_int(2), c1.zero(), c1.one());
  CHECK(p.x[0] == c1.one());
  CHECK(p.x[1].is_zero());
  CHECK(p.x[2] == c1.from_int(2));
  // proportional coordinates over GF(9) compress to a GF(3) point
  ProjPoint q = make_point(tw, c2.gen(), c2.zero(), c2.gen());
  CHECK(q.degree() == 1);
  CHECK(q == make_point(tw, c1.one(), c1.zero(), c1.one()));
  // a genuinely quadratic point keeps degree 2 and its Frobenius differs
  ProjPoint r = make_point(tw, c2.one(), c2.gen(), c2.zero());
  CHECK(r.degree() == 2);
  CHECK(point_frobenius(tw, r) != r);
  CHECK(point_orbit(tw, r).size() == 2);
  CHECK(parse_point(tw, render_point(tw, r)) == r);
  CHECK(render_point(tw, p) == "(1:0:2)");
  CHECK(parse_point(tw, "(1 : z2 : 0)") == point_frobenius(tw, r, 0));
}

TEST_CASE("collinearity detects degenerate triples") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  ProjPoint e0 = make_point(tw, c.one(), c.zero(), c.zero());
  ProjPoint e1 = make_point(tw, c.zero(), c.one(), c.zero());
  ProjPoint e2 = make_point(tw, c.zero(), c.zero(), c.one());
  ProjPoint d = make_point(tw, c.one(), c.one(), c.zero());
  CHECK(points_collinear(tw, e0, e1, d));
  CHECK_FALSE(points_collinear(tw, e0, e1, e2));
}

TEST_CASE("Taylor expansion at a point: shift, multiplicity, graded parts") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  // cuspidal cubic y^2 z - x^3 at (0:0:1): expansion Y^2 - X^3 in chart z
  TernaryForm cusp = tf_make(tw, 1, {{0, 2, 1, 1}, {3, 0, 0, -1}});
  ProjPoint origin = make_point(tw, c.zero(), c.zero(), c.one());
  BivarPoly t = taylor_at(tw, cusp, origin);
  CHECK(bv_min_total_degree(t) == 2);
  CHECK(bv_coeff(tw, t, 0, 2) == c.one());
  CHECK(bv_coeff(tw, t, 3, 0) == c.from_int(2));
  CHECK(t.t.size() == 2);
  // smooth point of x^2 + yz at (1:1:2): expansion has multiplicity 1 and
  // degree-1 part 2X + Y (X = y - 1, Y = z - 2)
  TernaryForm f = tf_make(tw, 1, {{2, 0, 0, 1}, {0, 1, 1, 1}});
  ProjPoint p = make_point(tw, c.one(), c.one(), c.from_int(2));
  REQUIRE(tf_eval(tw, f, p.x[0], p.x[1], p.x[2]).is_zero());
  BivarPoly s = taylor_at(tw, f, p);
  CHECK(multiplicity_at(tw, f, p) == 1);
  BivarPoly lin = bv_graded_piece(s, 1);
  CHECK(bv_coeff(tw, lin, 1, 0) == c.from_int(2));
  CHECK(bv_coeff(tw, lin, 0, 1) == c.one());
  // off-curve point has multiplicity 0
  ProjPoint off = make_point(tw, c.one(), c.zero(), c.zero());
  CHECK(multiplicity_at(tw, f, off) == 0);
  // the expansion evaluates consistently: f(p + (u, v)) = t(u, v)
  std::mt19937_64 rng(7);
  for (int it = 0; it < 10; ++it) {
    GFElem u = testutil::random_elem(tw, 2, rng);
    GFElem v = testutil::random_elem(tw, 2, rng);
    const FieldCtx& c2 = tw.ctx(2);
    GFElem lhs = tf_eval(tw, f, tw.embed(p.x[0], 2), c2.add(tw.embed(p.x[1], 2), u),
                         c2.add(tw.embed(p.x[2], 2), v));
    CHECK(lhs == bv_eval(tw, s, u, v));
  }
}

TEST_CASE("blow-up strict transforms of a node and a cusp") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  // node: y^2 z - x^3 - x^2 z at (0:0:1); tangent cone Y^2 - X^2 splits
  TernaryForm node = tf_make(tw, 1, {{0, 2, 1, 1}, {3, 0, 0, -1}, {2, 0, 1, -1}});
  ProjPoint origin = make_point(tw, c.zero(), c.zero(), c.one());
  BivarPoly t = taylor_at(tw, node, origin);
  REQUIRE(bv_min_total_degree(t) == 2);
  // chart 1: Z^2 - X - 1 (from (ZX)^2 - X^3 - X^2 over X^2), smooth
  BivarPoly ch1 = bv_blowup_chart1(t, 2);
  CHECK(bv_coeff(tw, ch1, 0, 2) == c.one());
  CHECK(bv_coeff(tw, ch1, 1, 0) == c.from_int(2));
  CHECK(bv_coeff(tw, ch1, 0, 0) == c.from_int(2));
  // exceptional points in chart 1: Z^2 = 1 at X = 0, i.e. Z = 1, 2
  UniPoly excep = bv_restrict_x1(tw, bv_graded_piece(t, 2));
  CHECK(up_count_roots(tw, excep, 1) == 2);
  // cusp: tangent cone Y^2, one exceptional point, strict transform stays smooth
  TernaryForm cusp = tf_make(tw, 1, {{0, 2, 1, 1}, {3, 0, 0, -1}});
  BivarPoly tc = taylor_at(tw, cusp, origin);
  BivarPoly c1 = bv_blowup_chart1(tc, 2);  // Z^2 - X
  CHECK(bv_coeff(tw, c1, 0, 2) == c.one());
  CHECK(bv_coeff(tw, c1, 1, 0) == c.from_int(2));
}

TEST_CASE("line restriction and divisibility") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  std::mt19937_64 rng(55);
  // F = (x + y + z) * quintic vanishes on the line through any two of its
  // points
  (void)rng;
  TernaryForm line = tf_make(tw, 1, {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}});
  TernaryForm quintic = tf_make(tw, 1, {{5, 0, 0, 1}, {4, 1, 0, 1}, {0, 0, 5, 1}});
  TernaryForm f = tf_mul(tw, line, quintic);
  ProjPoint p = make_point(tw, c.one(), c.from_int(2), c.zero());
  ProjPoint q = make_point(tw, c.one(), c.zero(), c.from_int(2));
  CHECK(line_through_divides(tw, f, p, q));
  CHECK(form_divides(tw, line, f));
  TernaryForm g = tf_add(tw, f, tf_make(tw, 1, {{0, 0, 6, 1}}));
  CHECK_FALSE(form_divides(tw, line, g));
  CHECK_FALSE(line_through_divides(tw, g, p, q));
  // divisibility by a quadratic point's line needs the conjugate pair
  const FieldCtx& c2 = tw.ctx(2);
  ProjPoint r = make_point(tw, c2.one(), c2.gen(), c2.zero());
  CHECK_FALSE(line_through_divides(tw, f, r, point_frobenius(tw, r)));
}

TEST_CASE("linear substitution acts compatibly with evaluation") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  std::mt19937_64 rng(66);
  TernaryForm f = random_form(tw, 1, 4, rng);
  std::array<std::array<GFElem, 3>, 3> m;
  for (auto& row : m)
    for (auto& e : row) e = testutil::random_elem(tw, 1, rng);
  m[0][0] = c.one();
  m[1][1] = c.one();
  m[2][2] = c.one();  // ensure invertibility is irrelevant to the identity
  TernaryForm g = tf_substitute(tw, f, m);
  for (int it = 0; it < 10; ++it) {
    GFElem x = testutil::random_elem(tw, 2, rng);
    GFElem y = testutil::random_elem(tw, 2, rng);
    GFElem z = testutil::random_elem(tw, 2, rng);
    const FieldCtx& c2 = tw.ctx(2);
    auto dot = [&](int i) {
      GFElem acc = c2.zero();
      const GFElem* v[3] = {&x, &y, &z};
      for (int j = 0; j < 3; ++j)
        acc = c2.add(acc, c2.mul(tw.embed(m[static_cast<size_t>(i)][static_cast<size_t>(j)], 2),
                                 *v[static_cast<size_t>(j)]));
      return acc;
    };
    CHECK(tf_eval(tw, g, x, y, z) == tf_eval(tw, f, dot(0), dot(1), dot(2)));
  }
}

TEST_CASE("form parsing and rendering round-trip") {
  const FieldTower& tw = tower();
  std::mt19937_64 rng(77);
  TernaryForm f = random_form(tw, 1, 6, rng);
  CHECK(parse_form(tw, render_form(tw, f)) == f);
  // compact exponent style without stars or carets
  TernaryForm g = parse_form(tw, "x6 + 2x4y2 + x2y2z2 + z6");
  CHECK(tf_coeff(tw, g, Mono3{6, 0, 0}) == tw.ctx(1).one());
  CHECK(tf_coeff(tw, g, Mono3{4, 2, 0}) == tw.ctx(1).from_int(2));
  CHECK(tf_coeff(tw, g, Mono3{2, 2, 2}) == tw.ctx(1).one());
  CHECK(parse_form(tw, "x^6 + 2*x^4*y^2 + x^2*y^2*z^2 + z^6") == g);
}

TEST_CASE("quadric evaluation, gradient and shear") {
  const FieldTower& tw = tower();
  const FieldCtx& c = tw.ctx(1);
  std::mt19937_64 rng(88);
  QuinaryQuadric q = qq_make(tw, 1, {{0, 4, 1}, {0, 1, 2}, {1, 2, 1}, {2, 2, 2}, {3, 3, 1}});
  CHECK(parse_quadric(tw, render_quadric(tw, q)) == q);
  // gradient matches finite differences of the quadratic part
  std::array<GFElem, 5> x;
  for (auto& e : x) e = testutil::random_elem(tw, 1, rng);
  auto grad = qq_gradient(tw, q, x);
  for (int i = 0; i < 5; ++i) {
    std::array<GFElem, 5> xp = x;
    xp[static_cast<size_t>(i)] = c.add(xp[static_cast<size_t>(i)], c.one());
    // f(x + e_i) - f(x) = grad_i(x) + coeff(x_i^2)
    GFElem diff = c.sub(qq_eval(tw, q, xp), qq_eval(tw, q, x));
    GFElem expect = c.add(grad[static_cast<size_t>(i)],
                          q.qc[static_cast<size_t>(i)][static_cast<size_t>(i)]);
    CHECK(diff == expect);
  }
  // shear x0 -> x0 + phi, x4 -> x4 + psi agrees with direct evaluation
  TernaryForm phi = tf_make(tw, 1, {{1, 0, 0, 1}, {0, 0, 1, 2}});
  TernaryForm psi = tf_make(tw, 1, {{0, 1, 0, 2}});
  QuinaryQuadric sh = qq_shear(tw, q, phi, psi);
  CHECK(sh.qc[0][0].is_zero());
  CHECK(sh.qc[4][4].is_zero());
  for (int it = 0; it < 20; ++it) {
    for (auto& e : x) e = testutil::random_elem(tw, 1, rng);
    std::array<GFElem, 5> y = x;
    y[0] = c.add(y[0], tf_eval(tw, phi, x[1], x[2], x[3]));
    y[4] = c.add(y[4], tf_eval(tw, psi, x[1], x[2], x[3]));
    CHECK(qq_eval(tw, sh, x) == qq_eval(tw, q, y));
  }
}

TEST_CASE("resultant eliminating one bivariate variable") {
  const FieldTower& tw = testutil::tower();
  const FieldCtx& c9 = tw.ctx(2);
  // Res_t(t - a, t - b) = b - a, with t the second variable
  {
    GFElem a = c9.make({2, 1});
    GFElem b = c9.make({1, 2});
    BivarPoly f, g;
    f.k = g.k = 2;
    bv_set(f, 0, 1, c9.one());
    bv_set(f, 0, 0, c9.neg(a));
    bv_set(g, 0, 1, c9.one());
    bv_set(g, 0, 0, c9.neg(b));
    UniPoly r = bv_resultant_y(tw, f, g);
    REQUIRE(r.degree() == 0);
    CHECK(r.c[0] == c9.sub(b, a));
  }
  // Res_t(t^2 - u, t - 1) = 1 - u, keeping u as the first variable
  {
    const FieldCtx& c3 = tw.ctx(1);
    BivarPoly f, g;
    f.k = g.k = 1;
    bv_set(f, 0, 2, c3.one());
    bv_set(f, 1, 0, c3.neg(c3.one()));
    bv_set(g, 0, 1, c3.one());
    bv_set(g, 0, 0, c3.neg(c3.one()));
    UniPoly r = bv_resultant_y(tw, f, g);
    UniPoly expect = up_make(tw, 1, {1, 2});  // 1 - u = 1 + 2u over GF(3)
    CHECK(r == expect);
  }
  // Res(f, f) = 0 for f nonconstant
  {
    BivarPoly f;
    f.k = 1;
    bv_set(f, 2, 1, tw.ctx(1).one());
    bv_set(f, 0, 2, tw.ctx(1).one());
    bv_set(f, 1, 0, tw.ctx(1).make({2}));
    CHECK(bv_resultant_y(tw, f, f).is_zero());
    CHECK(bv_resultant_x(tw, f, f).is_zero());
  }
  // both inputs constant in the eliminated variable
  {
    BivarPoly f, g;
    f.k = g.k = 1;
    bv_set(f, 3, 0, tw.ctx(1).one());
    bv_set(g, 1, 0, tw.ctx(1).make({2}));
    CHECK_THROWS_AS((void)bv_resultant_y(tw, f, g), std::invalid_argument);
  }
}

TEST_CASE("resultant vanishes exactly at parameters with a common root") {
  // f = (y - x)(y - 2), g = (y - x^2): common root at y = x iff x = x^2,
  // i.e. x in {0, 1}, or at y = 2 iff x^2 = 2 (no F_3 solution; it is the
  // irreducible factor x^2 + 1).  The resultant must vanish exactly there.
  const FieldTower& tw = testutil::tower();
  const FieldCtx& c = tw.ctx(1);
  BivarPoly ymx, ym2, f, g;
  ymx.k = ym2.k = g.k = 1;
  bv_set(ymx, 0, 1, c.one());
  bv_set(ymx, 1, 0, c.neg(c.one()));
  bv_set(ym2, 0, 1, c.one());
  bv_set(ym2, 0, 0, c.make({1}));  // y + 1 = y - 2
  f = bv_mul(tw, ymx, ym2);
  bv_set(g, 0, 1, c.one());
  bv_set(g, 2, 0, c.neg(c.one()));
  UniPoly r = bv_resultant_y(tw, f, g);
  REQUIRE(!r.is_zero());
  // roots in GF(9): x = 0, 1, and the two square roots of 2
  CHECK(up_count_roots(tw, r, 1) == 2);
  CHECK(up_count_roots(tw, r, 2) == 4);
  // degree bound: deg_x f * deg_y g + deg_y f * deg_x g is generous; exact
  // Sylvester degree here is 2*1 + 2*2 = 6 at most
  CHECK(r.degree() <= 6);
}

TEST_CASE("bivariate partial evaluation and dehomogenization") {
  const FieldTower& tw = testutil::tower();
  const FieldCtx& c9 = tw.ctx(2);
  std::mt19937_64 rng(4242);
  TernaryForm f = tf_make(tw, 1, {{4, 2, 0, 1}, {2, 1, 3, 2}, {0, 0, 6, 1}, {1, 1, 4, 2}});
  BivarPoly b = tf_dehomogenize(tw, f, 2);  // F(x, y, 1)
  for (int it = 0; it < 40; ++it) {
    GFElem x0 = testutil::random_elem(tw, 2, rng);
    GFElem y0 = testutil::random_elem(tw, 2, rng);
    GFElem direct = tf_eval(tw, f, x0, y0, c9.one());
    CHECK(bv_eval(tw, b, x0, y0) == direct);
    UniPoly fy = bv_eval_x(tw, b, x0);  // polynomial in y
    CHECK(up_eval(tw, fy, y0) == direct);
    UniPoly fx = bv_eval_y(tw, b, y0);  // polynomial in x
    CHECK(up_eval(tw, fx, x0) == direct);
  }
  // chart consistency: dehomogenize in y, evaluate at (x, z)
  BivarPoly by = tf_dehomogenize(tw, f, 1);
  for (int it = 0; it < 10; ++it) {
    GFElem x0 = testutil::random_elem(tw, 2, rng);
    GFElem z0 = testutil::random_elem(tw, 2, rng);
    CHECK(bv_eval(tw, by, x0, z0) == tf_eval(tw, f, x0, c9.one(), z0));
  }
}
