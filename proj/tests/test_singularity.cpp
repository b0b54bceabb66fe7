#include "genus5/singularity.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "genus5/flatfield.hpp"
#include "genus5/point_count.hpp"
#include "genus5/unipoly.hpp"

using namespace genus5;

namespace {

ProjPoint pt(const FieldTower& tw, const std::string& s) { return parse_point(tw, s); }

SingularConfig five_nodes(const FieldTower& tw, const std::vector<std::string>& reps) {
  std::vector<ConfigPoint> r;
  for (const auto& s : reps) r.push_back({pt(tw, s), 2});
  return config_from_orbit_reps(tw, SingCase::I, r, "", "");
}

// all points of P^2(F_{3^e}), canonically normalized
std::vector<ProjPoint> p2_points(const FieldTower& tw, int e) {
  const FieldCtx& c = tw.ctx(e);
  const long long q = static_cast<long long>(c.order()) + 1;
  std::vector<ProjPoint> pts;
  for (long long i = 0; i < q; ++i)
    for (long long j = 0; j < q; ++j)
      pts.push_back(make_point(tw, c.one(), flat_unpack(e, static_cast<uint16_t>(i)),
                               flat_unpack(e, static_cast<uint16_t>(j))));
  for (long long j = 0; j < q; ++j)
    pts.push_back(make_point(tw, c.zero(), c.one(), flat_unpack(e, static_cast<uint16_t>(j))));
  pts.push_back(make_point(tw, c.zero(), c.zero(), c.one()));
  return pts;
}

std::vector<ProjPoint> brute_singular(const FieldTower& tw, const TernaryForm& f, int e) {
  std::array<TernaryForm, 4> forms = {tf_embed(tw, f, e), tf_embed(tw, tf_partial(tw, f, 0), e),
                                      tf_embed(tw, tf_partial(tw, f, 1), e),
                                      tf_embed(tw, tf_partial(tw, f, 2), e)};
  std::vector<ProjPoint> out;
  for (const ProjPoint& p : p2_points(tw, e)) {
    GFElem x = tw.embed(p.x[0], e), y = tw.embed(p.x[1], e), z = tw.embed(p.x[2], e);
    bool sing = true;
    for (const auto& g : forms)
      if (!tf_eval(tw, g, x, y, z).is_zero()) {
        sing = false;
        break;
      }
    if (sing) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

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

BivarPoly binary_form(const FieldTower& tw, int k, int d, const std::vector<int>& coeffs) {
  BivarPoly h;
  h.k = k;
  for (int i = 0; i <= d; ++i)
    if (coeffs[static_cast<size_t>(i)] != 0)
      bv_set(h, d - i, i, tw.ctx(k).from_int(coeffs[static_cast<size_t>(i)]));
  return h;
}

// distinct projective roots of a nonzero binary form over F_{3^e}
int brute_p1_roots(const FieldTower& tw, const BivarPoly& h, int e) {
  const FieldCtx& c = tw.ctx(e);
  BivarPoly he = bv_embed(tw, h, e);
  int cnt = 0;
  for (long long i = 0; i <= static_cast<long long>(c.order()); ++i)
    if (bv_eval(tw, he, flat_unpack(e, static_cast<uint16_t>(i)), c.one()).is_zero()) ++cnt;
  if (bv_eval(tw, he, c.one(), c.zero()).is_zero()) ++cnt;
  return cnt;
}

}  // namespace

TEST_CASE("configuration validation accepts the mixed-degree five-node set") {
  FieldTower tw;
  SingularConfig c =
      five_nodes(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1 : z2^2 : z2^2)"});
  CHECK(c.points.size() == 5);
  // the degree-2 orbit is listed as both conjugates
  int rational = 0, quadratic = 0;
  for (const auto& cp : c.points) (cp.p.degree() == 1 ? rational : quadratic)++;
  CHECK(rational == 3);
  CHECK(quadratic == 2);

  std::vector<ConfigPoint> reps = config_orbit_reps(tw, c);
  CHECK(reps.size() == 4);
  SingularConfig again = config_from_orbit_reps(tw, SingCase::I, reps, "", "");
  CHECK(again.points == c.points);
}

TEST_CASE("configuration validation rejects malformed sets") {
  FieldTower tw;
  auto cfg = [&](std::vector<std::string> names, SingCase kase,
                 std::vector<int> mults = {}) {
    SingularConfig c;
    c.kase = kase;
    for (size_t i = 0; i < names.size(); ++i)
      c.points.push_back({pt(tw, names[i]), mults.empty() ? 2 : mults[i]});
    validate_config(tw, c);
  };

  // wrong cardinality
  CHECK_THROWS_AS(cfg({"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:0)"}, SingCase::I),
                  std::invalid_argument);
  // duplicate point
  CHECK_THROWS_AS(
      cfg({"(1:0:0)", "(1:0:0)", "(0:0:1)", "(1:1:0)", "(0:1:1)"}, SingCase::I),
      std::invalid_argument);
  // not Frobenius-stable: one quadratic point without its conjugate
  CHECK_THROWS_AS(
      cfg({"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:1)", "(1 : z2 : 0)"}, SingCase::I),
      std::invalid_argument);
  // four collinear points (all on z = 0)
  CHECK_THROWS_AS(
      cfg({"(1:0:0)", "(0:1:0)", "(1:1:0)", "(1:2:0)", "(0:0:1)"}, SingCase::I),
      std::invalid_argument);
  // case II: triple point must be rational
  CHECK_THROWS_AS(cfg({"(1 : z2 : 0)", "(1 : z2^3 : 0)", "(0:0:1)"}, SingCase::II,
                      {3, 2, 2}),
                  std::invalid_argument);
  // case II: collinear
  CHECK_THROWS_AS(cfg({"(0:0:1)", "(1:0:0)", "(1:0:1)"}, SingCase::II, {3, 2, 2}),
                  std::invalid_argument);
  // case II: fine
  SingularConfig ok;
  ok.kase = SingCase::II;
  ok.points = {{pt(tw, "(0:0:1)"), 3}, {pt(tw, "(1:0:0)"), 2}, {pt(tw, "(0:1:0)"), 2}};
  CHECK_NOTHROW(validate_config(tw, ok));
}

TEST_CASE("one blow-up resolves nodes, cusps and ordinary triple points") {
  FieldTower tw;
  ProjPoint origin = pt(tw, "(0:0:1)");

  // node: xy + higher order
  CHECK(one_blowup_resolves(tw, parse_form(tw, "x*y*z^4 + x^6 + y^6"), origin));
  // cusp y^2 = -x^3
  CHECK(one_blowup_resolves(tw, parse_form(tw, "y^2*z^4 + x^3*z^3"), origin));
  // tacnode y^2 = x^4: the strict transform keeps a double point
  CHECK_FALSE(one_blowup_resolves(tw, parse_form(tw, "y^2*z^4 + 2*x^4*z^2"), origin));
  CHECK_FALSE(one_blowup_resolves(tw, parse_form(tw, "y^2*z^4 + x^4*z^2"), origin));
  // ordinary triple point xy(x+y)
  CHECK(one_blowup_resolves(tw, parse_form(tw, "x^2*y*z^3 + x*y^2*z^3 + x^6 + y^6"), origin));
  // one cubic branch y^3 = -x^4: resolved by a single blow-up
  CHECK(one_blowup_resolves(tw, parse_form(tw, "y^3*z^3 + x^4*z^2"), origin));
  // two infinitely-near double points: y(y - x^2) needs more than one step
  CHECK_FALSE(one_blowup_resolves(tw, parse_form(tw, "y^2*z^4 + 2*x^2*y*z^3"), origin));

  // the same local shapes away from the chart origin
  ProjPoint other = pt(tw, "(1:2:1)");
  TernaryForm node = parse_form(tw, "x*y*z^4 + x^6 + y^6");
  std::array<std::array<GFElem, 3>, 3> mv;
  const FieldCtx& c1 = tw.ctx(1);
  int shift[3][3] = {{1, 0, 2}, {0, 1, 1}, {0, 0, 1}};  // sends (1:2:1) to (0:0:1)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mv[i][j] = c1.from_int(shift[i][j]);
  TernaryForm moved = tf_substitute(tw, node, mv);
  CHECK(multiplicity(tw, moved, other) == 2);
  CHECK(one_blowup_resolves(tw, moved, other));
}

TEST_CASE("singular locus of the five-node reference sextic") {
  FieldTower tw;
  TernaryForm f = parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4");
  SingularLocus loc = singular_locus(tw, f);
  CHECK(loc.off_tower_weight == 0);

  std::vector<ProjPoint> expect = {pt(tw, "(1:0:0)"), pt(tw, "(0:1:0)"), pt(tw, "(0:0:1)"),
                                   pt(tw, "(1 : z2^2 : z2^2)"), pt(tw, "(1 : z2^6 : z2^6)")};
  std::sort(expect.begin(), expect.end(), point_less);
  REQUIRE(loc.points.size() == 5);
  CHECK(loc.points == expect);

  for (const ProjPoint& p : loc.points) {
    CHECK(multiplicity(tw, f, p) == 2);
    CHECK(one_blowup_resolves(tw, f, p));
  }
}

TEST_CASE("singular locus agrees with exhaustive search") {
  FieldTower tw;
  std::mt19937 rng(20260814);
  int checked = 0, singular_cases = 0;

  for (int trial = 0; trial < 40; ++trial) {
    TernaryForm f = random_form(tw, 6, rng);
    SingularLocus loc;
    try {
      loc = singular_locus(tw, f);
    } catch (const PositiveDimensionalSingularLocus&) {
      continue;  // e.g. a random non-reduced form; not this test's subject
    }
    ++checked;
    if (!loc.points.empty()) ++singular_cases;
    for (int e = 1; e <= 4; ++e) {
      std::vector<ProjPoint> expect = brute_singular(tw, f, e);
      std::vector<ProjPoint> got;
      for (const ProjPoint& p : loc.points)
        if (e % p.degree() == 0) got.push_back(p);
      std::sort(got.begin(), got.end(), point_less);
      CHECK(got == expect);
    }
  }
  // products of a conic and a quartic: plenty of singular points, often of
  // higher degree
  for (int trial = 0; trial < 12; ++trial) {
    TernaryForm f =
        tf_mul(tw, parse_form(tw, "x^2 + y^2 + z^2"), random_form(tw, 4, rng));
    SingularLocus loc;
    try {
      loc = singular_locus(tw, f);
    } catch (const PositiveDimensionalSingularLocus&) {
      continue;
    }
    ++checked;
    ++singular_cases;
    CHECK(loc.points.size() >= 1);
    for (int e = 1; e <= 4; ++e) {
      std::vector<ProjPoint> expect = brute_singular(tw, f, e);
      std::vector<ProjPoint> got;
      for (const ProjPoint& p : loc.points)
        if (e % p.degree() == 0) got.push_back(p);
      std::sort(got.begin(), got.end(), point_less);
      CHECK(got == expect);
    }
  }
  CHECK(checked >= 40);
  CHECK(singular_cases >= 10);
}

TEST_CASE("positive-dimensional singular loci are reported, not returned") {
  FieldTower tw;
  TernaryForm conic = parse_form(tw, "x^2 + y^2 + z^2");
  TernaryForm cube = tf_mul(tw, tf_mul(tw, conic, conic), conic);
  CHECK_THROWS_AS(singular_locus(tw, cube), PositiveDimensionalSingularLocus);

  std::mt19937 rng(7);
  TernaryForm quartic = random_form(tw, 4, rng);
  // doubled line at infinity
  CHECK_THROWS_AS(singular_locus(tw, tf_mul(tw, parse_form(tw, "z^2"), quartic)),
                  PositiveDimensionalSingularLocus);
  // doubled affine vertical line
  TernaryForm v = parse_form(tw, "x^2 + x*z + z^2");  // (x - z)^2
  CHECK_THROWS_AS(singular_locus(tw, tf_mul(tw, v, quartic)),
                  PositiveDimensionalSingularLocus);
  // doubled skew line
  TernaryForm w = parse_form(tw, "x^2 + 2*x*y + y^2");  // (x + y)^2
  CHECK_THROWS_AS(singular_locus(tw, tf_mul(tw, w, quartic)),
                  PositiveDimensionalSingularLocus);
}

TEST_CASE("tangent cone adjustments") {
  FieldTower tw;
  // split node XY: both directions rational
  BivarPoly split = binary_form(tw, 1, 2, {0, 1, 0});
  // X^2 + Y^2: irreducible over GF(3), splits over GF(9)
  BivarPoly aniso = binary_form(tw, 1, 2, {1, 0, 1});
  // double direction X^2
  BivarPoly dbl = binary_form(tw, 1, 2, {1, 0, 0});
  for (int e = 1; e <= 10; ++e) {
    CHECK(tangent_adjustment(tw, split, e) == 1);
    CHECK(tangent_adjustment(tw, aniso, e) == (e % 2 == 0 ? 1 : -1));
    CHECK(tangent_adjustment(tw, dbl, e) == 0);
  }
  // ordinary triple point XY(X+Y)
  BivarPoly tri = binary_form(tw, 1, 3, {0, 1, 1, 0});
  CHECK(tangent_adjustment(tw, tri, 1) == 2);
  // Y^3: one direction
  CHECK(tangent_adjustment(tw, binary_form(tw, 1, 3, {0, 0, 0, 1}), 1) == 0);

  CHECK_THROWS_AS(tangent_adjustment(tw, binary_form(tw, 1, 4, {1, 0, 0, 0, 1}), 1),
                  std::invalid_argument);
  // a GF(9) cone is only defined over even extensions
  BivarPoly q9 = binary_form(tw, 2, 2, {1, 0, 1});
  CHECK_THROWS_AS(tangent_adjustment(tw, q9, 3), std::invalid_argument);

  // exhaustive comparison against P^1 root counts
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + trial % 2;
    int k = (trial % 3 == 2) ? 2 : 1;
    std::vector<int> coeffs(static_cast<size_t>(d) + 1);
    int nz = 0;
    for (auto& v : coeffs) nz += (v = coef(rng)) != 0;
    if (!nz) continue;
    BivarPoly h;
    h.k = k;
    const FieldCtx& ck = tw.ctx(k);
    for (int i = 0; i <= d; ++i)
      if (coeffs[static_cast<size_t>(i)])
        bv_set(h, d - i, i, ck.pow(ck.gen(), static_cast<uint64_t>(coeffs[static_cast<size_t>(i)] + trial)));
    if (h.is_zero()) continue;
    for (int e = k; e <= 6; e += k)
      CHECK(tangent_adjustment(tw, h, e) == brute_p1_roots(tw, h, e) - 1);
  }
}

TEST_CASE("singular point report") {
  FieldTower tw;
  TernaryForm f = parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4");
  SingularPointReport rep = analyze_singular_point(tw, f, pt(tw, "(0:0:1)"));
  CHECK(rep.mult == 2);
  CHECK(rep.resolved_in_one_blowup);
  CHECK(bv_min_total_degree(rep.tangent_cone) == 2);
  REQUIRE(rep.adjustment_table.size() == 10);
  for (int e = 1; e <= 10; ++e) {
    REQUIRE(rep.adjustment_table.count(e) == 1);
    if (e <= 6)  // brute force stays cheap
      CHECK(rep.adjustment_table.at(e) == brute_p1_roots(tw, rep.tangent_cone, e) - 1);
  }

  SingularPointReport quad = analyze_singular_point(tw, f, pt(tw, "(1 : z2^2 : z2^2)"));
  CHECK(quad.mult == 2);
  CHECK(quad.resolved_in_one_blowup);
  // tabulated only at multiples of the point degree
  CHECK(quad.adjustment_table.size() == 5);
  CHECK(quad.adjustment_table.count(2) == 1);
  CHECK(quad.adjustment_table.count(3) == 0);
}

TEST_CASE("non-special certificate accepts the reference curves") {
  FieldTower tw;
  TernaryForm f2 = parse_form(tw, "x^2*y^4 + x^4*y*z + 2*y^4*z^2 + x^2*z^4 + 2*y^2*z^4");
  SingularConfig c2 =
      five_nodes(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1 : z2^2 : z2^2)"});
  NonSpecialResult r2 = non_special_check(tw, f2, c2);
  CHECK(r2.ok);
  CHECK(r2.reason.empty());

  TernaryForm f1 = parse_form(tw,
      "x^4*y^2 + x^3*y^3 + x^2*y^4 + x^4*y*z + x^3*y^2*z + 2*x^2*y^3*z + 2*x*y^4*z + "
      "2*x^2*y*z^3 + x*y^2*z^3 + x^2*z^4 + 2*x*y*z^4 + y^2*z^4");
  SingularConfig c1 =
      five_nodes(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:0)", "(1:2:1)"});
  CHECK(non_special_check(tw, f1, c1).ok);

  // the same curve against the wrong five points
  SingularConfig wrong =
      five_nodes(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1:1:0)", "(0:1:1)"});
  NonSpecialResult bad = non_special_check(tw, f1, wrong);
  CHECK_FALSE(bad.ok);
  CHECK(!bad.reason.empty());
  // skipping the multiplicity stage still fails, now at the locus comparison
  NonSpecialOptions skip;
  skip.check_multiplicities = false;
  CHECK_FALSE(non_special_check(tw, f1, wrong, skip).ok);
}

TEST_CASE("non-special certificate rejects degenerate inputs") {
  FieldTower tw;
  SingularConfig c =
      five_nodes(tw, {"(1:0:0)", "(0:1:0)", "(0:0:1)", "(1 : z2^2 : z2^2)"});

  TernaryForm conic = parse_form(tw, "x^2 + y^2 + z^2");
  TernaryForm cube = tf_mul(tw, tf_mul(tw, conic, conic), conic);
  // skip the multiplicity stage so the locus computation is what rejects it
  NonSpecialOptions skip;
  skip.check_multiplicities = false;
  NonSpecialResult r = non_special_check(tw, cube, c, skip);
  CHECK_FALSE(r.ok);
  CHECK(r.reason.find("positive-dimensional") != std::string::npos);
  CHECK_FALSE(non_special_check(tw, cube, c).ok);

  // a smooth sextic has the wrong locus
  std::mt19937 srng(6001);
  TernaryForm smooth = random_form(tw, 6, srng);
  SingularLocus sl = singular_locus(tw, smooth);
  CHECK(sl.points.empty());
  CHECK(sl.off_tower_weight == 0);
  CHECK_FALSE(non_special_check(tw, smooth, c).ok);

  // this classical sextic is singular in characteristic 3: one rational node
  // and a six-point conjugate orbit
  TernaryForm cyc = parse_form(tw, "x^5*y + y^5*z + z^5*x");
  SingularLocus cl = singular_locus(tw, cyc);
  CHECK(cl.points.size() == 7);
  CHECK(cl.off_tower_weight == 0);
  int deg6 = 0;
  for (const ProjPoint& p : cl.points) deg6 += p.degree() == 6;
  CHECK(deg6 == 6);
}
