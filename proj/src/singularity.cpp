#include "genus5/singularity.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>

#include "genus5/point_count.hpp"
#include "genus5/unipoly.hpp"

namespace genus5 {

// ---------------------------------------------------------------------------
// configurations

void validate_config(const FieldTower& tw, const SingularConfig& c) {
  if (c.kase == SingCase::I) {
    if (c.points.size() != 5) throw std::invalid_argument("case I configuration needs five points");
    for (const auto& cp : c.points)
      if (cp.mult != 2)
        throw std::invalid_argument("case I configuration points must all have multiplicity 2");
  } else {
    if (c.points.size() != 3)
      throw std::invalid_argument("case II configuration needs three points");
    int triples = 0;
    for (const auto& cp : c.points) {
      if (cp.mult == 3) {
        ++triples;
        if (cp.p.degree() != 1)
          throw std::invalid_argument("case II triple point must be rational");
      } else if (cp.mult != 2) {
        throw std::invalid_argument("case II multiplicities must be (3,2,2)");
      }
    }
    if (triples != 1) throw std::invalid_argument("case II needs exactly one triple point");
  }

  for (size_t i = 0; i < c.points.size(); ++i)
    for (size_t j = i + 1; j < c.points.size(); ++j)
      if (c.points[i].p == c.points[j].p)
        throw std::invalid_argument("configuration points must be distinct");

  // Frobenius stability as a multiset (multiplicities must follow conjugation)
  for (const auto& cp : c.points) {
    ProjPoint img = point_frobenius(tw, cp.p);
    bool found = false;
    for (const auto& other : c.points)
      if (other.p == img && other.mult == cp.mult) {
        found = true;
        break;
      }
    if (!found)
      throw std::invalid_argument("configuration is not Frobenius-stable: missing conjugate of " +
                                  render_point(tw, cp.p));
  }

  // general position
  if (c.kase == SingCase::I) {
    const auto& P = c.points;
    for (size_t a = 0; a < 5; ++a)
      for (size_t b = a + 1; b < 5; ++b)
        for (size_t d = b + 1; d < 5; ++d)
          for (size_t e = d + 1; e < 5; ++e)
            if (points_collinear(tw, P[a].p, P[b].p, P[d].p) &&
                points_collinear(tw, P[a].p, P[b].p, P[e].p))
              throw std::invalid_argument("case I configuration has four collinear points");
  } else {
    if (points_collinear(tw, c.points[0].p, c.points[1].p, c.points[2].p))
      throw std::invalid_argument("case II configuration points are collinear");
  }
}

std::vector<ConfigPoint> config_orbit_reps(const FieldTower& tw, const SingularConfig& c) {
  std::vector<ConfigPoint> reps;
  std::vector<bool> seen(c.points.size(), false);
  for (size_t i = 0; i < c.points.size(); ++i) {
    if (seen[i]) continue;
    ProjPoint rep = c.points[i].p;
    for (const ProjPoint& q : point_orbit(tw, c.points[i].p)) {
      for (size_t j = 0; j < c.points.size(); ++j)
        if (c.points[j].p == q) seen[j] = true;
      if (point_less(q, rep)) rep = q;
    }
    reps.push_back({rep, c.points[i].mult});
  }
  std::sort(reps.begin(), reps.end(),
            [](const ConfigPoint& a, const ConfigPoint& b) { return point_less(a.p, b.p); });
  return reps;
}

SingularConfig config_from_orbit_reps(const FieldTower& tw, SingCase kase,
                                      const std::vector<ConfigPoint>& reps,
                                      std::string orbit_pattern, std::string provenance) {
  SingularConfig c;
  c.kase = kase;
  c.orbit_pattern = std::move(orbit_pattern);
  c.provenance = std::move(provenance);
  for (const auto& rep : reps)
    for (const ProjPoint& q : point_orbit(tw, rep.p)) c.points.push_back({q, rep.mult});
  std::sort(c.points.begin(), c.points.end(),
            [](const ConfigPoint& a, const ConfigPoint& b) { return point_less(a.p, b.p); });
  validate_config(tw, c);
  return c;
}

// ---------------------------------------------------------------------------
// blow-up resolution

bool one_blowup_resolves(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p) {
  BivarPoly g = taylor_at(tw, f, p);
  int m = bv_min_total_degree(g);
  if (m < 2) throw std::invalid_argument("one_blowup_resolves needs a point of multiplicity >= 2");
  const int k = g.k;
  const GFElem zero = tw.ctx(k).zero();

  // Chart 1 covers every direction but (0:1).  A singular point of the strict
  // transform over P exists there iff G(0,Z), dG/dX(0,Z), dG/dZ(0,Z) share a
  // root in the closure, i.e. their gcd is nonconstant.
  BivarPoly G = bv_blowup_chart1(g, m);
  UniPoly g0 = bv_eval_x(tw, G, zero);
  UniPoly u = bv_eval_x(tw, bv_partial(tw, G, 0), zero);
  UniPoly w = up_derivative(tw, g0);
  UniPoly common = up_gcd(tw, up_gcd(tw, g0, u), w);
  if (common.is_zero() || common.degree() >= 1) return false;

  // Chart 2 adds only the direction (0:1) — its origin.
  BivarPoly G2 = bv_blowup_chart2(g, m);
  if (!bv_eval(tw, G2, zero, zero).is_zero()) return true;
  GFElem d1 = bv_eval(tw, bv_partial(tw, G2, 0), zero, zero);
  GFElem d2 = bv_eval(tw, bv_partial(tw, G2, 1), zero, zero);
  return !(d1.is_zero() && d2.is_zero());
}

// ---------------------------------------------------------------------------
// singular locus

namespace {

// Polynomials over T = GF(3)[x]/(w), dense in y.  w need not be irreducible:
// whenever an inversion meets a zero divisor, the modulus splits and the
// computation recurses on the factors, as in equal-degree splitting.
struct DynPoly {
  std::vector<UniPoly> c;

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
};

void dyn_trim(DynPoly& f) {
  while (!f.c.empty() && f.c.back().is_zero()) f.c.pop_back();
}

DynPoly dyn_reduce(const FieldTower& tw, DynPoly f, const UniPoly& w) {
  for (auto& e : f.c) e = up_mod(tw, e, w);
  dyn_trim(f);
  return f;
}

// A(x, y) with x sent to the residue class of x mod w.
DynPoly dyn_from_bivar(const FieldTower& tw, const BivarPoly& a, const UniPoly& w) {
  DynPoly out;
  int dy = bv_degree_y(a);
  if (dy < 0) return out;
  out.c.assign(static_cast<size_t>(dy) + 1, up_zero(1));
  for (const auto& [ij, v] : a.t) {
    UniPoly mono = up_zero(1);
    mono.c.assign(static_cast<size_t>(ij.first) + 1, tw.ctx(1).zero());
    mono.c.back() = v;
    out.c[static_cast<size_t>(ij.second)] = up_add(tw, out.c[static_cast<size_t>(ij.second)], mono);
  }
  return dyn_reduce(tw, std::move(out), w);
}

// Signals that the working modulus has a nontrivial factor (zero-divisor hit).
struct DynSplit {
  UniPoly factor;
};

UniPoly dyn_inv(const FieldTower& tw, const UniPoly& a, const UniPoly& w) {
  auto [g, s, t] = up_ext_gcd(tw, a, w);
  if (g.degree() != 0) throw DynSplit{g};
  return up_mod(tw, s, w);
}

DynPoly dyn_mod(const FieldTower& tw, DynPoly a, const DynPoly& b, const UniPoly& w) {
  dyn_trim(a);
  UniPoly lcinv = dyn_inv(tw, b.c.back(), w);
  const int db = b.degree();
  while (a.degree() >= db) {
    UniPoly q = up_mod(tw, up_mul(tw, a.c.back(), lcinv), w);
    size_t off = a.c.size() - 1 - static_cast<size_t>(db);
    if (!q.is_zero())
      for (size_t j = 0; j < b.c.size(); ++j)
        a.c[off + j] = up_mod(tw, up_sub(tw, a.c[off + j], up_mul(tw, q, b.c[j])), w);
    a.c.pop_back();
    dyn_trim(a);
  }
  return a;
}

DynPoly dyn_gcd(const FieldTower& tw, DynPoly a, DynPoly b, const UniPoly& w) {
  dyn_trim(a);
  dyn_trim(b);
  while (!b.is_zero()) {
    a = dyn_mod(tw, std::move(a), b, w);
    std::swap(a, b);
  }
  return a;
}

// Is some root x0 of w (irreducible or not) the x-coordinate of a genuine
// singular point in the chart, i.e. do the fiber polynomials acquire a common
// y-root there?  Works entirely modulo w; splits w on zero divisors.
// Returns the y-degree of the common part (0 = none anywhere over w's roots).
int dyn_common_fiber_degree(const FieldTower& tw, const std::vector<const BivarPoly*>& eqs,
                            const UniPoly& w) {
  try {
    DynPoly g;
    bool started = false;
    for (const BivarPoly* a : eqs) {
      DynPoly d = dyn_from_bivar(tw, *a, w);
      if (d.is_zero()) continue;  // this equation vanishes identically mod w
      if (!started) {
        g = std::move(d);
        started = true;
      } else {
        g = dyn_gcd(tw, std::move(g), std::move(d), w);
      }
      if (started && g.degree() == 0) return 0;
    }
    if (!started)
      throw PositiveDimensionalSingularLocus(
          "all chart equations vanish identically along a fiber divisor");
    return g.degree();
  } catch (const DynSplit& split) {
    auto [q, r] = up_divmod(tw, w, split.factor);
    if (!r.is_zero() || q.degree() < 1)
      throw std::logic_error("modulus split produced a non-divisor");
    int left = dyn_common_fiber_degree(tw, eqs, split.factor);
    if (left > 0) return left;
    return dyn_common_fiber_degree(tw, eqs, q);
  }
}

UniPoly restrict_to_infinity_line(const FieldTower& tw, const TernaryForm& g) {
  // g(t, 1, 0) as a univariate polynomial
  const FieldCtx& c = tw.ctx(g.k);
  ProjPoint base = make_point(tw, c.zero(), c.one(), c.zero());
  ProjPoint dir = make_point(tw, c.one(), c.zero(), c.zero());
  return tf_restrict_line(tw, g, base, dir, g.k);
}

struct Frame {
  std::array<std::array<uint8_t, 3>, 3> m;
};

// The singular locus of F in one coordinate frame, or nullopt when every
// eliminant vanished identically and another frame should be tried.
std::optional<SingularLocus> locus_in_frame(const FieldTower& tw, const TernaryForm& f) {
  std::array<TernaryForm, 4> forms = {tf_partial(tw, f, 0), tf_partial(tw, f, 1),
                                      tf_partial(tw, f, 2), f};
  std::array<BivarPoly, 4> A;
  for (int i = 0; i < 4; ++i) A[static_cast<size_t>(i)] = tf_dehomogenize(tw, forms[static_cast<size_t>(i)], 2);

  std::vector<const BivarPoly*> eqs;
  for (const auto& a : A)
    if (!a.is_zero()) eqs.push_back(&a);

  // Eliminant in x: a nonzero polynomial every singular x0 must zero.  A
  // nonzero chart equation free of y works directly; otherwise the first
  // nonvanishing pairwise resultant does.
  UniPoly R = up_zero(1);
  for (const BivarPoly* a : eqs)
    if (bv_degree_y(*a) == 0) {
      R = bv_eval_y(tw, *a, tw.ctx(f.k).zero());  // y never occurs; this reads the x-poly
      break;
    }
  if (R.is_zero()) {
    for (size_t i = 0; i < eqs.size() && R.is_zero(); ++i)
      for (size_t j = i + 1; j < eqs.size() && R.is_zero(); ++j) {
        if (bv_degree_y(*eqs[i]) == 0 && bv_degree_y(*eqs[j]) == 0) continue;
        R = bv_resultant_y(tw, *eqs[i], *eqs[j]);
      }
    if (R.is_zero()) return std::nullopt;
  }

  SingularLocus out;
  if (R.degree() >= 1) {
    for (const auto& [r, rmult] : up_factor(tw, R)) {
      (void)rmult;
      const int e = r.degree();
      if (e > tw.max_degree()) {
        int dy = dyn_common_fiber_degree(tw, eqs, r);
        if (dy > 0) out.off_tower_weight += e * dy;
        continue;
      }
      for (const GFElem& x0 : up_roots_in_field(tw, r, e)) {
        // fiber gcd over GF(3^e)
        UniPoly gy = up_zero(e);
        bool started = false, all_zero = true;
        for (const BivarPoly* a : eqs) {
          UniPoly v = bv_eval_x(tw, *a, x0);
          if (v.is_zero()) continue;
          all_zero = false;
          gy = started ? up_gcd(tw, gy, v) : up_monic(tw, v);
          started = true;
          if (gy.degree() == 0) break;
        }
        if (all_zero)
          throw PositiveDimensionalSingularLocus(
              "a whole chart fiber lies in the singular locus (non-reduced form)");
        if (gy.degree() < 1) continue;  // spurious eliminant root
        for (const auto& [h, hmult] : up_factor(tw, gy)) {
          (void)hmult;
          const int e2 = h.degree();
          if (e * e2 > tw.max_degree()) {
            out.off_tower_weight += e2;
            continue;
          }
          const int ek = e * e2;
          for (const GFElem& y0 : up_roots_in_field(tw, h, ek)) {
            ProjPoint pt = make_point(tw, tw.embed(x0, ek), y0, tw.ctx(ek).one());
            for (const auto& g : forms) {
              int kk = static_cast<int>(std::lcm(pt.x[0].deg, g.k));
              if (!tf_eval(tw, tf_embed(tw, g, kk), tw.embed(pt.x[0], kk),
                           tw.embed(pt.x[1], kk), tw.embed(pt.x[2], kk))
                       .is_zero())
                throw std::logic_error("fiber solution failed validation against the chart system");
            }
            out.points.push_back(pt);
          }
        }
      }
    }
  }

  // Line z = 0, parametrized (t : 1 : 0)
  {
    UniPoly gy = up_zero(1);
    bool started = false, all_zero = true;
    for (const auto& g : forms) {
      UniPoly v = restrict_to_infinity_line(tw, g);
      if (v.is_zero()) continue;
      all_zero = false;
      gy = started ? up_gcd(tw, gy, v) : up_monic(tw, v);
      started = true;
    }
    if (all_zero)
      throw PositiveDimensionalSingularLocus("the line z = 0 lies in the singular locus");
    if (gy.degree() >= 1) {
      for (const auto& [h, hmult] : up_factor(tw, gy)) {
        (void)hmult;
        const int e = h.degree();
        if (e > tw.max_degree()) {
          out.off_tower_weight += e;
          continue;
        }
        for (const GFElem& t0 : up_roots_in_field(tw, h, e))
          out.points.push_back(make_point(tw, t0, tw.ctx(e).one(), tw.ctx(e).zero()));
      }
    }
  }

  // The remaining point (1 : 0 : 0)
  {
    const GFElem one = tw.ctx(f.k).one(), zero = tw.ctx(f.k).zero();
    bool sing = true;
    for (const auto& g : forms)
      if (!tf_eval(tw, g, one, zero, zero).is_zero()) {
        sing = false;
        break;
      }
    if (sing)
      out.points.push_back(make_point(tw, tw.ctx(1).one(), tw.ctx(1).zero(), tw.ctx(1).zero()));
  }

  return out;
}

}  // namespace

SingularLocus singular_locus(const FieldTower& tw, const TernaryForm& f) {
  if (f.is_zero()) throw std::invalid_argument("singular_locus: zero form");
  if (f.k != 1)
    throw std::invalid_argument("singular_locus expects a form over the prime field");
  if (tf_partial(tw, f, 0).is_zero() && tf_partial(tw, f, 1).is_zero() &&
      tf_partial(tw, f, 2).is_zero())
    throw PositiveDimensionalSingularLocus(
        "all three partials vanish identically: the form is a cube in characteristic 3");

  std::mt19937 rng(0x51c705);
  std::uniform_int_distribution<int> d(0, 2);
  for (int attempt = 0; attempt < 6; ++attempt) {
    Frame fr{};
    if (attempt == 0) {
      for (int i = 0; i < 3; ++i) fr.m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    } else {
      // random invertible matrix over GF(3)
      for (;;) {
        int det = 0;
        for (auto& row : fr.m)
          for (auto& v : row) v = static_cast<uint8_t>(d(rng));
        const auto& m = fr.m;
        det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
              m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (det % 3 != 0) break;
      }
    }
    TernaryForm g = f;
    if (attempt > 0) {
      std::array<std::array<GFElem, 3>, 3> me;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          me[static_cast<size_t>(i)][static_cast<size_t>(j)] =
              tw.ctx(1).from_int(fr.m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
      g = tf_substitute(tw, f, me);
    }
    std::optional<SingularLocus> loc = locus_in_frame(tw, g);
    if (!loc) continue;
    if (attempt > 0)
      for (ProjPoint& p : loc->points) p = point_apply(tw, fr.m, p);
    std::sort(loc->points.begin(), loc->points.end(), point_less);
    return *loc;
  }
  throw PositiveDimensionalSingularLocus(
      "eliminants vanished identically in six coordinate frames");
}

// ---------------------------------------------------------------------------
// tangent cones

int tangent_adjustment(const FieldTower& tw, const BivarPoly& h, int ext_degree) {
  if (h.is_zero()) throw std::invalid_argument("tangent_adjustment: zero form");
  const int m = bv_min_total_degree(h);
  if (m != 2 && m != 3)
    throw std::invalid_argument("tangent_adjustment handles degrees 2 and 3 only");
  if (ext_degree < 1 || ext_degree > tw.max_degree() || ext_degree % h.k != 0)
    throw std::invalid_argument("tangent cone is not defined over a subfield of the target field");

  if (m == 2) {
    GFElem a = bv_coeff(tw, h, 2, 0), b = bv_coeff(tw, h, 1, 1), c = bv_coeff(tw, h, 0, 2);
    GFElem disc = tw.sub(tw.mul(b, b), tw.mul(a, c));  // 4 = 1 in characteristic 3
    if (disc.is_zero()) return 0;
    return tw.ctx(ext_degree).is_square(tw.embed(disc, ext_degree)) ? 1 : -1;
  }
  UniPoly ht = bv_restrict_y1(tw, h);  // h(T, 1)
  int cnt = up_count_roots(tw, ht, ext_degree);
  if (bv_coeff(tw, h, 3, 0).is_zero()) ++cnt;  // the root (1 : 0)
  return cnt - 1;
}

SingularPointReport analyze_singular_point(const FieldTower& tw, const TernaryForm& f,
                                           const ProjPoint& p) {
  SingularPointReport rep;
  rep.point = p;
  BivarPoly g = taylor_at(tw, f, p);
  rep.mult = bv_min_total_degree(g);
  if (rep.mult < 0) throw std::invalid_argument("cannot analyze a point with F = 0");
  rep.tangent_cone = bv_graded_piece(g, rep.mult);
  rep.resolved_in_one_blowup = rep.mult >= 2 ? one_blowup_resolves(tw, f, p) : true;
  if (rep.mult == 2 || rep.mult == 3)
    for (int e = p.degree(); e <= tw.max_degree(); e += p.degree())
      rep.adjustment_table[e] = tangent_adjustment(tw, rep.tangent_cone, e);
  return rep;
}

// ---------------------------------------------------------------------------
// the combined certificate

NonSpecialResult non_special_check(const FieldTower& tw, const TernaryForm& f,
                                   const SingularConfig& config, NonSpecialOptions opt) {
  validate_config(tw, config);
  if (f.is_zero() || f.d != 6 || f.k != 1)
    return {false, "the form must be a nonzero sextic over the prime field"};

  if (opt.check_multiplicities)
    for (const auto& cp : config.points)
      if (multiplicity_at(tw, f, cp.p) != cp.mult)
        return {false, "multiplicity mismatch at " + render_point(tw, cp.p)};

  SingularLocus loc;
  try {
    loc = singular_locus(tw, f);
  } catch (const PositiveDimensionalSingularLocus& ex) {
    return {false, std::string("positive-dimensional singular locus: ") + ex.what()};
  }
  if (loc.off_tower_weight > 0)
    return {false, "singular points exist beyond the supported field tower"};
  std::vector<ProjPoint> expect;
  expect.reserve(config.points.size());
  for (const auto& cp : config.points) expect.push_back(cp.p);
  std::sort(expect.begin(), expect.end(), point_less);
  if (loc.points != expect)
    return {false, "singular locus does not match the configured point set"};

  for (const auto& cp : config.points)
    if (!one_blowup_resolves(tw, f, cp.p))
      return {false, "singularity at " + render_point(tw, cp.p) + " is not resolved by one blow-up"};

  if (opt.check_irreducibility && !is_geometrically_irreducible(tw, f))
    return {false, "the form is geometrically reducible"};

  return {true, {}};
}

}  // namespace genus5
