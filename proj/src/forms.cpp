#include "genus5/forms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace genus5 {

namespace {

// Pascal's triangle mod 3, enough for degree-6 expansions and blow-up charts.
constexpr int kBinomN = 16;

const std::array<std::array<uint8_t, kBinomN>, kBinomN>& binom3() {
  static const auto tab = [] {
    std::array<std::array<uint8_t, kBinomN>, kBinomN> t{};
    for (int n = 0; n < kBinomN; ++n) {
      t[n][0] = 1;
      for (int r = 1; r <= n; ++r)
        t[n][r] = static_cast<uint8_t>((t[n - 1][r - 1] + (r <= n - 1 ? t[n - 1][r] : 0)) % 3);
    }
    return t;
  }();
  return tab;
}

void tf_accum(const FieldTower& tw, TernaryForm& f, Mono3 m, const GFElem& v) {
  if (v.is_zero()) return;
  auto it = f.t.find(m);
  if (it == f.t.end()) {
    f.t.emplace(m, v);
  } else {
    it->second = tw.ctx(f.k).add(it->second, v);
    if (it->second.is_zero()) f.t.erase(it);
  }
}

void bv_accum(const FieldTower& tw, BivarPoly& f, int i, int j, const GFElem& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(i, j);
  auto it = f.t.find(key);
  if (it == f.t.end()) {
    f.t.emplace(key, v);
  } else {
    it->second = tw.ctx(f.k).add(it->second, v);
    if (it->second.is_zero()) f.t.erase(it);
  }
}

int common_degree(std::initializer_list<int> degs) {
  int m = 1;
  for (int d : degs) m = static_cast<int>(std::lcm(m, d));
  if (m > kMaxFieldDegree) throw std::invalid_argument("field degree beyond tower limit");
  return m;
}

}  // namespace

const std::array<Mono3, 28>& sextic_monomials() {
  static const auto tab = [] {
    std::array<Mono3, 28> t{};
    int n = 0;
    for (int a = 6; a >= 0; --a)
      for (int b = 6 - a; b >= 0; --b)
        t[n++] = Mono3{static_cast<uint8_t>(a), static_cast<uint8_t>(b),
                       static_cast<uint8_t>(6 - a - b)};
    return t;
  }();
  return tab;
}

int sextic_index(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a + b + c != 6)
    throw std::invalid_argument("not a degree-6 monomial");
  // Triples are emitted with a descending, then b descending.
  int idx = 0;
  for (int aa = 6; aa > a; --aa) idx += 7 - aa;
  idx += 6 - a - b;
  return idx;
}

TernaryForm tf_zero(int k, int d) {
  TernaryForm f;
  f.k = k;
  f.d = d;
  return f;
}

TernaryForm tf_make(const FieldTower& tw, int k,
                    const std::vector<std::tuple<int, int, int, int>>& terms) {
  TernaryForm f;
  f.k = k;
  f.d = -1;
  const FieldCtx& c = tw.ctx(k);
  for (auto& [a, b, cc, v] : terms) {
    int d = a + b + cc;
    if (f.d < 0) f.d = d;
    if (d != f.d) throw std::invalid_argument("mixed-degree term list");
    tf_accum(tw, f, Mono3{(uint8_t)a, (uint8_t)b, (uint8_t)cc},
             c.from_int(static_cast<uint64_t>(((v % 3) + 3) % 3)));
  }
  if (f.d < 0) f.d = 0;
  return f;
}

void tf_set(const FieldTower& tw, TernaryForm& f, Mono3 m, const GFElem& v) {
  (void)tw;
  if (m[0] + m[1] + m[2] != f.d) throw std::invalid_argument("degree mismatch in tf_set");
  if (v.is_zero())
    f.t.erase(m);
  else
    f.t[m] = v;
}

GFElem tf_coeff(const FieldTower& tw, const TernaryForm& f, Mono3 m) {
  auto it = f.t.find(m);
  return it == f.t.end() ? tw.ctx(f.k).zero() : it->second;
}

TernaryForm tf_add(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b) {
  if (a.k != b.k) throw std::invalid_argument("field mismatch in tf_add");
  if (!a.is_zero() && !b.is_zero() && a.d != b.d)
    throw std::invalid_argument("degree mismatch in tf_add");
  TernaryForm r = a;
  if (r.is_zero()) r.d = b.d;
  for (auto& [m, v] : b.t) tf_accum(tw, r, m, v);
  return r;
}

TernaryForm tf_neg(const FieldTower& tw, const TernaryForm& a) {
  TernaryForm r = a;
  const FieldCtx& c = tw.ctx(a.k);
  for (auto& [m, v] : r.t) v = c.neg(v);
  return r;
}

TernaryForm tf_sub(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b) {
  return tf_add(tw, a, tf_neg(tw, b));
}

TernaryForm tf_scale(const FieldTower& tw, const TernaryForm& a, const GFElem& s) {
  TernaryForm r = tf_zero(a.k, a.d);
  const FieldCtx& c = tw.ctx(a.k);
  for (auto& [m, v] : a.t) tf_accum(tw, r, m, c.mul(v, s));
  return r;
}

TernaryForm tf_mul(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b) {
  if (a.k != b.k) throw std::invalid_argument("field mismatch in tf_mul");
  TernaryForm r = tf_zero(a.k, a.d + b.d);
  if (a.is_zero() || b.is_zero()) return r;
  const FieldCtx& c = tw.ctx(a.k);
  for (auto& [ma, va] : a.t)
    for (auto& [mb, vb] : b.t)
      tf_accum(tw, r,
               Mono3{static_cast<uint8_t>(ma[0] + mb[0]), static_cast<uint8_t>(ma[1] + mb[1]),
                     static_cast<uint8_t>(ma[2] + mb[2])},
               c.mul(va, vb));
  return r;
}

TernaryForm tf_embed(const FieldTower& tw, const TernaryForm& a, int k2) {
  TernaryForm r = tf_zero(k2, a.d);
  for (auto& [m, v] : a.t) r.t.emplace(m, tw.embed(v, k2));
  return r;
}

TernaryForm tf_partial(const FieldTower& tw, const TernaryForm& a, int var) {
  if (a.d == 0) return tf_zero(a.k, 0);
  TernaryForm r = tf_zero(a.k, a.d - 1);
  const FieldCtx& c = tw.ctx(a.k);
  for (auto& [m, v] : a.t) {
    int e = m[var];
    if (e % 3 == 0) continue;
    Mono3 mm = m;
    mm[var] = static_cast<uint8_t>(e - 1);
    GFElem cv = v;
    if (e % 3 == 2) cv = c.add(cv, cv);
    tf_accum(tw, r, mm, cv);
  }
  return r;
}

GFElem tf_eval(const FieldTower& tw, const TernaryForm& a, const GFElem& x, const GFElem& y,
               const GFElem& z) {
  int m = common_degree({a.k, x.deg, y.deg, z.deg});
  const FieldCtx& c = tw.ctx(m);
  std::array<std::vector<GFElem>, 3> pw;
  const GFElem coords[3] = {tw.embed(x, m), tw.embed(y, m), tw.embed(z, m)};
  for (int v = 0; v < 3; ++v) {
    pw[v].resize(static_cast<size_t>(a.d) + 1);
    pw[v][0] = c.one();
    for (int e = 1; e <= a.d; ++e) pw[v][e] = c.mul(pw[v][e - 1], coords[v]);
  }
  GFElem acc = c.zero();
  for (auto& [mo, v] : a.t) {
    GFElem term = c.mul(tw.embed(v, m), pw[0][mo[0]]);
    term = c.mul(term, pw[1][mo[1]]);
    term = c.mul(term, pw[2][mo[2]]);
    acc = c.add(acc, term);
  }
  return acc;
}

TernaryForm tf_substitute(const FieldTower& tw, const TernaryForm& a,
                          const std::array<std::array<GFElem, 3>, 3>& m) {
  int kk = a.k;
  for (auto& row : m)
    for (auto& e : row) kk = common_degree({kk, e.deg});
  const FieldCtx& c = tw.ctx(kk);
  // images of the variables: x_i -> sum_j m[i][j] x_j
  std::array<std::vector<TernaryForm>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    TernaryForm img = tf_zero(kk, 1);
    for (int j = 0; j < 3; ++j) {
      Mono3 mo{};
      mo[j] = 1;
      tf_accum(tw, img, mo, tw.embed(m[i][j], kk));
    }
    pw[i].push_back(tf_zero(kk, 0));
    tf_accum(tw, pw[i][0], Mono3{0, 0, 0}, c.one());
    for (int e = 1; e <= a.d; ++e) pw[i].push_back(tf_mul(tw, pw[i].back(), img));
  }
  TernaryForm r = tf_zero(kk, a.d);
  for (auto& [mo, v] : a.t) {
    TernaryForm term = tf_scale(tw, pw[0][mo[0]], tw.embed(v, kk));
    term = tf_mul(tw, term, pw[1][mo[1]]);
    term = tf_mul(tw, term, pw[2][mo[2]]);
    r = tf_add(tw, r, term);
  }
  return r;
}

std::vector<GFElem> tf_to_vec28(const FieldTower& tw, const TernaryForm& f) {
  if (!f.is_zero() && f.d != 6) throw std::invalid_argument("tf_to_vec28 needs a sextic");
  std::vector<GFElem> v(28, tw.ctx(f.k).zero());
  for (auto& [m, c] : f.t) v[static_cast<size_t>(sextic_index(m[0], m[1], m[2]))] = c;
  return v;
}

TernaryForm tf_from_vec28(const FieldTower& tw, const std::vector<GFElem>& v) {
  if (v.size() != 28) throw std::invalid_argument("tf_from_vec28 needs 28 coefficients");
  int k = 1;
  for (auto& e : v) k = std::max(k, static_cast<int>(e.deg));
  TernaryForm f = tf_zero(k, 6);
  for (int i = 0; i < 28; ++i)
    if (!v[static_cast<size_t>(i)].is_zero())
      tf_accum(tw, f, sextic_monomials()[static_cast<size_t>(i)],
               tw.embed(v[static_cast<size_t>(i)], k));
  return f;
}

bool form_divides(const FieldTower& tw, const TernaryForm& g, const TernaryForm& f) {
  if (g.is_zero()) return f.is_zero();
  if (f.is_zero()) return true;
  int kk = common_degree({f.k, g.k});
  TernaryForm r = tf_embed(tw, f, kk);
  TernaryForm gg = tf_embed(tw, g, kk);
  const FieldCtx& c = tw.ctx(kk);
  const auto& [lgm, lgc] = *gg.t.begin();
  GFElem lginv = c.inv(lgc);
  while (!r.is_zero()) {
    const auto& [lm, lc] = *r.t.begin();
    if (lm[0] < lgm[0] || lm[1] < lgm[1] || lm[2] < lgm[2]) return false;
    // subtract (lc/lgc) * (lm/lgm) * g
    GFElem q = c.mul(lc, lginv);
    Mono3 sh{static_cast<uint8_t>(lm[0] - lgm[0]), static_cast<uint8_t>(lm[1] - lgm[1]),
             static_cast<uint8_t>(lm[2] - lgm[2])};
    for (auto& [m, v] : gg.t)
      tf_accum(tw, r,
               Mono3{static_cast<uint8_t>(m[0] + sh[0]), static_cast<uint8_t>(m[1] + sh[1]),
                     static_cast<uint8_t>(m[2] + sh[2])},
               c.neg(c.mul(q, v)));
  }
  return true;
}

ProjPoint make_point(const FieldTower& tw, GFElem a, GFElem b, GFElem c) {
  int m = common_degree({a.deg, b.deg, c.deg});
  const FieldCtx& cx = tw.ctx(m);
  std::array<GFElem, 3> x{tw.embed(a, m), tw.embed(b, m), tw.embed(c, m)};
  int piv = -1;
  for (int i = 0; i < 3 && piv < 0; ++i)
    if (!x[static_cast<size_t>(i)].is_zero()) piv = i;
  if (piv < 0) throw std::invalid_argument("all-zero projective point");
  GFElem s = cx.inv(x[static_cast<size_t>(piv)]);
  for (auto& e : x) e = cx.mul(e, s);
  int md = 1;
  for (auto& e : x) md = static_cast<int>(std::lcm(md, tw.minimal_degree(e)));
  ProjPoint p;
  for (int i = 0; i < 3; ++i) {
    auto pr = tw.project(x[static_cast<size_t>(i)], md);
    p.x[static_cast<size_t>(i)] = *pr;
  }
  return p;
}

ProjPoint point_frobenius(const FieldTower& tw, const ProjPoint& p, int t) {
  const FieldCtx& c = tw.ctx(p.degree());
  ProjPoint q = p;
  for (auto& e : q.x) e = c.frobenius(e, t);
  return q;
}

std::vector<ProjPoint> point_orbit(const FieldTower& tw, const ProjPoint& p) {
  std::vector<ProjPoint> orb{p};
  for (int t = 1; t < p.degree(); ++t) orb.push_back(point_frobenius(tw, p, t));
  return orb;
}

bool point_less(const ProjPoint& a, const ProjPoint& b) {
  if (a.x[0].deg != b.x[0].deg) return a.x[0].deg < b.x[0].deg;
  for (int i = 0; i < 3; ++i) {
    if (a.x[static_cast<size_t>(i)] == b.x[static_cast<size_t>(i)]) continue;
    return gf_less(a.x[static_cast<size_t>(i)], b.x[static_cast<size_t>(i)]);
  }
  return false;
}

std::string render_point(const FieldTower& tw, const ProjPoint& p) {
  std::string s = "(";
  for (int i = 0; i < 3; ++i) {
    if (i) s += ":";
    s += tw.render(p.x[static_cast<size_t>(i)]);
  }
  s += ")";
  return s;
}

ProjPoint parse_point(const FieldTower& tw, const std::string& s) {
  std::string body;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) body += ch;
  if (!body.empty() && body.front() == '(') body.erase(body.begin());
  if (!body.empty() && body.back() == ')') body.pop_back();
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : body) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) throw std::invalid_argument("point needs three coordinates: " + s);
  GFElem a = tw.parse_element(parts[0]);
  GFElem b = tw.parse_element(parts[1]);
  GFElem c = tw.parse_element(parts[2]);
  return make_point(tw, a, b, c);
}

ProjPoint point_apply(const FieldTower& tw, const std::array<std::array<uint8_t, 3>, 3>& m,
                      const ProjPoint& p) {
  const FieldCtx& c = tw.ctx(p.degree());
  std::array<GFElem, 3> y;
  for (int i = 0; i < 3; ++i) {
    GFElem acc = c.zero();
    for (int j = 0; j < 3; ++j) {
      GFElem t = p.x[static_cast<size_t>(j)];
      if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0) continue;
      if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] == 2) t = c.neg(t);
      acc = c.add(acc, t);
    }
    y[static_cast<size_t>(i)] = acc;
  }
  return make_point(tw, y[0], y[1], y[2]);
}

bool points_collinear(const FieldTower& tw, const ProjPoint& a, const ProjPoint& b,
                      const ProjPoint& c) {
  int m = common_degree({a.degree(), b.degree(), c.degree()});
  const FieldCtx& cx = tw.ctx(m);
  std::array<std::array<GFElem, 3>, 3> r;
  for (int j = 0; j < 3; ++j) {
    r[0][static_cast<size_t>(j)] = tw.embed(a.x[static_cast<size_t>(j)], m);
    r[1][static_cast<size_t>(j)] = tw.embed(b.x[static_cast<size_t>(j)], m);
    r[2][static_cast<size_t>(j)] = tw.embed(c.x[static_cast<size_t>(j)], m);
  }
  GFElem det = cx.zero();
  int idx[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
  for (int t = 0; t < 6; ++t) {
    GFElem prod = cx.mul(cx.mul(r[0][static_cast<size_t>(idx[t][0])],
                                r[1][static_cast<size_t>(idx[t][1])]),
                         r[2][static_cast<size_t>(idx[t][2])]);
    det = t < 3 ? cx.add(det, prod) : cx.sub(det, prod);
  }
  return det.is_zero();
}

void bv_set(BivarPoly& f, int i, int j, const GFElem& v) {
  if (v.is_zero())
    f.t.erase(std::make_pair(i, j));
  else
    f.t[std::make_pair(i, j)] = v;
}

GFElem bv_coeff(const FieldTower& tw, const BivarPoly& f, int i, int j) {
  auto it = f.t.find(std::make_pair(i, j));
  return it == f.t.end() ? tw.ctx(f.k).zero() : it->second;
}

BivarPoly bv_add(const FieldTower& tw, const BivarPoly& a, const BivarPoly& b) {
  if (a.k != b.k) throw std::invalid_argument("field mismatch in bv_add");
  BivarPoly r = a;
  for (auto& [m, v] : b.t) bv_accum(tw, r, m.first, m.second, v);
  return r;
}

BivarPoly bv_mul(const FieldTower& tw, const BivarPoly& a, const BivarPoly& b) {
  if (a.k != b.k) throw std::invalid_argument("field mismatch in bv_mul");
  BivarPoly r;
  r.k = a.k;
  const FieldCtx& c = tw.ctx(a.k);
  for (auto& [ma, va] : a.t)
    for (auto& [mb, vb] : b.t)
      bv_accum(tw, r, ma.first + mb.first, ma.second + mb.second, c.mul(va, vb));
  return r;
}

int bv_min_total_degree(const BivarPoly& f) {
  int m = -1;
  for (auto& [mo, v] : f.t) {
    int d = mo.first + mo.second;
    if (m < 0 || d < m) m = d;
  }
  return m;
}

BivarPoly bv_graded_piece(const BivarPoly& f, int j) {
  BivarPoly r;
  r.k = f.k;
  for (auto& [mo, v] : f.t)
    if (mo.first + mo.second == j) r.t.emplace(mo, v);
  return r;
}

BivarPoly bv_partial(const FieldTower& tw, const BivarPoly& f, int var) {
  BivarPoly r;
  r.k = f.k;
  const FieldCtx& c = tw.ctx(f.k);
  for (auto& [mo, v] : f.t) {
    int e = var == 0 ? mo.first : mo.second;
    if (e % 3 == 0) continue;
    GFElem cv = v;
    if (e % 3 == 2) cv = c.add(cv, cv);
    bv_accum(tw, r, mo.first - (var == 0 ? 1 : 0), mo.second - (var == 1 ? 1 : 0), cv);
  }
  return r;
}

GFElem bv_eval(const FieldTower& tw, const BivarPoly& f, const GFElem& x, const GFElem& y) {
  int m = common_degree({f.k, x.deg, y.deg});
  const FieldCtx& c = tw.ctx(m);
  GFElem xx = tw.embed(x, m), yy = tw.embed(y, m);
  int dmax = 0;
  for (auto& [mo, v] : f.t) dmax = std::max({dmax, mo.first, mo.second});
  std::vector<GFElem> px(static_cast<size_t>(dmax) + 1, c.one());
  std::vector<GFElem> py(static_cast<size_t>(dmax) + 1, c.one());
  for (int e = 1; e <= dmax; ++e) {
    px[static_cast<size_t>(e)] = c.mul(px[static_cast<size_t>(e - 1)], xx);
    py[static_cast<size_t>(e)] = c.mul(py[static_cast<size_t>(e - 1)], yy);
  }
  GFElem acc = c.zero();
  for (auto& [mo, v] : f.t)
    acc = c.add(acc, c.mul(tw.embed(v, m), c.mul(px[static_cast<size_t>(mo.first)],
                                                 py[static_cast<size_t>(mo.second)])));
  return acc;
}

BivarPoly bv_embed(const FieldTower& tw, const BivarPoly& f, int k2) {
  BivarPoly r;
  r.k = k2;
  for (auto& [mo, v] : f.t) r.t.emplace(mo, tw.embed(v, k2));
  return r;
}

BivarPoly bv_blowup_chart1(const BivarPoly& f, int m) {
  // X^i Y^j -> X^i (Z X)^j / X^m, written in variables (X, Z)
  BivarPoly r;
  r.k = f.k;
  for (auto& [mo, v] : f.t) {
    int i = mo.first + mo.second - m;
    if (i < 0) throw std::invalid_argument("multiplicity larger than vanishing order");
    r.t[std::make_pair(i, mo.second)] = v;
  }
  return r;
}

BivarPoly bv_blowup_chart2(const BivarPoly& f, int m) {
  // X^i Y^j -> (Z Y)^i Y^j / Y^m, written in variables (Z, Y)
  BivarPoly r;
  r.k = f.k;
  for (auto& [mo, v] : f.t) {
    int j = mo.first + mo.second - m;
    if (j < 0) throw std::invalid_argument("multiplicity larger than vanishing order");
    r.t[std::make_pair(mo.first, j)] = v;
  }
  return r;
}

UniPoly bv_restrict_x1(const FieldTower& tw, const BivarPoly& f) {
  UniPoly r = up_zero(f.k);
  const FieldCtx& c = tw.ctx(f.k);
  for (auto& [mo, v] : f.t) {
    if (static_cast<size_t>(mo.second) >= r.c.size()) r.c.resize(static_cast<size_t>(mo.second) + 1, c.zero());
    r.c[static_cast<size_t>(mo.second)] = c.add(r.c[static_cast<size_t>(mo.second)], v);
  }
  while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
  return r;
}

UniPoly bv_restrict_y1(const FieldTower& tw, const BivarPoly& f) {
  UniPoly r = up_zero(f.k);
  const FieldCtx& c = tw.ctx(f.k);
  for (auto& [mo, v] : f.t) {
    if (static_cast<size_t>(mo.first) >= r.c.size()) r.c.resize(static_cast<size_t>(mo.first) + 1, c.zero());
    r.c[static_cast<size_t>(mo.first)] = c.add(r.c[static_cast<size_t>(mo.first)], v);
  }
  while (!r.c.empty() && r.c.back().is_zero()) r.c.pop_back();
  return r;
}

int bv_degree_x(const BivarPoly& f) {
  int d = -1;
  for (auto& [mo, v] : f.t) d = std::max(d, mo.first);
  return d;
}

int bv_degree_y(const BivarPoly& f) {
  int d = -1;
  for (auto& [mo, v] : f.t) d = std::max(d, mo.second);
  return d;
}

static void up_trim(UniPoly& u) {
  while (!u.c.empty() && u.c.back().is_zero()) u.c.pop_back();
}

UniPoly bv_eval_x(const FieldTower& tw, const BivarPoly& f, const GFElem& x0) {
  int m = common_degree({f.k, x0.deg});
  const FieldCtx& c = tw.ctx(m);
  GFElem xe = tw.embed(x0, m);
  int dx = std::max(bv_degree_x(f), 0);
  std::vector<GFElem> pw(static_cast<size_t>(dx) + 1, c.one());
  for (int i = 1; i <= dx; ++i) pw[static_cast<size_t>(i)] = c.mul(pw[static_cast<size_t>(i) - 1], xe);
  UniPoly r = up_zero(m);
  for (auto& [mo, v] : f.t) {
    GFElem t = c.mul(tw.embed(v, m), pw[static_cast<size_t>(mo.first)]);
    if (static_cast<size_t>(mo.second) >= r.c.size()) r.c.resize(static_cast<size_t>(mo.second) + 1, c.zero());
    r.c[static_cast<size_t>(mo.second)] = c.add(r.c[static_cast<size_t>(mo.second)], t);
  }
  up_trim(r);
  return r;
}

UniPoly bv_eval_y(const FieldTower& tw, const BivarPoly& f, const GFElem& y0) {
  int m = common_degree({f.k, y0.deg});
  const FieldCtx& c = tw.ctx(m);
  GFElem ye = tw.embed(y0, m);
  int dy = std::max(bv_degree_y(f), 0);
  std::vector<GFElem> pw(static_cast<size_t>(dy) + 1, c.one());
  for (int i = 1; i <= dy; ++i) pw[static_cast<size_t>(i)] = c.mul(pw[static_cast<size_t>(i) - 1], ye);
  UniPoly r = up_zero(m);
  for (auto& [mo, v] : f.t) {
    GFElem t = c.mul(tw.embed(v, m), pw[static_cast<size_t>(mo.second)]);
    if (static_cast<size_t>(mo.first) >= r.c.size()) r.c.resize(static_cast<size_t>(mo.first) + 1, c.zero());
    r.c[static_cast<size_t>(mo.first)] = c.add(r.c[static_cast<size_t>(mo.first)], t);
  }
  up_trim(r);
  return r;
}

// Coefficient list of f in the eliminated variable: entry j is the
// coefficient of (eliminated)^j as a univariate polynomial in the kept
// variable.  The top entry is nonzero by construction.
static std::vector<UniPoly> bv_coeff_list(const FieldTower& tw, const BivarPoly& f, int k,
                                          bool eliminate_y) {
  int d = eliminate_y ? bv_degree_y(f) : bv_degree_x(f);
  std::vector<UniPoly> out(static_cast<size_t>(d) + 1, up_zero(k));
  const FieldCtx& c = tw.ctx(k);
  for (auto& [mo, v] : f.t) {
    int e = eliminate_y ? mo.second : mo.first;
    int kept = eliminate_y ? mo.first : mo.second;
    UniPoly& u = out[static_cast<size_t>(e)];
    if (static_cast<size_t>(kept) >= u.c.size()) u.c.resize(static_cast<size_t>(kept) + 1, c.zero());
    u.c[static_cast<size_t>(kept)] = c.add(u.c[static_cast<size_t>(kept)], tw.embed(v, k));
  }
  for (auto& u : out) up_trim(u);
  return out;
}

// Fraction-free determinant of a square polynomial matrix (Bareiss).  Every
// division is exact; row swaps flip the sign.
static UniPoly poly_matrix_det(const FieldTower& tw, int k, std::vector<std::vector<UniPoly>>& m) {
  const size_t n = m.size();
  if (n == 0) return up_const(tw, k, tw.ctx(k).one());
  bool negate = false;
  UniPoly prev = up_const(tw, k, tw.ctx(k).one());
  for (size_t r = 0; r + 1 < n; ++r) {
    size_t piv = r;
    while (piv < n && m[piv][r].is_zero()) ++piv;
    if (piv == n) return up_zero(k);
    if (piv != r) {
      std::swap(m[piv], m[r]);
      negate = !negate;
    }
    for (size_t i = r + 1; i < n; ++i) {
      for (size_t j = r + 1; j < n; ++j) {
        UniPoly num = up_sub(tw, up_mul(tw, m[i][j], m[r][r]), up_mul(tw, m[i][r], m[r][j]));
        auto [q, rem] = up_divmod(tw, num, prev);
        if (!rem.is_zero()) throw std::logic_error("fraction-free elimination left a nonzero remainder");
        m[i][j] = std::move(q);
      }
      m[i][r] = up_zero(k);
    }
    prev = m[r][r];
  }
  UniPoly det = m[n - 1][n - 1];
  return negate ? up_neg(tw, det) : det;
}

static UniPoly bv_resultant(const FieldTower& tw, const BivarPoly& f, const BivarPoly& g,
                            bool eliminate_y) {
  int k = common_degree({f.k, g.k});
  if (f.is_zero() || g.is_zero()) return up_zero(k);
  std::vector<UniPoly> fc = bv_coeff_list(tw, f, k, eliminate_y);
  std::vector<UniPoly> gc = bv_coeff_list(tw, g, k, eliminate_y);
  const size_t dm = fc.size() - 1, dn = gc.size() - 1;
  if (dm == 0 && dn == 0)
    throw std::invalid_argument("resultant: both inputs are constant in the eliminated variable");
  const size_t n = dm + dn;
  std::vector<std::vector<UniPoly>> s(n, std::vector<UniPoly>(n, up_zero(k)));
  for (size_t r = 0; r < dm; ++r)  // g's coefficient rows first (fixes the sign convention)
    for (size_t j = 0; j <= dn; ++j) s[r][r + j] = gc[dn - j];
  for (size_t r = 0; r < dn; ++r)
    for (size_t j = 0; j <= dm; ++j) s[dm + r][r + j] = fc[dm - j];
  return poly_matrix_det(tw, k, s);
}

UniPoly bv_resultant_y(const FieldTower& tw, const BivarPoly& f, const BivarPoly& g) {
  return bv_resultant(tw, f, g, true);
}

UniPoly bv_resultant_x(const FieldTower& tw, const BivarPoly& f, const BivarPoly& g) {
  return bv_resultant(tw, f, g, false);
}

BivarPoly tf_dehomogenize(const FieldTower& tw, const TernaryForm& f, int var) {
  BivarPoly r;
  r.k = f.k;
  for (auto& [mo, v] : f.t) {
    int e[3] = {mo[0], mo[1], mo[2]};
    int i, j;
    if (var == 0) {
      i = e[1]; j = e[2];
    } else if (var == 1) {
      i = e[0]; j = e[2];
    } else {
      i = e[0]; j = e[1];
    }
    bv_accum(tw, r, i, j, v);
  }
  return r;
}

BivarPoly taylor_at(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p) {
  int m = common_degree({f.k, p.degree()});
  const FieldCtx& c = tw.ctx(m);
  int chart = 0;
  while (chart < 3 && p.x[static_cast<size_t>(chart)].is_zero()) ++chart;
  int vi = -1, vj = -1;  // indices becoming X and Y
  for (int i = 0; i < 3; ++i) {
    if (i == chart) continue;
    (vi < 0 ? vi : vj) = i;
  }
  GFElem pi = tw.embed(p.x[static_cast<size_t>(vi)], m);
  GFElem pj = tw.embed(p.x[static_cast<size_t>(vj)], m);
  // powers of the shift base points
  std::array<std::vector<GFElem>, 2> pw;
  for (int v = 0; v < 2; ++v) {
    pw[v].assign(static_cast<size_t>(f.d) + 1, c.one());
    const GFElem& base = v == 0 ? pi : pj;
    for (int e = 1; e <= f.d; ++e)
      pw[v][static_cast<size_t>(e)] = c.mul(pw[v][static_cast<size_t>(e - 1)], base);
  }
  const auto& bi = binom3();
  BivarPoly r;
  r.k = m;
  for (auto& [mo, v] : f.t) {
    int ei = mo[static_cast<size_t>(vi)], ej = mo[static_cast<size_t>(vj)];
    GFElem cv = tw.embed(v, m);
    for (int s = 0; s <= ei; ++s) {
      if (bi[static_cast<size_t>(ei)][static_cast<size_t>(s)] == 0) continue;
      GFElem ci = c.mul(cv, pw[0][static_cast<size_t>(ei - s)]);
      if (bi[static_cast<size_t>(ei)][static_cast<size_t>(s)] == 2) ci = c.add(ci, ci);
      for (int u = 0; u <= ej; ++u) {
        if (bi[static_cast<size_t>(ej)][static_cast<size_t>(u)] == 0) continue;
        GFElem cu = c.mul(ci, pw[1][static_cast<size_t>(ej - u)]);
        if (bi[static_cast<size_t>(ej)][static_cast<size_t>(u)] == 2) cu = c.add(cu, cu);
        bv_accum(tw, r, s, u, cu);
      }
    }
  }
  return r;
}

int multiplicity_at(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p) {
  return bv_min_total_degree(taylor_at(tw, f, p));
}

UniPoly tf_restrict_line(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p,
                         const ProjPoint& q, int m) {
  const FieldCtx& c = tw.ctx(m);
  const auto& bi = binom3();
  // per-variable univariate polys (p_v + t q_v)^e, multiplied per monomial
  std::array<std::array<UniPoly, 7>, 3> pow;
  for (int v = 0; v < 3; ++v) {
    GFElem pv = tw.embed(p.x[static_cast<size_t>(v)], m);
    GFElem qv = tw.embed(q.x[static_cast<size_t>(v)], m);
    std::vector<GFElem> ppow(static_cast<size_t>(f.d) + 1, c.one());
    std::vector<GFElem> qpow(static_cast<size_t>(f.d) + 1, c.one());
    for (int e = 1; e <= f.d; ++e) {
      ppow[static_cast<size_t>(e)] = c.mul(ppow[static_cast<size_t>(e - 1)], pv);
      qpow[static_cast<size_t>(e)] = c.mul(qpow[static_cast<size_t>(e - 1)], qv);
    }
    for (int e = 0; e <= f.d; ++e) {
      UniPoly g = up_zero(m);
      g.c.assign(static_cast<size_t>(e) + 1, c.zero());
      for (int s = 0; s <= e; ++s) {
        uint8_t b = bi[static_cast<size_t>(e)][static_cast<size_t>(s)];
        if (b == 0) continue;
        GFElem cv = c.mul(ppow[static_cast<size_t>(e - s)], qpow[static_cast<size_t>(s)]);
        if (b == 2) cv = c.add(cv, cv);
        g.c[static_cast<size_t>(s)] = cv;
      }
      while (!g.c.empty() && g.c.back().is_zero()) g.c.pop_back();
      pow[static_cast<size_t>(v)][static_cast<size_t>(e)] = g;
    }
  }
  UniPoly acc = up_zero(m);
  for (auto& [mo, v] : f.t) {
    UniPoly term = up_const(tw, m, tw.embed(v, m));
    for (int vv = 0; vv < 3; ++vv)
      term = up_mul(tw, term, pow[static_cast<size_t>(vv)][mo[static_cast<size_t>(vv)]]);
    acc = up_add(tw, acc, term);
  }
  return acc;
}

bool line_through_divides(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p,
                          const ProjPoint& q) {
  int m = common_degree({f.k, p.degree(), q.degree()});
  UniPoly r = tf_restrict_line(tw, f, p, q, m);
  if (!r.is_zero()) return false;
  return tf_eval(tw, f, q.x[0], q.x[1], q.x[2]).is_zero();
}

QuinaryQuadric qq_zero(int k) {
  QuinaryQuadric q;
  q.k = k;
  for (auto& row : q.qc)
    for (auto& e : row) e = GFElem{static_cast<uint8_t>(k), {}};
  return q;
}

QuinaryQuadric qq_make(const FieldTower& tw, int k,
                       const std::vector<std::tuple<int, int, int>>& terms) {
  QuinaryQuadric q = qq_zero(k);
  const FieldCtx& c = tw.ctx(k);
  for (auto& [i, j, v] : terms) {
    int a = std::min(i, j), b = std::max(i, j);
    q.qc[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        c.add(q.qc[static_cast<size_t>(a)][static_cast<size_t>(b)],
              c.from_int(static_cast<uint64_t>(((v % 3) + 3) % 3)));
  }
  return q;
}

GFElem qq_eval(const FieldTower& tw, const QuinaryQuadric& q, const std::array<GFElem, 5>& x) {
  int m = q.k;
  for (auto& e : x) m = common_degree({m, e.deg});
  const FieldCtx& c = tw.ctx(m);
  std::array<GFElem, 5> xx;
  for (int i = 0; i < 5; ++i) xx[static_cast<size_t>(i)] = tw.embed(x[static_cast<size_t>(i)], m);
  GFElem acc = c.zero();
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const GFElem& cv = q.qc[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (cv.is_zero()) continue;
      acc = c.add(acc, c.mul(tw.embed(cv, m),
                             c.mul(xx[static_cast<size_t>(i)], xx[static_cast<size_t>(j)])));
    }
  return acc;
}

QuinaryQuadric qq_add(const FieldTower& tw, const QuinaryQuadric& a, const QuinaryQuadric& b) {
  if (a.k != b.k) throw std::invalid_argument("field mismatch in qq_add");
  QuinaryQuadric r = qq_zero(a.k);
  const FieldCtx& c = tw.ctx(a.k);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      r.qc[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          c.add(a.qc[static_cast<size_t>(i)][static_cast<size_t>(j)],
                b.qc[static_cast<size_t>(i)][static_cast<size_t>(j)]);
  return r;
}

QuinaryQuadric qq_scale(const FieldTower& tw, const QuinaryQuadric& a, const GFElem& s) {
  QuinaryQuadric r = qq_zero(a.k);
  const FieldCtx& c = tw.ctx(a.k);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      r.qc[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          c.mul(a.qc[static_cast<size_t>(i)][static_cast<size_t>(j)], s);
  return r;
}

QuinaryQuadric qq_embed(const FieldTower& tw, const QuinaryQuadric& a, int k2) {
  QuinaryQuadric r = qq_zero(k2);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      r.qc[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          tw.embed(a.qc[static_cast<size_t>(i)][static_cast<size_t>(j)], k2);
  return r;
}

std::array<GFElem, 5> qq_gradient(const FieldTower& tw, const QuinaryQuadric& q,
                                  const std::array<GFElem, 5>& x) {
  int m = q.k;
  for (auto& e : x) m = common_degree({m, e.deg});
  const FieldCtx& c = tw.ctx(m);
  std::array<GFElem, 5> xx, g;
  for (int i = 0; i < 5; ++i) {
    xx[static_cast<size_t>(i)] = tw.embed(x[static_cast<size_t>(i)], m);
    g[static_cast<size_t>(i)] = c.zero();
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const GFElem& cv = q.qc[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (cv.is_zero()) continue;
      GFElem e = tw.embed(cv, m);
      if (i == j) {
        // d/dx_i of c x_i^2 = 2 c x_i
        GFElem t = c.mul(e, xx[static_cast<size_t>(i)]);
        g[static_cast<size_t>(i)] = c.add(g[static_cast<size_t>(i)], c.add(t, t));
      } else {
        g[static_cast<size_t>(i)] =
            c.add(g[static_cast<size_t>(i)], c.mul(e, xx[static_cast<size_t>(j)]));
        g[static_cast<size_t>(j)] =
            c.add(g[static_cast<size_t>(j)], c.mul(e, xx[static_cast<size_t>(i)]));
      }
    }
  return g;
}

QuinaryQuadric qq_shear(const FieldTower& tw, const QuinaryQuadric& q, const TernaryForm& phi,
                        const TernaryForm& psi) {
  if ((!phi.is_zero() && phi.d != 1) || (!psi.is_zero() && psi.d != 1))
    throw std::invalid_argument("shear needs linear forms");
  int m = common_degree({q.k, phi.k, psi.k});
  const FieldCtx& c = tw.ctx(m);
  // variable images as linear-form coefficient vectors in x0..x4
  std::array<std::array<GFElem, 5>, 5> img;
  for (auto& row : img)
    for (auto& e : row) e = c.zero();
  for (int i = 0; i < 5; ++i) img[static_cast<size_t>(i)][static_cast<size_t>(i)] = c.one();
  Mono3 vars[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int j = 0; j < 3; ++j) {
    img[0][static_cast<size_t>(j + 1)] = tw.embed(tf_coeff(tw, phi, vars[j]), m);
    img[4][static_cast<size_t>(j + 1)] = tw.embed(tf_coeff(tw, psi, vars[j]), m);
  }
  QuinaryQuadric r = qq_zero(m);
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const GFElem& cv = q.qc[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (cv.is_zero()) continue;
      GFElem e = tw.embed(cv, m);
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
          GFElem t = c.mul(e, c.mul(img[static_cast<size_t>(i)][static_cast<size_t>(a)],
                                    img[static_cast<size_t>(j)][static_cast<size_t>(b)]));
          if (t.is_zero()) continue;
          int aa = std::min(a, b), bb = std::max(a, b);
          r.qc[static_cast<size_t>(aa)][static_cast<size_t>(bb)] =
              c.add(r.qc[static_cast<size_t>(aa)][static_cast<size_t>(bb)], t);
        }
    }
  return r;
}

namespace {

int coeff_to_int(const FieldTower& tw, const GFElem& v) {
  // only valid for prime-field values
  auto pr = tw.project(v, 1);
  if (!pr) throw std::invalid_argument("non-prime-field coefficient in integer rendering");
  return pr->c[0];
}

std::string render_mono3(Mono3 m) {
  static const char* names[3] = {"x", "y", "z"};
  std::string s;
  for (int v = 0; v < 3; ++v) {
    int e = m[static_cast<size_t>(v)];
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += names[v];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '+') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

std::string render_form(const FieldTower& tw, const TernaryForm& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (auto& [m, v] : f.t) {
    int cv = coeff_to_int(tw, v);
    if (!s.empty()) s += " + ";
    std::string mono = render_mono3(m);
    if (mono.empty())
      s += std::to_string(cv);
    else if (cv == 1)
      s += mono;
    else
      s += std::to_string(cv) + "*" + mono;
  }
  return s;
}

TernaryForm parse_form(const FieldTower& tw, const std::string& s) {
  auto terms = split_terms(s);
  if (terms.empty()) throw std::invalid_argument("empty form");
  TernaryForm f;
  f.k = 1;
  f.d = -1;
  const FieldCtx& c = tw.ctx(1);
  bool any = false;
  for (auto& t : terms) {
    size_t pos = 0;
    int coeff = 1;
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      coeff = 0;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
        coeff = coeff * 10 + (t[pos++] - '0');
      coeff %= 3;
    }
    int e[3] = {0, 0, 0};
    while (pos < t.size()) {
      char ch = t[pos];
      if (ch == '*') {
        ++pos;
        continue;
      }
      int var;
      if (ch == 'x')
        var = 0;
      else if (ch == 'y')
        var = 1;
      else if (ch == 'z')
        var = 2;
      else
        throw std::invalid_argument("unexpected character in form: " + t);
      ++pos;
      int exp = 1;
      if (pos < t.size() && t[pos] == '^') ++pos;
      if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
        exp = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
          exp = exp * 10 + (t[pos++] - '0');
      }
      e[var] += exp;
    }
    int d = e[0] + e[1] + e[2];
    if (f.d < 0) f.d = d;
    if (d != f.d) throw std::invalid_argument("form is not homogeneous: " + s);
    if (coeff % 3 == 0 && d == 0 && terms.size() == 1) return tf_zero(1, 0);
    tf_accum(tw, f, Mono3{(uint8_t)e[0], (uint8_t)e[1], (uint8_t)e[2]},
             c.from_int(static_cast<uint64_t>(coeff)));
    any = true;
  }
  if (!any) throw std::invalid_argument("empty form");
  return f;
}

std::string render_quadric(const FieldTower& tw, const QuinaryQuadric& q) {
  std::string s;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const GFElem& v = q.qc[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (v.is_zero()) continue;
      int cv = coeff_to_int(tw, v);
      if (!s.empty()) s += " + ";
      if (cv != 1) s += std::to_string(cv) + "*";
      if (i == j)
        s += "x" + std::to_string(i) + "^2";
      else
        s += "x" + std::to_string(i) + "*x" + std::to_string(j);
    }
  return s.empty() ? "0" : s;
}

QuinaryQuadric parse_quadric(const FieldTower& tw, const std::string& s) {
  QuinaryQuadric q = qq_zero(1);
  const FieldCtx& c = tw.ctx(1);
  for (auto& t : split_terms(s)) {
    size_t pos = 0;
    int coeff = 1;
    if (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
      coeff = 0;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
        coeff = coeff * 10 + (t[pos++] - '0');
      coeff %= 3;
    }
    std::vector<int> idx;
    while (pos < t.size()) {
      char ch = t[pos];
      if (ch == '*') {
        ++pos;
        continue;
      }
      if (ch != 'x') throw std::invalid_argument("unexpected character in quadric: " + t);
      ++pos;
      if (pos >= t.size() || !std::isdigit(static_cast<unsigned char>(t[pos])))
        throw std::invalid_argument("quadric variables need an index 0..4: " + t);
      int var = t[pos++] - '0';
      if (var > 4) throw std::invalid_argument("quadric variable index out of range: " + t);
      int exp = 1;
      if (pos < t.size() && t[pos] == '^') {
        ++pos;
        exp = 0;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
          exp = exp * 10 + (t[pos++] - '0');
      }
      for (int r = 0; r < exp; ++r) idx.push_back(var);
    }
    if (coeff % 3 == 0) continue;
    if (idx.size() != 2) throw std::invalid_argument("quadric term is not degree 2: " + t);
    int a = std::min(idx[0], idx[1]), b = std::max(idx[0], idx[1]);
    q.qc[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        c.add(q.qc[static_cast<size_t>(a)][static_cast<size_t>(b)],
              c.from_int(static_cast<uint64_t>(coeff % 3)));
  }
  return q;
}

std::string render_binary(const FieldTower& tw, const BivarPoly& f) {
  if (f.is_zero()) return "0";
  // descending in the X-exponent for readability
  std::vector<std::pair<std::pair<int, int>, GFElem>> terms(f.t.begin(), f.t.end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.first != b.first.first) return a.first.first > b.first.first;
    return a.first.second > b.first.second;
  });
  std::string s;
  for (auto& [mo, v] : terms) {
    if (!s.empty()) s += " + ";
    std::string mono;
    if (mo.first > 0) {
      mono += "X";
      if (mo.first > 1) mono += "^" + std::to_string(mo.first);
    }
    if (mo.second > 0) {
      if (!mono.empty()) mono += "*";
      mono += "Y";
      if (mo.second > 1) mono += "^" + std::to_string(mo.second);
    }
    std::string cv = tw.render(v);
    if (mono.empty())
      s += cv;
    else if (cv == "1")
      s += mono;
    else
      s += cv + "*" + mono;
  }
  return s;
}

}  // namespace genus5
