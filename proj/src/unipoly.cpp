#include "genus5/unipoly.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace genus5 {

namespace {

void trim(UniPoly& p) {
  while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back();
}

}  // namespace

UniPoly up_zero(int k) { return UniPoly{k, {}}; }

UniPoly up_make(const FieldTower& tw, int k, const std::vector<int>& coeffs) {
  UniPoly p{k, {}};
  p.c.reserve(coeffs.size());
  const FieldCtx& c = tw.ctx(k);
  for (int v : coeffs) p.c.push_back(c.from_int(v));
  trim(p);
  return p;
}

UniPoly up_from(const FieldTower& tw, int k, std::vector<GFElem> coeffs) {
  (void)tw;
  UniPoly p{k, std::move(coeffs)};
  trim(p);
  return p;
}

UniPoly up_x(const FieldTower& tw, int k) { return up_make(tw, k, {0, 1}); }

UniPoly up_const(const FieldTower& tw, int k, const GFElem& v) {
  (void)tw;
  UniPoly p{k, {}};
  if (!v.is_zero()) p.c.push_back(v);
  return p;
}

UniPoly up_add(const FieldTower& tw, const UniPoly& a, const UniPoly& b) {
  const FieldCtx& c = tw.ctx(a.k);
  UniPoly r{a.k, {}};
  r.c.resize(std::max(a.c.size(), b.c.size()), c.zero());
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = c.add(r.c[i], b.c[i]);
  trim(r);
  return r;
}

UniPoly up_sub(const FieldTower& tw, const UniPoly& a, const UniPoly& b) {
  return up_add(tw, a, up_neg(tw, b));
}

UniPoly up_neg(const FieldTower& tw, const UniPoly& a) {
  const FieldCtx& c = tw.ctx(a.k);
  UniPoly r = a;
  for (auto& v : r.c) v = c.neg(v);
  return r;
}

UniPoly up_mul(const FieldTower& tw, const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return up_zero(a.k);
  const FieldCtx& c = tw.ctx(a.k);
  UniPoly r{a.k, {}};
  r.c.assign(a.c.size() + b.c.size() - 1, c.zero());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] = c.add(r.c[i + j], c.mul(a.c[i], b.c[j]));
    }
  }
  trim(r);
  return r;
}

UniPoly up_scale(const FieldTower& tw, const UniPoly& a, const GFElem& s) {
  const FieldCtx& c = tw.ctx(a.k);
  UniPoly r = a;
  for (auto& v : r.c) v = c.mul(v, s);
  trim(r);
  return r;
}

std::pair<UniPoly, UniPoly> up_divmod(const FieldTower& tw, const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldCtx& c = tw.ctx(a.k);
  int db = b.degree();
  UniPoly rem = a;
  if (a.degree() < db) return {up_zero(a.k), rem};
  GFElem lb_inv = c.inv(b.lead());
  UniPoly q{a.k, {}};
  q.c.assign(a.degree() - db + 1, c.zero());
  while (rem.degree() >= db) {
    int d = rem.degree();
    GFElem f = c.mul(rem.c[d], lb_inv);
    q.c[d - db] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[d - db + i] = c.sub(rem.c[d - db + i], c.mul(f, b.c[i]));
    trim(rem);
    if (rem.is_zero()) break;
  }
  trim(q);
  return {q, rem};
}

UniPoly up_mod(const FieldTower& tw, const UniPoly& a, const UniPoly& b) {
  return up_divmod(tw, a, b).second;
}

UniPoly up_monic(const FieldTower& tw, const UniPoly& a) {
  if (a.is_zero()) return a;
  const FieldCtx& c = tw.ctx(a.k);
  if (a.lead() == c.one()) return a;
  return up_scale(tw, a, c.inv(a.lead()));
}

UniPoly up_gcd(const FieldTower& tw, UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = up_mod(tw, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(tw, a);
}

std::tuple<UniPoly, UniPoly, UniPoly> up_ext_gcd(const FieldTower& tw, const UniPoly& a,
                                                 const UniPoly& b) {
  const FieldCtx& ctx = tw.ctx(a.k);
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = up_const(tw, a.k, ctx.one()), s1 = up_zero(a.k);
  UniPoly t0 = up_zero(a.k), t1 = up_const(tw, a.k, ctx.one());
  while (!r1.is_zero()) {
    auto [q, r] = up_divmod(tw, r0, r1);
    UniPoly s2 = up_sub(tw, s0, up_mul(tw, q, s1));
    UniPoly t2 = up_sub(tw, t0, up_mul(tw, q, t1));
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  GFElem u = ctx.inv(r0.lead());
  return {up_scale(tw, r0, u), up_scale(tw, s0, u), up_scale(tw, t0, u)};
}

UniPoly up_derivative(const FieldTower& tw, const UniPoly& a) {
  const FieldCtx& c = tw.ctx(a.k);
  UniPoly r{a.k, {}};
  if (a.degree() < 1) return r;
  r.c.assign(a.degree(), c.zero());
  for (int i = 1; i <= a.degree(); ++i) {
    GFElem m = c.from_int(i);
    r.c[i - 1] = c.mul(a.c[i], m);
  }
  trim(r);
  return r;
}

GFElem up_eval(const FieldTower& tw, const UniPoly& a, const GFElem& x) {
  const FieldCtx& c = tw.ctx(x.deg);
  GFElem acc = c.zero();
  for (int i = a.degree(); i >= 0; --i) {
    acc = c.mul(acc, x);
    GFElem coeff = a.c[i];
    if (coeff.deg != x.deg) coeff = tw.embed(coeff, x.deg);
    acc = c.add(acc, coeff);
  }
  return acc;
}

UniPoly up_embed(const FieldTower& tw, const UniPoly& a, int k2) {
  UniPoly r{k2, {}};
  r.c.reserve(a.c.size());
  for (const auto& v : a.c) r.c.push_back(tw.embed(v, k2));
  return r;
}

UniPoly up_cube_mod(const FieldTower& tw, const UniPoly& g, const UniPoly& f_monic) {
  const FieldCtx& c = tw.ctx(g.k);
  UniPoly cu{g.k, {}};
  if (g.is_zero()) return cu;
  cu.c.assign(3 * g.degree() + 1, c.zero());
  for (int i = 0; i <= g.degree(); ++i)
    if (!g.c[i].is_zero()) cu.c[3 * i] = c.frobenius(g.c[i]);
  trim(cu);
  return up_mod(tw, cu, f_monic);
}

UniPoly up_xq_mod(const FieldTower& tw, const UniPoly& f_monic, int e) {
  if (f_monic.degree() < 1) throw std::invalid_argument("modulus must have degree >= 1");
  UniPoly g = up_mod(tw, up_x(tw, f_monic.k), f_monic);
  for (int s = 0; s < e; ++s) g = up_cube_mod(tw, g, f_monic);
  return g;
}

int up_count_roots(const FieldTower& tw, const UniPoly& f, int m) {
  if (f.is_zero()) throw std::invalid_argument("root counting of the zero polynomial");
  // work over the compositum; roots of gcd(f, x^(3^m) - x) are exactly the
  // roots of f lying in GF(3^m), each simple
  int l = static_cast<int>(std::lcm(f.k, m));
  UniPoly fm = (f.k == l) ? f : up_embed(tw, f, l);
  if (fm.degree() < 1) return 0;
  fm = up_monic(tw, fm);
  UniPoly p = up_xq_mod(tw, fm, m);
  UniPoly g = up_gcd(tw, up_sub(tw, p, up_x(tw, l)), fm);
  return g.degree();
}

namespace {

// p-th root of f, valid when f' == 0 (all exponents divisible by 3):
// f = h^3 with h_i = f_{3i}^(3^(k-1)).
UniPoly cube_root(const FieldTower& tw, const UniPoly& f) {
  const FieldCtx& c = tw.ctx(f.k);
  UniPoly h{f.k, {}};
  h.c.assign(f.degree() / 3 + 1, c.zero());
  for (int i = 0; 3 * i <= f.degree(); ++i)
    h.c[i] = c.frobenius(f.c[3 * i], f.k - 1);
  trim(h);
  return h;
}

void squarefree_decompose(const FieldTower& tw, const UniPoly& f, int mult_scale,
                          std::vector<std::pair<UniPoly, int>>& out) {
  const FieldCtx& ctx = tw.ctx(f.k);
  UniPoly fp = up_derivative(tw, f);
  if (fp.is_zero()) {
    if (f.degree() == 0) return;
    squarefree_decompose(tw, cube_root(tw, f), 3 * mult_scale, out);
    return;
  }
  UniPoly c = up_gcd(tw, f, fp);
  UniPoly w = up_divmod(tw, f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = up_gcd(tw, w, c);
    UniPoly fac = up_divmod(tw, w, y).first;
    if (fac.degree() > 0) out.emplace_back(up_monic(tw, fac), i * mult_scale);
    w = std::move(y);
    c = up_divmod(tw, c, w).first;
    ++i;
  }
  // what remains is exactly the product of the multiplicity-divisible-by-3
  // parts at full multiplicity; its derivative vanishes, so the recursion
  // takes the cube root (which scales the multiplicities itself).
  if (c.degree() > 0) squarefree_decompose(tw, c, mult_scale, out);
  (void)ctx;
}

// h^q mod f where q = 3^k is the coefficient field size.
UniPoly qth_power_mod(const FieldTower& tw, UniPoly h, const UniPoly& f_monic) {
  for (int s = 0; s < f_monic.k; ++s) h = up_cube_mod(tw, h, f_monic);
  return h;
}

// Equal-degree splitting of a monic squarefree product of irreducibles of
// degree d (Cantor-Zassenhaus, odd characteristic).
void equal_degree_split(const FieldTower& tw, const UniPoly& f, int d, std::mt19937_64& rng,
                        std::vector<UniPoly>& out) {
  const FieldCtx& ctx = tw.ctx(f.k);
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  while (true) {
    UniPoly a{f.k, {}};
    a.c.assign(f.degree(), ctx.zero());
    for (auto& v : a.c) {
      std::vector<int> coeffs(f.k);
      for (int i = 0; i < f.k; ++i) coeffs[i] = static_cast<int>(rng() % 3);
      v = ctx.make(coeffs);
    }
    trim(a);
    if (a.degree() < 1) continue;
    UniPoly g = up_gcd(tw, a, f);
    if (g.degree() == 0) {
      // b = a^((q^d-1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2), avoiding huge exponents
      UniPoly prod = up_mod(tw, a, f);
      UniPoly cur = prod;
      for (int i = 1; i < d; ++i) {
        cur = qth_power_mod(tw, cur, f);
        prod = up_mod(tw, up_mul(tw, prod, cur), f);
      }
      uint64_t half = (tw.ctx(f.k).order()) / 2;
      UniPoly b = up_const(tw, f.k, ctx.one());
      UniPoly base = prod;
      uint64_t e = half;
      while (e) {
        if (e & 1) b = up_mod(tw, up_mul(tw, b, base), f);
        base = up_mod(tw, up_mul(tw, base, base), f);
        e >>= 1;
      }
      g = up_gcd(tw, up_sub(tw, b, up_const(tw, f.k, ctx.one())), f);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(tw, g, d, rng, out);
      equal_degree_split(tw, up_divmod(tw, f, g).first, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool up_less(const UniPoly& a, const UniPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.c[i] == b.c[i]) continue;
    return gf_less(a.c[i], b.c[i]);
  }
  return false;
}

std::vector<UniFactor> up_factor(const FieldTower& tw, const UniPoly& f, uint64_t seed) {
  if (f.is_zero()) throw std::invalid_argument("factoring the zero polynomial");
  std::vector<UniFactor> result;
  if (f.degree() == 0) return result;
  std::mt19937_64 rng(seed);

  std::vector<std::pair<UniPoly, int>> sqf;
  squarefree_decompose(tw, up_monic(tw, f), 1, sqf);

  for (auto& [part, mult] : sqf) {
    // Distinct-degree splitting on the squarefree part.
    UniPoly rest = part;
    UniPoly h = up_mod(tw, up_x(tw, f.k), rest);
    int d = 0;
    while (rest.degree() > 0) {
      ++d;
      if (2 * d > rest.degree()) {
        result.push_back({rest, mult});
        break;
      }
      h = qth_power_mod(tw, h, rest);
      UniPoly g = up_gcd(tw, up_sub(tw, h, up_x(tw, f.k)), rest);
      if (g.degree() > 0) {
        std::vector<UniPoly> pieces;
        equal_degree_split(tw, g, d, rng, pieces);
        for (auto& p : pieces) result.push_back({p, mult});
        rest = up_divmod(tw, rest, g).first;
        h = up_mod(tw, h, rest);
      }
    }
  }
  std::sort(result.begin(), result.end(), [](const UniFactor& a, const UniFactor& b) {
    return up_less(a.factor, b.factor);
  });
  return result;
}

std::vector<GFElem> up_roots_in_field(const FieldTower& tw, const UniPoly& f, int m) {
  int l = static_cast<int>(std::lcm(f.k, m));
  UniPoly fm = (f.k == l) ? f : up_embed(tw, f, l);
  std::vector<GFElem> roots;
  if (fm.degree() < 1) return roots;
  fm = up_monic(tw, fm);
  UniPoly p = up_xq_mod(tw, fm, m);
  UniPoly g = up_gcd(tw, up_sub(tw, p, up_x(tw, l)), fm);
  if (g.degree() < 1) return roots;
  const FieldCtx& c = tw.ctx(l);
  std::vector<GFElem> found;
  if (g.degree() == 1) {
    found.push_back(c.neg(g.c[0]));
  } else {
    for (const auto& fac : up_factor(tw, g)) {
      // g divides x^(3^m) - x, so it splits into linears over GF(3^l)
      found.push_back(c.neg(fac.factor.c[0]));
    }
  }
  for (const auto& r : found) {
    auto pr = tw.project(r, m);
    if (!pr) throw std::logic_error("root of gcd with x^(3^m)-x escaped GF(3^m)");
    roots.push_back(*pr);
  }
  std::sort(roots.begin(), roots.end(), gf_less);
  return roots;
}

}  // namespace genus5
