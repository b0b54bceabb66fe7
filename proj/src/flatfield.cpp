#include "genus5/flatfield.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace genus5 {

uint16_t flat_pack(const GFElem& e) {
  uint32_t idx = 0, p = 1;
  for (int i = 0; i < e.deg; ++i) {
    idx += e.c[i] * p;
    p *= 3;
  }
  return static_cast<uint16_t>(idx);
}

GFElem flat_unpack(int k, uint16_t idx) {
  GFElem e{static_cast<uint8_t>(k), {}};
  uint32_t v = idx;
  for (int i = 0; i < k && v; ++i) {
    e.c[i] = static_cast<uint8_t>(v % 3);
    v /= 3;
  }
  return e;
}

namespace {

FlatField build_flat(const FieldTower& tw, int k) {
  const FieldCtx& ctx = tw.ctx(k);
  FlatField ff;
  ff.k = k;
  ff.q = 1;
  for (int i = 0; i < k; ++i) ff.q *= 3;
  const uint32_t n = ff.q - 1;

  ff.expt.assign(2 * n, 0);
  ff.logt.assign(ff.q, -1);
  GFElem cur = ctx.one();
  const GFElem g = ctx.gen();
  for (uint32_t i = 0; i < n; ++i) {
    uint16_t idx = flat_pack(cur);
    ff.expt[i] = idx;
    ff.expt[i + n] = idx;
    ff.logt[idx] = static_cast<int32_t>(i);
    cur = ctx.mul(cur, g);
  }
  if (!(cur == ctx.one())) throw std::logic_error("generator order mismatch");

  ff.negd.assign(243, 0);
  for (uint32_t a = 0; a < 243; ++a) {
    uint32_t r = 0, p = 1, v = a;
    for (int d = 0; d < 5; ++d) {
      r += ((3 - v % 3) % 3) * p;
      v /= 3;
      p *= 3;
    }
    ff.negd[a] = static_cast<uint16_t>(r);
  }
  ff.addd.assign(243 * 243, 0);
  for (uint32_t a = 0; a < 243; ++a)
    for (uint32_t b = 0; b < 243; ++b) {
      uint32_t r = 0, p = 1, va = a, vb = b;
      for (int d = 0; d < 5; ++d) {
        r += ((va % 3 + vb % 3) % 3) * p;
        va /= 3;
        vb /= 3;
        p *= 3;
      }
      ff.addd[a * 243 + b] = static_cast<uint16_t>(r);
    }

  ff.frob.assign(ff.q, 0);
  ff.invt.assign(ff.q, 0);
  for (uint32_t a = 1; a < ff.q; ++a) {
    uint32_t l = static_cast<uint32_t>(ff.logt[a]);
    ff.frob[a] = ff.expt[(3 * l) % n];
    ff.invt[a] = ff.expt[(n - l) % n];
  }
  return ff;
}

}  // namespace

const FlatField& flat_field(const FieldTower& tw, int k) {
  if (k < 1 || k > tw.max_degree()) throw std::invalid_argument("flat_field: degree out of range");
  static std::unique_ptr<FlatField> cache[kMaxFieldDegree + 1];
  static std::once_flag once[kMaxFieldDegree + 1];
  std::call_once(once[k], [&] { cache[k] = std::make_unique<FlatField>(build_flat(tw, k)); });
  return *cache[k];
}

void fp_trim(FlatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FlatPoly fp_mul(const FlatField& ff, const FlatPoly& a, const FlatPoly& b) {
  if (a.empty() || b.empty()) return {};
  FlatPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j]) r[i + j] = ff.add(r[i + j], ff.mul(a[i], b[j]));
  }
  fp_trim(r);
  return r;
}

void fp_mod_inplace(const FlatField& ff, FlatPoly& a, const FlatPoly& b) {
  if (b.empty()) throw std::invalid_argument("fp_mod_inplace: division by zero polynomial");
  const size_t db = b.size() - 1;
  const uint16_t lcinv = ff.inv(b.back());
  fp_trim(a);
  while (a.size() > db) {
    uint16_t c = ff.mul(a.back(), lcinv);
    size_t off = a.size() - 1 - db;
    if (c)
      for (size_t j = 0; j <= db; ++j)
        if (b[j]) a[off + j] = ff.sub(a[off + j], ff.mul(c, b[j]));
    a.pop_back();
    fp_trim(a);
  }
}

FlatPoly fp_gcd(const FlatField& ff, FlatPoly a, FlatPoly b) {
  fp_trim(a);
  fp_trim(b);
  while (!b.empty()) {
    fp_mod_inplace(ff, a, b);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    uint16_t s = ff.inv(a.back());
    for (uint16_t& c : a) c = ff.mul(c, s);
  }
  return a;
}

FlatPoly fp_cube_mod(const FlatField& ff, const FlatPoly& a, const FlatPoly& f) {
  FlatPoly r;
  if (!a.empty()) {
    r.assign(3 * (a.size() - 1) + 1, 0);
    for (size_t i = 0; i < a.size(); ++i) r[3 * i] = ff.cube(a[i]);
  }
  fp_mod_inplace(ff, r, f);
  return r;
}

uint16_t fp_eval(const FlatField& ff, const FlatPoly& f, uint16_t x) {
  uint16_t r = 0;
  for (size_t i = f.size(); i-- > 0;) r = ff.add(ff.mul(r, x), f[i]);
  return r;
}

int fp_count_roots(const FlatField& ff, const FlatPoly& f) {
  if (f.empty()) throw std::invalid_argument("fp_count_roots: zero polynomial");
  if (f.size() == 1) return 0;
  // x^q mod f by k successive cube-and-reduce steps starting from x mod f.
  FlatPoly xq = {0, 1};
  fp_mod_inplace(ff, xq, f);
  for (int t = 0; t < ff.k; ++t) xq = fp_cube_mod(ff, xq, f);
  // gcd(x^q - x, f) splits into distinct linear factors, one per root.
  FlatPoly diff = xq;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = ff.sub(diff[1], 1);
  fp_trim(diff);
  FlatPoly g = fp_gcd(ff, diff, f);
  return g.empty() ? 0 : fp_deg(g);
}

}  // namespace genus5
