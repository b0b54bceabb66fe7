#include "genus5/gf.hpp"

#include <cstring>
#include <stdexcept>

namespace genus5 {

namespace {

inline uint8_t add3(uint8_t a, uint8_t b) {
  uint8_t s = static_cast<uint8_t>(a + b);
  return s >= 3 ? static_cast<uint8_t>(s - 3) : s;
}
inline uint8_t neg3(uint8_t a) { return a ? static_cast<uint8_t>(3 - a) : 0; }
inline uint8_t sub3(uint8_t a, uint8_t b) { return add3(a, neg3(b)); }
inline uint8_t mul3(uint8_t a, uint8_t b) { return static_cast<uint8_t>((a * b) % 3); }

uint64_t pow3(int k) {
  uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= 3;
  return r;
}

// Dense GF(3)[x] helpers used during construction-time verification only.
using Poly3 = std::vector<uint8_t>;

int pdeg(const Poly3& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i]) return i;
  return -1;
}

// p mod q, q monic-normalizable, destructive on a copy.
Poly3 pmod(Poly3 p, const Poly3& q) {
  int dq = pdeg(q);
  uint8_t lead = q[dq];
  uint8_t lead_inv = (lead == 1) ? 1 : 2;  // inverses in GF(3)*
  for (int d = pdeg(p); d >= dq; d = pdeg(p)) {
    uint8_t f = mul3(p[d], lead_inv);
    for (int i = 0; i <= dq; ++i)
      p[d - dq + i] = sub3(p[d - dq + i], mul3(f, q[i]));
  }
  return p;
}

bool divides(const Poly3& q, const Poly3& p) { return pdeg(pmod(p, q)) < 0; }

}  // namespace

const std::vector<std::vector<uint8_t>>& standard_moduli() {
  // Registered modulus of GF(3^k), low-to-high coefficients.  These are the
  // standard compatible primitive polynomials for p = 3; construction and the
  // unit tests re-verify primitivity and the norm-compatibility that makes
  // subfield embeddings via gen^((3^b-1)/(3^a-1)) coherent.
  static const std::vector<std::vector<uint8_t>> tab = {
      {},                                   // unused (degree 0)
      {1, 1},                               // x + 1
      {2, 2, 1},                            // x^2 + 2x + 2
      {1, 2, 0, 1},                         // x^3 + 2x + 1
      {2, 0, 0, 2, 1},                      // x^4 + 2x^3 + 2
      {1, 2, 0, 0, 0, 1},                   // x^5 + 2x + 1
      {2, 2, 1, 0, 2, 0, 1},                // x^6 + 2x^4 + x^2 + 2x + 2
      {1, 0, 2, 0, 0, 0, 0, 1},             // x^7 + 2x^2 + 1
      {2, 2, 2, 0, 1, 2, 0, 0, 1},          // x^8 + 2x^5 + x^4 + 2x^2 + 2x + 2
      {1, 1, 2, 2, 0, 0, 0, 0, 0, 1},       // x^9 + 2x^3 + 2x^2 + x + 1
      {2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1},    // x^10 + 2x^6 + 2x^5 + 2x^4 + x + 2
  };
  return tab;
}

bool gf_less(const GFElem& a, const GFElem& b) {
  if (a.deg != b.deg) return a.deg < b.deg;
  for (int i = 0; i < a.deg; ++i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

FieldCtx::FieldCtx(int k, std::vector<uint8_t> modulus) : k_(k), mod_(std::move(modulus)) {
  if (k < 1 || k > kMaxFieldDegree) throw std::invalid_argument("field degree out of range");
  if (static_cast<int>(mod_.size()) != k + 1 || mod_[k] != 1)
    throw std::invalid_argument("modulus must be monic of the context degree");
  ord_ = pow3(k) - 1;

  // Irreducibility re-check: a reducible modulus has a monic divisor of
  // degree <= k/2; trial-divide them all (at most 3^5 candidates).
  for (int d = 1; 2 * d <= k; ++d) {
    Poly3 g(d + 1, 0);
    g[d] = 1;
    uint64_t total = pow3(d);
    for (uint64_t t = 0; t < total; ++t) {
      uint64_t v = t;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<uint8_t>(v % 3);
        v /= 3;
      }
      if (divides(g, mod_)) throw std::logic_error("registered modulus is reducible");
    }
  }

  // x^{k+j} mod f rows for the schoolbook reduction.
  if (k > 1) {
    red_.resize(k - 1);
    std::array<uint8_t, kMaxFieldDegree> cur{};
    for (int i = 0; i < k; ++i) cur[i] = neg3(mod_[i]);  // x^k mod f
    red_[0] = cur;
    for (int j = 1; j < k - 1; ++j) {
      std::array<uint8_t, kMaxFieldDegree> nxt{};
      uint8_t top = cur[k - 1];
      for (int i = k - 1; i > 0; --i) nxt[i] = cur[i - 1];
      nxt[0] = 0;
      if (top)
        for (int i = 0; i < k; ++i) nxt[i] = add3(nxt[i], mul3(top, red_[0][i]));
      red_[j] = nxt;
      cur = nxt;
    }
  }

  // Cube-map matrix: column j = x^{3j} mod f = (x^3)^j.  mul() already
  // reduces, so x^3 is just gen()^3.
  GFElem xe = gen();
  GFElem x3 = mul(xe, mul(xe, xe));
  GFElem col = one();
  for (int j = 0; j < k_; ++j) {
    for (int i = 0; i < k_; ++i) frob_[j][i] = col.c[i];
    col = mul(col, x3);
  }
}

GFElem FieldCtx::from_int(long long v) const {
  GFElem r = zero();
  r.c[0] = static_cast<uint8_t>(((v % 3) + 3) % 3);
  return r;
}

GFElem FieldCtx::gen() const {
  if (k_ == 1) return from_int(2);  // x == -1 modulo x+1
  GFElem r = zero();
  r.c[1] = 1;
  return r;
}

GFElem FieldCtx::make(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) > k_)
    throw std::invalid_argument("too many coefficients for field degree");
  GFElem r = zero();
  for (size_t i = 0; i < coeffs.size(); ++i)
    r.c[i] = static_cast<uint8_t>(((coeffs[i] % 3) + 3) % 3);
  return r;
}

GFElem FieldCtx::add(const GFElem& a, const GFElem& b) const {
  GFElem r = a;
  for (int i = 0; i < k_; ++i) r.c[i] = add3(a.c[i], b.c[i]);
  return r;
}

GFElem FieldCtx::sub(const GFElem& a, const GFElem& b) const {
  GFElem r = a;
  for (int i = 0; i < k_; ++i) r.c[i] = sub3(a.c[i], b.c[i]);
  return r;
}

GFElem FieldCtx::neg(const GFElem& a) const {
  GFElem r = a;
  for (int i = 0; i < k_; ++i) r.c[i] = neg3(a.c[i]);
  return r;
}

GFElem FieldCtx::mul(const GFElem& a, const GFElem& b) const {
  uint16_t acc[2 * kMaxFieldDegree - 1] = {};
  for (int i = 0; i < k_; ++i) {
    if (!a.c[i]) continue;
    for (int j = 0; j < k_; ++j) acc[i + j] += static_cast<uint16_t>(a.c[i] * b.c[j]);
  }
  for (int d = 0; d < 2 * k_ - 1; ++d) acc[d] %= 3;
  for (int d = 2 * k_ - 2; d >= k_; --d) {
    uint16_t cc = acc[d];
    if (!cc) continue;
    acc[d] = 0;
    const auto& row = red_[d - k_];
    for (int i = 0; i < k_; ++i)
      acc[i] = static_cast<uint16_t>((acc[i] + cc * row[i]) % 3);
  }
  GFElem r;
  r.deg = static_cast<uint8_t>(k_);
  r.c = {};
  for (int i = 0; i < k_; ++i) r.c[i] = static_cast<uint8_t>(acc[i]);
  return r;
}

GFElem FieldCtx::inv(const GFElem& a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  // Extended Euclid on (modulus, a) over GF(3).
  uint8_t r0[kMaxFieldDegree + 1] = {}, r1[kMaxFieldDegree + 1] = {};
  uint8_t t0[kMaxFieldDegree + 1] = {}, t1[kMaxFieldDegree + 1] = {};
  for (int i = 0; i <= k_; ++i) r0[i] = mod_[i];
  for (int i = 0; i < k_; ++i) r1[i] = a.c[i];
  t1[0] = 1;
  auto deg_of = [&](const uint8_t* p) {
    for (int i = kMaxFieldDegree; i >= 0; --i)
      if (p[i]) return i;
    return -1;
  };
  int d0 = k_, d1 = deg_of(r1);
  while (d1 > 0) {
    // r0 -= (lead ratio) * x^(d0-d1) * r1, repeatedly
    while (d0 >= d1) {
      uint8_t f = mul3(r0[d0], r1[d1] == 1 ? 1 : 2);
      int s = d0 - d1;
      for (int i = 0; i <= d1; ++i) r0[i + s] = sub3(r0[i + s], mul3(f, r1[i]));
      for (int i = 0; i <= kMaxFieldDegree - s; ++i) t0[i + s] = sub3(t0[i + s], mul3(f, t1[i]));
      d0 = deg_of(r0);
      if (d0 < 0) break;
    }
    std::swap(d0, d1);
    for (int i = 0; i <= kMaxFieldDegree; ++i) {
      std::swap(r0[i], r1[i]);
      std::swap(t0[i], t1[i]);
    }
  }
  if (d1 < 0) throw std::domain_error("element not invertible");
  uint8_t c_inv = (r1[0] == 1) ? 1 : 2;
  GFElem r = zero();
  for (int i = 0; i < k_; ++i) r.c[i] = mul3(t1[i], c_inv);
  return r;
}

GFElem FieldCtx::pow(const GFElem& a, uint64_t e) const {
  GFElem r = one();
  GFElem b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

GFElem FieldCtx::frobenius(const GFElem& a, int t) const {
  int tt = ((t % k_) + k_) % k_;
  GFElem r = a;
  for (int s = 0; s < tt; ++s) {
    GFElem nx = zero();
    for (int j = 0; j < k_; ++j) {
      uint8_t aj = r.c[j];
      if (!aj) continue;
      const auto& col = frob_[j];
      for (int i = 0; i < k_; ++i) nx.c[i] = add3(nx.c[i], mul3(aj, col[i]));
    }
    r = nx;
  }
  return r;
}

bool FieldCtx::is_square(const GFElem& a) const {
  if (a.is_zero()) return true;
  return pow(a, ord_ / 2) == one();
}

void FieldCtx::build_dlog() const {
  uint64_t size = ord_ + 1;
  dlog_tab_.assign(size, UINT32_MAX);
  auto index_of = [&](const GFElem& e) {
    uint64_t idx = 0, p = 1;
    for (int i = 0; i < k_; ++i) {
      idx += e.c[i] * p;
      p *= 3;
    }
    return idx;
  };
  GFElem cur = one();
  GFElem g = gen();
  for (uint64_t e = 0; e < ord_; ++e) {
    dlog_tab_[index_of(cur)] = static_cast<uint32_t>(e);
    cur = mul(cur, g);
  }
}

uint64_t FieldCtx::dlog(const GFElem& a) const {
  if (a.is_zero()) throw std::domain_error("dlog of zero");
  std::call_once(dlog_once_, [this] { build_dlog(); });
  uint64_t idx = 0, p = 1;
  for (int i = 0; i < k_; ++i) {
    idx += a.c[i] * p;
    p *= 3;
  }
  uint32_t v = dlog_tab_[idx];
  if (v == UINT32_MAX) throw std::logic_error("dlog table miss: generator not primitive");
  return v;
}

FieldTower::FieldTower(int max_degree) : maxk_(max_degree) {
  if (max_degree < 1 || max_degree > kMaxFieldDegree)
    throw std::invalid_argument("tower max_degree out of range");
  const auto& tab = standard_moduli();
  ctxs_.reserve(static_cast<size_t>(maxk_));
  for (int k = 1; k <= maxk_; ++k) ctxs_.push_back(std::make_unique<FieldCtx>(k, tab[k]));

  for (int b = 2; b <= maxk_; ++b) {
    for (int a = 1; a < b; ++a) {
      if (b % a) continue;
      const FieldCtx& cb = ctx(b);
      uint64_t e = cb.order() / ctx(a).order();
      GFElem img = cb.pow(cb.gen(), e);
      // The image must be a root of the degree-a modulus; this is exactly the
      // compatibility the standard moduli are chosen for.
      GFElem acc = cb.zero();
      const auto& ma = standard_moduli()[a];
      for (int i = a; i >= 0; --i) {
        acc = cb.mul(acc, img);
        acc = cb.add(acc, cb.from_int(ma[i]));
      }
      if (!acc.is_zero()) throw std::logic_error("incompatible subfield embedding");
      EmbedData ed;
      ed.powers.resize(a);
      GFElem p = cb.one();
      for (int i = 0; i < a; ++i) {
        ed.powers[i] = p;
        p = cb.mul(p, img);
      }
      embeds_.emplace(std::make_pair(a, b), std::move(ed));
    }
  }
}

const FieldCtx& FieldTower::ctx(int k) const {
  if (k < 1 || k > maxk_) throw std::invalid_argument("field degree outside tower");
  return *ctxs_[static_cast<size_t>(k - 1)];
}

GFElem FieldTower::embed(const GFElem& a, int k2) const {
  int k1 = a.deg;
  if (k1 == k2) return a;
  if (k2 < k1 || k2 % k1 || k2 > maxk_) throw std::invalid_argument("invalid embedding target");
  const EmbedData& ed = embeds_.at({k1, k2});
  const FieldCtx& cb = ctx(k2);
  GFElem r = cb.zero();
  for (int i = 0; i < k1; ++i) {
    if (!a.c[i]) continue;
    GFElem term = ed.powers[i];
    if (a.c[i] == 2) term = cb.neg(term);
    r = cb.add(r, term);
  }
  return r;
}

std::optional<GFElem> FieldTower::project(const GFElem& a, int k1) const {
  int b = a.deg;
  if (k1 == b) return a;
  if (k1 > b || b % k1) return std::nullopt;
  const EmbedData& ed = embeds_.at({k1, b});
  // Solve E v = a over GF(3), E the b x k1 matrix of basis images.
  uint8_t m[kMaxFieldDegree][kMaxFieldDegree + 1] = {};
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < k1; ++j) m[i][j] = ed.powers[j].c[i];
    m[i][k1] = a.c[i];
  }
  int row = 0;
  std::vector<int> pivot_col(k1, -1);
  for (int col = 0; col < k1 && row < b; ++col) {
    int pr = -1;
    for (int i = row; i < b; ++i)
      if (m[i][col]) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j <= k1; ++j) std::swap(m[pr][j], m[row][j]);
    uint8_t piv_inv = (m[row][col] == 1) ? 1 : 2;
    for (int j = 0; j <= k1; ++j) m[row][j] = mul3(m[row][j], piv_inv);
    for (int i = 0; i < b; ++i) {
      if (i == row || !m[i][col]) continue;
      uint8_t f = m[i][col];
      for (int j = 0; j <= k1; ++j) m[i][j] = sub3(m[i][j], mul3(f, m[row][j]));
    }
    pivot_col[col] = row;
    ++row;
  }
  // Consistency: no nonzero RHS below the pivots.
  for (int i = row; i < b; ++i)
    if (m[i][k1]) return std::nullopt;
  GFElem r = ctx(k1).zero();
  for (int col = 0; col < k1; ++col)
    if (pivot_col[col] >= 0) r.c[col] = m[pivot_col[col]][k1];
  // The embedding matrix has full column rank, so every column carries a pivot.
  return r;
}

int FieldTower::minimal_degree(const GFElem& a) const {
  int b = a.deg;
  for (int d = 1; d < b; ++d) {
    if (b % d) continue;
    if (ctx(b).frobenius(a, d) == a) return d;
  }
  return b;
}

GFElem FieldTower::compress(const GFElem& a) const {
  int d = minimal_degree(a);
  if (d == a.deg) return a;
  auto r = project(a, d);
  if (!r) throw std::logic_error("compress: projection unexpectedly failed");
  return *r;
}

std::string FieldTower::render(const GFElem& a) const {
  bool constant = true;
  for (int i = 1; i < a.deg; ++i)
    if (a.c[i]) { constant = false; break; }
  if (constant) return std::to_string(static_cast<int>(a.c[0]));
  uint64_t e = ctx(a.deg).dlog(a);
  std::string s = "z" + std::to_string(static_cast<int>(a.deg));
  if (e != 1) s += "^" + std::to_string(e);
  return s;
}

GFElem FieldTower::parse_element(const std::string& raw) const {
  std::string s;
  for (char ch : raw)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty field element");
  if (s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unterminated coefficient tuple");
    std::vector<int> coeffs;
    std::string body = s.substr(1, s.size() - 2);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t comma = body.find(',', pos);
      std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      coeffs.push_back(std::stoi(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (coeffs.empty()) throw std::invalid_argument("empty coefficient tuple");
    return ctx(static_cast<int>(coeffs.size())).make(coeffs);
  }
  size_t p = 0;
  if (s[0] == 'z' || s[0] == 'Z') {
    p = 1;
  } else if (s.size() >= 2 && static_cast<unsigned char>(s[0]) == 0xCE &&
             static_cast<unsigned char>(s[1]) == 0xB6) {
    p = 2;  // UTF-8 zeta
  } else {
    // plain integer: prime-subfield constant
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("malformed field element: " + raw);
    return ctx(1).from_int(v);
  }
  size_t caret = s.find('^', p);
  std::string kpart = s.substr(p, caret == std::string::npos ? std::string::npos : caret - p);
  if (kpart.empty()) throw std::invalid_argument("missing field degree in: " + raw);
  int k = std::stoi(kpart);
  uint64_t e = 1;
  if (caret != std::string::npos) e = std::stoull(s.substr(caret + 1));
  const FieldCtx& c = ctx(k);
  return c.pow(c.gen(), e);
}

std::map<int, std::vector<int>> FieldTower::moduli_table() const {
  std::map<int, std::vector<int>> r;
  for (int k = 1; k <= maxk_; ++k) {
    std::vector<int> v(ctx(k).modulus().begin(), ctx(k).modulus().end());
    r[k] = v;
  }
  return r;
}

}  // namespace genus5
