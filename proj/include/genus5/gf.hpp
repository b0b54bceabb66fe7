#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace genus5 {

// Largest extension degree the tower supports.  Everything in the pipeline
// lives in GF(3^k) for k <= 10: curve coefficients in GF(3), singular points
// in degree <= 5, tangent directions in degree <= 10, counting fields up to
// GF(3^10).
constexpr int kMaxFieldDegree = 10;

// Element of GF(3^k): residue-class representative c0 + c1*x + ... modulo the
// registered degree-k modulus.  Coefficients are in {0,1,2}; slots >= deg stay
// zero so that operator== is plain memberwise comparison.
struct GFElem {
  uint8_t deg = 1;
  std::array<uint8_t, kMaxFieldDegree> c{};

  friend bool operator==(const GFElem&, const GFElem&) = default;

  bool is_zero() const {
    for (uint8_t v : c)
      if (v) return false;
    return true;
  }
};

// Total order used for canonical keys (degree first, then coefficients).
bool gf_less(const GFElem& a, const GFElem& b);

// Arithmetic context of one field GF(3^k).  Immutable after construction;
// the discrete-log table is built lazily under a once_flag, so const methods
// stay safe to call concurrently.
class FieldCtx {
 public:
  FieldCtx(int k, std::vector<uint8_t> modulus);

  int degree() const { return k_; }
  uint64_t order() const { return ord_; }                 // |GF(3^k)*| = 3^k - 1
  const std::vector<uint8_t>& modulus() const { return mod_; }

  GFElem zero() const { return GFElem{static_cast<uint8_t>(k_), {}}; }
  GFElem one() const { return from_int(1); }
  GFElem from_int(long long v) const;
  GFElem gen() const;                                     // residue of x (primitive)
  GFElem make(const std::vector<int>& coeffs) const;

  GFElem add(const GFElem& a, const GFElem& b) const;
  GFElem sub(const GFElem& a, const GFElem& b) const;
  GFElem neg(const GFElem& a) const;
  GFElem mul(const GFElem& a, const GFElem& b) const;
  GFElem inv(const GFElem& a) const;                      // a != 0
  GFElem div(const GFElem& a, const GFElem& b) const { return mul(a, inv(b)); }
  GFElem pow(const GFElem& a, uint64_t e) const;
  GFElem frobenius(const GFElem& a, int t = 1) const;     // a^(3^t)
  bool is_square(const GFElem& a) const;
  uint64_t dlog(const GFElem& a) const;                   // a != 0; gen()^result == a

 private:
  void build_dlog() const;

  int k_;
  uint64_t ord_;
  std::vector<uint8_t> mod_;
  // x^{k+j} mod f for j = 0..k-2, used by schoolbook reduction.
  std::vector<std::array<uint8_t, kMaxFieldDegree>> red_;
  // Column j holds x^{3j} mod f: the matrix of the (GF(3)-linear) cube map.
  std::array<std::array<uint8_t, kMaxFieldDegree>, kMaxFieldDegree> frob_{};
  mutable std::vector<uint32_t> dlog_tab_;
  mutable std::once_flag dlog_once_;
};

// Tower of the fields GF(3^k), 1 <= k <= max_degree, with the standard
// (Conway) moduli and the compatible embeddings between them.  Immutable
// after construction and safe to share across threads.
class FieldTower {
 public:
  explicit FieldTower(int max_degree = kMaxFieldDegree);

  int max_degree() const { return maxk_; }
  const FieldCtx& ctx(int k) const;

  // Convenience dispatch on deg(a); both operands must live in the same field.
  GFElem add(const GFElem& a, const GFElem& b) const { return ctx(a.deg).add(a, b); }
  GFElem sub(const GFElem& a, const GFElem& b) const { return ctx(a.deg).sub(a, b); }
  GFElem neg(const GFElem& a) const { return ctx(a.deg).neg(a); }
  GFElem mul(const GFElem& a, const GFElem& b) const { return ctx(a.deg).mul(a, b); }
  GFElem inv(const GFElem& a) const { return ctx(a.deg).inv(a); }
  GFElem div(const GFElem& a, const GFElem& b) const { return ctx(a.deg).div(a, b); }
  GFElem pow(const GFElem& a, uint64_t e) const { return ctx(a.deg).pow(a, e); }
  GFElem frobenius(const GFElem& a, int t = 1) const { return ctx(a.deg).frobenius(a, t); }
  bool is_square(const GFElem& a) const { return ctx(a.deg).is_square(a); }

  // Embedding GF(3^deg(a)) -> GF(3^k2); requires deg(a) | k2 <= max_degree.
  GFElem embed(const GFElem& a, int k2) const;
  // Inverse of embed on its image: expresses a in GF(3^k1) if it lies in the
  // embedded subfield (k1 | deg(a)); nullopt otherwise.
  std::optional<GFElem> project(const GFElem& a, int k1) const;
  // Degree of the smallest subfield containing a.
  int minimal_degree(const GFElem& a) const;
  // Moves a to the smallest field that holds it.
  GFElem compress(const GFElem& a) const;

  // Rendering: "0"/"1"/"2" for prime-field values, else "zK^e" with e the
  // discrete log with respect to the registered primitive element.
  std::string render(const GFElem& a) const;
  // Accepts "0","1","2", "zK", "zK^e", the same with a Unicode zeta, and
  // coefficient tuples "[c0,c1,...]".
  GFElem parse_element(const std::string& s) const;

  // Modulus table (degree -> low-to-high coefficients), for run manifests.
  std::map<int, std::vector<int>> moduli_table() const;

 private:
  struct EmbedData {
    // powers[i] = image(gen_a)^i in GF(3^b), i = 0..a-1
    std::vector<GFElem> powers;
  };

  int maxk_;
  std::vector<std::unique_ptr<FieldCtx>> ctxs_;     // index k-1
  std::map<std::pair<int, int>, EmbedData> embeds_; // key (a,b), a|b, a<b
};

// The standard modulus table used by the tower (degree -> low-to-high
// coefficients).  Exposed so tests can re-derive it from its definition.
const std::vector<std::vector<uint8_t>>& standard_moduli();

}  // namespace genus5
