#pragma once

#include <cstdint>
#include <vector>

#include "genus5/gf.hpp"

namespace genus5 {

// Table-backed arithmetic for GF(3^k), k <= 10.  Elements are dense indices
// 0..3^k-1 obtained by base-3 packing of the coefficient vector (so 0 is the
// zero element and 1 is the multiplicative identity).  Multiplication,
// inversion and Frobenius go through discrete-log/antilog tables; addition is
// digitwise mod 3, split into two 5-digit halves so no table exceeds a few
// hundred kilobytes even for k = 10.  Instances are immutable after
// construction and safe to share across threads.
//
// This is the performance kernel behind fiber counting and orbit
// classification; the GFElem/FieldCtx path in gf.hpp is the reference
// implementation it is tested against.
struct FlatField {
  int k = 1;
  uint32_t q = 3;  // 3^k

  std::vector<uint16_t> expt;  // size 2(q-1): expt[i] = generator^i, doubled to skip a mod
  std::vector<int32_t> logt;   // size q: discrete log, logt[0] = -1
  std::vector<uint16_t> frob;  // a -> a^3
  std::vector<uint16_t> invt;  // a -> a^{-1}, invt[0] = 0
  std::vector<uint16_t> addd;  // 243x243 digitwise mod-3 addition of 5-digit groups
  std::vector<uint16_t> negd;  // 243 digitwise negation of a 5-digit group

  uint16_t add(uint16_t a, uint16_t b) const {
    return static_cast<uint16_t>(addd[static_cast<size_t>(a % 243) * 243 + (b % 243)] +
                                 243 * addd[static_cast<size_t>(a / 243) * 243 + (b / 243)]);
  }
  uint16_t neg(uint16_t a) const {
    return static_cast<uint16_t>(negd[a % 243] + 243 * negd[a / 243]);
  }
  uint16_t sub(uint16_t a, uint16_t b) const { return add(a, neg(b)); }
  uint16_t mul(uint16_t a, uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    return expt[static_cast<size_t>(logt[a]) + static_cast<size_t>(logt[b])];
  }
  uint16_t inv(uint16_t a) const { return invt[a]; }
  uint16_t cube(uint16_t a) const { return frob[a]; }
  uint16_t pow(uint16_t a, uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    uint64_t r = (static_cast<uint64_t>(logt[a]) * (e % (q - 1))) % (q - 1);
    return expt[r];
  }
  bool is_square(uint16_t a) const { return a == 0 || logt[a] % 2 == 0; }
};

uint16_t flat_pack(const GFElem& e);
GFElem flat_unpack(int k, uint16_t idx);

// Shared per-degree instance built over the standard tower moduli; built on
// first use, immutable afterwards.
const FlatField& flat_field(const FieldTower& tw, int k);

// Dense univariate polynomials over a FlatField: ascending coefficient
// indices, trimmed so the back entry of a nonzero polynomial is nonzero.
using FlatPoly = std::vector<uint16_t>;

inline int fp_deg(const FlatPoly& f) { return static_cast<int>(f.size()) - 1; }
void fp_trim(FlatPoly& f);
FlatPoly fp_mul(const FlatField& ff, const FlatPoly& a, const FlatPoly& b);
void fp_mod_inplace(const FlatField& ff, FlatPoly& a, const FlatPoly& b);
FlatPoly fp_gcd(const FlatField& ff, FlatPoly a, FlatPoly b);
// (sum a_i x^i)^3 = sum a_i^3 x^{3i} in characteristic 3, reduced mod f.
FlatPoly fp_cube_mod(const FlatField& ff, const FlatPoly& a, const FlatPoly& f);
uint16_t fp_eval(const FlatField& ff, const FlatPoly& f, uint16_t x);
// Number of distinct roots of f in GF(q) itself (coefficients already there):
// deg gcd(x^q - x, f), with x^q reduced by k cube-mod steps.
int fp_count_roots(const FlatField& ff, const FlatPoly& f);

}  // namespace genus5
