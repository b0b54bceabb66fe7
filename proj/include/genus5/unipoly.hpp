#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "genus5/gf.hpp"

namespace genus5 {

// Dense univariate polynomial over GF(3^k), coefficients low-to-high with no
// trailing zeros (zero polynomial = empty coefficient vector).
struct UniPoly {
  int k = 1;
  std::vector<GFElem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const GFElem& lead() const { return c.back(); }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

UniPoly up_zero(int k);
UniPoly up_make(const FieldTower& tw, int k, const std::vector<int>& coeffs);
UniPoly up_from(const FieldTower& tw, int k, std::vector<GFElem> coeffs);  // trims
UniPoly up_x(const FieldTower& tw, int k);
UniPoly up_const(const FieldTower& tw, int k, const GFElem& v);

UniPoly up_add(const FieldTower& tw, const UniPoly& a, const UniPoly& b);
UniPoly up_sub(const FieldTower& tw, const UniPoly& a, const UniPoly& b);
UniPoly up_neg(const FieldTower& tw, const UniPoly& a);
UniPoly up_mul(const FieldTower& tw, const UniPoly& a, const UniPoly& b);
UniPoly up_scale(const FieldTower& tw, const UniPoly& a, const GFElem& s);
// quotient and remainder, b != 0
std::pair<UniPoly, UniPoly> up_divmod(const FieldTower& tw, const UniPoly& a, const UniPoly& b);
UniPoly up_mod(const FieldTower& tw, const UniPoly& a, const UniPoly& b);
UniPoly up_monic(const FieldTower& tw, const UniPoly& a);
UniPoly up_gcd(const FieldTower& tw, UniPoly a, UniPoly b);  // monic (or zero)
// g = s*a + t*b with g monic
std::tuple<UniPoly, UniPoly, UniPoly> up_ext_gcd(const FieldTower& tw, const UniPoly& a,
                                                 const UniPoly& b);
UniPoly up_derivative(const FieldTower& tw, const UniPoly& a);
GFElem up_eval(const FieldTower& tw, const UniPoly& a, const GFElem& x);
UniPoly up_embed(const FieldTower& tw, const UniPoly& a, int k2);

// Coefficient-wise Frobenius composed with x -> x^3; for g with coefficients
// in a char-3 field this equals g(x)^3.  Reduced modulo monic f.
UniPoly up_cube_mod(const FieldTower& tw, const UniPoly& g, const UniPoly& f_monic);
// x^(3^e) mod f (f monic, degree >= 1) by e cube steps.
UniPoly up_xq_mod(const FieldTower& tw, const UniPoly& f_monic, int e);

// Number of distinct roots of f in GF(3^m); coefficients of f must live in a
// subfield of GF(3^m).  Root counting goes through deg gcd(x^(3^m) - x, f),
// never through scans of the field.
int up_count_roots(const FieldTower& tw, const UniPoly& f, int m);

// All roots of f in GF(3^m), canonically ordered.
std::vector<GFElem> up_roots_in_field(const FieldTower& tw, const UniPoly& f, int m);

// Complete factorization over the coefficient field: squarefree decomposition,
// then distinct-degree splitting, then seeded equal-degree splitting.
// Factors are monic irreducible, sorted canonically; multiplicities >= 1.
// The product of factor^mult times the leading unit reproduces f.
struct UniFactor {
  UniPoly factor;
  int multiplicity;
};
std::vector<UniFactor> up_factor(const FieldTower& tw, const UniPoly& f,
                                 uint64_t seed = 0x5eed5eed);

bool up_less(const UniPoly& a, const UniPoly& b);  // canonical order

}  // namespace genus5
