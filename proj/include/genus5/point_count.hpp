#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "genus5/forms.hpp"
#include "genus5/gf.hpp"
#include "genus5/singularity.hpp"

namespace genus5 {

// Exact point counts of plane sextics and their smooth models over the
// tower fields, the geometric-irreducibility decision, and Weil polynomials
// over F_9.

// #V(F) in P^2(F_{3^e}), by per-fiber distinct-root counting: for each x0 the
// roots of F(x0, y, 1), plus the line at infinity.  An identically-zero fiber
// (a line component x = x0*z) contributes 3^e points and is recorded in
// line_fibers if given.  The flat table-driven kernel is used for e <= 10;
// count_plane_curve_reference is the slow GFElem path kept for testing.
long long count_plane_curve(const FieldTower& tw, const TernaryForm& f, int e,
                            int* line_fibers = nullptr);
long long count_plane_curve_reference(const FieldTower& tw, const TernaryForm& f, int e,
                                      int* line_fibers = nullptr);

// Smooth-model count: plane count plus the tangent-cone adjustment of every
// configured singular point rational over F_{3^e} (a degree-k point counts
// iff k | e).
long long count_smooth_model(const FieldTower& tw, const TernaryForm& f,
                             const SingularConfig& config, int e);

// Two-stage decision, complete for degree-6 forms over GF(3): trial division
// by every form of degree 1..3 over GF(3) (a reducible sextic always has such
// a factor), then — if irreducible over GF(3) — a count over F_{3^6}: a
// geometrically reducible but GF(3)-irreducible sextic splits into conjugate
// components whose union has > 1270 points there, while an irreducible curve
// of arithmetic genus 10 has at most 729 + 1 + 2*10*27 = 1270.
bool is_geometrically_irreducible(const FieldTower& tw, const TernaryForm& f);

// Smooth-model counts over F_{9^m}, m = 1..5; each entry obeys the genus-5
// Weil bound |N_m - 9^m - 1| <= 10*3^m.
struct CountVector {
  std::array<long long, 5> n{};

  friend bool operator==(const CountVector&, const CountVector&) = default;
};

CountVector count_vector(const FieldTower& tw, const TernaryForm& f,
                         const SingularConfig& config);

// Monic degree-10 Weil polynomial over F_9: exact integer coefficients,
// c[0] constant term ... c[10] = 1 leading.
struct WeilPoly {
  std::array<long long, 11> c{};

  friend bool operator==(const WeilPoly&, const WeilPoly&) = default;
};

// Newton's identities on the power sums s_m = 9^m + 1 - N_m give the top half
// of the coefficients; the functional equation c_i = 9^(5-i) c_{10-i} gives
// the rest.  Verifies the Weil bound on every count, the integrality of the
// construction, and that all complex roots have |alpha| = 3 (to 1e-6).
WeilPoly weil_from_counts(const CountVector& counts);
WeilPoly weil_polynomial(const FieldTower& tw, const TernaryForm& f, const SingularConfig& config);

// Presentation: "t^10 + 4t^9 + ..." and a factored form over Z (powers of
// (t +- 3), quadratics t^2 + at + 9, and reciprocal quartics), found by exact
// deflation and verified by expansion.  Factoring is presentation-only;
// equality tests use the coefficient array.
std::string render_weil(const WeilPoly& w);
std::string render_weil_factored(const WeilPoly& w);

}  // namespace genus5
