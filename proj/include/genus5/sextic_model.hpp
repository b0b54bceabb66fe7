#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "genus5/forms.hpp"
#include "genus5/gf.hpp"

namespace genus5 {

// The plane-model construction: three quadrics in P^4 vanishing at
// P = (1:0:0:0:0) and Q = (0:0:0:0:1) determine a plane sextic
// det(A)*v1 - v2*v3 birational to the curve they cut out.

struct NotVanishingAtPQ : std::runtime_error {
  NotVanishingAtPQ() : std::runtime_error("quadric does not vanish at both coordinate points P and Q (nonzero x0^2 or x4^2 term)") {}
};

struct DegenerateDetA : std::runtime_error {
  DegenerateDetA() : std::runtime_error("det(A) is identically zero: the triple is degenerate (hyperelliptic or reducible case)") {}
};

// Graded parts of a quadric vanishing at P and Q:
//   phi = a*x0*x4 + f*x0 + g*x4 + h
// with f, g linear and h quadratic in x1, x2, x3 (written as ternary forms in
// x, y, z).
struct QuadricParts {
  GFElem a;
  TernaryForm f, g, h;
};

struct QuadricTriple {
  std::array<QuinaryQuadric, 3> phi;

  int field_degree() const { return phi[0].k; }
  friend bool operator==(const QuadricTriple&, const QuadricTriple&) = default;
};

QuadricParts decompose(const FieldTower& tw, const QuinaryQuadric& phi);

// Intermediate forms of the construction, exposed so tests can check the
// exact pointwise relations det(A)(p)*(p0*p4, p0, p4) = (v1, v2, v3)(p) on
// the quadric intersection.
struct SexticParts {
  TernaryForm det_a;            // degree 2
  TernaryForm v1, v2, v3;       // degrees 4, 3, 3
  TernaryForm sextic;           // degree 6: det_a*v1 - v2*v3
};

SexticParts build_sextic_parts(const FieldTower& tw, const QuadricTriple& T);
TernaryForm build_sextic(const FieldTower& tw, const QuadricTriple& T);

// Projective equality of forms: equal up to a nonzero scalar (over the
// compositum if the two sides live in different fields).
bool tf_proportional(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b);

// True iff shearing the triple by x0 -> x0 + phi, x4 -> x4 + psi (phi, psi
// linear in x1,x2,x3) leaves the sextic projectively unchanged.
bool shear_invariance_check(const FieldTower& tw, const QuadricTriple& T, const TernaryForm& phi,
                            const TernaryForm& psi);

// Companion transforms used by the invariance tests: replace the triple by
// (phi1,phi2,phi3)*B, or swap the coordinates x0 <-> x4.
QuadricTriple triple_basis_change(const FieldTower& tw, const QuadricTriple& T,
                                  const std::array<std::array<GFElem, 3>, 3>& B);
QuadricTriple triple_swap04(const FieldTower& tw, const QuadricTriple& T);

QuadricTriple parse_triple(const FieldTower& tw, const std::array<std::string, 3>& s);

// Brute-force census of V(phi1,phi2,phi3) in P^4(GF(3^e)): point count, the
// points themselves (first nonzero coordinate normalized to 1), and a
// Jacobian-rank smoothness sweep over all points of degree <= maxe.
long long p4_variety_count(const FieldTower& tw, const QuadricTriple& T, int e);
std::vector<std::array<GFElem, 5>> p4_variety_points(const FieldTower& tw, const QuadricTriple& T,
                                                     int e);
bool p4_variety_smooth_through_degree(const FieldTower& tw, const QuadricTriple& T, int maxe);

}  // namespace genus5
