#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "genus5/gf.hpp"
#include "genus5/unipoly.hpp"

namespace genus5 {

// Exponent triple of a monomial x^a y^b z^c.
using Mono3 = std::array<uint8_t, 3>;

// Canonical layout of the 28 degree-6 monomials: graded lexicographic with
// x > y > z, i.e. exponent triples in descending lexicographic order,
// x^6 first and z^6 last.  Coefficient vectors and the linear systems built
// on them all use this indexing.
const std::array<Mono3, 28>& sextic_monomials();
int sextic_index(int a, int b, int c);

// Sparse homogeneous form in x, y, z over GF(3^k).  Keys iterate in
// descending lexicographic order so the leading monomial is begin().
struct TernaryForm {
  int k = 1;
  int d = 0;  // total degree; meaningful while t is nonempty
  std::map<Mono3, GFElem, std::greater<Mono3>> t;

  bool is_zero() const { return t.empty(); }
  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;
};

TernaryForm tf_zero(int k, int d);
// term list (a,b,c,coeff); all triples must share a total degree
TernaryForm tf_make(const FieldTower& tw, int k,
                    const std::vector<std::tuple<int, int, int, int>>& terms);
void tf_set(const FieldTower& tw, TernaryForm& f, Mono3 m, const GFElem& v);
GFElem tf_coeff(const FieldTower& tw, const TernaryForm& f, Mono3 m);

TernaryForm tf_add(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b);
TernaryForm tf_sub(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b);
TernaryForm tf_neg(const FieldTower& tw, const TernaryForm& a);
TernaryForm tf_scale(const FieldTower& tw, const TernaryForm& a, const GFElem& s);
TernaryForm tf_mul(const FieldTower& tw, const TernaryForm& a, const TernaryForm& b);
TernaryForm tf_embed(const FieldTower& tw, const TernaryForm& a, int k2);
TernaryForm tf_partial(const FieldTower& tw, const TernaryForm& a, int var);
GFElem tf_eval(const FieldTower& tw, const TernaryForm& a, const GFElem& x, const GFElem& y,
               const GFElem& z);
// F(M x) for a 3x3 matrix of field elements (columns act on variables).
TernaryForm tf_substitute(const FieldTower& tw, const TernaryForm& a,
                          const std::array<std::array<GFElem, 3>, 3>& m);

// Degree-6 form <-> canonical 28-coefficient vector.
std::vector<GFElem> tf_to_vec28(const FieldTower& tw, const TernaryForm& f);
TernaryForm tf_from_vec28(const FieldTower& tw, const std::vector<GFElem>& v);

// Single-divisor exact division test in the graded-lex order.
bool form_divides(const FieldTower& tw, const TernaryForm& g, const TernaryForm& f);

// Projective plane point with normalized representative: coordinates live in
// the smallest field containing the point and the first nonzero coordinate
// is 1.
struct ProjPoint {
  std::array<GFElem, 3> x;

  int degree() const { return x[0].deg; }
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

ProjPoint make_point(const FieldTower& tw, GFElem a, GFElem b, GFElem c);
ProjPoint point_frobenius(const FieldTower& tw, const ProjPoint& p, int t = 1);
// Frobenius orbit, starting at p (minimal-field representative of each).
std::vector<ProjPoint> point_orbit(const FieldTower& tw, const ProjPoint& p);
bool point_less(const ProjPoint& a, const ProjPoint& b);
std::string render_point(const FieldTower& tw, const ProjPoint& p);
ProjPoint parse_point(const FieldTower& tw, const std::string& s);
// Apply an invertible matrix over GF(3) (entries 0..2) to the point.
ProjPoint point_apply(const FieldTower& tw, const std::array<std::array<uint8_t, 3>, 3>& m,
                      const ProjPoint& p);
bool points_collinear(const FieldTower& tw, const ProjPoint& a, const ProjPoint& b,
                      const ProjPoint& c);

// Dense-enough bivariate polynomial used for Taylor expansions at a point and
// for blow-up strict transforms.  Exponent pair -> coefficient.
struct BivarPoly {
  int k = 1;
  std::map<std::pair<int, int>, GFElem> t;

  bool is_zero() const { return t.empty(); }
  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;
};

void bv_set(BivarPoly& f, int i, int j, const GFElem& v);
GFElem bv_coeff(const FieldTower& tw, const BivarPoly& f, int i, int j);
BivarPoly bv_add(const FieldTower& tw, const BivarPoly& a, const BivarPoly& b);
BivarPoly bv_mul(const FieldTower& tw, const BivarPoly& a, const BivarPoly& b);
int bv_min_total_degree(const BivarPoly& f);  // -1 for zero
int bv_degree_x(const BivarPoly& f);          // degree in the first variable, -1 for zero
int bv_degree_y(const BivarPoly& f);          // degree in the second variable, -1 for zero
BivarPoly bv_graded_piece(const BivarPoly& f, int j);
BivarPoly bv_partial(const FieldTower& tw, const BivarPoly& f, int var);
GFElem bv_eval(const FieldTower& tw, const BivarPoly& f, const GFElem& x, const GFElem& y);
BivarPoly bv_embed(const FieldTower& tw, const BivarPoly& f, int k2);
// Strict transform charts of the blow-up at the origin, for f of multiplicity
// m there: chart 1 substitutes Y = Z*X and divides by X^m; chart 2
// substitutes X = Z*Y and divides by Y^m.
BivarPoly bv_blowup_chart1(const BivarPoly& f, int m);
BivarPoly bv_blowup_chart2(const BivarPoly& f, int m);
// Restriction of a binary form in the chart variables to one variable:
// f(1, t) and f(t, 1) as univariate polynomials.
UniPoly bv_restrict_x1(const FieldTower& tw, const BivarPoly& f);
UniPoly bv_restrict_y1(const FieldTower& tw, const BivarPoly& f);
// Partial evaluation: fix one variable to a field value, keep the other
// symbolic.  The result lives over the compositum of the two fields.
UniPoly bv_eval_x(const FieldTower& tw, const BivarPoly& f, const GFElem& x0);
UniPoly bv_eval_y(const FieldTower& tw, const BivarPoly& f, const GFElem& y0);

// Resultant eliminating one variable, as the determinant of the Sylvester
// matrix with the second argument's coefficient rows listed first; this makes
// Res(t - a, t - b) = b - a and Res(t^2 - u, t - 1) = 1 - u.  Computed
// fraction-free (Bareiss), so all intermediate divisions are exact.  Returns
// the zero polynomial when either input is zero; throws std::invalid_argument
// when both inputs are constant in the eliminated variable.
UniPoly bv_resultant_y(const FieldTower& tw, const BivarPoly& f, const BivarPoly& g);
UniPoly bv_resultant_x(const FieldTower& tw, const BivarPoly& f, const BivarPoly& g);

// F with one projective coordinate fixed to 1, e.g. var=2 gives F(x, y, 1) as
// a bivariate polynomial in the remaining coordinates in index order.
BivarPoly tf_dehomogenize(const FieldTower& tw, const TernaryForm& f, int var);

// Taylor expansion of F at P: P is moved to the origin of the affine chart
// given by its first nonzero coordinate (which is 1 after normalization), the
// remaining two coordinates becoming X and Y in index order.  The degree-j
// graded piece of the result is the degree-j Taylor part of F at P.
BivarPoly taylor_at(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p);
int multiplicity_at(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p);

// Restriction of F to the line through distinct points p, q: the univariate
// polynomial t -> F(p + t q); together with F(q) it determines the binary
// restriction.  F divides by the line's ideal iff restrict_line == 0 and
// F(q) == 0.
UniPoly tf_restrict_line(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p,
                         const ProjPoint& q, int m);
bool line_through_divides(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p,
                          const ProjPoint& q);

// Quadratic form in x0..x4 over GF(3^k); qc[i][j] (i <= j) is the coefficient
// of x_i x_j.
struct QuinaryQuadric {
  int k = 1;
  std::array<std::array<GFElem, 5>, 5> qc{};

  friend bool operator==(const QuinaryQuadric&, const QuinaryQuadric&) = default;
};

QuinaryQuadric qq_zero(int k);
QuinaryQuadric qq_make(const FieldTower& tw, int k,
                       const std::vector<std::tuple<int, int, int>>& terms);
GFElem qq_eval(const FieldTower& tw, const QuinaryQuadric& q, const std::array<GFElem, 5>& x);
QuinaryQuadric qq_add(const FieldTower& tw, const QuinaryQuadric& a, const QuinaryQuadric& b);
QuinaryQuadric qq_scale(const FieldTower& tw, const QuinaryQuadric& a, const GFElem& s);
QuinaryQuadric qq_embed(const FieldTower& tw, const QuinaryQuadric& a, int k2);
// Partial derivative with respect to x_i, as the 5 coefficients of a linear form.
std::array<GFElem, 5> qq_gradient(const FieldTower& tw, const QuinaryQuadric& q,
                                  const std::array<GFElem, 5>& x);
// Substitution x0 -> x0 + phi(x1,x2,x3), x4 -> x4 + psi(x1,x2,x3) with phi,
// psi linear ternary forms; stays within the family with no x0^2, x4^2 terms.
QuinaryQuadric qq_shear(const FieldTower& tw, const QuinaryQuadric& q, const TernaryForm& phi,
                        const TernaryForm& psi);

std::string render_form(const FieldTower& tw, const TernaryForm& f);
TernaryForm parse_form(const FieldTower& tw, const std::string& s);
std::string render_quadric(const FieldTower& tw, const QuinaryQuadric& q);
QuinaryQuadric parse_quadric(const FieldTower& tw, const std::string& s);
// Binary form in X, Y (tangent cones): zK^e coefficients allowed.
std::string render_binary(const FieldTower& tw, const BivarPoly& f);

}  // namespace genus5
