#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "genus5/forms.hpp"
#include "genus5/gf.hpp"

namespace genus5 {

// Singular-point analysis of plane sextics: multiplicities, tangent cones,
// one-blow-up resolution tests, the full singular locus over the algebraic
// closure, and the combined "five nodes resolve to genus 5" verification.

struct PositiveDimensionalSingularLocus : std::runtime_error {
  explicit PositiveDimensionalSingularLocus(const std::string& what) : std::runtime_error(what) {}
};

enum class SingCase { I, II };

struct ConfigPoint {
  ProjPoint p;
  int mult = 2;  // 2 or 3

  friend bool operator==(const ConfigPoint&, const ConfigPoint&) = default;
};

// A prescribed singular-point configuration: all geometric points listed
// individually (five double points in case I; in case II a rational triple
// point plus two double points).  The set must be Frobenius-stable and in
// general position: case I forbids four collinear points, case II forbids the
// three points being collinear.
struct SingularConfig {
  SingCase kase = SingCase::I;
  std::vector<ConfigPoint> points;
  std::string orbit_pattern;  // e.g. "(1,1,1,2)" or "(2)"
  std::string provenance;     // table label and representative index

  friend bool operator==(const SingularConfig&, const SingularConfig&) = default;
};

// Throws std::invalid_argument describing the first violated invariant.
void validate_config(const FieldTower& tw, const SingularConfig& c);
// One representative per Frobenius orbit (the member that sorts first).
std::vector<ConfigPoint> config_orbit_reps(const FieldTower& tw, const SingularConfig& c);
// Expand orbit representatives into the full geometric point list + validate.
SingularConfig config_from_orbit_reps(const FieldTower& tw, SingCase kase,
                                      const std::vector<ConfigPoint>& reps,
                                      std::string orbit_pattern, std::string provenance);

// Least degree of a nonzero Taylor part of F at P; 0 means P is off the
// curve, 1 a smooth point.  (Alias of the Taylor machinery in forms.)
inline int multiplicity(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p) {
  return multiplicity_at(tw, f, p);
}

// True iff the strict transform of F under one blow-up centered at P is
// smooth at every point over P (checked in both charts without leaving the
// field of definition: a singular point over P exists iff
// gcd(G(0,Z), dG/dX(0,Z), dG/dZ(0,Z)) is nonconstant in chart 1, plus a
// gradient check at the single extra chart-2 point).
bool one_blowup_resolves(const FieldTower& tw, const TernaryForm& f, const ProjPoint& p);

// All singular points of V(F) over the algebraic closure.  Points of field
// degree <= 10 are returned concretely (once each, over their minimal field);
// singular points living in deeper extensions cannot be represented in the
// field tower and are tallied in off_tower_weight (any nonzero value means
// the locus does not match a prescribed configuration).
struct SingularLocus {
  std::vector<ProjPoint> points;  // sorted canonically
  int off_tower_weight = 0;       // multiplicity-weighted tally of off-tower points
};

// Resultant-based elimination chart by chart; factor the eliminant, lift its
// roots, solve the fiber gcd, and validate every candidate against F and all
// three partials (the characteristic-3 Euler relation 6F = xFx + yFy + zFz is
// vacuous, so membership of F is always checked explicitly).  Retries under
// up to five random coordinate changes before reporting a positive-dimensional
// locus.  F must be over the prime field.
SingularLocus singular_locus(const FieldTower& tw, const TernaryForm& f);

// #V(h)(F_{3^e}) - 1 for a nonzero binary form h of degree 2 or 3 (the
// reduced tangent-cone root set in P^1): for degree 2 this is +1/-1/0 as the
// discriminant b^2 - ac is a nonzero square / non-square / zero in GF(3^e);
// for degree 3 it is the distinct projective root count minus 1.
int tangent_adjustment(const FieldTower& tw, const BivarPoly& h, int ext_degree);

struct SingularPointReport {
  ProjPoint point;
  int mult = 0;
  BivarPoly tangent_cone;
  bool resolved_in_one_blowup = false;
  // extension degree e (multiples of the point's degree, e <= 10) -> adjustment
  std::map<int, int> adjustment_table;
};

SingularPointReport analyze_singular_point(const FieldTower& tw, const TernaryForm& f,
                                           const ProjPoint& p);

// Certificate that F has exactly the prescribed mild singularities and is
// geometrically irreducible, so its normalization has genus 10 - 5 = 5.
struct NonSpecialResult {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
};

struct NonSpecialOptions {
  // The enumeration pipeline establishes multiplicities and irreducibility in
  // earlier filter stages and skips re-checking them here.
  bool check_multiplicities = true;
  bool check_irreducibility = true;
};

NonSpecialResult non_special_check(const FieldTower& tw, const TernaryForm& f,
                                   const SingularConfig& config, NonSpecialOptions opt = {});

}  // namespace genus5
