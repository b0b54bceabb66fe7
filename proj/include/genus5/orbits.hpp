#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "genus5/singularity.hpp"

namespace genus5 {

// Classification of admissible singular-point configurations under the
// projective group of the plane over GF(3): enumerate every Frobenius-stable
// configuration with a given orbit pattern, decompose the set into
// PGL3(F3)-orbits, and pin a stable orbit numbering through a fixed table of
// reference representatives.

// Coset representative of an element of PGL3(F3): an invertible 3x3 matrix
// over GF(3) whose first nonzero entry in row-major order is 1.
struct GroupElement {
  std::array<std::array<uint8_t, 3>, 3> m{};

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// All 5616 normalized elements, built once per process (size asserted).
const std::vector<GroupElement>& projective_group();

// Frobenius-orbit pattern of a configuration.  Case I: the orbit sizes of the
// five double points, a partition of 5.  Case II: the orbit sizes of the two
// double points, (1,1) or (2); the triple point is always rational.
// `subclass` is a selector used only with pattern (1,1,1,2), where orbits
// split by whether the three rational points span the plane ("indep") or lie
// on a line ("dep").
struct ConfigPattern {
  SingCase kase = SingCase::I;
  std::vector<int> parts;  // ascending
  std::string subclass;    // "", "indep" or "dep"

  friend bool operator==(const ConfigPattern&, const ConfigPattern&) = default;
};

// Round-trip text form: "1,1,3", "1,1,1,2-indep", "II-2", ...
std::string pattern_tag(const ConfigPattern& pat);
ConfigPattern parse_pattern(const std::string& tag);
// The seven case-I patterns followed by the two case-II tags (no subclass
// selectors; the (1,1,1,2) table carries the subclass as an orbit attribute).
std::vector<ConfigPattern> all_patterns();

// Every admissible configuration with the given pattern: Frobenius-stable,
// distinct points, general position (case I: no four collinear, case II: the
// three points not collinear), filtered by subclass when the selector is set.
// The result is closed under the PGL3(F3) action.
std::vector<SingularConfig> enumerate_configs(const FieldTower& tw, const ConfigPattern& pat);

struct OrbitEntry {
  SingularConfig canonical;  // least member under the fixed configuration order
  SingularConfig ref;        // reference representative that pins the numbering
  long long size = 0;
  int stabilizer_order = 0;  // 5616 / size
  std::string subclass;      // "" except pattern (1,1,1,2): "indep" / "dep"
  int index = 0;             // 1-based position within (pattern, subclass)
};

struct OrbitTable {
  ConfigPattern pattern;
  long long configs_total = 0;
  std::vector<OrbitEntry> orbits;
};

// Decompose an enumeration into group orbits.  Checks closure (every image of
// an input configuration is again an input configuration), the orbit-sum and
// orbit-stabilizer invariants, and annotates subclasses; `ref`/`index` are
// left empty (see build_orbit_table).  Entries come out sorted by canonical
// representative.
OrbitTable orbit_decompose(const FieldTower& tw, const ConfigPattern& pat,
                           const std::vector<SingularConfig>& configs);

// The fixed representatives, in table order, that give orbits their public
// indices.  For (1,1,1,2) without a selector this is the three "indep"
// entries followed by the three "dep" ones.
std::vector<SingularConfig> reference_representatives(const FieldTower& tw,
                                                      const ConfigPattern& pat);

// Position (0-based) in table.orbits of the orbit containing c.  The lookup
// canonicalizes c first, so any member of an orbit finds the same entry.
// Throws std::invalid_argument when c belongs to no orbit of the table (for
// a reference representative that signals a field-generator mismatch).
int locate_representative(const FieldTower& tw, const OrbitTable& table, const SingularConfig& c);

// enumerate + decompose + reference annotation.  After this the entries are
// ordered "indep" before "dep", then by reference index, and every entry has
// `ref` and `index` set; a reference list that fails to hit every orbit
// exactly once raises std::logic_error.
OrbitTable build_orbit_table(const FieldTower& tw, const ConfigPattern& pat);

// Memoized build_orbit_table keyed by pattern tag (tables are immutable).
const OrbitTable& cached_orbit_table(const FieldTower& tw, const ConfigPattern& pat);

// Entry lookup by public identity: subclass ("" outside (1,1,1,2)) and
// 1-based index.  Throws std::invalid_argument when absent.
const OrbitEntry& select_orbit(const OrbitTable& table, const std::string& subclass, int index);

// Versioned JSON serialization of a table (build artifact of `classify`).
std::string orbit_table_to_json(const FieldTower& tw, const OrbitTable& table);
OrbitTable orbit_table_from_json(const FieldTower& tw, const std::string& text);

}  // namespace genus5
