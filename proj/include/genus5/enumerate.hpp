#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "genus5/linalg.hpp"
#include "genus5/orbits.hpp"
#include "genus5/point_count.hpp"
#include "genus5/singularity.hpp"

namespace genus5 {

// Exhaustive search for sextics with prescribed singular points and many
// points on the normalization: build the linear system expressing the
// multiplicity conditions, descend its null space to GF(3), iterate the
// candidate vectors with exact scalar deduplication, and filter.

// Multiplicity conditions as a matrix over the compositum of the points'
// fields: for every configured point, one row per Taylor coefficient of
// total degree < multiplicity (3 rows per double point, 6 per triple point),
// each row linear in the 28 sextic coefficients (column order matches
// sextic_monomials()).
Mat build_system(const FieldTower& tw, const SingularConfig& config);

// Galois-descended null space of build_system over GF(3).
struct NullBasis {
  int rank = 0;                                   // rank of the condition matrix
  std::vector<std::array<uint8_t, 28>> vectors;   // basis, entries in {0,1,2}
  uint64_t hash = 0;                              // FNV-1a of dimension + entries

  int dim() const { return static_cast<int>(vectors.size()); }
};

NullBasis null_basis(const FieldTower& tw, const SingularConfig& config);

// Per-point data for the degree-2 Taylor part A*X^2 + B*X*Y + C*Y^2 of a
// candidate at a configured double point: three linear functionals in the 28
// coefficients, over the point's field of definition.  The discriminant of
// the tangent cone evaluates as B(c)^2 - A(c)*C(c) without recomputing the
// Taylor expansion.
struct PointDiscriminant {
  ProjPoint point;
  std::vector<GFElem> a20, a11, a02;  // 28 entries each

  GFElem tangent_discriminant(const FieldTower& tw, const std::array<uint8_t, 28>& c) const;
};

// One entry per double point of the configuration (conjugates included), in
// configuration order.
std::vector<PointDiscriminant> discriminant_precompute(const FieldTower& tw,
                                                       const SingularConfig& config);

// A maximal iteration block: candidates c = offset + sum v_j * basis_j.  Case
// I uses a single slice with offset 0 and scalar deduplication (the first
// nonzero v-digit is forced to 1, visiting each projective class once).  Case
// II uses one slice per admissible pinned-coefficient triple, iterating the
// affine solution set without deduplication (the pinned values break scalar
// symmetry).
struct SearchSlice {
  std::string label;  // "" or the pinned-coefficient description, e.g. "b=110"
  std::array<uint8_t, 28> offset{};
  std::vector<std::array<uint8_t, 28>> basis;
  bool dedup_scalars = false;

  uint64_t total() const;
};

struct ByteBlock {
  std::vector<std::array<uint8_t, 28>> rows;  // GF(3) component functionals
};

struct SearchTask {
  SingularConfig config;
  long long threshold = 1;  // minimum number of degree-2 points on the normalization
  NullBasis basis;
  std::vector<SearchSlice> slices;
  // Exact-multiplicity screen: per Frobenius-orbit representative, the GF(3)
  // components of the degree-m Taylor coefficients; a candidate passes when
  // every block has a nonzero row product.
  std::vector<ByteBlock> exact_mult_blocks;
  // Slots carrying pinned coefficients (empty in case I) and the tuples the
  // slices realize there.  Kept for a defensive in-pipeline re-check: every
  // candidate's pinned-slot values must be one of the admissible tuples.
  std::vector<int> pinned_slots;
  std::vector<std::vector<uint8_t>> admissible_values;

  uint64_t total() const;
};

// Build the standard task for a configuration: case I iterates the full
// projective null space; case II intersects with the admissible
// pinned-coefficient slices first.
SearchTask make_search_task(const FieldTower& tw, const SingularConfig& config, long long N);

// Candidate index <-> coefficient vector.  Indices are global across slices,
// ascending, 0-based, dense in [0, task.total()).
std::array<uint8_t, 28> candidate_vector(const SearchTask& task, uint64_t index);

enum class FilterOutcome {
  kWrongMultiplicity,  // some configured point fails exact multiplicity
  kPinnedSlot,         // pinned coefficient mismatch (defensive; never expected)
  kReducible,          // geometrically reducible
  kWrongLocus,         // singular locus or blow-up structure differs
  kBelowThreshold,     // fewer than N degree-2 points on the normalization
  kPass
};

struct FilterCounters {
  uint64_t visited = 0;
  uint64_t wrong_multiplicity = 0;
  uint64_t pinned_slot = 0;
  uint64_t reducible = 0;
  uint64_t wrong_locus = 0;
  uint64_t below_threshold = 0;
  uint64_t survivors = 0;

  bool consistent() const {
    return visited == wrong_multiplicity + pinned_slot + reducible + wrong_locus +
                          below_threshold + survivors;
  }
};

struct CandidateRecord {
  uint64_t index = 0;
  std::string slice_label;
  std::array<uint8_t, 28> c{};
  long long n1 = 0;      // points on the normalization over the degree-2 field
  CountVector counts{};  // degrees 2,4,6,8,10
  WeilPoly weil{};
};

// Run the filter pipeline on one candidate; fills the record (counts and Weil
// polynomial included) when the outcome is kPass.
FilterOutcome classify_candidate(const FieldTower& tw, const SearchTask& task,
                                 const std::array<uint8_t, 28>& c, CandidateRecord* out);

struct IterationSummary {
  FilterCounters counters;
  uint64_t next_index = 0;  // == end when the range completed
  bool completed = false;
};

// Visit candidates with global indices in [start, end) in ascending order,
// calling sink for every survivor.  `stop` (optional) is polled between
// candidates for cooperative cancellation; `progress` (optional) is invoked
// with the next unprocessed index about every few thousand candidates, for
// checkpointing.
IterationSummary iterate_candidates(
    const FieldTower& tw, const SearchTask& task, uint64_t start, uint64_t end,
    const std::function<void(const CandidateRecord&)>& sink,
    const std::atomic<bool>* stop = nullptr,
    const std::function<void(uint64_t)>& progress = {});

// The sextic form of a coefficient vector (prime-field coefficients).
TernaryForm candidate_form(const FieldTower& tw, const std::array<uint8_t, 28>& c);

// JSON serialization: one line per survivor record, and a manifest capturing
// everything needed to reproduce a run.
std::string record_to_json(const FieldTower& tw, const CandidateRecord& rec);
std::string task_manifest_json(const FieldTower& tw, const SearchTask& task,
                               const std::string& config_reference, int workers, uint64_t seed);

}  // namespace genus5
