#include "genus5/enumerate.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace genus5 {

namespace {

int binom_mod3(int n, int r) {
  // Pascal's triangle mod 3 up to n = 6 (monomial exponents never exceed 6).
  static const int tab[7][7] = {
      {1, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0}, {1, 2, 1, 0, 0, 0, 0},
      {1, 0, 0, 1, 0, 0, 0}, {1, 1, 0, 1, 1, 0, 0}, {1, 2, 1, 1, 2, 1, 0},
      {1, 0, 0, 2, 0, 0, 1}};
  return tab[n][r];
}

struct Chart {
  int pivot, i, j;  // pivot = first nonzero coordinate (==1), i < j the others
};

Chart chart_of(const ProjPoint& p) {
  int pivot = 0;
  while (pivot < 2 && p.x[pivot].is_zero()) ++pivot;
  Chart ch{pivot, -1, -1};
  for (int t = 0; t < 3; ++t) {
    if (t == pivot) continue;
    (ch.i < 0 ? ch.i : ch.j) = t;
  }
  return ch;
}

// Linear functional giving the coefficient of X^s Y^t in the Taylor expansion
// of F at p, in the chart z_pivot = 1, z_i = p_i + X, z_j = p_j + Y: the
// monomial x^a y^b z^c contributes binom(a_i, s) binom(a_j, t) p_i^{a_i - s}
// p_j^{a_j - t}.  Entries live in GF(3^kk).
std::vector<GFElem> taylor_functional(const FieldTower& tw, const ProjPoint& p, int s, int t,
                                      int kk) {
  const FieldCtx& F = tw.ctx(kk);
  const Chart ch = chart_of(p);
  const GFElem u = tw.embed(p.x[ch.i], kk);
  const GFElem v = tw.embed(p.x[ch.j], kk);
  const auto& monos = sextic_monomials();
  std::vector<GFElem> row(28, F.zero());
  for (int m = 0; m < 28; ++m) {
    const int ai = monos[m][ch.i], aj = monos[m][ch.j];
    if (ai < s || aj < t) continue;
    const int cb = binom_mod3(ai, s) * binom_mod3(aj, t) % 3;
    if (cb == 0) continue;
    GFElem val = F.mul(F.pow(u, static_cast<uint64_t>(ai - s)),
                       F.pow(v, static_cast<uint64_t>(aj - t)));
    if (cb == 2) val = F.neg(val);
    row[m] = val;
  }
  return row;
}

// (s, t) orders for the sub-multiplicity rows: constant, X, Y, then the
// degree-2 row block for a triple point.
constexpr int kRowOrder[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};

uint64_t pow3(int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= 3;
  return r;
}

std::array<uint8_t, 28> combine(const SearchSlice& sl, const std::vector<uint8_t>& v) {
  std::array<uint8_t, 28> c = sl.offset;
  for (size_t p = 0; p < sl.basis.size(); ++p) {
    if (!v[p]) continue;
    for (int j = 0; j < 28; ++j)
      c[j] = static_cast<uint8_t>((c[j] + v[p] * sl.basis[p][j]) % 3);
  }
  return c;
}

// Digits of the candidate with ordinal `idx` inside one slice.  Deduplicated
// slices enumerate one representative per projective class: the first nonzero
// digit is forced to 1, blocks ordered by its position, the free tail read as
// a base-3 number (last digit least significant).  Plain slices enumerate all
// 3^dim digit strings the same way, zero included.
std::vector<uint8_t> slice_digits(const SearchSlice& sl, uint64_t idx) {
  const int d = static_cast<int>(sl.basis.size());
  std::vector<uint8_t> v(static_cast<size_t>(d), 0);
  if (!sl.dedup_scalars) {
    for (int p = d - 1; p >= 0; --p) {
      v[static_cast<size_t>(p)] = static_cast<uint8_t>(idx % 3);
      idx /= 3;
    }
    return v;
  }
  int j = 0;
  while (j < d) {
    const uint64_t block = pow3(d - 1 - j);
    if (idx < block) break;
    idx -= block;
    ++j;
  }
  if (j >= d) throw std::out_of_range("candidate ordinal exceeds the slice");
  v[static_cast<size_t>(j)] = 1;
  for (int p = d - 1; p > j; --p) {
    v[static_cast<size_t>(p)] = static_cast<uint8_t>(idx % 3);
    idx /= 3;
  }
  return v;
}

const SearchSlice& slice_of(const SearchTask& task, uint64_t index, uint64_t* ordinal) {
  uint64_t base = 0;
  for (const SearchSlice& sl : task.slices) {
    const uint64_t tot = sl.total();
    if (index < base + tot) {
      *ordinal = index - base;
      return sl;
    }
    base += tot;
  }
  throw std::out_of_range("candidate index exceeds the search task");
}

// GF(3) components of every degree-m Taylor functional at one point: the
// candidate vector has prime-field entries, so the functional vanishes iff
// all component rows do.
ByteBlock exact_multiplicity_block(const FieldTower& tw, const ConfigPoint& cp) {
  const int kk = cp.p.degree();
  ByteBlock blk;
  for (int s = cp.mult; s >= 0; --s) {
    const auto row = taylor_functional(tw, cp.p, s, cp.mult - s, kk);
    for (int coord = 0; coord < kk; ++coord) {
      std::array<uint8_t, 28> r{};
      bool nonzero = false;
      for (int j = 0; j < 28; ++j) {
        r[j] = row[static_cast<size_t>(j)].c[static_cast<size_t>(coord)];
        nonzero = nonzero || r[j] != 0;
      }
      if (nonzero) blk.rows.push_back(r);
    }
  }
  if (blk.rows.empty())
    throw std::logic_error("degree-" + std::to_string(cp.mult) +
                           " Taylor block is identically zero");
  return blk;
}

bool block_passes(const ByteBlock& blk, const std::array<uint8_t, 28>& c) {
  for (const auto& row : blk.rows) {
    int acc = 0;
    for (int j = 0; j < 28; ++j) acc += row[j] * c[j];
    if (acc % 3 != 0) return true;
  }
  return false;
}

// The standard-position case II configurations the pinned-coefficient slicing
// is valid for: a rational triple point at (0:0:1) with the double points on
// the line z = 0.
SingularConfig standard_case2(const FieldTower& tw, bool split_pair) {
  std::vector<ConfigPoint> reps;
  reps.push_back({parse_point(tw, "(0:0:1)"), 3});
  if (split_pair) {
    reps.push_back({parse_point(tw, "(1:0:0)"), 2});
    reps.push_back({parse_point(tw, "(0:1:0)"), 2});
  } else {
    reps.push_back({parse_point(tw, "(1:z2:0)"), 2});
  }
  return config_from_orbit_reps(tw, SingCase::II, reps, split_pair ? "(1,1)" : "(2)",
                                "standard position");
}

bool same_point_set(const SingularConfig& a, const SingularConfig& b) {
  if (a.points.size() != b.points.size()) return false;
  for (const ConfigPoint& cp : a.points) {
    bool found = false;
    for (const ConfigPoint& cq : b.points)
      found = found || (cp.p == cq.p && cp.mult == cq.mult);
    if (!found) return false;
  }
  return true;
}

}  // namespace

Mat build_system(const FieldTower& tw, const SingularConfig& config) {
  int kk = 1;
  int rows = 0;
  for (const ConfigPoint& cp : config.points) {
    kk = std::lcm(kk, cp.p.degree());
    rows += cp.mult == 2 ? 3 : 6;
  }
  Mat m = mat_zero(kk, rows, 28);
  int r = 0;
  for (const ConfigPoint& cp : config.points) {
    const int nrows = cp.mult == 2 ? 3 : 6;
    for (int q = 0; q < nrows; ++q) {
      const auto row = taylor_functional(tw, cp.p, kRowOrder[q][0], kRowOrder[q][1], kk);
      for (int j = 0; j < 28; ++j) m.at(r, j) = row[static_cast<size_t>(j)];
      ++r;
    }
  }
  return m;
}

NullBasis null_basis(const FieldTower& tw, const SingularConfig& config) {
  const Mat m = build_system(tw, config);
  NullBasis nb;
  nb.rank = mat_rank(tw, m);
  for (const auto& v : mat_nullspace_gf3(tw, m)) {
    std::array<uint8_t, 28> w{};
    for (int j = 0; j < 28; ++j) w[j] = tw.compress(v[static_cast<size_t>(j)]).c[0];
    nb.vectors.push_back(w);
  }
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint8_t>(nb.vectors.size()));
  for (const auto& w : nb.vectors)
    for (uint8_t b : w) mix(b);
  nb.hash = h;
  return nb;
}

GFElem PointDiscriminant::tangent_discriminant(const FieldTower& tw,
                                               const std::array<uint8_t, 28>& c) const {
  const FieldCtx& F = tw.ctx(point.degree());
  GFElem a = F.zero(), b = F.zero(), cc = F.zero();
  for (int j = 0; j < 28; ++j) {
    if (!c[j]) continue;
    const auto jj = static_cast<size_t>(j);
    if (c[j] == 1) {
      a = F.add(a, a20[jj]);
      b = F.add(b, a11[jj]);
      cc = F.add(cc, a02[jj]);
    } else {
      a = F.sub(a, a20[jj]);
      b = F.sub(b, a11[jj]);
      cc = F.sub(cc, a02[jj]);
    }
  }
  return F.sub(F.mul(b, b), F.mul(a, cc));
}

std::vector<PointDiscriminant> discriminant_precompute(const FieldTower& tw,
                                                       const SingularConfig& config) {
  std::vector<PointDiscriminant> out;
  for (const ConfigPoint& cp : config.points) {
    if (cp.mult != 2) continue;
    const int kk = cp.p.degree();
    PointDiscriminant pd;
    pd.point = cp.p;
    pd.a20 = taylor_functional(tw, cp.p, 2, 0, kk);
    pd.a11 = taylor_functional(tw, cp.p, 1, 1, kk);
    pd.a02 = taylor_functional(tw, cp.p, 0, 2, kk);
    out.push_back(std::move(pd));
  }
  return out;
}

uint64_t SearchSlice::total() const {
  const int d = static_cast<int>(basis.size());
  return dedup_scalars ? (pow3(d) - 1) / 2 : pow3(d);
}

uint64_t SearchTask::total() const {
  uint64_t t = 0;
  for (const SearchSlice& sl : slices) t += sl.total();
  return t;
}

SearchTask make_search_task(const FieldTower& tw, const SingularConfig& config, long long N) {
  validate_config(tw, config);
  SearchTask task;
  task.config = config;
  task.threshold = N;
  task.basis = null_basis(tw, config);
  for (const ConfigPoint& cp : config_orbit_reps(tw, config))
    task.exact_mult_blocks.push_back(exact_multiplicity_block(tw, cp));

  if (config.kase == SingCase::I) {
    SearchSlice sl;
    sl.basis = task.basis.vectors;
    sl.dedup_scalars = true;
    task.slices.push_back(std::move(sl));
    return task;
  }

  // Case II: the coefficients of x^3 z^3, x^2 y z^3 and x^3 y^3 are pinned to
  // a short list of normalized values (coordinate changes fixing the
  // configuration scale them); each admissible tuple becomes one affine slice
  // of the null space.  The normalization argument is tied to the standard
  // position of the points, so any other representative is rejected.
  const bool split_pair = [&] {
    for (const ConfigPoint& cp : config.points)
      if (cp.mult == 2) return cp.p.degree() == 1;
    throw std::invalid_argument("case II configuration lacks double points");
  }();
  if (!same_point_set(config, standard_case2(tw, split_pair)))
    throw std::invalid_argument(
        "pinned-coefficient slicing requires the standard-position representative "
        "(rational triple point at (0:0:1), double points on z = 0)");

  task.pinned_slots = {sextic_index(3, 0, 3), sextic_index(2, 1, 3), sextic_index(3, 3, 0)};
  if (split_pair) {
    for (uint8_t b1 : {0, 1})
      for (uint8_t b2 : {0, 1})
        for (uint8_t b3 : {0, 1}) {
          if (b1 == 0 && b2 == 0) continue;
          task.admissible_values.push_back({b1, b2, b3});
        }
  } else {
    for (uint8_t b2 : {0, 1})
      for (uint8_t b3 : {0, 1}) task.admissible_values.push_back({1, b2, b3});
  }

  const int d = task.basis.dim();
  const FieldCtx& F1 = tw.ctx(1);
  for (const auto& b : task.admissible_values) {
    // Solve S v = b over GF(3), S[r][j] = basis_j at pinned slot r.
    Mat aug = mat_zero(1, 3, d + 1);
    for (int r = 0; r < 3; ++r) {
      for (int j = 0; j < d; ++j)
        aug.at(r, j) = F1.from_int(task.basis.vectors[static_cast<size_t>(j)]
                                       [static_cast<size_t>(task.pinned_slots[static_cast<size_t>(r)])]);
      aug.at(r, d) = F1.from_int(b[static_cast<size_t>(r)]);
    }
    Mat coeff = mat_zero(1, 3, d);
    for (int r = 0; r < 3; ++r)
      for (int j = 0; j < d; ++j) coeff.at(r, j) = aug.at(r, j);
    const std::vector<int> pivots = mat_rref(tw, aug);
    if (!pivots.empty() && pivots.back() == d)
      continue;  // inconsistent tuple: no candidate realizes it
    std::vector<uint8_t> v0(static_cast<size_t>(d), 0);
    for (size_t r = 0; r < pivots.size(); ++r)
      v0[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), d).c[0];

    SearchSlice sl;
    sl.label = "b=" + std::to_string(b[0]) + std::to_string(b[1]) + std::to_string(b[2]);
    sl.dedup_scalars = false;
    {
      std::array<uint8_t, 28> off{};
      for (int j = 0; j < d; ++j) {
        if (!v0[static_cast<size_t>(j)]) continue;
        for (int s = 0; s < 28; ++s)
          off[s] = static_cast<uint8_t>(
              (off[s] + v0[static_cast<size_t>(j)] * task.basis.vectors[static_cast<size_t>(j)][s]) % 3);
      }
      sl.offset = off;
    }
    for (const auto& w : mat_nullspace(tw, coeff)) {
      std::array<uint8_t, 28> img{};
      for (int j = 0; j < d; ++j) {
        const uint8_t wj = w[static_cast<size_t>(j)].c[0];
        if (!wj) continue;
        for (int s = 0; s < 28; ++s)
          img[s] = static_cast<uint8_t>(
              (img[s] + wj * task.basis.vectors[static_cast<size_t>(j)][s]) % 3);
      }
      sl.basis.push_back(img);
    }
    task.slices.push_back(std::move(sl));
  }
  if (task.slices.empty())
    throw std::logic_error("no admissible pinned-coefficient tuple is realizable");
  return task;
}

std::array<uint8_t, 28> candidate_vector(const SearchTask& task, uint64_t index) {
  uint64_t ordinal = 0;
  const SearchSlice& sl = slice_of(task, index, &ordinal);
  return combine(sl, slice_digits(sl, ordinal));
}

TernaryForm candidate_form(const FieldTower& tw, const std::array<uint8_t, 28>& c) {
  const FieldCtx& F1 = tw.ctx(1);
  TernaryForm f = tf_zero(1, 6);
  const auto& monos = sextic_monomials();
  for (int j = 0; j < 28; ++j)
    if (c[j]) tf_set(tw, f, monos[static_cast<size_t>(j)], F1.from_int(c[j]));
  return f;
}

FilterOutcome classify_candidate(const FieldTower& tw, const SearchTask& task,
                                 const std::array<uint8_t, 28>& c, CandidateRecord* out) {
  if (out) *out = CandidateRecord{};
  if (out) out->c = c;

  for (const ByteBlock& blk : task.exact_mult_blocks)
    if (!block_passes(blk, c)) return FilterOutcome::kWrongMultiplicity;

  if (!task.pinned_slots.empty()) {
    std::vector<uint8_t> got;
    for (int slot : task.pinned_slots) got.push_back(c[static_cast<size_t>(slot)]);
    bool ok = false;
    for (const auto& b : task.admissible_values) ok = ok || b == got;
    if (!ok) return FilterOutcome::kPinnedSlot;
  }

  const TernaryForm f = candidate_form(tw, c);
  if (!is_geometrically_irreducible(tw, f)) return FilterOutcome::kReducible;

  NonSpecialOptions opt;
  opt.check_multiplicities = false;  // established by the exact-multiplicity screen
  opt.check_irreducibility = false;  // established by the previous stage
  if (!non_special_check(tw, f, task.config, opt)) return FilterOutcome::kWrongLocus;

  const long long n1 = count_smooth_model(tw, f, task.config, 2);
  if (n1 < task.threshold) return FilterOutcome::kBelowThreshold;
  if (out) {
    out->n1 = n1;
    out->counts = count_vector(tw, f, task.config);
    out->weil = weil_from_counts(out->counts);
  }
  return FilterOutcome::kPass;
}

IterationSummary iterate_candidates(const FieldTower& tw, const SearchTask& task, uint64_t start,
                                    uint64_t end, const std::function<void(const CandidateRecord&)>& sink,
                                    const std::atomic<bool>* stop,
                                    const std::function<void(uint64_t)>& progress) {
  end = std::min<uint64_t>(end, task.total());
  IterationSummary s;
  uint64_t idx = std::min<uint64_t>(start, end);
  CandidateRecord rec;
  for (; idx < end; ++idx) {
    if (stop && stop->load(std::memory_order_relaxed)) break;
    uint64_t ordinal = 0;
    const SearchSlice& sl = slice_of(task, idx, &ordinal);
    const auto c = combine(sl, slice_digits(sl, ordinal));
    const FilterOutcome oc = classify_candidate(tw, task, c, &rec);
    ++s.counters.visited;
    switch (oc) {
      case FilterOutcome::kWrongMultiplicity: ++s.counters.wrong_multiplicity; break;
      case FilterOutcome::kPinnedSlot: ++s.counters.pinned_slot; break;
      case FilterOutcome::kReducible: ++s.counters.reducible; break;
      case FilterOutcome::kWrongLocus: ++s.counters.wrong_locus; break;
      case FilterOutcome::kBelowThreshold: ++s.counters.below_threshold; break;
      case FilterOutcome::kPass: {
        ++s.counters.survivors;
        rec.index = idx;
        rec.slice_label = sl.label;
        if (sink) sink(rec);
        break;
      }
    }
    if (progress && ((idx + 1) & 0xfff) == 0) progress(idx + 1);
  }
  s.next_index = idx;
  s.completed = idx == end;
  return s;
}

std::string record_to_json(const FieldTower& tw, const CandidateRecord& rec) {
  nlohmann::json j;
  j["index"] = rec.index;
  if (!rec.slice_label.empty()) j["slice"] = rec.slice_label;
  j["c"] = std::vector<int>(rec.c.begin(), rec.c.end());
  j["form"] = render_form(tw, candidate_form(tw, rec.c));
  j["n1"] = rec.n1;
  j["counts"] = rec.counts.n;
  j["weil"] = rec.weil.c;
  j["weil_factored"] = render_weil_factored(rec.weil);
  return j.dump();
}

std::string task_manifest_json(const FieldTower& tw, const SearchTask& task,
                               const std::string& config_reference, int workers, uint64_t seed) {
  nlohmann::json j;
  j["format"] = "genus5-search-manifest";
  j["version"] = 1;
  j["case"] = task.config.kase == SingCase::I ? "I" : "II";
  j["pattern"] = task.config.orbit_pattern;
  j["config_reference"] = config_reference;
  nlohmann::json pts = nlohmann::json::array();
  for (const ConfigPoint& cp : task.config.points)
    pts.push_back({{"point", render_point(tw, cp.p)}, {"mult", cp.mult}});
  j["points"] = pts;
  j["threshold"] = task.threshold;
  j["system_rank"] = task.basis.rank;
  j["nullspace_dim"] = task.basis.dim();
  char hex[32];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(task.basis.hash));
  j["basis_hash"] = hex;
  nlohmann::json slices = nlohmann::json::array();
  for (const SearchSlice& sl : task.slices)
    slices.push_back({{"label", sl.label}, {"dim", sl.basis.size()}, {"total", sl.total()}});
  j["slices"] = slices;
  j["total"] = task.total();
  j["workers"] = workers;
  j["seed"] = seed;
  return j.dump(2);
}

}  // namespace genus5
