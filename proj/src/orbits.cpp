#include "genus5/orbits.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace genus5 {

namespace {

constexpr long long kGroupOrder = 5616;  // |PGL3(F3)| = (27-1)(27-3)(27-9)/2

int det3_mod3(const std::array<std::array<uint8_t, 3>, 3>& m) {
  int d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return ((d % 3) + 3) % 3;
}

}  // namespace

const std::vector<GroupElement>& projective_group() {
  static const std::vector<GroupElement> group = [] {
    std::vector<GroupElement> out;
    out.reserve(kGroupOrder);
    for (int code = 0; code < 19683; ++code) {
      GroupElement g;
      int t = code;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          g.m[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<uint8_t>(t % 3);
          t /= 3;
        }
      uint8_t lead = 0;
      for (int i = 0; i < 3 && !lead; ++i)
        for (int j = 0; j < 3 && !lead; ++j) lead = g.m[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (lead != 1) continue;  // scalar-normalized coset representatives only
      if (det3_mod3(g.m) == 0) continue;
      out.push_back(g);
    }
    if (static_cast<long long>(out.size()) != kGroupOrder)
      throw std::logic_error("projective group enumeration does not have order 5616");
    return out;
  }();
  return group;
}

// ---------------------------------------------------------------------------
// patterns

namespace {

void validate_pattern(const ConfigPattern& pat) {
  if (pat.parts.empty()) throw std::invalid_argument("empty orbit pattern");
  if (!std::is_sorted(pat.parts.begin(), pat.parts.end()))
    throw std::invalid_argument("orbit pattern parts must be ascending");
  for (int d : pat.parts)
    if (d < 1 || d > 5) throw std::invalid_argument("orbit pattern part out of range");
  if (pat.kase == SingCase::I) {
    int sum = 0;
    for (int d : pat.parts) sum += d;
    if (sum != 5) throw std::invalid_argument("case I orbit pattern must partition 5");
  } else {
    if (!(pat.parts == std::vector<int>{1, 1} || pat.parts == std::vector<int>{2}))
      throw std::invalid_argument("case II orbit pattern must be (1,1) or (2)");
  }
  if (!pat.subclass.empty()) {
    if (pat.subclass != "indep" && pat.subclass != "dep")
      throw std::invalid_argument("unknown pattern subclass: " + pat.subclass);
    if (pat.kase != SingCase::I || pat.parts != std::vector<int>{1, 1, 1, 2})
      throw std::invalid_argument("subclass selectors apply only to pattern (1,1,1,2)");
  }
}

}  // namespace

std::string pattern_tag(const ConfigPattern& pat) {
  std::string s = pat.kase == SingCase::II ? "II-" : "";
  for (size_t i = 0; i < pat.parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(pat.parts[i]);
  }
  if (!pat.subclass.empty()) s += "-" + pat.subclass;
  return s;
}

ConfigPattern parse_pattern(const std::string& tag) {
  ConfigPattern pat;
  std::string body = tag;
  if (body.rfind("II-", 0) == 0) {
    pat.kase = SingCase::II;
    body.erase(0, 3);
  } else if (body.rfind("I-", 0) == 0) {
    body.erase(0, 2);
  }
  for (const char* sub : {"-indep", "-dep"}) {
    std::string s = sub;
    if (body.size() > s.size() && body.compare(body.size() - s.size(), s.size(), s) == 0) {
      pat.subclass = s.substr(1);
      body.erase(body.size() - s.size());
      break;
    }
  }
  std::stringstream in(body);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse orbit pattern: " + tag);
    }
    if (used != piece.size()) throw std::invalid_argument("cannot parse orbit pattern: " + tag);
    pat.parts.push_back(v);
  }
  std::sort(pat.parts.begin(), pat.parts.end());
  validate_pattern(pat);
  return pat;
}

std::vector<ConfigPattern> all_patterns() {
  std::vector<ConfigPattern> out;
  for (const char* tag : {"1,1,1,1,1", "1,1,1,2", "1,2,2", "1,1,3", "2,3", "1,4", "5", "II-1,1", "II-2"})
    out.push_back(parse_pattern(tag));
  return out;
}

// ---------------------------------------------------------------------------
// configuration enumeration

namespace {

GFElem elem_from_index(int k, long long idx) {
  GFElem e;
  e.deg = static_cast<uint8_t>(k);
  for (int i = 0; i < k; ++i) {
    e.c[static_cast<size_t>(i)] = static_cast<uint8_t>(idx % 3);
    idx /= 3;
  }
  return e;
}

// All points of P^2 over GF(3^k), each exactly once.
std::vector<ProjPoint> plane_points(const FieldTower& tw, int k) {
  const FieldCtx& c = tw.ctx(k);
  long long q = 1;
  for (int i = 0; i < k; ++i) q *= 3;
  std::vector<ProjPoint> out;
  out.reserve(static_cast<size_t>(q * q + q + 1));
  for (long long b = 0; b < q; ++b)
    for (long long d = 0; d < q; ++d)
      out.push_back(make_point(tw, c.one(), elem_from_index(k, b), elem_from_index(k, d)));
  for (long long d = 0; d < q; ++d)
    out.push_back(make_point(tw, c.zero(), c.one(), elem_from_index(k, d)));
  out.push_back(make_point(tw, c.zero(), c.zero(), c.one()));
  return out;
}

// Least member of each Frobenius orbit of size exactly d, sorted.
std::vector<ProjPoint> orbit_reps_of_degree(const FieldTower& tw, int d) {
  std::vector<ProjPoint> reps;
  for (const ProjPoint& p : plane_points(tw, d)) {
    if (p.degree() != d) continue;  // make_point compressed a subfield point
    bool least = true;
    ProjPoint q = p;
    for (int t = 1; t < d && least; ++t) {
      q = point_frobenius(tw, q);
      if (point_less(q, p)) least = false;
    }
    if (least) reps.push_back(p);
  }
  std::sort(reps.begin(), reps.end(), point_less);
  return reps;
}

bool four_collinear(const FieldTower& tw, const std::vector<ConfigPoint>& pts) {
  size_t n = pts.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      for (size_t c = b + 1; c < n; ++c)
        for (size_t d = c + 1; d < n; ++d)
          if (points_collinear(tw, pts[a].p, pts[b].p, pts[c].p) &&
              points_collinear(tw, pts[a].p, pts[b].p, pts[d].p))
            return true;
  return false;
}

void sort_config_points(std::vector<ConfigPoint>& pts) {
  std::sort(pts.begin(), pts.end(),
            [](const ConfigPoint& a, const ConfigPoint& b) { return point_less(a.p, b.p); });
}

// The three rational points of a (1,1,1,2) configuration lie on a line?
bool rational_triple_collinear(const FieldTower& tw, const SingularConfig& c) {
  std::vector<const ProjPoint*> rat;
  for (const ConfigPoint& cp : c.points)
    if (cp.p.degree() == 1) rat.push_back(&cp.p);
  if (rat.size() != 3) throw std::logic_error("subclass query needs exactly three rational points");
  return points_collinear(tw, *rat[0], *rat[1], *rat[2]);
}

}  // namespace

std::vector<SingularConfig> enumerate_configs(const FieldTower& tw, const ConfigPattern& pat) {
  validate_pattern(pat);
  const std::string plain_tag = pattern_tag(ConfigPattern{pat.kase, pat.parts, ""});

  // Count how many orbits of each degree the pattern needs, and fetch the
  // orbit inventories once.
  std::map<int, int> need;
  for (int d : pat.parts) ++need[d];
  std::map<int, std::vector<ProjPoint>> reps;
  for (const auto& [d, n] : need) reps[d] = orbit_reps_of_degree(tw, d);
  const std::vector<ProjPoint> rational = orbit_reps_of_degree(tw, 1);

  std::vector<SingularConfig> out;

  // Recursive chooser: per degree, an increasing combination of distinct
  // orbit representatives; across degrees a cartesian product.
  std::vector<ConfigPoint> chosen;  // orbit representatives, mult already set
  auto emit = [&](const ProjPoint* triple) {
    std::vector<ConfigPoint> pts;
    if (triple) pts.push_back({*triple, 3});
    for (const ConfigPoint& cp : chosen)
      for (const ProjPoint& q : point_orbit(tw, cp.p)) pts.push_back({q, cp.mult});
    if (pat.kase == SingCase::I) {
      if (four_collinear(tw, pts)) return;
    } else {
      if (points_collinear(tw, pts[0].p, pts[1].p, pts[2].p)) return;
    }
    SingularConfig c;
    c.kase = pat.kase;
    c.orbit_pattern = plain_tag;
    c.points = pts;
    sort_config_points(c.points);
    if (!pat.subclass.empty()) {
      bool dep = rational_triple_collinear(tw, c);
      if (dep != (pat.subclass == "dep")) return;
    }
    out.push_back(std::move(c));
  };

  auto choose = [&](auto&& self, std::map<int, int>::const_iterator it, const ProjPoint* triple) -> void {
    if (it == need.end()) {
      emit(triple);
      return;
    }
    const int d = it->first;
    const int n = it->second;
    const std::vector<ProjPoint>& pool = reps.at(d);
    auto next = std::next(it);
    std::vector<size_t> pick(static_cast<size_t>(n));
    auto rec = [&](auto&& rself, int slot, size_t from) -> void {
      if (slot == n) {
        self(self, next, triple);
        return;
      }
      for (size_t i = from; i < pool.size(); ++i) {
        if (d == 1 && triple && pool[i] == *triple) continue;  // double points avoid the triple point
        chosen.push_back({pool[i], 2});
        rself(rself, slot + 1, i + 1);
        chosen.pop_back();
      }
    };
    rec(rec, 0, 0);
  };

  if (pat.kase == SingCase::I) {
    choose(choose, need.cbegin(), nullptr);
  } else {
    for (const ProjPoint& t : rational) choose(choose, need.cbegin(), &t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// orbit decomposition

namespace {

std::string config_key(const SingularConfig& c) {
  std::string s;
  s.reserve(c.points.size() * 34);
  for (const ConfigPoint& cp : c.points) {
    s.push_back(static_cast<char>('0' + cp.mult));
    for (const GFElem& e : cp.p.x) {
      s.push_back(static_cast<char>(e.deg));
      s.append(reinterpret_cast<const char*>(e.c.data()), e.c.size());
    }
  }
  return s;
}

bool config_points_less(const SingularConfig& a, const SingularConfig& b) {
  const size_t n = std::min(a.points.size(), b.points.size());
  for (size_t i = 0; i < n; ++i) {
    if (point_less(a.points[i].p, b.points[i].p)) return true;
    if (point_less(b.points[i].p, a.points[i].p)) return false;
    if (a.points[i].mult != b.points[i].mult) return a.points[i].mult > b.points[i].mult;
  }
  return a.points.size() < b.points.size();
}

SingularConfig apply_group_element(const FieldTower& tw, const GroupElement& g,
                                   const SingularConfig& c) {
  SingularConfig out;
  out.kase = c.kase;
  out.orbit_pattern = c.orbit_pattern;
  out.points.reserve(c.points.size());
  for (const ConfigPoint& cp : c.points) out.points.push_back({point_apply(tw, g.m, cp.p), cp.mult});
  sort_config_points(out.points);
  return out;
}

// Least configuration in the orbit of c (the canonical form used for lookup).
SingularConfig canonical_form(const FieldTower& tw, const SingularConfig& c) {
  SingularConfig best = apply_group_element(tw, projective_group().front(), c);
  for (const GroupElement& g : projective_group()) {
    SingularConfig img = apply_group_element(tw, g, c);
    if (config_points_less(img, best)) best = std::move(img);
  }
  return best;
}

int subclass_rank(const std::string& s) { return s == "dep" ? 2 : (s == "indep" ? 1 : 0); }

}  // namespace

OrbitTable orbit_decompose(const FieldTower& tw, const ConfigPattern& pat,
                           const std::vector<SingularConfig>& configs) {
  validate_pattern(pat);
  const std::vector<GroupElement>& group = projective_group();
  const bool split_subclass = pat.kase == SingCase::I && pat.parts == std::vector<int>{1, 1, 1, 2};

  std::unordered_map<std::string, size_t> index_of;
  index_of.reserve(configs.size() * 2);
  for (size_t i = 0; i < configs.size(); ++i)
    if (!index_of.emplace(config_key(configs[i]), i).second)
      throw std::invalid_argument("duplicate configuration in enumeration");

  OrbitTable table;
  table.pattern = pat;
  table.configs_total = static_cast<long long>(configs.size());

  std::vector<char> visited(configs.size(), 0);
  long long covered = 0;
  for (size_t i = 0; i < configs.size(); ++i) {
    if (visited[i]) continue;
    OrbitEntry entry;
    entry.canonical = configs[i];
    long long size = 0;
    for (const GroupElement& g : group) {
      SingularConfig img = apply_group_element(tw, g, configs[i]);
      auto it = index_of.find(config_key(img));
      if (it == index_of.end())
        throw std::logic_error("group action leaves the enumerated configuration set");
      if (!visited[it->second]) {
        visited[it->second] = 1;
        ++size;
        if (config_points_less(img, entry.canonical)) entry.canonical = std::move(img);
      }
    }
    if (kGroupOrder % size != 0)
      throw std::logic_error("orbit size does not divide the group order");
    entry.size = size;
    entry.stabilizer_order = static_cast<int>(kGroupOrder / size);
    if (split_subclass)
      entry.subclass = rational_triple_collinear(tw, entry.canonical) ? "dep" : "indep";
    covered += size;
    table.orbits.push_back(std::move(entry));
  }
  if (covered != table.configs_total)
    throw std::logic_error("orbit sizes do not sum to the configuration count");
  std::sort(table.orbits.begin(), table.orbits.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
    return config_points_less(a.canonical, b.canonical);
  });
  return table;
}

// ---------------------------------------------------------------------------
// reference representatives

namespace {

struct RefSpec {
  const char* subclass;
  std::vector<std::pair<const char*, int>> reps;  // (orbit representative, multiplicity)
};

const std::map<std::string, std::vector<RefSpec>>& reference_spec() {
  static const std::map<std::string, std::vector<RefSpec>> spec = {
      {"1,1,1,1,1",
       {{"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(0:0:1)", 2}, {"(1:1:0)", 2}, {"(0:1:1)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(0:0:1)", 2}, {"(1:1:0)", 2}, {"(1:2:1)", 2}}}}},
      {"1,1,1,2",
       {{"indep", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(0:0:1)", 2}, {"(1:z2^5:z2^7)", 2}}},
        {"indep", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(0:0:1)", 2}, {"(1:z2^7:1)", 2}}},
        {"indep", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(0:0:1)", 2}, {"(1:z2^2:z2^2)", 2}}},
        // The "dep" family decomposes into exactly two orbits (sizes 1404 and
        // 468).  A third natural-looking representative, (1:z2^2:z2^2), lies
        // in the orbit of (1:1:z2^7): the matrix [[0,1,1],[2,1,1],[0,0,1]]
        // carries one configuration onto the other.
        {"dep", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:1:0)", 2}, {"(1:z2^5:z2^7)", 2}}},
        {"dep", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:1:0)", 2}, {"(1:1:z2^7)", 2}}}}},
      {"1,2,2",
       {{"", {{"(1:0:0)", 2}, {"(1:1:z2^2)", 2}, {"(0:1:z2^6)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:2:z2^5)", 2}, {"(1:z2^2:z2^7)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z2:1)", 2}, {"(1:z2^7:z2^7)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z2^2:z2^6)", 2}, {"(1:0:z2^5)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:0:z2^2)", 2}, {"(1:1:z2^5)", 2}}}}},
      {"1,1,3",
       {{"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:2:z3^5)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:z3^6:z3^25)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:z3^17:z3^2)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(0:1:0)", 2}, {"(1:2:z3^10)", 2}}}}},
      {"2,3",
       {{"", {{"(1:z2:0)", 2}, {"(1:2:z3^5)", 2}}},
        {"", {{"(1:z2:0)", 2}, {"(1:z3^22:2)", 2}}},
        {"", {{"(1:z2:0)", 2}, {"(1:z3^17:z3^2)", 2}}}}},
      {"1,4",
       {{"", {{"(1:0:0)", 2}, {"(1:z4^75:z4^49)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z4^8:z4^70)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z4^59:z4^53)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z4^72:z4^29)", 2}}},
        {"", {{"(1:0:0)", 2}, {"(1:z4^5:z4^75)", 2}}}}},
      {"5", {{"", {{"(1:z5^127:z5^143)", 2}}}, {"", {{"(1:z5^218:z5^72)", 2}}}}},
      {"II-1,1", {{"", {{"(0:0:1)", 3}, {"(1:0:0)", 2}, {"(0:1:0)", 2}}}}},
      {"II-2", {{"", {{"(0:0:1)", 3}, {"(1:z2:0)", 2}}}}},
  };
  return spec;
}

}  // namespace

std::vector<SingularConfig> reference_representatives(const FieldTower& tw,
                                                      const ConfigPattern& pat) {
  validate_pattern(pat);
  const std::string plain_tag = pattern_tag(ConfigPattern{pat.kase, pat.parts, ""});
  auto it = reference_spec().find(plain_tag);
  if (it == reference_spec().end())
    throw std::invalid_argument("no reference representatives for pattern " + plain_tag);
  std::vector<SingularConfig> out;
  std::map<std::string, int> counter;
  for (const RefSpec& rs : it->second) {
    int idx = ++counter[rs.subclass];
    if (!pat.subclass.empty() && pat.subclass != rs.subclass) continue;
    std::vector<ConfigPoint> reps;
    for (const auto& [text, mult] : rs.reps) reps.push_back({parse_point(tw, text), mult});
    std::string label = plain_tag;
    if (*rs.subclass) label += std::string("-") + rs.subclass;
    label += " #" + std::to_string(idx);
    out.push_back(config_from_orbit_reps(tw, pat.kase, reps, plain_tag, label));
  }
  return out;
}

// ---------------------------------------------------------------------------
// table assembly and lookup

int locate_representative(const FieldTower& tw, const OrbitTable& table, const SingularConfig& c) {
  validate_config(tw, c);
  SingularConfig canon = canonical_form(tw, c);
  const std::string key = config_key(canon);
  for (size_t i = 0; i < table.orbits.size(); ++i)
    if (config_key(table.orbits[i].canonical) == key) return static_cast<int>(i);
  throw std::invalid_argument(
      "configuration lies in no orbit of the table for pattern " + pattern_tag(table.pattern) +
      " (for a reference representative this signals a field-generator mismatch)");
}

OrbitTable build_orbit_table(const FieldTower& tw, const ConfigPattern& pat) {
  OrbitTable table = orbit_decompose(tw, pat, enumerate_configs(tw, pat));
  std::vector<SingularConfig> refs = reference_representatives(tw, pat);
  if (refs.size() != table.orbits.size())
    throw std::logic_error("reference representative count differs from the orbit count for " +
                           pattern_tag(pat));
  std::map<std::string, int> counter;
  std::vector<char> hit(table.orbits.size(), 0);
  for (const SingularConfig& ref : refs) {
    int at = locate_representative(tw, table, ref);
    OrbitEntry& entry = table.orbits[static_cast<size_t>(at)];
    if (hit[static_cast<size_t>(at)])
      throw std::logic_error("two reference representatives fall in the same orbit: " +
                             ref.provenance);
    hit[static_cast<size_t>(at)] = 1;
    // Re-derive the subclass from the reference itself; it must agree with the
    // canonical member's (the split is a group invariant).
    if (!entry.subclass.empty()) {
      bool dep = rational_triple_collinear(tw, ref);
      if (dep != (entry.subclass == "dep"))
        throw std::logic_error("subclass disagreement between orbit and reference: " +
                               ref.provenance);
    }
    entry.ref = ref;
    entry.index = ++counter[entry.subclass];
  }
  std::sort(table.orbits.begin(), table.orbits.end(), [](const OrbitEntry& a, const OrbitEntry& b) {
    if (subclass_rank(a.subclass) != subclass_rank(b.subclass))
      return subclass_rank(a.subclass) < subclass_rank(b.subclass);
    return a.index < b.index;
  });
  return table;
}

const OrbitTable& cached_orbit_table(const FieldTower& tw, const ConfigPattern& pat) {
  static std::mutex mu;
  static std::map<std::string, OrbitTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  const std::string tag = pattern_tag(pat);
  auto it = cache.find(tag);
  if (it == cache.end()) it = cache.emplace(tag, build_orbit_table(tw, pat)).first;
  return it->second;
}

const OrbitEntry& select_orbit(const OrbitTable& table, const std::string& subclass, int index) {
  for (const OrbitEntry& e : table.orbits)
    if (e.subclass == subclass && e.index == index) return e;
  throw std::invalid_argument("no orbit " + (subclass.empty() ? "" : subclass + " ") +
                              std::to_string(index) + " in the table for pattern " +
                              pattern_tag(table.pattern));
}

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json config_to_json(const FieldTower& tw, const SingularConfig& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const ConfigPoint& cp : config_orbit_reps(tw, c))
    pts.push_back({{"point", render_point(tw, cp.p)}, {"mult", cp.mult}});
  nlohmann::json j;
  j["orbit_reps"] = pts;
  if (!c.provenance.empty()) j["label"] = c.provenance;
  return j;
}

SingularConfig config_from_json(const FieldTower& tw, SingCase kase, const std::string& tag,
                                const nlohmann::json& j) {
  std::vector<ConfigPoint> reps;
  for (const auto& e : j.at("orbit_reps"))
    reps.push_back({parse_point(tw, e.at("point").get<std::string>()), e.at("mult").get<int>()});
  return config_from_orbit_reps(tw, kase, reps, tag, j.value("label", ""));
}

}  // namespace

std::string orbit_table_to_json(const FieldTower& tw, const OrbitTable& table) {
  nlohmann::json j;
  j["format"] = "genus5-orbit-table";
  j["version"] = 1;
  j["case"] = table.pattern.kase == SingCase::II ? "II" : "I";
  j["pattern"] = pattern_tag(table.pattern);
  j["group_order"] = kGroupOrder;
  j["configs_total"] = table.configs_total;
  nlohmann::json orbits = nlohmann::json::array();
  for (const OrbitEntry& e : table.orbits) {
    nlohmann::json o;
    o["subclass"] = e.subclass;
    o["index"] = e.index;
    o["size"] = e.size;
    o["stabilizer_order"] = e.stabilizer_order;
    o["reference"] = config_to_json(tw, e.ref);
    o["canonical"] = config_to_json(tw, e.canonical);
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  return j.dump(2) + "\n";
}

OrbitTable orbit_table_from_json(const FieldTower& tw, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("format").get<std::string>() != "genus5-orbit-table" || j.at("version").get<int>() != 1)
    throw std::invalid_argument("unrecognized orbit table format");
  OrbitTable table;
  table.pattern = parse_pattern(j.at("pattern").get<std::string>());
  table.configs_total = j.at("configs_total").get<long long>();
  const std::string tag = pattern_tag(ConfigPattern{table.pattern.kase, table.pattern.parts, ""});
  for (const auto& o : j.at("orbits")) {
    OrbitEntry e;
    e.subclass = o.at("subclass").get<std::string>();
    e.index = o.at("index").get<int>();
    e.size = o.at("size").get<long long>();
    e.stabilizer_order = o.at("stabilizer_order").get<int>();
    if (e.size <= 0 || kGroupOrder % e.size != 0 ||
        e.stabilizer_order != kGroupOrder / e.size)
      throw std::invalid_argument("orbit table entry violates the orbit-stabilizer relation");
    e.ref = config_from_json(tw, table.pattern.kase, tag, o.at("reference"));
    e.canonical = config_from_json(tw, table.pattern.kase, tag, o.at("canonical"));
    table.orbits.push_back(std::move(e));
  }
  return table;
}

}  // namespace genus5
