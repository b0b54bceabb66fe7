// Command-line front end: classify singular-point configurations into
// projective orbits, run and resume exhaustive sextic searches, verify
// individual curves, and re-check the shipped fixture curves.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "genus5/enumerate.hpp"
#include "genus5/orbits.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace genus5;

namespace {

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

const FieldTower& tower() {
  static const FieldTower tw;
  return tw;
}

std::string file_tag(std::string tag) {
  for (char& c : tag)
    if (c == ',') c = '_';
  return tag;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << body;
  if (!body.empty() && body.back() != '\n') out << '\n';
}

// Accept forms typed with extension-field notation as long as every
// coefficient actually lies in the prime field.
TernaryForm prime_field_form(const FieldTower& tw, const std::string& s) {
  TernaryForm f = parse_form(tw, s);
  if (f.d != 6) throw std::invalid_argument("expected a degree-6 form, got degree " + std::to_string(f.d));
  if (f.k == 1) return f;
  TernaryForm g = tf_zero(1, 6);
  for (const auto& [m, v] : f.t) {
    if (tw.minimal_degree(v) != 1)
      throw std::invalid_argument("coefficient of x^" + std::to_string(m[0]) + "y^" +
                                  std::to_string(m[1]) + "z^" + std::to_string(m[2]) +
                                  " does not lie in the prime field");
    tf_set(tw, g, m, tw.compress(v));
  }
  return g;
}

// ---------------------------------------------------------------- classify

struct ClassifyOpts {
  std::vector<std::string> patterns;
  std::string kase;  // "", "I", "II"
  std::string out_dir = "orbit_tables";
  std::string expect_file;
  bool json_out = false;
};

int cmd_classify(const ClassifyOpts& o) {
  const FieldTower& tw = tower();
  std::vector<ConfigPattern> pats;
  if (o.patterns.empty()) {
    for (const ConfigPattern& p : all_patterns()) {
      if (o.kase == "I" && p.kase != SingCase::I) continue;
      if (o.kase == "II" && p.kase != SingCase::II) continue;
      pats.push_back(p);
    }
  } else {
    for (const std::string& s : o.patterns) {
      ConfigPattern p = parse_pattern(s);
      p.subclass.clear();  // tables always carry both subclasses
      pats.push_back(p);
    }
  }

  json expect;
  if (!o.expect_file.empty()) expect = json::parse(read_file(o.expect_file));

  fs::create_directories(o.out_dir);
  json out = json::array();
  bool ok = true;
  for (const ConfigPattern& pat : pats) {
    const OrbitTable& tab = cached_orbit_table(tw, pat);
    const std::string tag = pattern_tag(pat);
    write_file(fs::path(o.out_dir) / ("orbits-" + file_tag(tag) + ".json"),
               orbit_table_to_json(tw, tab));

    std::map<std::string, int> counts;
    for (const OrbitEntry& e : tab.orbits) ++counts[e.subclass];
    json row;
    row["pattern"] = tag;
    row["configurations"] = tab.configs_total;
    row["orbits"] = tab.orbits.size();
    json ents = json::array();
    for (const OrbitEntry& e : tab.orbits) {
      json je;
      je["index"] = e.index;
      if (!e.subclass.empty()) je["subclass"] = e.subclass;
      je["size"] = e.size;
      je["stabilizer_order"] = e.stabilizer_order;
      json pts = json::array();
      for (const ConfigPoint& cp : config_orbit_reps(tw, e.ref)) {
        json jp;
        jp["point"] = render_point(tw, cp.p);
        jp["mult"] = cp.mult;
        pts.push_back(jp);
      }
      je["reference"] = pts;
      ents.push_back(je);
    }
    row["entries"] = ents;

    if (!expect.is_null()) {
      for (const auto& [sub, n] : counts) {
        const std::string key = sub.empty() ? tag : tag + "-" + sub;
        if (!expect.at("counts").contains(key)) continue;
        const int want = expect.at("counts").at(key).get<int>();
        if (want != n) {
          row["mismatch"] = key + ": expected " + std::to_string(want) + " orbits, found " +
                            std::to_string(n);
          ok = false;
        }
      }
      if (expect.contains("configurations") && expect.at("configurations").contains(tag)) {
        const long long want = expect.at("configurations").at(tag).get<long long>();
        if (want != tab.configs_total) {
          row["mismatch"] = tag + ": expected " + std::to_string(want) +
                            " configurations, found " + std::to_string(tab.configs_total);
          ok = false;
        }
      }
    }
    out.push_back(row);

    if (!o.json_out) {
      std::printf("%-10s  %6lld configurations  %2zu orbits  [", tag.c_str(),
                  tab.configs_total, tab.orbits.size());
      for (size_t i = 0; i < tab.orbits.size(); ++i)
        std::printf("%s%lld", i ? " " : "", tab.orbits[i].size);
      std::printf("]%s\n", row.contains("mismatch")
                               ? ("  MISMATCH: " + row["mismatch"].get<std::string>()).c_str()
                               : "");
    }
  }
  if (o.json_out) std::printf("%s\n", out.dump(2).c_str());
  if (!o.json_out)
    std::printf("orbit tables written to %s\n", fs::absolute(o.out_dir).string().c_str());
  return ok ? 0 : 1;
}

// ------------------------------------------------------------------ search

struct SearchOpts {
  std::string pattern;
  int orbit = 1;
  long long N = 32;
  std::string range;
  int workers = 0;
  std::string checkpoint_dir;
  std::string out_file;
  uint64_t seed = 0;
  bool dry_run = false, force = false, json_out = false, full = false;
};

struct SubRange {
  uint64_t begin = 0, end = 0, next = 0;
};

json counters_json(const FilterCounters& c) {
  return json{{"visited", c.visited},
              {"wrong_multiplicity", c.wrong_multiplicity},
              {"pinned_slot", c.pinned_slot},
              {"reducible", c.reducible},
              {"wrong_locus", c.wrong_locus},
              {"below_threshold", c.below_threshold},
              {"survivors", c.survivors}};
}

FilterCounters counters_from_json(const json& j) {
  FilterCounters c;
  c.visited = j.value("visited", 0ull);
  c.wrong_multiplicity = j.value("wrong_multiplicity", 0ull);
  c.pinned_slot = j.value("pinned_slot", 0ull);
  c.reducible = j.value("reducible", 0ull);
  c.wrong_locus = j.value("wrong_locus", 0ull);
  c.below_threshold = j.value("below_threshold", 0ull);
  c.survivors = j.value("survivors", 0ull);
  return c;
}

void accumulate(FilterCounters& into, const FilterCounters& c) {
  into.visited += c.visited;
  into.wrong_multiplicity += c.wrong_multiplicity;
  into.pinned_slot += c.pinned_slot;
  into.reducible += c.reducible;
  into.wrong_locus += c.wrong_locus;
  into.below_threshold += c.below_threshold;
  into.survivors += c.survivors;
}

std::string default_checkpoint_dir() {
  if (const char* env = std::getenv("GENUS5_CHECKPOINT_DIR")) return env;
  return "checkpoints";
}

int run_one_search(const std::string& display, const SingularConfig& ref, const SearchOpts& o) {
  const FieldTower& tw = tower();
  const SearchTask task = make_search_task(tw, ref, o.N);

  uint64_t range_begin = 0, range_end = task.total();
  if (!o.range.empty()) {
    const size_t colon = o.range.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--range expects BEGIN:END, got " + o.range);
    range_begin = std::stoull(o.range.substr(0, colon));
    range_end = std::min<uint64_t>(std::stoull(o.range.substr(colon + 1)), task.total());
    if (range_begin >= range_end)
      throw std::invalid_argument("--range is empty after clamping to the task size");
  }
  const uint64_t span = range_end - range_begin;

  int workers = o.workers;
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
#else
  if (workers <= 0) workers = 1;
#endif
  workers = static_cast<int>(std::min<uint64_t>(static_cast<uint64_t>(workers), span));

  if (o.dry_run) {
    if (o.json_out) {
      std::printf("%s\n", task_manifest_json(tw, task, display, workers, o.seed).c_str());
    } else {
      std::printf("configuration  %s\n", display.c_str());
      std::printf("threshold      N >= %lld\n", o.N);
      std::printf("system rank    %d\n", task.basis.rank);
      std::printf("null space     dimension %d, basis hash %016llx\n", task.basis.dim(),
                  static_cast<unsigned long long>(task.basis.hash));
      for (const SearchSlice& sl : task.slices)
        std::printf("slice          %s dim %zu, %llu candidates\n",
                    sl.label.empty() ? "(deduplicated)" : sl.label.c_str(), sl.basis.size(),
                    static_cast<unsigned long long>(sl.total()));
      std::printf("candidates     %llu in range [%llu, %llu)\n",
                  static_cast<unsigned long long>(span),
                  static_cast<unsigned long long>(range_begin),
                  static_cast<unsigned long long>(range_end));
    }
    return 0;
  }

  const std::string ckroot = o.checkpoint_dir.empty() ? default_checkpoint_dir() : o.checkpoint_dir;
  std::string run_id = file_tag(display);
  for (char& c : run_id) {
    if (c == ' ') c = '-';
    if (c == '#') c = 'o';
  }
  run_id += "-N" + std::to_string(o.N);
  if (!o.range.empty())
    run_id += "-r" + std::to_string(range_begin) + "_" + std::to_string(range_end);
  const fs::path run_dir = fs::path(ckroot) / run_id;
  fs::create_directories(run_dir);
  const fs::path manifest_path = run_dir / "manifest.json";
  const fs::path ckpt_path = run_dir / "checkpoint.json";
  const fs::path surv_path = run_dir / "survivors.jsonl";
  const fs::path summary_path = run_dir / "summary.json";

  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(task.basis.hash));

  if (fs::exists(summary_path) && !o.force) {
    std::fprintf(stderr, "run %s already completed (%s); pass --force to redo it\n",
                 run_id.c_str(), summary_path.string().c_str());
    return 1;
  }
  if (o.force) {
    fs::remove(ckpt_path);
    fs::remove(surv_path);
    fs::remove(summary_path);
  }

  // Partition: fresh runs split the range evenly; resumed runs continue the
  // partition recorded in the checkpoint (worker count changes are fine, the
  // sub-ranges are just a work list).
  std::vector<SubRange> ranges;
  FilterCounters done_counters;
  if (fs::exists(ckpt_path)) {
    const json ck = json::parse(read_file(ckpt_path));
    if (ck.at("basis_hash").get<std::string>() != hash_hex ||
        ck.at("threshold").get<long long>() != o.N) {
      std::fprintf(stderr, "checkpoint in %s belongs to a different task; use --force\n",
                   run_dir.string().c_str());
      return 1;
    }
    for (const json& r : ck.at("ranges"))
      ranges.push_back({r.at("begin").get<uint64_t>(), r.at("end").get<uint64_t>(),
                        r.at("next").get<uint64_t>()});
    done_counters = counters_from_json(ck.at("counters"));
    std::printf("resuming %s: %llu of %llu candidates done\n", run_id.c_str(),
                static_cast<unsigned long long>(done_counters.visited),
                static_cast<unsigned long long>(span));
  } else {
    for (int w = 0; w < workers; ++w) {
      const uint64_t b = range_begin + span * static_cast<uint64_t>(w) / static_cast<uint64_t>(workers);
      const uint64_t e =
          range_begin + span * (static_cast<uint64_t>(w) + 1) / static_cast<uint64_t>(workers);
      if (b < e) ranges.push_back({b, e, b});
    }
  }

  if (!fs::exists(manifest_path)) {
    json m = json::parse(task_manifest_json(tw, task, display, workers, o.seed));
    m["range"] = {range_begin, range_end};
    m["run_id"] = run_id;
    write_file(manifest_path, m.dump(2));
  }

  std::mutex io_mutex;
  std::ofstream surv(surv_path, std::ios::app);
  if (!surv) throw std::runtime_error("cannot open " + surv_path.string());

  auto write_checkpoint = [&] {
    json ck;
    ck["format"] = "genus5-search-checkpoint";
    ck["version"] = 1;
    ck["basis_hash"] = hash_hex;
    ck["threshold"] = o.N;
    ck["counters"] = counters_json(done_counters);
    json jr = json::array();
    for (const SubRange& r : ranges)
      jr.push_back({{"begin", r.begin}, {"end", r.end}, {"next", r.next}});
    ck["ranges"] = jr;
    write_file(ckpt_path, ck.dump());
  };

  std::signal(SIGINT, on_sigint);
  const auto t0 = std::chrono::steady_clock::now();
  auto last_ckpt = t0;
  std::atomic<uint64_t> processed{0};

  constexpr uint64_t kChunk = 2048;
  const int nranges = static_cast<int>(ranges.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
#endif
  for (int i = 0; i < nranges; ++i) {
    SubRange& r = ranges[static_cast<size_t>(i)];
    while (r.next < r.end && !g_interrupted.load(std::memory_order_relaxed)) {
      const uint64_t stop_at = std::min(r.next + kChunk, r.end);
      const IterationSummary s = iterate_candidates(
          tw, task, r.next, stop_at,
          [&](const CandidateRecord& rec) {
            const std::string line = record_to_json(tw, rec);
            std::lock_guard<std::mutex> lk(io_mutex);
            surv << line << '\n';
            surv.flush();
            if (!o.json_out)
              std::printf("survivor %llu: N1=%lld  %s\n",
                          static_cast<unsigned long long>(rec.index), rec.n1,
                          render_weil_factored(rec.weil).c_str());
          },
          &g_interrupted);
      {
        std::lock_guard<std::mutex> lk(io_mutex);
        r.next = s.next_index;
        accumulate(done_counters, s.counters);
        processed.fetch_add(s.counters.visited);
        const auto now = std::chrono::steady_clock::now();
        if (now - last_ckpt > std::chrono::seconds(20)) {
          write_checkpoint();
          last_ckpt = now;
          const double el = std::chrono::duration<double>(now - t0).count();
          const uint64_t p = processed.load();
          if (!o.json_out && p)
            std::fprintf(stderr, "progress: %llu/%llu candidates (%.1f/s, %.1f min remaining)\n",
                         static_cast<unsigned long long>(done_counters.visited),
                         static_cast<unsigned long long>(span), p / el,
                         (static_cast<double>(span) - static_cast<double>(done_counters.visited)) *
                             el / static_cast<double>(p) / 60.0);
        }
      }
    }
  }

  write_checkpoint();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool all_done = true;
  for (const SubRange& r : ranges) all_done = all_done && r.next >= r.end;
  if (!all_done) {
    std::fprintf(stderr, "interrupted after %llu candidates; rerun the same command to resume\n",
                 static_cast<unsigned long long>(done_counters.visited));
    return 3;
  }

  // Deterministic final output: parse the stream back, drop duplicate indices
  // (possible only after a hard kill between checkpoint writes), sort.
  surv.close();
  std::vector<json> records;
  {
    std::ifstream in(surv_path);
    std::string line;
    std::set<uint64_t> seen;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      if (seen.insert(j.at("index").get<uint64_t>()).second) records.push_back(std::move(j));
    }
  }
  std::sort(records.begin(), records.end(), [](const json& a, const json& b) {
    return a.at("index").get<uint64_t>() < b.at("index").get<uint64_t>();
  });
  {
    std::ostringstream body;
    for (const json& r : records) body << r.dump() << '\n';
    write_file(surv_path, body.str());
    if (!o.out_file.empty()) write_file(o.out_file, body.str());
  }
  if (done_counters.survivors != records.size()) {
    // counters double-counted re-visited candidates after a hard kill; the
    // record stream is the authoritative survivor set
    done_counters.survivors = records.size();
  }

  json summary;
  summary["completed"] = true;
  summary["range"] = {range_begin, range_end};
  summary["counters"] = counters_json(done_counters);
  summary["survivors"] = records.size();
  summary["wall_seconds"] = wall;
  write_file(summary_path, summary.dump(2));

  if (o.json_out) {
    std::printf("%s\n", summary.dump(2).c_str());
  } else {
    std::printf("search %s complete: %llu candidates in %.1f s\n", run_id.c_str(),
                static_cast<unsigned long long>(done_counters.visited), wall);
    std::printf("  wrong multiplicity %llu, pinned slot %llu, reducible %llu, wrong locus %llu, "
                "below threshold %llu\n",
                static_cast<unsigned long long>(done_counters.wrong_multiplicity),
                static_cast<unsigned long long>(done_counters.pinned_slot),
                static_cast<unsigned long long>(done_counters.reducible),
                static_cast<unsigned long long>(done_counters.wrong_locus),
                static_cast<unsigned long long>(done_counters.below_threshold));
    std::printf("  survivors %zu -> %s\n", records.size(), surv_path.string().c_str());
    for (const json& r : records)
      std::printf("    index %llu  N1=%lld  %s\n",
                  static_cast<unsigned long long>(r.at("index").get<uint64_t>()),
                  r.at("n1").get<long long>(), r.at("weil_factored").get<std::string>().c_str());
  }
  return 0;
}

int cmd_search(const SearchOpts& o) {
  const FieldTower& tw = tower();
  if (o.full) {
    int worst = 0;
    for (const ConfigPattern& pat : all_patterns()) {
      const OrbitTable& tab = cached_orbit_table(tw, pat);
      for (const OrbitEntry& e : tab.orbits) {
        const std::string display = pattern_tag(pat) +
                                    (e.subclass.empty() ? "" : "-" + e.subclass) + " #" +
                                    std::to_string(e.index);
        std::printf("=== %s ===\n", display.c_str());
        const int rc = run_one_search(display, e.ref, o);
        worst = std::max(worst, rc);
        if (rc == 3) return 3;  // interrupted: stop the sweep, it resumes here
      }
    }
    return worst;
  }
  if (o.pattern.empty()) throw std::invalid_argument("--pattern is required (or use --full)");
  const ConfigPattern pat = parse_pattern(o.pattern);
  ConfigPattern plain = pat;
  plain.subclass.clear();
  const OrbitTable& tab = cached_orbit_table(tw, plain);
  const OrbitEntry& e = select_orbit(tab, pat.subclass, o.orbit);
  const std::string display = pattern_tag(plain) +
                              (e.subclass.empty() ? "" : "-" + e.subclass) + " #" +
                              std::to_string(e.index);
  return run_one_search(display, e.ref, o);
}

// ------------------------------------------------------------------ verify

struct VerifyOpts {
  std::string form, file, pattern;
  int orbit = 0;
  long long expect_n1 = -1;
  std::string expect_weil;
  bool json_out = false;
};

SingularConfig discover_config(const FieldTower& tw, const TernaryForm& f) {
  const SingularLocus loc = singular_locus(tw, f);
  if (loc.off_tower_weight > 0)
    throw std::runtime_error("singular points exist beyond the supported field degrees; not a "
                             "prescribed-configuration model");
  if (loc.points.empty())
    throw std::runtime_error("no singular points; a smooth plane sextic has genus 10, not a "
                             "genus-5 non-special model");

  std::vector<ConfigPoint> reps;
  std::set<std::string> seen;
  for (const ProjPoint& p : loc.points) {
    const auto orbit = point_orbit(tw, p);
    const ProjPoint rep = *std::min_element(orbit.begin(), orbit.end(), point_less);
    if (!seen.insert(render_point(tw, rep)).second) continue;
    const int m = multiplicity_at(tw, f, rep);
    if (m != 2 && m != 3)
      throw std::runtime_error("point " + render_point(tw, rep) + " has multiplicity " +
                               std::to_string(m) + "; only double and triple points are handled");
    reps.push_back({rep, m});
  }

  int triples = 0, doubles_degree = 0;
  std::vector<int> double_degs;
  for (const ConfigPoint& cp : reps) {
    if (cp.mult == 3) {
      ++triples;
      if (cp.p.degree() != 1)
        throw std::runtime_error("triple point is not rational; unsupported configuration");
    } else {
      doubles_degree += cp.p.degree();
      double_degs.push_back(cp.p.degree());
    }
  }
  std::sort(double_degs.begin(), double_degs.end());
  std::string tag;
  for (size_t i = 0; i < double_degs.size(); ++i)
    tag += (i ? "," : "") + std::to_string(double_degs[i]);

  SingCase kase;
  if (triples == 0 && doubles_degree == 5) {
    kase = SingCase::I;
  } else if (triples == 1 && doubles_degree == 2) {
    kase = SingCase::II;
  } else {
    throw std::runtime_error("singular configuration (" + std::to_string(triples) +
                             " triple, double-point degree sum " + std::to_string(doubles_degree) +
                             ") is not one of the handled shapes");
  }
  return config_from_orbit_reps(tw, kase, reps, tag, "discovered from the singular locus");
}

int cmd_verify(const VerifyOpts& o) {
  const FieldTower& tw = tower();
  std::string form_str = o.form;
  std::string pattern = o.pattern;
  int orbit = o.orbit;
  long long expect_n1 = o.expect_n1;
  std::string expect_weil = o.expect_weil;
  std::string label;

  if (!o.file.empty()) {
    const json fx = json::parse(read_file(o.file));
    label = fx.value("label", o.file);
    if (form_str.empty()) form_str = fx.at("form").get<std::string>();
    if (pattern.empty()) pattern = fx.value("pattern", "");
    if (orbit == 0) orbit = fx.value("orbit", 0);
    if (fx.contains("expect")) {
      if (expect_n1 < 0) expect_n1 = fx["expect"].value("n1", -1ll);
      if (expect_weil.empty()) expect_weil = fx["expect"].value("weil_factored", "");
    }
  }
  if (form_str.empty()) throw std::invalid_argument("provide a sextic via --form or --file");

  const TernaryForm f = prime_field_form(tw, form_str);

  json rep;
  rep["form"] = render_form(tw, f);
  if (!label.empty()) rep["label"] = label;

  SingularConfig config;
  try {
    if (!pattern.empty() && orbit > 0) {
      const ConfigPattern pat = parse_pattern(pattern);
      ConfigPattern plain = pat;
      plain.subclass.clear();
      config = select_orbit(cached_orbit_table(tw, plain), pat.subclass, orbit).ref;
    } else {
      config = discover_config(tw, f);
    }
  } catch (const std::runtime_error& e) {
    rep["non_special"] = false;
    rep["reason"] = e.what();
    if (o.json_out)
      std::printf("%s\n", rep.dump(2).c_str());
    else
      std::printf("FAIL %s: %s\n", label.empty() ? "curve" : label.c_str(), e.what());
    return 1;
  }

  rep["case"] = config.kase == SingCase::I ? "I" : "II";
  rep["pattern"] = config.orbit_pattern;

  const NonSpecialResult nsr = non_special_check(tw, f, config);
  rep["non_special"] = nsr.ok;
  if (!nsr.ok) {
    rep["reason"] = nsr.reason;
    if (o.json_out)
      std::printf("%s\n", rep.dump(2).c_str());
    else
      std::printf("FAIL %s: %s\n", label.empty() ? "curve" : label.c_str(), nsr.reason.c_str());
    return 1;
  }

  json pts = json::array();
  for (const ConfigPoint& cp : config_orbit_reps(tw, config)) {
    const SingularPointReport pr = analyze_singular_point(tw, f, cp.p);
    json jp;
    jp["point"] = render_point(tw, cp.p);
    jp["degree"] = cp.p.degree();
    jp["mult"] = pr.mult;
    jp["tangent_cone"] = render_binary(tw, pr.tangent_cone);
    jp["resolved_in_one_blowup"] = pr.resolved_in_one_blowup;
    json adj;
    for (const auto& [e, a] : pr.adjustment_table) adj[std::to_string(e)] = a;
    jp["adjustments"] = adj;
    pts.push_back(jp);
  }
  rep["points"] = pts;

  const CountVector counts = count_vector(tw, f, config);
  const WeilPoly w = weil_from_counts(counts);
  rep["counts"] = counts.n;
  rep["weil"] = w.c;
  rep["weil_rendered"] = render_weil(w);
  rep["weil_factored"] = render_weil_factored(w);

  bool ok = true;
  if (expect_n1 >= 0) {
    const bool match = counts.n[0] == expect_n1;
    rep["expect_n1"] = json{{"want", expect_n1}, {"got", counts.n[0]}, {"ok", match}};
    ok = ok && match;
  }
  if (!expect_weil.empty()) {
    const bool match = render_weil_factored(w) == expect_weil;
    rep["expect_weil"] = json{{"want", expect_weil}, {"got", render_weil_factored(w)}, {"ok", match}};
    ok = ok && match;
  }
  rep["ok"] = ok;

  if (o.json_out) {
    std::printf("%s\n", rep.dump(2).c_str());
  } else {
    std::printf("%s %s\n", ok ? "OK  " : "FAIL", label.empty() ? rep["form"].get<std::string>().c_str()
                                                               : label.c_str());
    std::printf("  configuration: case %s, pattern (%s), %zu singular points\n",
                rep["case"].get<std::string>().c_str(), config.orbit_pattern.c_str(),
                config.points.size());
    for (const json& jp : pts)
      std::printf("  point %-14s deg %d  mult %d  tangent cone %-16s one-blow-up %s\n",
                  jp["point"].get<std::string>().c_str(), jp["degree"].get<int>(),
                  jp["mult"].get<int>(), jp["tangent_cone"].get<std::string>().c_str(),
                  jp["resolved_in_one_blowup"].get<bool>() ? "yes" : "NO");
    std::printf("  counts over the degree-2,4,6,8,10 fields: %lld %lld %lld %lld %lld\n",
                counts.n[0], counts.n[1], counts.n[2], counts.n[3], counts.n[4]);
    std::printf("  Weil polynomial: %s\n", render_weil(w).c_str());
    std::printf("                 = %s\n", render_weil_factored(w).c_str());
    if (expect_n1 >= 0)
      std::printf("  expectation N1 == %lld: %s\n", expect_n1,
                  counts.n[0] == expect_n1 ? "ok" : "MISMATCH");
    if (!expect_weil.empty())
      std::printf("  expectation Weil == %s: %s\n", expect_weil.c_str(),
                  render_weil_factored(w) == expect_weil ? "ok" : "MISMATCH");
  }
  return ok ? 0 : 1;
}

// --------------------------------------------------------------- reproduce

struct ReproduceOpts {
  std::string fixtures_dir = "fixtures";
  bool json_out = false;
};

int cmd_reproduce(const ReproduceOpts& o) {
  const FieldTower& tw = tower();
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(o.fixtures_dir))
    if (ent.path().extension() == ".json") files.push_back(ent.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no fixture files in " + o.fixtures_dir);

  json out = json::array();
  bool all_ok = true;
  std::map<std::array<long long, 11>, int> weils_seen;
  std::set<std::string> weils_expected;
  std::vector<std::string> failures;

  for (const fs::path& p : files) {
    const json fx = json::parse(read_file(p));
    const std::string label = fx.value("label", p.filename().string());
    json row;
    row["fixture"] = p.filename().string();
    row["label"] = label;
    try {
      const TernaryForm f = prime_field_form(tw, fx.at("form").get<std::string>());
      SingularConfig config;
      if (fx.contains("pattern") && fx.value("orbit", 0) > 0) {
        const ConfigPattern pat = parse_pattern(fx["pattern"].get<std::string>());
        ConfigPattern plain = pat;
        plain.subclass.clear();
        config = select_orbit(cached_orbit_table(tw, plain), pat.subclass, fx["orbit"].get<int>()).ref;
      } else {
        config = discover_config(tw, f);
      }
      const NonSpecialResult nsr = non_special_check(tw, f, config);
      if (!nsr.ok) throw std::runtime_error(nsr.reason);

      const CountVector counts = count_vector(tw, f, config);
      const WeilPoly w = weil_from_counts(counts);
      row["n1"] = counts.n[0];
      row["weil_factored"] = render_weil_factored(w);
      ++weils_seen[w.c];

      bool ok = true;
      if (fx.contains("expect")) {
        const json& ex = fx["expect"];
        if (ex.contains("n1") && counts.n[0] != ex["n1"].get<long long>()) ok = false;
        if (ex.contains("weil_factored")) {
          weils_expected.insert(ex["weil_factored"].get<std::string>());
          if (render_weil_factored(w) != ex["weil_factored"].get<std::string>()) ok = false;
        }
      }
      row["ok"] = ok;
      if (!ok) failures.push_back(label + " (" + p.filename().string() + ")");
      all_ok = all_ok && ok;
    } catch (const std::exception& e) {
      row["ok"] = false;
      row["error"] = e.what();
      failures.push_back(label + " (" + p.filename().string() + "): " + e.what());
      all_ok = false;
    }
    out.push_back(row);
  }

  const bool distinct_ok =
      weils_expected.empty() || weils_seen.size() == weils_expected.size();
  all_ok = all_ok && distinct_ok;

  if (o.json_out) {
    json r;
    r["curves"] = out;
    r["distinct_weil_polynomials"] = weils_seen.size();
    r["ok"] = all_ok;
    std::printf("%s\n", r.dump(2).c_str());
  } else {
    for (const json& row : out)
      std::printf("%-4s %-42s N1=%-4s %s\n", row["ok"].get<bool>() ? "OK" : "FAIL",
                  row["label"].get<std::string>().c_str(),
                  row.contains("n1") ? std::to_string(row["n1"].get<long long>()).c_str() : "-",
                  row.contains("weil_factored") ? row["weil_factored"].get<std::string>().c_str()
                                                : row.value("error", "").c_str());
    std::printf("%zu curves, %zu distinct Weil polynomials:\n", out.size(), weils_seen.size());
    std::set<std::string> rendered;
    for (const json& row : out)
      if (row.contains("weil_factored")) rendered.insert(row["weil_factored"].get<std::string>());
    for (const std::string& s : rendered) std::printf("  %s\n", s.c_str());
    for (const std::string& s : failures) std::printf("FAILED: %s\n", s.c_str());
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plane-sextic models of non-special genus-5 curves over GF(3): orbit "
               "classification, exhaustive point-count searches, curve verification"};
  app.require_subcommand(1);

  ClassifyOpts co;
  CLI::App* classify = app.add_subcommand(
      "classify", "build the projective orbit tables of singular-point configurations");
  classify->add_option("--pattern", co.patterns,
                       "restrict to these patterns (e.g. 1,1,3 or II-2); default all");
  classify->add_option("--case", co.kase, "restrict to case I or II")
      ->check(CLI::IsMember({"I", "II"}));
  classify->add_option("--out", co.out_dir, "directory for the orbit-table JSON artifacts");
  classify->add_option("--expect", co.expect_file,
                       "JSON file with expected orbit/configuration counts; exit 1 on mismatch");
  classify->add_flag("--json", co.json_out, "machine-readable output");

  SearchOpts so;
  CLI::App* search = app.add_subcommand(
      "search", "enumerate all sextics on a configuration with at least N degree-2 points");
  search->add_option("--pattern", so.pattern, "configuration pattern, e.g. 1,1,1,2-indep");
  search->add_option("--orbit", so.orbit, "orbit index within the pattern (1-based)");
  search->add_option("--N", so.N, "point-count threshold (default 32)");
  search->add_option("--range", so.range, "candidate index sub-range BEGIN:END");
  search->add_option("--workers", so.workers, "worker threads (default: all cores)");
  search->add_option("--checkpoint-dir", so.checkpoint_dir,
                     "checkpoint root (default $GENUS5_CHECKPOINT_DIR or ./checkpoints)");
  search->add_option("--out", so.out_file, "also write the sorted survivor stream here");
  search->add_option("--seed", so.seed, "recorded in the manifest for provenance");
  search->add_flag("--dry-run", so.dry_run, "print the task shape without iterating");
  search->add_flag("--force", so.force, "redo a completed run / discard a stale checkpoint");
  search->add_flag("--json", so.json_out, "machine-readable output");
  search->add_flag("--full", so.full, "sweep every orbit of every pattern (long)");

  VerifyOpts vo;
  CLI::App* verify = app.add_subcommand(
      "verify", "full report for one sextic: singular points, counts, Weil polynomial");
  verify->add_option("--form", vo.form, "the sextic, e.g. \"x^4*y^2 + 2*y^3*z^3\"");
  verify->add_option("--file", vo.file, "fixture JSON with form/pattern/orbit/expectations");
  verify->add_option("--pattern", vo.pattern,
                     "expected configuration pattern (otherwise discovered from the locus)");
  verify->add_option("--orbit", vo.orbit, "orbit index for --pattern");
  verify->add_option("--expect-n1", vo.expect_n1, "fail unless the degree-2 count equals this");
  verify->add_option("--expect-weil", vo.expect_weil,
                     "fail unless the factored Weil polynomial equals this string");
  verify->add_flag("--json", vo.json_out, "machine-readable output");

  ReproduceOpts ro;
  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "verify every shipped fixture curve and summarize the Weil classes");
  reproduce->add_option("--fixtures", ro.fixtures_dir, "fixture directory (default ./fixtures)");
  reproduce->add_flag("--json", ro.json_out, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return cmd_classify(co);
    if (search->parsed()) return cmd_search(so);
    if (verify->parsed()) return cmd_verify(vo);
    if (reproduce->parsed()) return cmd_reproduce(ro);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
