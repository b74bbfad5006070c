#ifndef LEETOR_CLI_HPP
#define LEETOR_CLI_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "leetor/cache.hpp"
#include "leetor/crossing_maps.hpp"
#include "leetor/invariants.hpp"
#include "leetor/knot_table.hpp"
#include "leetor/random_diagram.hpp"
#include "leetor/report.hpp"

namespace leetor::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kSizeCap = 3,
  kMultiComponent = 4,
  kViolation = 5,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedPd:
    case ErrorKind::EdgeCountViolation:
    case ErrorKind::InconsistentOrientation:
    case ErrorKind::NonPlanar:
    case ErrorKind::UnknownKnot:
      return kParseError;
    case ErrorKind::SizeLimitExceeded:
      return kSizeCap;
    case ErrorKind::MultiComponent:
      return kMultiComponent;
    case ErrorKind::Io:
      return kFailure;
    default:
      return kViolation;
  }
}

/// Options shared by every subcommand that reads a single diagram.
struct InputOptions {
  std::string pd;
  std::string name;
  bool unknot = false;
  bool random = false;
  std::uint64_t seed = 1;
  int random_crossings = 8;
  std::string table_path;
  int max_crossings = 16;
  bool corrupt_signs = false;
  bool json = false;
  std::string cache_dir;
};

struct ResolvedInput {
  std::string name;
  Diagram diagram;
  std::optional<int> unknotting_number;
};

struct Environment {
  std::ostream& out;
  std::ostream& err;
  std::string bundled_table;
};

inline std::vector<TableEntry> read_table(const std::string& path, const Environment& env) {
  if (path.empty()) return load_table_text(env.bundled_table);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read table " + path);
  return load_table(in);
}

inline ResolvedInput resolve_input(const InputOptions& o, const Environment& env) {
  const int chosen = static_cast<int>(!o.pd.empty()) + static_cast<int>(!o.name.empty()) +
                     static_cast<int>(o.unknot) + static_cast<int>(o.random);
  if (chosen != 1) throw Error(ErrorKind::MalformedPd, "give exactly one of --pd, --name, --unknot, --random");
  if (o.unknot) return {"unknot", Diagram::unknot(), 0};
  if (!o.pd.empty()) return {"pd", parse_pd(o.pd), std::nullopt};
  if (o.random) {
    std::mt19937_64 rng(o.seed);
    return {"random-" + std::to_string(o.seed), random_knot_diagram(rng, o.random_crossings), std::nullopt};
  }
  const auto table = read_table(o.table_path, env);
  const TableEntry* e = find_entry(table, o.name);
  if (!e) throw Error(ErrorKind::UnknownKnot, "no knot named " + o.name + " in the table");
  return {e->name, entry_diagram(*e), e->unknotting_number};
}

inline std::optional<ReportCache> open_cache(const InputOptions& o) {
  std::string dir = o.cache_dir;
  if (dir.empty())
    if (const char* env = std::getenv("LEETOR_CACHE")) dir = env;
  if (dir.empty()) return std::nullopt;
  return ReportCache(dir);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json pages_json(const GradedModule& lee, const CubeComplex& lee_cx, int pages, bool& agrees) {
  Json out = Json::array();
  agrees = true;
  for (int n = 1; n <= pages; ++n) {
    const BigradedDims closed = page_dims(lee, n);
    const BigradedDims oracle = filtered_page_oracle(lee_cx, n);
    Json page;
    page["n"] = n;
    page["dims"] = dims_json(closed);
    page["oracle_agrees"] = closed == oracle;
    if (closed != oracle) {
      page["oracle_dims"] = dims_json(oracle);
      agrees = false;
    }
    out.push_back(page);
  }
  return out;
}

inline void add_input_options(CLI::App* sub, InputOptions& o) {
  sub->add_option("--pd", o.pd, "PD code, e.g. \"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]\"");
  sub->add_option("--name", o.name, "knot name from the table");
  sub->add_flag("--unknot", o.unknot, "the crossingless unknot");
  sub->add_flag("--random", o.random, "a seeded random braid-closure knot diagram");
  sub->add_option("--seed", o.seed, "seed for --random");
  sub->add_option("--crossings", o.random_crossings, "crossing bound for --random")->check(CLI::Range(3, 30));
  sub->add_option("--table", o.table_path, "table for --name (default: bundled)");
  sub->add_option("--max-crossings", o.max_crossings, "refuse diagrams with more crossings")->check(CLI::Range(0, 30));
  sub->add_flag("--corrupt-signs", o.corrupt_signs, "drop cube signs (negative control)");
  sub->add_flag("--json", o.json, "JSON output");
  sub->add_option("--cache-dir", o.cache_dir, "report cache directory (or LEETOR_CACHE)");
}

inline BuildOptions build_options(const InputOptions& o) { return BuildOptions{o.max_crossings, o.corrupt_signs}; }

inline void require_d_squared(const CubeComplex& cx) {
  const auto sq = verify_d_squared(cx);
  if (!sq.ok)
    throw Error(ErrorKind::IdentityFailed, "d^2 != 0 on " + sq.failure->generator + " (square at crossings " +
                                               std::to_string(sq.failure->first_crossing + 1) + "," +
                                               std::to_string(sq.failure->second_crossing + 1) + ")");
}

inline int cmd_compute(const InputOptions& o, const std::string& theory, int pages, const Environment& env) {
  const ResolvedInput in = resolve_input(o, env);
  const BuildOptions build = build_options(o);
  if (!in.diagram.is_knot())
    throw Error(ErrorKind::MultiComponent, "diagram has " + std::to_string(in.diagram.component_count()) + " components");
  if (in.diagram.crossing_count() > o.max_crossings)
    throw Error(ErrorKind::SizeLimitExceeded, std::to_string(in.diagram.crossing_count()) +
                                                  " crossings exceeds the cap of " + std::to_string(o.max_crossings));

  const std::string pd_key = in.diagram.crossing_count() == 0 ? "unknot" : in.diagram.to_pd();
  std::string kind = theory.empty() ? "report" : "homology-" + theory;
  if (pages > 0) kind += "-pages" + std::to_string(pages);
  if (o.corrupt_signs) kind += "-corrupt";
  kind += o.json ? "-json" : "-text";
  kind += "|" + in.name + "|" + (in.unknotting_number ? std::to_string(*in.unknotting_number) : "-");
  auto cache = open_cache(o);
  const std::string key = ReportCache::key(pd_key, kind);
  if (cache)
    if (auto hit = cache->get(key)) {
      env.out << *hit;
      return kOk;
    }

  std::string text;
  bool pages_agree = true;
  if (!theory.empty()) {
    const Theory th = theory == "kh" ? Theory::Khovanov : Theory::Lee;
    const CubeComplex cx = build_complex(in.diagram, th, build);
    require_d_squared(cx);
    const HomologyResult h = compute_homology(cx, {false});
    Json j = homology_json(h.module, th);
    if (pages > 0 && th == Theory::Lee) j["pages"] = pages_json(h.module, cx, pages, pages_agree);
    if (o.json) {
      text = dump(j);
    } else {
      std::ostringstream s;
      if (th == Theory::Khovanov) {
        s << "Kh:";
        for (const auto& [g, d] : dimensions(h.module)) s << " (" << g.first << "," << g.second << ")x" << d;
      } else {
        s << "Lee free:";
        for (const auto& g : h.module.free_gradings()) s << " (" << g.first << "," << g.second << ")";
        s << "\nLee torsion:";
        for (const auto& e : h.module.torsion_list()) s << " (" << e[0] << "," << e[1] << ") t^" << e[2];
      }
      s << "\n";
      text = s.str();
    }
  } else {
    const KnotAnalysis a = analyze_knot(in.diagram, in.name, in.unknotting_number, {build, 1});
    Json j = to_json(a.report);
    if (pages > 0) {
      const CubeComplex cx = build_complex(in.diagram, Theory::Lee, build);
      j["pages"] = pages_json(a.lee, cx, pages, pages_agree);
    }
    text = o.json ? dump(j) : to_text(a.report);
    if (!o.json && pages > 0) {
      for (const auto& page : j["pages"]) {
        text += "  E_" + std::to_string(page["n"].get<int>()) + ":";
        for (const auto& e : page["dims"]) {
          text += " (" + std::to_string(e[0].get<int>()) + "," + std::to_string(e[1].get<int>()) + ")";
          if (e[2].get<int>() != 1) text += "x" + std::to_string(e[2].get<int>());
        }
        text += "\n";
      }
    }
  }
  if (!pages_agree) {
    env.out << text;
    env.err << "error: closed-form pages disagree with the filtered computation\n";
    return kViolation;
  }
  if (cache) cache->put(key, text);
  env.out << text;
  return kOk;
}

inline int cmd_pages(const InputOptions& o, int pages, const Environment& env) {
  const ResolvedInput in = resolve_input(o, env);
  const CubeComplex cx = build_complex(in.diagram, Theory::Lee, build_options(o));
  require_d_squared(cx);
  const HomologyResult h = compute_homology(cx, {false});
  bool agrees = true;
  Json j;
  j["name"] = in.name;
  j["pd"] = in.diagram.crossing_count() == 0 ? "" : in.diagram.to_pd();
  j["collapse_page"] = collapse_page(h.module);
  j["pages"] = pages_json(h.module, cx, pages, agrees);
  j["oracle_agrees"] = agrees;
  if (o.json) {
    env.out << dump(j);
  } else {
    env.out << in.name << ": collapse page " << collapse_page(h.module) << "\n";
    for (const auto& page : j["pages"]) {
      env.out << "  E_" << page["n"].get<int>() << (page["oracle_agrees"].get<bool>() ? "" : " [oracle disagrees]") << ":";
      for (const auto& e : page["dims"]) {
        env.out << " (" << e[0].get<int>() << "," << e[1].get<int>() << ")";
        if (e[2].get<int>() != 1) env.out << "x" << e[2].get<int>();
      }
      env.out << "\n";
    }
  }
  return agrees ? kOk : kViolation;
}

inline int cmd_verify(const InputOptions& o, int crossing, bool homology_level, const Environment& env) {
  const ResolvedInput in = resolve_input(o, env);
  const BuildOptions build = build_options(o);
  const Diagram& d = in.diagram;
  Json j;
  j["name"] = in.name;
  j["pd"] = d.crossing_count() == 0 ? "" : d.to_pd();
  bool passed = true;
  std::string first_failure;
  {
    const CubeComplex kh = build_complex(d, Theory::Khovanov, build);
    const CubeComplex lee = build_complex(d, Theory::Lee, build);
    Json sq = Json::object();
    for (const auto* cx : {&kh, &lee}) {
      const auto r = verify_d_squared(*cx);
      sq[std::string(to_string(cx->theory()))] = r.ok;
      if (!r.ok && passed) {
        passed = false;
        first_failure = "d_squared_" + std::string(to_string(cx->theory())) + ": " + r.failure->generator +
                        " maps to " + r.failure->residual;
      }
    }
    j["d_squared"] = sq;
  }
  Json suites = Json::array();
  if (passed) {
    std::vector<int> crossings;
    if (crossing > 0) {
      if (crossing > d.crossing_count())
        throw Error(ErrorKind::MalformedPd, "crossing " + std::to_string(crossing) + " out of range");
      crossings.push_back(crossing - 1);
    } else {
      for (int c = 0; c < d.crossing_count(); ++c) crossings.push_back(c);
    }
    for (int c : crossings) {
      const IdentitySuiteReport r = run_identity_suite(d, c, {build, homology_level});
      suites.push_back(identity_suite_json(r));
      if (!r.passed() && passed) {
        passed = false;
        first_failure = "crossing " + std::to_string(c + 1) + " " + r.first_failure()->name + ": " +
                        r.first_failure()->detail;
      }
    }
  }
  j["suites"] = suites;
  j["passed"] = passed;
  if (!passed) j["first_failure"] = first_failure;
  if (o.json) {
    env.out << dump(j);
  } else {
    env.out << in.name << ": " << (passed ? "all identities hold" : "FAILED") << "\n";
    for (const auto& s : suites) {
      env.out << "  crossing " << s["crossing"].get<int>() << " (sign " << s["crossing_sign"].get<int>() << "):";
      for (const auto& c : s["checks"]) env.out << " " << c["name"].get<std::string>() << (c["passed"].get<bool>() ? "=ok" : "=FAIL");
      env.out << "\n";
    }
    if (!passed) env.out << "  first failure: " << first_failure << "\n";
  }
  return passed ? kOk : kViolation;
}

struct TableRow {
  std::string name;
  std::string status = "ok";  // ok | mismatch | violation | error
  std::vector<std::string> problems;
  std::optional<KnotReport> report;
  std::string report_json;  // cached serialized report
  bool cached = false;
  bool knight_candidate = false;
};

inline TableRow process_entry(const TableEntry& e, const BuildOptions& build, const std::optional<ReportCache>& cache) {
  TableRow row;
  row.name = e.name;
  try {
    const Diagram d = entry_diagram(e);
    const std::string kind = "table-report|" + e.name + "|" +
                             (e.unknotting_number ? std::to_string(*e.unknotting_number) : "-");
    const std::string key = ReportCache::key(d.crossing_count() == 0 ? "unknot" : d.to_pd(), kind);
    Json j;
    std::optional<std::string> hit;
    if (cache) hit = cache->get(key);
    if (hit) {
      row.cached = true;
      j = Json::parse(*hit);
      row.report_json = *hit;
    } else {
      const KnotAnalysis a = analyze_knot(d, e.name, e.unknotting_number, {build, 1});
      row.report = a.report;
      j = to_json(a.report);
      row.report_json = j.dump();
      if (cache) cache->put(key, row.report_json);
    }
    const int s = j["s"].get<int>();
    const int u_x = j["u_X"].get<int>();
    const int u_t = j["u_t"].get<int>();
    const int page = j["collapse_page"].get<int>();
    const bool km = j["knight_move"]["holds"].get<bool>();
    auto mismatch = [&](const std::string& field, int want, int got) {
      row.problems.push_back("expected " + field + " = " + std::to_string(want) + ", computed " + std::to_string(got));
    };
    if (e.expected.s && *e.expected.s != s) mismatch("s", *e.expected.s, s);
    if (e.expected.u_X && *e.expected.u_X != u_x) mismatch("u_X", *e.expected.u_X, u_x);
    if (e.expected.u_t && *e.expected.u_t != u_t) mismatch("u_t", *e.expected.u_t, u_t);
    if (e.expected.collapse_page && *e.expected.collapse_page != page)
      mismatch("collapse_page", *e.expected.collapse_page, page);
    if (e.expected.knight_move && *e.expected.knight_move != km)
      mismatch("knight_move", *e.expected.knight_move ? 1 : 0, km ? 1 : 0);
    if (!row.problems.empty()) row.status = "mismatch";

    std::vector<std::string> violations;
    if (e.unknotting_number) {
      const int u = *e.unknotting_number;
      if (u_x > u) violations.push_back("u_X = " + std::to_string(u_x) + " exceeds u = " + std::to_string(u));
      if (u >= 1 && u <= 2) {
        if (page != 2) violations.push_back("collapse page " + std::to_string(page) + " although u <= 2");
        if (!km) violations.push_back("knight move fails although u <= 2");
      }
      if (u == 0 && (u_x != 0 || page != 1)) violations.push_back("unknot with nontrivial torsion");
    }
    if (u_t >= 2) row.knight_candidate = true;
    if (!violations.empty()) {
      row.status = "violation";
      row.problems.insert(row.problems.end(), violations.begin(), violations.end());
    }
  } catch (const Error& err) {
    row.status = err.kind() == ErrorKind::BoundViolation ? "violation" : "error";
    row.problems.push_back(err.what());
  }
  return row;
}

inline int cmd_table(const std::string& path, const InputOptions& o, int jobs, const Environment& env) {
  const auto table = read_table(path, env);
  const BuildOptions build = build_options(o);
  const auto cache = open_cache(o);
  std::vector<TableRow> rows(table.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < table.size(); i = next++) rows[i] = process_entry(table[i], build, cache);
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(table.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int ok = 0, mismatches = 0, violations = 0, errors = 0;
  for (const auto& r : rows) {
    if (r.status == "ok") ++ok;
    else if (r.status == "mismatch") ++mismatches;
    else if (r.status == "violation") ++violations;
    else ++errors;
  }
  if (o.json) {
    Json j;
    Json entries = Json::array();
    for (const auto& r : rows) {
      Json e;
      e["name"] = r.name;
      e["status"] = r.status;
      if (!r.problems.empty()) e["problems"] = r.problems;
      if (!r.report_json.empty()) e["report"] = Json::parse(r.report_json);
      if (r.knight_candidate) e["knight_move_candidate"] = true;
      entries.push_back(e);
    }
    j["entries"] = entries;
    j["summary"] = Json{{"entries", rows.size()}, {"ok", ok}, {"mismatches", mismatches},
                        {"violations", violations}, {"errors", errors}};
    env.out << dump(j);
  } else {
    for (const auto& r : rows) {
      env.out << r.name << ": " << r.status;
      if (!r.report_json.empty()) {
        const Json rep = Json::parse(r.report_json);
        env.out << " (s=" << rep["s"].get<int>() << " u_X=" << rep["u_X"].get<int>()
                << " page=" << rep["collapse_page"].get<int>()
                << " knight=" << (rep["knight_move"]["holds"].get<bool>() ? "yes" : "no") << ")";
      }
      env.out << "\n";
      for (const auto& p : r.problems) env.out << "  " << p << "\n";
      if (r.knight_candidate) env.out << "  u_t >= 2: knight move counterexample candidate\n";
    }
    env.out << "summary: " << rows.size() << " entries, " << ok << " ok, " << mismatches << " mismatches, "
            << violations << " violations, " << errors << " errors\n";
  }
  for (const auto& r : rows)
    if (r.knight_candidate) env.err << "note: " << r.name << " has u_t >= 2\n";
  if (mismatches + violations > 0) return kViolation;
  if (errors > 0) return kFailure;
  return kOk;
}

/// Runs the command line; argv[0] is the program name.
inline int run(const std::vector<std::string>& args, const Environment& env) {
  CLI::App app{"Khovanov and Lee homology of knot diagrams, torsion invariants and crossing-change checks"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  InputOptions o;
  std::string theory;
  int pages = 0;
  int crossing = 0;
  bool no_homology = false;
  std::string table_path;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  CLI::App* compute = app.add_subcommand("compute", "full report for one knot");
  add_input_options(compute, o);
  compute->add_option("--theory", theory, "print only this theory's homology")->check(CLI::IsMember({"kh", "lee"}));
  compute->add_option("--pages", pages, "also emit spectral sequence pages 1..N")->check(CLI::Range(1, 64));

  CLI::App* table = app.add_subcommand("table", "batch run over a JSON-lines knot table");
  table->add_option("path", table_path, "table file (default: bundled table)");
  table->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  table->add_option("--max-crossings", o.max_crossings, "refuse diagrams with more crossings");
  table->add_flag("--json", o.json, "JSON output");
  table->add_option("--cache-dir", o.cache_dir, "report cache directory (or LEETOR_CACHE)");

  CLI::App* verify = app.add_subcommand("verify", "crossing-change identity suite");
  add_input_options(verify, o);
  verify->add_option("--crossing", crossing, "1-based crossing (default: all)")->check(CLI::PositiveNumber);
  verify->add_flag("--chain-only", no_homology, "skip the homology-level check");

  CLI::App* pages_cmd = app.add_subcommand("pages", "Lee spectral sequence pages");
  add_input_options(pages_cmd, o);
  int page_count = 4;
  pages_cmd->add_option("--pages", page_count, "number of pages")->check(CLI::Range(1, 64));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, env.out, env.err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (compute->parsed()) return cmd_compute(o, theory, pages, env);
    if (table->parsed()) return cmd_table(table_path, o, jobs, env);
    if (verify->parsed()) return cmd_verify(o, crossing, !no_homology, env);
    if (pages_cmd->parsed()) return cmd_pages(o, page_count, env);
  } catch (const Error& e) {
    env.err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    env.err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace leetor::cli

#endif  // LEETOR_CLI_HPP
