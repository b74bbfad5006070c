// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "leetor/crossing_maps.hpp"
#include "leetor/invariants.hpp"
#include "leetor/random_diagram.hpp"
#include "oracles/khovanov_oracle.hpp"
#include "test_support.hpp"

using namespace leetor;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

const std::vector<TableEntry>& table() { return testing_support::bundled(); }

// analyses are shared by several criteria
const std::map<std::string, KnotAnalysis>& analyses() {
  static const auto all = [] {
    std::map<std::string, KnotAnalysis> out;
    for (const auto& e : table()) out.emplace(e.name, analyze_knot(entry_diagram(e), e.name, e.unknotting_number));
    return out;
  }();
  return all;
}

BigradedDims oracle_dims(const std::string& pd) {
  BigradedDims out;
  for (const auto& [g, d] : oracle::khovanov(pd)) out[g] = d;
  return out;
}

Outcome d_squared() {
  long long diagrams = 0;
  auto check = [&](const Diagram& d, const std::string& label) -> std::optional<std::string> {
    ++diagrams;
    for (Theory th : {Theory::Khovanov, Theory::Lee})
      if (!verify_d_squared(build_complex(d, th)).ok) return label + " (" + std::string(to_string(th)) + ")";
    return std::nullopt;
  };
  for (const auto& e : table())
    if (auto bad = check(entry_diagram(e), e.name)) return fail(*bad);
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 200; ++i) {
    const Diagram d = random_knot_diagram(rng, 10);
    if (auto bad = check(d, d.to_pd())) return fail(*bad);
  }
  return {true, std::to_string(diagrams) + " diagrams, both theories"};
}

Outcome unknots() {
  for (const char* name : {"0_1", "0_1_twist", "0_1_r2"}) {
    const auto& a = analyses().at(name);
    const std::vector<Bigrading> free{{0, -1}, {0, 1}};
    if (a.lee.free_gradings() != free) return fail(std::string(name) + ": free part");
    if (!a.lee.torsion_list().empty()) return fail(std::string(name) + ": torsion");
    if (a.report.u_X != 0) return fail(std::string(name) + ": u_X");
    if (a.report.collapse_page != 1) return fail(std::string(name) + ": collapse page");
  }
  return {true, "0, 1 and 2 crossing diagrams"};
}

Outcome trefoil() {
  const auto& a = analyses().at("3_1");
  const BigradedDims expected{{{0, 1}, 1}, {{0, 3}, 1}, {{2, 5}, 1}, {{3, 9}, 1}};
  if (oracle_dims(a.report.pd) != expected) return fail("oracle disagrees with the expected groups");
  if (a.kh_dims != expected) return fail("Kh");
  const auto& r = a.report;
  if (r.s != 2 || r.u_X != 1 || r.u_t != 1 || r.collapse_page != 2) return fail("s, u_X, u_t or page");
  if (!r.knight_move.holds) return fail("knight move");
  if (r.knight_move.pawn_pair != std::array<Bigrading, 2>{Bigrading{0, 1}, Bigrading{0, 3}}) return fail("pawn pair");
  return {true, "Kh, s = 2, u_X = u_t = 1, page 2"};
}

Outcome figure_eight() {
  const auto& a = analyses().at("4_1");
  if (oracle_dims(a.report.pd) != a.kh_dims) return fail("Kh differs from the oracle");
  if (a.report.s != 0 || a.report.u_X != 1) return fail("s or u_X");
  if (!a.report.knight_move.holds || a.report.knight_move.knight_pairs.size() != 2) return fail("knight pairs");
  return {true, "s = 0, u_X = 1, two knight pairs"};
}

Outcome uct() {
  // analyze_knot throws on a mismatch; check again explicitly
  for (const auto& [name, a] : analyses())
    if (auto bad = uct_check(a.kh, a.lee)) return fail(name + " degree " + std::to_string(bad->h));
  return {true, std::to_string(analyses().size()) + " knots"};
}

Outcome identity_suite() {
  int crossings = 0;
  for (const auto& e : table()) {
    const Diagram d = entry_diagram(e);
    for (int c = 0; c < d.crossing_count(); ++c) {
      const auto r = run_identity_suite(d, c);
      ++crossings;
      if (!r.passed()) return fail(e.name + " crossing " + std::to_string(c + 1) + ": " + r.first_failure()->name);
      for (const auto& s : r.edge_signs)
        if (s.sign == 0) return fail(e.name + " crossing " + std::to_string(c + 1) + ": g*f* != +-2X");
    }
  }
  return {true, std::to_string(crossings) + " crossings"};
}

Outcome crossing_changes() {
  std::mt19937_64 rng(77);
  int worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Diagram d = random_knot_diagram(rng, 8);
    std::uniform_int_distribution<int> pick(0, d.crossing_count() - 1);
    const auto r = crossing_change_experiment(d, {pick(rng)});
    const int delta = std::abs(r.steps[0].u_x_after - r.steps[0].u_x_before);
    worst = std::max(worst, delta);
    if (delta > 1) return fail(d.to_pd());
  }
  return {true, "100 changes, max |delta u_X| = " + std::to_string(worst)};
}

Outcome pages() {
  for (const auto& e : table()) {
    const auto cx = build_complex(entry_diagram(e), Theory::Lee);
    const auto& lee = analyses().at(e.name).lee;
    for (int n = 1; n <= 4; ++n)
      if (page_dims(lee, n) != filtered_page_oracle(cx, n)) return fail(e.name + " E_" + std::to_string(n));
  }
  return {true, "E_1..E_4 on " + std::to_string(table().size()) + " knots"};
}

Outcome small_unknotting() {
  int checked = 0;
  for (const auto& e : table()) {
    if (!e.unknotting_number || *e.unknotting_number > 2) continue;
    const auto& r = analyses().at(e.name).report;
    ++checked;
    // the unknot collapses at E_1; every nontrivial knot here at E_2
    const int expected = *e.unknotting_number == 0 ? 1 : 2;
    if (r.collapse_page != expected) return fail(e.name + ": page " + std::to_string(r.collapse_page));
    if (!r.knight_move.holds) return fail(e.name + ": knight move");
  }
  return {true, std::to_string(checked) + " knots with u <= 2"};
}

Outcome mirrors() {
  int pairs = 0;
  for (const auto& [name, a] : analyses()) {
    if (name.rfind('m', 0) != 0) continue;
    const auto base = analyses().find(name.substr(1));
    if (base == analyses().end()) return fail(name + " has no partner");
    ++pairs;
    if (a.report.s != -base->second.report.s) return fail(name + ": s");
    if (a.report.u_X != base->second.report.u_X) return fail(name + ": u_X");
  }
  return {pairs > 0, std::to_string(pairs) + " pairs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"d^2 = 0 on the table and 200 random diagrams", d_squared},
      {"unknot diagrams", unknots},
      {"trefoil", trefoil},
      {"figure-eight", figure_eight},
      {"UCT dimension identity", uct},
      {"crossing-change identity suite", identity_suite},
      {"|delta u_X| <= 1 under crossing changes", crossing_changes},
      {"page_dims equals the filtered oracle", pages},
      {"u <= 2 implies collapse by E_2 and knight move", small_unknotting},
      {"mirror consistency", mirrors},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << ". " << criteria[i].first << " (" << o.detail << "; "
         << secs << "s)";
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
