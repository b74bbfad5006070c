#ifndef LEETOR_REPORT_HPP
#define LEETOR_REPORT_HPP

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "leetor/crossing_maps.hpp"
#include "leetor/homology.hpp"
#include "leetor/invariants.hpp"

namespace leetor {

using Json = nlohmann::ordered_json;

inline Json bigrading_json(const Bigrading& g) { return Json::array({g.first, g.second}); }

inline Json dims_json(const BigradedDims& dims) {
  Json out = Json::array();
  for (const auto& [g, d] : dims) out.push_back(Json::array({g.first, g.second, d}));
  return out;
}

inline Json knight_move_json(const KnightMove& km) {
  Json out;
  out["holds"] = km.holds;
  out["pawn_pair"] = Json::array({bigrading_json(km.pawn_pair[0]), bigrading_json(km.pawn_pair[1])});
  if (km.holds) {
    Json pairs = Json::array();
    for (const auto& [a, b] : km.knight_pairs) pairs.push_back(Json::array({bigrading_json(a), bigrading_json(b)}));
    out["knight_pairs"] = pairs;
  } else if (km.counterexample) {
    out["counterexample"] = bigrading_json(*km.counterexample);
  }
  return out;
}

inline Json to_json(const KnotReport& r) {
  Json out;
  out["name"] = r.name;
  out["pd"] = r.pd;
  Json kh = Json::array();
  for (const auto& e : r.kh_poincare) kh.push_back(Json::array({e[0], e[1], e[2]}));
  out["kh_poincare"] = kh;
  out["lee_free_gradings"] =
      Json::array({bigrading_json(r.lee_free_gradings[0]), bigrading_json(r.lee_free_gradings[1])});
  Json tors = Json::array();
  for (const auto& e : r.lee_torsion) tors.push_back(Json::array({e[0], e[1], e[2]}));
  out["lee_torsion"] = tors;
  out["s"] = r.s;
  out["u_X"] = r.u_X;
  out["u_t"] = r.u_t;
  out["collapse_page"] = r.collapse_page;
  out["knight_move"] = knight_move_json(r.knight_move);
  if (r.unknotting_number) out["unknotting_number"] = *r.unknotting_number;
  return out;
}

/// {"kh": [[h,q,dim]...], "lee_free": [[h,q]...], "lee_torsion": [[h,q,k]...]}; only
/// the requested theory's fields are filled.
inline Json homology_json(const GradedModule& m, Theory theory) {
  Json out;
  if (theory == Theory::Khovanov) {
    out["kh"] = dims_json(dimensions(m));
    return out;
  }
  Json free = Json::array();
  for (const auto& g : m.free_gradings()) free.push_back(bigrading_json(g));
  out["lee_free"] = free;
  Json tors = Json::array();
  for (const auto& e : m.torsion_list()) tors.push_back(Json::array({e[0], e[1], e[2]}));
  out["lee_torsion"] = tors;
  return out;
}

inline Json identity_suite_json(const IdentitySuiteReport& r) {
  Json out;
  out["pd"] = r.pd;
  out["crossing"] = r.crossing + 1;
  out["crossing_sign"] = r.crossing_sign;
  out["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j;
    j["name"] = c.name;
    j["passed"] = c.passed;
    if (!c.passed) j["detail"] = c.detail;
    checks.push_back(j);
  }
  out["checks"] = checks;
  Json signs = Json::array();
  for (const auto& e : r.edge_signs) signs.push_back(Json::array({e.edge, e.sign}));
  out["edge_signs"] = signs;
  return out;
}

inline std::string to_text(const KnotReport& r) {
  std::ostringstream out;
  out << r.name << (r.pd.empty() ? " (no crossings)" : " " + r.pd) << "\n";
  out << "  Kh:";
  for (const auto& e : r.kh_poincare) {
    out << " (" << e[0] << "," << e[1] << ")";
    if (e[2] != 1) out << "x" << e[2];
  }
  out << "\n  Lee torsion:";
  if (r.lee_torsion.empty()) out << " none";
  for (const auto& e : r.lee_torsion) out << " (" << e[0] << "," << e[1] << ") t^" << e[2];
  out << "\n  s = " << r.s << ", u_X = " << r.u_X << ", u_t = " << r.u_t << ", collapse page = " << r.collapse_page;
  if (r.unknotting_number) out << ", u = " << *r.unknotting_number;
  out << "\n  knight move: " << (r.knight_move.holds ? "holds" : "fails");
  if (!r.knight_move.holds && r.knight_move.counterexample)
    out << " at (" << r.knight_move.counterexample->first << "," << r.knight_move.counterexample->second << ")";
  out << "\n";
  return out.str();
}

}  // namespace leetor

#endif  // LEETOR_REPORT_HPP
