#ifndef LEETOR_KNOT_TABLE_HPP
#define LEETOR_KNOT_TABLE_HPP

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "leetor/diagram.hpp"
#include "leetor/errors.hpp"

namespace leetor {

/// Expected values for regression; absent fields are not compared.
struct ExpectedValues {
  std::optional<int> s;
  std::optional<int> u_X;
  std::optional<int> u_t;
  std::optional<int> collapse_page;
  std::optional<bool> knight_move;
};

/// One JSON line: {"name", "pd", "unknotting_number"?, "expected"?}. An empty
/// pd string stands for the crossingless unknot.
struct TableEntry {
  std::string name;
  std::string pd;
  std::optional<int> unknotting_number;
  ExpectedValues expected;
};

inline TableEntry parse_table_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::MalformedPd, std::string("table line is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("name") || !j.contains("pd"))
    throw Error(ErrorKind::MalformedPd, "table line needs \"name\" and \"pd\"");
  TableEntry e;
  try {
    e.name = j.at("name").get<std::string>();
    e.pd = j.at("pd").get<std::string>();
    if (j.contains("unknotting_number") && !j["unknotting_number"].is_null())
      e.unknotting_number = j["unknotting_number"].get<int>();
    if (j.contains("expected")) {
      const auto& x = j["expected"];
      if (x.contains("s")) e.expected.s = x["s"].get<int>();
      if (x.contains("u_X")) e.expected.u_X = x["u_X"].get<int>();
      if (x.contains("u_t")) e.expected.u_t = x["u_t"].get<int>();
      if (x.contains("collapse_page")) e.expected.collapse_page = x["collapse_page"].get<int>();
      if (x.contains("knight_move")) e.expected.knight_move = x["knight_move"].get<bool>();
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::MalformedPd, std::string("bad table field: ") + ex.what());
  }
  if (e.unknotting_number && *e.unknotting_number < 0)
    throw Error(ErrorKind::MalformedPd, "negative unknotting number for " + e.name);
  return e;
}

/// Reads JSON lines; blank lines and lines starting with '#' are skipped.
inline std::vector<TableEntry> load_table(std::istream& in) {
  std::vector<TableEntry> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(parse_table_line(line));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(number) + ": " + e.message());
    }
  }
  return out;
}

inline std::vector<TableEntry> load_table_text(const std::string& text) {
  std::istringstream in(text);
  return load_table(in);
}

inline Diagram entry_diagram(const TableEntry& e) {
  if (e.pd.find_first_not_of(" \t") == std::string::npos) return Diagram::unknot();
  return parse_pd(e.pd);
}

inline const TableEntry* find_entry(const std::vector<TableEntry>& table, const std::string& name) {
  for (const auto& e : table)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace leetor

#endif  // LEETOR_KNOT_TABLE_HPP
