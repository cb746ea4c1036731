#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "maxcover/analysis.hpp"
#include "maxcover/engine.hpp"
#include "maxcover/format.hpp"
#include "maxcover/planner.hpp"

namespace maxcover {

/// Bad flags or malformed input data.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read, or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kFinalCsvHeader = "id,a,b,x,y,stable_round";

struct FinalRow {
  NodeId id = 0;
  LatticeCoord coord{};
  Round stable_round = 0;
};

inline void write_final_csv(std::ostream& os, std::span<const FinalRow> rows, double r) {
  os << kFinalCsvHeader << '\n';
  for (const auto& row : rows) {
    const Point p = to_cartesian(row.coord, r);
    os << row.id << ',' << row.coord.a << ',' << row.coord.b << ',' << fixed6(p.x) << ',' << fixed6(p.y) << ','
       << row.stable_round << '\n';
  }
}

inline std::vector<FinalRow> final_rows(const SimulationResult& result) {
  std::vector<FinalRow> rows;
  rows.reserve(result.final_states.size());
  for (const auto& s : result.final_states)
    rows.push_back({s.id, s.pos, result.stable_rounds[static_cast<std::size_t>(s.id)]});
  return rows;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for " + what + ": '" + s + "'");
  }
}

inline double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for " + what + ": '" + s + "'");
  }
}

inline std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace detail

/// Reads the final-position CSV. Positions come from the exact a,b columns;
/// x,y are ignored.
inline std::vector<FinalRow> read_final_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || detail::strip_cr(line) != kFinalCsvHeader)
    throw ConfigError(std::string("expected CSV header '") + kFinalCsvHeader + "'");
  std::vector<FinalRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 6) throw ConfigError("line " + std::to_string(line_no) + ": expected 6 columns");
    rows.push_back({detail::parse_int(cells[0], "id"),
                    {detail::parse_int(cells[1], "a"), detail::parse_int(cells[2], "b")},
                    detail::parse_int(cells[5], "stable_round")});
  }
  return rows;
}

/// Start positions, one "x,y" per line after an "x,y" header.
inline std::vector<Point> read_starts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || detail::strip_cr(line) != "x,y") throw ConfigError("expected starts header 'x,y'");
  std::vector<Point> out;
  while (std::getline(is, line)) {
    line = detail::strip_cr(line);
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 2) throw ConfigError("starts file: expected 2 columns");
    out.push_back({detail::parse_real(cells[0], "x"), detail::parse_real(cells[1], "y")});
  }
  return out;
}

/// One JSON object per node per round, ordered by (round, id).
inline void write_trajectories_jsonl(std::ostream& os, const SimulationResult& result) {
  if (!result.trajectories) return;
  for (std::size_t k = 0; k < result.trajectories->size(); ++k) {
    for (const auto& s : (*result.trajectories)[k]) {
      nlohmann::ordered_json row;
      row["round"] = k;
      row["id"] = s.id;
      row["a"] = s.pos.a;
      row["b"] = s.pos.b;
      row["status"] = to_string(s.status);
      row["type"] = s.id == 0 ? "none" : to_string(s.node_type);
      row["m_id"] = s.m_id;
      row["heading"] = s.heading.value();
      os << row.dump() << '\n';
    }
  }
}

inline void write_round_report_csv(std::ostream& os, std::span<const RoundReport> reports) {
  os << "k,newly_stable,double_groups,unstable_remaining\n";
  for (const auto& r : reports)
    os << r.k << ',' << r.newly_stable.size() << ',' << r.double_group_positions.size() << ','
       << r.unstable_remaining << '\n';
}

inline nlohmann::ordered_json coords_json(std::span<const LatticeCoord> coords) {
  auto arr = nlohmann::ordered_json::array();
  for (auto c : coords) arr.push_back({c.a, c.b});
  return arr;
}

inline nlohmann::ordered_json to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["passed"] = rep.passed();
  j["node_count"] = rep.node_count;
  j["tiling_ok"] = rep.tiling_ok;
  j["connected"] = rep.connected;
  j["duplicates"] = coords_json(rep.duplicates);
  if (rep.min_pairwise_distance)
    j["min_pairwise_distance"] = *rep.min_pairwise_distance;
  else
    j["min_pairwise_distance"] = nullptr;
  j["holes_found"] = coords_json(rep.holes_found);
  j["interior_vacancies"] = coords_json(rep.interior_vacancies);
  j["coverage_ok"] = rep.coverage_ok;
  j["lemma1_ok"] = rep.lemma1_ok;
  j["lemma2_ok"] = rep.lemma2_ok;
  j["termination_ok"] = rep.termination_ok;
  j["termination_round"] = rep.termination_round;
  j["expected_termination_round"] = rep.expected_termination_round;
  return j;
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

}  // namespace maxcover
