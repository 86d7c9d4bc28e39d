#pragma once

#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "endlab/config.hpp"
#include "endlab/errors.hpp"

namespace endlab {

inline constexpr const char* kToolName = "endlab";
inline constexpr const char* kToolVersion = "0.1.0";

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;
};

struct AcceptanceCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TruncationMarker {
  std::string stage;
  std::string message;
  std::optional<int> largest_feasible;
};

struct RunReport {
  std::string command;
  Json config;  // canonical echo
  std::string config_hash;
  std::uint64_t seed = 0;
  Json results = Json::object();
  std::deque<CsvTable> tables;  // deque: table() references stay valid
  std::vector<AcceptanceCheck> checks;
  std::vector<TruncationMarker> truncation;
  double wall_clock_seconds = 0.0;
  unsigned workers = 1;

  bool truncated() const noexcept { return !truncation.empty(); }
  bool passed() const noexcept {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  void check(std::string name, bool ok, std::string detail = {}) { checks.push_back({std::move(name), ok, std::move(detail)}); }
  CsvTable& table(std::string name, std::vector<std::string> header) {
    tables.push_back({std::move(name), std::move(header), {}});
    return tables.back();
  }
};

inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const Json& config_echo) { return fnv1a_hex(config_echo.dump()); }

// Deterministic payload: everything except wall-clock time and worker count.
inline Json to_json(const RunReport& r) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = r.command;
  j["config_hash"] = r.config_hash;
  j["seed"] = r.seed;
  j["config"] = r.config;
  j["truncated"] = r.truncated();
  Json marks = Json::array();
  for (const auto& t : r.truncation) {
    Json m{{"stage", t.stage}, {"message", t.message}};
    if (t.largest_feasible) m["largest_feasible"] = *t.largest_feasible;
    marks.push_back(std::move(m));
  }
  j["truncation"] = marks;
  j["results"] = r.results;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = r.passed();
  Json tables = Json::array();
  for (const auto& t : r.tables) tables.push_back(t.name);
  j["tables"] = tables;
  return j;
}

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  }
  if (v.is_number()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string to_csv(const CsvTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + t.header[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

inline std::string report_stem(const RunReport& r) { return r.command + "-" + r.config_hash + "-s" + std::to_string(r.seed); }

struct EmitFormats {
  bool json = true;
  bool csv = true;
};

inline EmitFormats parse_formats(std::string_view list) {
  EmitFormats f{false, false};
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto end = std::min(list.find(',', pos), list.size());
    const auto item = list.substr(pos, end - pos);
    if (item == "json")
      f.json = true;
    else if (item == "csv")
      f.csv = true;
    else
      throw ValidationError("--format", "unknown format '" + std::string(item) + "' (expected json, csv)");
    pos = end + 1;
  }
  return f;
}

namespace report_detail {
inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot open " + p.string() + " for writing");
  out << body;
  out.close();
  if (!out) throw Error("write failed for " + p.string());
}
}  // namespace report_detail

// Writes <stem>.json (deterministic payload), <stem>.timing.json and one
// <stem>.<table>.csv per table. Returns the paths written.
inline std::vector<std::filesystem::path> emit_report(const RunReport& r, const std::filesystem::path& dir, EmitFormats formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  const auto stem = report_stem(r);
  std::vector<std::filesystem::path> out;
  if (formats.json) {
    out.push_back(dir / (stem + ".json"));
    report_detail::write_file(out.back(), to_json(r).dump(2) + "\n");
    const Json timing{{"wall_clock_seconds", r.wall_clock_seconds}, {"workers", r.workers}};
    out.push_back(dir / (stem + ".timing.json"));
    report_detail::write_file(out.back(), timing.dump(2) + "\n");
  }
  if (formats.csv)
    for (const auto& t : r.tables) {
      out.push_back(dir / (stem + "." + t.name + ".csv"));
      report_detail::write_file(out.back(), to_csv(t));
    }
  return out;
}

}  // namespace endlab
