#pragma once

// Sweep tables: grid parsing, ordered parallel evaluation, CSV and JSON I/O.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "gbec/errors.hpp"
#include "gbec/numerics.hpp"

namespace gbec::sweep {

/// "min:max:steps", inclusive, uniform.
struct Grid {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  void validate() const {
    if (!(min < max)) throw DomainError("grid needs min < max");
    if (steps < 2) throw DomainError("grid needs at least 2 steps");
  }

  std::vector<double> points() const {
    validate();
    return numerics::linspace(min, max, steps);
  }

  static Grid parse(const std::string& text) {
    Grid g;
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("grid must look like min:max:steps, got '" + text + "'");
    try {
      std::size_t used = 0;
      g.min = std::stod(parts[0]);
      g.max = std::stod(parts[1]);
      double steps = std::stod(parts[2], &used);
      if (steps != std::floor(steps) || steps > 1e7) throw std::invalid_argument(parts[2]);
      g.steps = static_cast<int>(steps);
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse grid '" + text + "'");
    }
    g.validate();
    return g;
  }

  std::string str() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12g:%.12g:%d", min, max, steps);
    return buf;
  }
};

struct RowFailure {
  double key;
  std::string error;
};

/// First column is the sweep variable. Failed rows keep their key and hold NaN
/// in every other cell.
struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<RowFailure> failures;

  bool ok() const { return failures.empty(); }
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
  return v;
}

/// Comma-separated, header row, LF line endings, 12 significant digits.
inline std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline SweepTable parse_csv(const std::string& text) {
  SweepTable table;
  std::stringstream in(text);
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ls(l);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) throw DomainError("empty CSV");
  table.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw DomainError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(table.header.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    try {
      for (const auto& c : cells) row.push_back(parse_number(c));
    } catch (const std::logic_error&) {
      throw DomainError("CSV line " + std::to_string(lineno) + " has a non-numeric cell");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Exact comparison, with NaN cells equal to each other.
inline bool same_table(const SweepTable& a, const SweepTable& b) {
  if (a.header != b.header || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    if (a.rows[r].size() != b.rows[r].size()) return false;
    for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
      double x = a.rows[r][c], y = b.rows[r][c];
      if (std::isnan(x) && std::isnan(y)) continue;
      if (x != y) return false;
    }
  }
  return true;
}

inline nlohmann::json failures_json(const SweepTable& table) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : table.failures) {
    arr.push_back({{"key", f.key}, {"error", f.error}});
  }
  return arr;
}

/// {"meta": ..., "rows": [{column: value, ...}, ...]}; NaN cells become null.
inline nlohmann::json to_json(const SweepTable& table, const nlohmann::json& meta) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
      if (std::isfinite(row[i])) {
        obj[table.header[i]] = row[i];
      } else {
        obj[table.header[i]] = nullptr;
      }
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::json out = {{"meta", meta}, {"rows", rows}};
  if (!table.failures.empty()) out["failures"] = failures_json(table);
  return out;
}

/// Evaluates fn at every key on up to `jobs` threads. Rows come back in key
/// order; a throwing row is recorded as a failure and filled with NaN.
inline SweepTable run_rows(std::vector<std::string> header, const std::vector<double>& keys,
                           const std::function<std::vector<double>(double)>& fn, int jobs = 1) {
  SweepTable table;
  table.header = std::move(header);
  const std::size_t width = table.header.size();
  table.rows.assign(keys.size(), {});
  std::vector<std::string> errors(keys.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < keys.size(); i = next++) {
      try {
        std::vector<double> values = fn(keys[i]);
        std::vector<double> row;
        row.reserve(width);
        row.push_back(keys[i]);
        row.insert(row.end(), values.begin(), values.end());
        if (row.size() != width) throw Error("row width does not match header");
        table.rows[i] = std::move(row);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        std::vector<double> row(width, std::numeric_limits<double>::quiet_NaN());
        row[0] = keys[i];
        table.rows[i] = std::move(row);
      }
    }
  };

  const int n_threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(keys.size(), 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (!errors[i].empty()) table.failures.push_back({keys[i], errors[i]});
  }
  return table;
}

}  // namespace gbec::sweep
