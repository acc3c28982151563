#pragma once

#include <json.hpp>

#include <charconv>
#include <ostream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

// Tabular output shared by the CLI commands: CSV with a mandatory header, or
// JSON {"meta": {...}, "rows": [{column: value}, ...]}.
namespace cdkink::io {

// Shortest representation that parses back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  if (r.ec != std::errc()) return "nan";
  return {buf, r.ptr};
}

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

inline std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  return std::get<std::string>(c);
}

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string s = cell_text(row[i]);
      if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        s = q + "\"";
      }
      os << (i ? "," : "") << s;
    }
    os << '\n';
  }
}

inline void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["meta"] = t.meta;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { rec[t.columns[i]] = v; }, row[i]);
    doc["rows"].push_back(std::move(rec));
  }
  os << doc.dump(2) << '\n';
}

}  // namespace cdkink::io
