#pragma once
// Rendering of row documents as markdown, csv or json.

#include "bisym/tables.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace bisym {

enum class Format { Markdown, Csv, Json };

inline Format parse_format(const std::string& s) {
  if (s == "md" || s == "markdown") return Format::Markdown;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw invalid_input("unknown format '" + s + "' (json, csv or md)");
}

struct OutputDoc {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // free text after the rows
};

namespace output_detail {

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

}  // namespace output_detail

inline void render(std::ostream& os, const OutputDoc& d, Format f) {
  switch (f) {
    case Format::Markdown: {
      if (!d.title.empty()) os << "## " << d.title << "\n\n";
      os << "|";
      for (const auto& c : d.columns) os << " " << c << " |";
      os << "\n|";
      for (size_t i = 0; i < d.columns.size(); ++i) os << "---|";
      os << "\n";
      for (const auto& r : d.rows) {
        os << "|";
        for (const auto& c : r) os << " " << output_detail::md_cell(c) << " |";
        os << "\n";
      }
      if (!d.notes.empty()) os << "\n";
      for (const auto& n : d.notes) os << n << "\n";
      break;
    }
    case Format::Csv: {
      for (size_t i = 0; i < d.columns.size(); ++i) os << (i ? "," : "") << output_detail::csv_cell(d.columns[i]);
      os << "\n";
      for (const auto& r : d.rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << output_detail::csv_cell(r[i]);
        os << "\n";
      }
      for (const auto& n : d.notes) os << "# " << n << "\n";
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json j;
      j["title"] = d.title;
      j["rows"] = nlohmann::ordered_json::array();
      for (const auto& r : d.rows) {
        nlohmann::ordered_json o;
        for (size_t i = 0; i < d.columns.size(); ++i) o[d.columns[i]] = r[i];
        j["rows"].push_back(o);
      }
      j["notes"] = d.notes;
      os << j.dump(2) << "\n";
      break;
    }
  }
}

inline OutputDoc to_output(const TableDoc& t, bool with_oracle) {
  OutputDoc d;
  d.title = t.title;
  d.columns = {"label", "params", "quantity", "published", "computed", "printed_eigenvalues"};
  if (with_oracle) d.columns.push_back("oracle");
  d.columns.insert(d.columns.end(), {"status", "note"});
  for (const auto& r : t.rows) {
    std::vector<std::string> row = {r.label, r.params, r.quantity, r.published, r.computed, r.tabulated};
    if (with_oracle) row.push_back(r.oracle);
    row.insert(row.end(), {status_str(r.status), r.note});
    d.rows.push_back(std::move(row));
  }
  int known = t.count(RowStatus::KnownErratum), bad = t.unexplained();
  d.notes.push_back(std::to_string(t.rows.size()) + " rows; " + std::to_string(known) + " known errata; " +
                    std::to_string(bad) + " unexplained");
  return d;
}

}  // namespace bisym
