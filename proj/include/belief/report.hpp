#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "belief/error.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/rational.hpp"

namespace belief {

/// A decimal with exactly six fractional digits, held as millionths.
struct Decimal6 {
  std::int64_t millionths = 0;

  static Decimal6 from_double(double x) { return {static_cast<std::int64_t>(std::llround(x * 1e6))}; }
  double to_double() const { return static_cast<double>(millionths) / 1e6; }

  friend bool operator==(const Decimal6&, const Decimal6&) = default;
};

inline std::string to_string(const Decimal6& d) {
  const bool negative = d.millionths < 0;
  const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-d.millionths) : static_cast<std::uint64_t>(d.millionths);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%06llu", negative ? "-" : "", static_cast<unsigned long long>(mag / 1000000),
                static_cast<unsigned long long>(mag % 1000000));
  return buf;
}

inline Decimal6 parse_decimal6(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (!text.empty() && text[0] == '-') {
    negative = true;
    pos = 1;
  }
  const auto dot = text.find('.', pos);
  if (dot == std::string_view::npos || dot == pos || text.size() - dot - 1 != 6)
    throw Error(Errc::SyntaxError, "malformed six-place decimal '" + std::string(text) + "'");
  std::int64_t value = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (i == dot) continue;
    if (text[i] < '0' || text[i] > '9')
      throw Error(Errc::SyntaxError, "malformed six-place decimal '" + std::string(text) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return {negative ? -value : value};
}

using ReportValue = std::variant<Rational, Decimal6, bool, std::int64_t, std::string>;

struct ReportRow {
  std::string key;
  ReportValue value;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportSection {
  std::string name;
  std::vector<ReportRow> rows;

  void add(std::string key, ReportValue value) { rows.push_back({std::move(key), std::move(value)}); }

  friend bool operator==(const ReportSection&, const ReportSection&) = default;
};

/// Structured result of one command. Rationals render exactly as "p/q";
/// decimals render with six places.
struct Report {
  std::string command;
  std::vector<ReportSection> sections;

  ReportSection& section(std::string name) {
    sections.push_back({std::move(name), {}});
    return sections.back();
  }

  /// First row with `key` in section `name`, or nullptr.
  const ReportValue* find(std::string_view name, std::string_view key) const {
    for (const auto& s : sections)
      if (s.name == name)
        for (const auto& r : s.rows)
          if (r.key == key) return &r.value;
    return nullptr;
  }

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { Text, Machine };

namespace detail {

inline std::string_view value_type_name(const ReportValue& v) {
  switch (v.index()) {
    case 0: return "rational";
    case 1: return "decimal";
    case 2: return "bool";
    case 3: return "integer";
    default: return "text";
  }
}

inline std::string render_value(const ReportValue& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>)
          return x ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>)
          return std::to_string(x);
        else if constexpr (std::is_same_v<T, std::string>)
          return x;
        else
          return to_string(x);
      },
      v);
}

}  // namespace detail

inline std::string emit_report(const Report& report, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::string out = "# " + report.command + "\n";
    for (const auto& s : report.sections) {
      out += "[" + s.name + "]\n";
      for (const auto& r : s.rows) out += r.key + " = " + detail::render_value(r.value) + "\n";
    }
    return out;
  }
  nlohmann::ordered_json root;
  root["command"] = report.command;
  auto sections = nlohmann::ordered_json::array();
  for (const auto& s : report.sections) {
    nlohmann::ordered_json section;
    section["name"] = s.name;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : s.rows) {
      nlohmann::ordered_json row;
      row["key"] = r.key;
      row["type"] = detail::value_type_name(r.value);
      row["value"] = detail::render_value(r.value);
      rows.push_back(std::move(row));
    }
    section["rows"] = std::move(rows);
    sections.push_back(std::move(section));
  }
  root["sections"] = std::move(sections);
  return root.dump(2) + "\n";
}

/// Reads a machine-format report back into memory.
inline Report parse_report(std::string_view document) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(document.begin(), document.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SyntaxError, std::string("report: ") + e.what());
  }
  try {
    Report report;
    report.command = root.at("command").get<std::string>();
    for (const auto& s : root.at("sections")) {
      ReportSection& section = report.section(s.at("name").get<std::string>());
      for (const auto& r : s.at("rows")) {
        const auto type = r.at("type").get<std::string>();
        const auto text = r.at("value").get<std::string>();
        ReportValue value;
        if (type == "rational")
          value = parse_rational(text);
        else if (type == "decimal")
          value = parse_decimal6(text);
        else if (type == "bool")
          value = text == "true";
        else if (type == "integer")
          value = static_cast<std::int64_t>(std::stoll(text));
        else if (type == "text")
          value = text;
        else
          throw Error(Errc::SyntaxError, "report: unknown value type '" + type + "'");
        section.add(r.at("key").get<std::string>(), std::move(value));
      }
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::SyntaxError, std::string("report: ") + e.what());
  }
}

// Section builders shared by the command reports.

inline void add_mass_section(Report& report, const MassFunction& m, std::string name = "mass") {
  auto& s = report.section(std::move(name));
  for (const auto& [a, mass] : m.focal()) s.add("m(" + to_string(a) + ")", mass);
}

/// Bel and Pl over every subset for frames of up to `max_dense` labels, over
/// the focal elements otherwise.
inline void add_belief_sections(Report& report, const MassFunction& m, std::size_t max_dense = 12) {
  std::vector<SubsetMask> subsets;
  if (m.frame().size() <= max_dense) {
    subsets = enumerate_subsets(SubsetMask::full(m.frame()));
  } else {
    for (const auto& [a, mass] : m.focal()) subsets.push_back(a);
  }
  auto& bel = report.section("belief");
  for (const auto& a : subsets) bel.add("Bel(" + to_string(a) + ")", belief_of(m, a));
  auto& pl = report.section("plausibility");
  for (const auto& a : subsets) pl.add("Pl(" + to_string(a) + ")", plausibility_of(m, a));
}

}  // namespace belief
