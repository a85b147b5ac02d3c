#ifndef AJSCC_POWER_COST_HPP
#define AJSCC_POWER_COST_HPP

// Bill-of-materials power and cost roll-up.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ajscc/errors.hpp"
#include "ajscc/io.hpp"
#include "ajscc/mapping.hpp"

namespace ajscc {

struct ComponentSpec {
  std::string name;
  long long count = 0;
  double unit_power = 0.0;  // W
  double unit_cost = 0.0;

  void validate() const {
    if (count < 0) throw ParameterError(name + ": count must be >= 0");
    if (!(std::isfinite(unit_power) && unit_power >= 0.0)) throw ParameterError(name + ": unit_power must be >= 0");
    if (!(std::isfinite(unit_cost) && unit_cost >= 0.0)) throw ParameterError(name + ": unit_cost must be >= 0");
  }
};

struct BomLine {
  ComponentSpec component;
  double power = 0.0;
  double cost = 0.0;
};

struct BomReport {
  double total_power = 0.0;
  double total_cost = 0.0;
  std::vector<BomLine> breakdown;
};

inline double estimate_power(std::span<const ComponentSpec> bom) {
  double total = 0.0;
  for (const auto& c : bom) {
    c.validate();
    total += static_cast<double>(c.count) * c.unit_power;
  }
  return total;
}

inline double estimate_cost(std::span<const ComponentSpec> bom) {
  double total = 0.0;
  for (const auto& c : bom) {
    c.validate();
    total += static_cast<double>(c.count) * c.unit_cost;
  }
  return total;
}

inline BomReport make_report(std::span<const ComponentSpec> bom) {
  BomReport r;
  for (const auto& c : bom) {
    c.validate();
    r.breakdown.push_back({c, static_cast<double>(c.count) * c.unit_power, static_cast<double>(c.count) * c.unit_cost});
  }
  r.total_power = estimate_power(bom);
  r.total_cost = estimate_cost(bom);
  return r;
}

inline double supply_power(double current_a, double supply_v) { return current_a * supply_v; }

/// Unit figures for low-power IC replacements of each block.
struct UnitCatalog {
  double opamp_power = 8e-6;
  double comparator_power = 12.7e-9;
  double mux_power = 10e-9;
  double opamp_cost = 0.0;
  double comparator_cost = 0.0;
  double mux_cost = 0.0;
};

/// Component tally for an L-level encoder: one mux per level; op-amps and
/// comparators as L plus a fixed overhead. The overheads (5 and 6) come from
/// the single built design, 16 op-amps and 17 comparators at L = 11, so
/// counts at other L are an extrapolation.
inline std::vector<ComponentSpec> derive_bom(int num_levels, const UnitCatalog& units = {}) {
  if (num_levels < 0) throw ParameterError("num_levels must be >= 0");
  const long long L = num_levels;
  return {
      {"op-amp", L + 5, units.opamp_power, units.opamp_cost},
      {"comparator", L + 6, units.comparator_power, units.comparator_cost},
      {"analog-mux", L, units.mux_power, units.mux_cost},
  };
}

inline std::vector<ComponentSpec> derive_bom(const MappingParams& p, const UnitCatalog& units = {}) {
  p.validate();
  return derive_bom(p.num_levels, units);
}

namespace presets {

/// The 11-level design rebuilt from low-power IC blocks.
inline std::vector<ComponentSpec> low_power_ic() { return derive_bom(11); }

/// The COTS prototype board as measured: about 3 mA from 5 V, about $25.
inline std::vector<ComponentSpec> prototype_board() {
  return {{"cots-baseband-board", 1, supply_power(3e-3, 5.0), 25.0}};
}

}  // namespace presets

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end && !text.empty();
}

}  // namespace detail

/// One component per line: name, count, unit_power_w, unit_cost.
/// Blank lines and '#' comments are ignored.
inline std::vector<ComponentSpec> parse_bom(std::istream& in) {
  std::vector<ComponentSpec> bom;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    if (detail::trim(view).empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      const auto comma = view.find(',', start);
      fields.push_back(view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 4) throw ParseError(lineno, "expected 4 comma-separated fields, got " + std::to_string(fields.size()));

    ComponentSpec c;
    c.name = std::string(detail::trim(fields[0]));
    if (c.name.empty()) throw ParseError(lineno, "empty component name");
    if (!detail::parse_number(fields[1], c.count)) throw ParseError(lineno, "count is not an integer");
    if (!detail::parse_number(fields[2], c.unit_power)) throw ParseError(lineno, "unit_power_w is not a number");
    if (!detail::parse_number(fields[3], c.unit_cost)) throw ParseError(lineno, "unit_cost is not a number");
    try {
      c.validate();
    } catch (const ParameterError& e) {
      throw ParseError(lineno, e.what());
    }
    bom.push_back(std::move(c));
  }
  return bom;
}

inline std::string report_text(const BomReport& r) {
  std::size_t width = 9;
  for (const auto& l : r.breakdown) width = std::max(width, l.component.name.size());
  auto pad = [](std::string s, std::size_t w, bool left) {
    if (s.size() >= w) return s;
    return left ? s + std::string(w - s.size(), ' ') : std::string(w - s.size(), ' ') + s;
  };

  std::ostringstream os;
  os << pad("component", width, true) << "  " << pad("count", 7, false) << "  " << pad("unit_power_w", 13, false)
     << "  " << pad("unit_cost", 10, false) << "  " << pad("power_w", 13, false) << "  " << pad("cost", 10, false)
     << '\n';
  for (const auto& l : r.breakdown)
    os << pad(l.component.name, width, true) << "  " << pad(std::to_string(l.component.count), 7, false) << "  "
       << pad(scientific(l.component.unit_power), 13, false) << "  " << pad(fixed(l.component.unit_cost, 2), 10, false)
       << "  " << pad(scientific(l.power), 13, false) << "  " << pad(fixed(l.cost, 2), 10, false) << '\n';
  os << "total_power_w: " << scientific(r.total_power) << " (" << fixed(r.total_power * 1e6, 4) << " uW)\n";
  os << "total_cost: " << fixed(r.total_cost, 2) << '\n';
  return os.str();
}

inline std::string report_csv(const BomReport& r) {
  std::ostringstream os;
  os << "name,count,unit_power_w,unit_cost,power_w,cost\n";
  for (const auto& l : r.breakdown)
    os << l.component.name << ',' << l.component.count << ',' << shortest(l.component.unit_power) << ','
       << shortest(l.component.unit_cost) << ',' << shortest(l.power) << ',' << shortest(l.cost) << '\n';
  os << "TOTAL,," << ",," << shortest(r.total_power) << ',' << shortest(r.total_cost) << '\n';
  return os.str();
}

}  // namespace ajscc

#endif  // AJSCC_POWER_COST_HPP
