#ifndef AJSCC_RUN_CONFIG_HPP
#define AJSCC_RUN_CONFIG_HPP

// Flat key=value run configuration for the command-line tool.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ajscc/circuit.hpp"
#include "ajscc/errors.hpp"
#include "ajscc/experiments.hpp"
#include "ajscc/mapping.hpp"
#include "ajscc/power_cost.hpp"

namespace ajscc {

struct RunConfig {
  MappingParams params = MappingParams::paper();
  CircuitConfig circuit = CircuitConfig::paper(MappingParams::paper());
  std::vector<double> csnr_db_list{0, 5, 10, 15, 20, 25, 30, 35, 40};
  int trials = 10000;
  std::uint64_t seed = 1;
  EncoderKind encoder = EncoderKind::ideal;
  InputDistribution input = InputDistribution::uniform;
  SensorReading fixed_input{2.5, 2.3};
  int sensors = 3;
  std::string out_dir = ".";

  static RunConfig paper() { return RunConfig{}; }

  SweepSpec sweep_spec() const {
    SweepSpec s;
    s.csnr_points = csnr_db_list;
    s.trials_per_point = trials;
    s.input = input;
    s.fixed_input = fixed_input;
    s.params = params;
    s.config = circuit;
    s.encoder = encoder;
    s.seed = seed;
    s.sensors = sensors;
    return s;
  }

  void validate() const {
    params.validate();
    circuit.validate();
    sweep_spec().validate();
  }
};

namespace detail {

inline double parse_double_value(const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  if (!parse_number(t, v)) throw ParameterError("key '" + key + "': not a number: '" + std::string(t) + "'");
  return v;
}

template <typename Int>
Int parse_int_value(const std::string& key, std::string_view text) {
  Int v{};
  if (!parse_number(trim(text), v)) throw ParameterError("key '" + key + "': not an integer: '" + std::string(trim(text)) + "'");
  return v;
}

}  // namespace detail

/// Applies key=value lines on top of `cfg`.
///
/// Unknown keys are rejected. saturation_voltage follows v_r unless it is set
/// explicitly. All invariants are re-validated at the end.
inline void apply_config(RunConfig& cfg, std::istream& in) {
  std::optional<double> saturation;
  std::optional<std::uint64_t> circuit_seed;
  using Setter = std::function<void(const std::string&, std::string_view)>;
  auto dbl = [](double& field) -> Setter {
    return [&field](const std::string& k, std::string_view v) { field = detail::parse_double_value(k, v); };
  };

  const std::map<std::string, Setter, std::less<>> setters{
      {"delta_h", dbl(cfg.params.delta_h)},
      {"v_r", dbl(cfg.params.v_r)},
      {"num_levels", [&](const std::string& k, std::string_view v) { cfg.params.num_levels = detail::parse_int_value<int>(k, v); }},
      {"gain", dbl(cfg.params.gain)},
      {"connector_len", dbl(cfg.params.connector_len)},
      {"t_offset", dbl(cfg.params.t_offset)},
      {"t_max_raw", dbl(cfg.params.t_max_raw)},
      {"h_offset", dbl(cfg.params.h_offset)},
      {"h_max_raw", dbl(cfg.params.h_max_raw)},
      {"rail_low", dbl(cfg.circuit.rail_low)},
      {"rail_high", dbl(cfg.circuit.rail_high)},
      {"sat_margin", dbl(cfg.circuit.sat_margin)},
      {"saturation_voltage", [&](const std::string& k, std::string_view v) { saturation = detail::parse_double_value(k, v); }},
      {"threshold_tolerance", dbl(cfg.circuit.threshold_tolerance)},
      {"circuit_seed", [&](const std::string& k, std::string_view v) { circuit_seed = detail::parse_int_value<std::uint64_t>(k, v); }},
      {"csnr_db_list",
       [&](const std::string& k, std::string_view v) {
         cfg.csnr_db_list.clear();
         std::size_t start = 0;
         while (start <= v.size()) {
           const auto comma = v.find(',', start);
           const auto item = v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
           cfg.csnr_db_list.push_back(detail::parse_double_value(k, item));
           if (comma == std::string_view::npos) break;
           start = comma + 1;
         }
       }},
      {"trials", [&](const std::string& k, std::string_view v) { cfg.trials = detail::parse_int_value<int>(k, v); }},
      {"seed", [&](const std::string& k, std::string_view v) { cfg.seed = detail::parse_int_value<std::uint64_t>(k, v); }},
      {"sensors", [&](const std::string& k, std::string_view v) { cfg.sensors = detail::parse_int_value<int>(k, v); }},
      {"encoder",
       [&](const std::string& k, std::string_view v) {
         const auto t = detail::trim(v);
         if (t == "ideal") cfg.encoder = EncoderKind::ideal;
         else if (t == "circuit") cfg.encoder = EncoderKind::circuit;
         else throw ParameterError("key '" + k + "': expected ideal or circuit");
       }},
      {"input",
       [&](const std::string& k, std::string_view v) {
         const auto t = detail::trim(v);
         if (t == "uniform") cfg.input = InputDistribution::uniform;
         else if (t == "fixed") cfg.input = InputDistribution::fixed;
         else if (t == "grid") cfg.input = InputDistribution::grid;
         else throw ParameterError("key '" + k + "': expected uniform, fixed or grid");
       }},
      {"fixed_v_t", dbl(cfg.fixed_input.v_t)},
      {"fixed_v_h", dbl(cfg.fixed_input.v_h)},
      {"out_dir", [&](const std::string&, std::string_view v) { cfg.out_dir = std::string(detail::trim(v)); }},
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    if (detail::trim(view).empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError(lineno, "expected key=value");
    const std::string key(detail::trim(view.substr(0, eq)));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ParameterError("unknown config key '" + key + "' (line " + std::to_string(lineno) + ")");
    it->second(key, view.substr(eq + 1));
  }

  cfg.circuit.saturation_voltage = saturation.value_or(cfg.params.v_r);
  if (circuit_seed) cfg.circuit.seed = *circuit_seed;
  cfg.validate();
}

inline RunConfig load_run_config(const std::string& path, RunConfig base = RunConfig::paper()) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  apply_config(base, in);
  return base;
}

}  // namespace ajscc

#endif  // AJSCC_RUN_CONFIG_HPP
