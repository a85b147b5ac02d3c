#ifndef AJSCC_CIRCUIT_HPP
#define AJSCC_CIRCUIT_HPP

// Behavioral model of the staged VCVS encoder circuit: offset-removal
// subtractors, a comparator bank on v_h0, Type-1 (divider) and Type-2
// (subtractor) VCVS blocks, one 3-input analog mux per level, and a summing
// adder. Every op-amp output is hard-clipped to its usable swing.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ajscc/errors.hpp"
#include "ajscc/mapping.hpp"

namespace ajscc {

enum class Region { off, linear, saturated };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::off: return "OFF";
    case Region::linear: return "LINEAR";
    case Region::saturated: return "SATURATED";
  }
  return "?";
}

struct CircuitConfig {
  double rail_low = 0.0;
  double rail_high = 5.0;
  double sat_margin = 0.05;
  double saturation_voltage = 0.45;  // mux "full" input
  double threshold_tolerance = 0.0;  // relative bound on comparator reference error
  std::uint64_t seed = 0;

  /// Single 0/5 V supply with the mux saturating at v_r, as in the built
  /// prototype.
  static CircuitConfig paper(const MappingParams& p) {
    CircuitConfig c;
    c.saturation_voltage = p.v_r;
    return c;
  }

  /// No clipping, exact references, and saturation matching the mapping's
  /// line pitch: reproduces the closed-form encoder.
  static CircuitConfig ideal(const MappingParams& p) {
    CircuitConfig c;
    c.rail_low = -std::numeric_limits<double>::infinity();
    c.rail_high = std::numeric_limits<double>::infinity();
    c.sat_margin = 0.0;
    c.saturation_voltage = p.pitch();
    return c;
  }

  void validate() const {
    if (!(rail_low < rail_high)) throw ParameterError("rail_low must be below rail_high");
    if (!(sat_margin >= 0.0)) throw ParameterError("sat_margin must be >= 0");
    if (!(threshold_tolerance >= 0.0 && threshold_tolerance < 1.0))
      throw ParameterError("threshold_tolerance must lie in [0, 1)");
    if (!std::isfinite(saturation_voltage)) throw ParameterError("saturation_voltage must be finite");
  }

  // The low clip never rises above ground: the op-amps swing to 0 V on a
  // single supply.
  double clip_low() const { return std::min(0.0, rail_low + sat_margin); }
  double clip_high() const { return rail_high - sat_margin; }
  double clip(double v) const { return std::clamp(v, clip_low(), clip_high()); }
};

struct LevelState {
  int level = 1;
  Region region = Region::off;
  double output = 0.0;
};

/// Comparator reference voltages for the whole stack.
///
/// refs[0] = 0 is the lower edge of level 1 (inclusive); refs[k] for
/// k = 1..L is the upper edge of level k. With a nonzero tolerance every
/// nonzero reference is scaled by (1 + u), u uniform in [-tol, tol], drawn
/// from a generator seeded with config.seed.
inline std::vector<double> comparator_references(const MappingParams& p, const CircuitConfig& c) {
  std::vector<double> refs(static_cast<std::size_t>(p.num_levels) + 1, 0.0);
  for (int k = 1; k <= p.num_levels; ++k) refs[k] = level_threshold(k, p.delta_h);
  if (c.threshold_tolerance > 0.0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> u(-c.threshold_tolerance, c.threshold_tolerance);
    for (int k = 1; k <= p.num_levels; ++k) refs[k] *= 1.0 + u(rng);
  }
  return refs;
}

inline Region region_for(int level, double v_h0, const std::vector<double>& refs) {
  const double lo = refs[level - 1];
  const double hi = refs[level];
  const bool above_lo = level == 1 ? v_h0 >= lo : v_h0 > lo;
  if (!above_lo) return Region::off;
  return v_h0 <= hi ? Region::linear : Region::saturated;
}

inline double vcvs_type1(double v_t0, const MappingParams& p, const CircuitConfig& c) {
  return c.clip(p.gain * v_t0);
}

inline double vcvs_type2(double v_t0, const MappingParams& p, const CircuitConfig& c) {
  return c.clip(p.v_r - vcvs_type1(v_t0, p, c));
}

inline double level_output(Region region, double v_t0, Parity parity, const MappingParams& p,
                           const CircuitConfig& c) {
  switch (region) {
    case Region::off: return 0.0;
    case Region::linear: return parity == Parity::odd ? vcvs_type1(v_t0, p, c) : vcvs_type2(v_t0, p, c);
    case Region::saturated: return c.saturation_voltage;
  }
  return 0.0;
}

/// Circuit instance with its comparator references resolved once.
class CircuitModel {
 public:
  CircuitModel(MappingParams params, CircuitConfig config)
      : params_(params), config_(config) {
    params_.validate();
    config_.validate();
    refs_ = comparator_references(params_, config_);
  }

  const MappingParams& params() const { return params_; }
  const CircuitConfig& config() const { return config_; }
  const std::vector<double>& references() const { return refs_; }

  std::vector<Region> regions(double v_h0) const {
    std::vector<Region> out;
    out.reserve(static_cast<std::size_t>(params_.num_levels));
    for (int n = 1; n <= params_.num_levels; ++n) out.push_back(region_for(n, v_h0, refs_));
    return out;
  }

  /// Offset-removal subtractors.
  NormalizedReading front_end(const SensorReading& r) const {
    check_reading(r, params_);
    return {config_.clip(r.v_t - params_.t_offset), config_.clip(r.v_h - params_.h_offset)};
  }

  std::vector<LevelState> levels(const SensorReading& r) const {
    const NormalizedReading n = front_end(r);
    std::vector<LevelState> out;
    out.reserve(static_cast<std::size_t>(params_.num_levels));
    for (int lvl = 1; lvl <= params_.num_levels; ++lvl) {
      const Region reg = region_for(lvl, n.v_h0, refs_);
      out.push_back({lvl, reg, level_output(reg, n.v_t0, parity_of(lvl), params_, config_)});
    }
    return out;
  }

  /// Adder output over all levels.
  double encode(const SensorReading& r) const { return sum_levels(r, 1, params_.num_levels); }

  int stage_count() const { return (params_.num_levels + 1) / 2; }

  /// Adder output of one stage (levels 2*stage-1 and 2*stage; the last stage
  /// of an odd stack has a single level).
  double stage_output(int stage, const SensorReading& r) const {
    if (stage < 1 || stage > stage_count())
      throw ParameterError("stage must lie in [1, " + std::to_string(stage_count()) + "]");
    return sum_levels(r, 2 * stage - 1, std::min(2 * stage, params_.num_levels));
  }

 private:
  double sum_levels(const SensorReading& r, int first, int last) const {
    const NormalizedReading n = front_end(r);
    double sum = 0.0;
    for (int lvl = first; lvl <= last; ++lvl)
      sum += level_output(region_for(lvl, n.v_h0, refs_), n.v_t0, parity_of(lvl), params_, config_);
    return config_.clip(sum);
  }

  MappingParams params_;
  CircuitConfig config_;
  std::vector<double> refs_;
};

inline std::vector<Region> comparator_bank(double v_h0, const MappingParams& p, const CircuitConfig& c) {
  if (!std::isfinite(v_h0)) throw InputError("v_h0 must be finite");
  const auto refs = comparator_references(p, c);
  std::vector<Region> out;
  out.reserve(static_cast<std::size_t>(p.num_levels));
  for (int n = 1; n <= p.num_levels; ++n) out.push_back(region_for(n, v_h0, refs));
  return out;
}

inline double circuit_encode(const SensorReading& r, const MappingParams& p, const CircuitConfig& c) {
  return CircuitModel(p, c).encode(r);
}

/// Sampled output of one stage over the raw sensor ranges; row i is v_h[i].
struct StageSurface {
  int stage = 1;
  std::vector<double> v_t;
  std::vector<double> v_h;
  std::vector<double> output;

  double at(std::size_t h_index, std::size_t t_index) const { return output[h_index * v_t.size() + t_index]; }
};

inline std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  out.back() = hi;
  return out;
}

inline StageSurface stage_surface(int stage, int t_grid, int h_grid, const MappingParams& p, const CircuitConfig& c) {
  if (t_grid < 2 || h_grid < 2) throw ParameterError("surface grids need at least 2 points per axis");
  const CircuitModel model(p, c);
  if (stage < 1 || stage > model.stage_count())
    throw ParameterError("stage must lie in [1, " + std::to_string(model.stage_count()) + "]");

  StageSurface surf;
  surf.stage = stage;
  surf.v_t = linspace(p.t_offset, p.t_max_raw, t_grid);
  surf.v_h = linspace(p.h_offset, p.h_max_raw, h_grid);
  surf.output.reserve(surf.v_t.size() * surf.v_h.size());
  for (double vh : surf.v_h)
    for (double vt : surf.v_t) surf.output.push_back(model.stage_output(stage, {vt, vh}));
  return surf;
}

}  // namespace ajscc

#endif  // AJSCC_CIRCUIT_HPP
