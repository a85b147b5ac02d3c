#ifndef AJSCC_MAPPING_HPP
#define AJSCC_MAPPING_HPP

// Ideal rectangular (parallel-line) 2:1 mapping.
//
// The curve is a stack of L horizontal lines in the (v_t0, v_h0) plane, line n
// sitting at v_h0 = (n-1)*delta_h. Odd lines are traversed left to right, even
// lines right to left, and consecutive lines are joined by vertical connectors.
// A point is represented by its accumulated arc length s along the curve,
// measured in output volts: one full line contributes v_r, one connector
// contributes connector_len.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ajscc/errors.hpp"

namespace ajscc {

enum class Parity { odd, even };

inline Parity parity_of(int level) { return (level % 2 != 0) ? Parity::odd : Parity::even; }

inline const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

struct MappingParams {
  double delta_h = 0.3;        // level spacing on the v_h0 axis
  double v_r = 0.45;           // output length of one horizontal line
  int num_levels = 11;
  double gain = 0.2;           // Type-1 VCVS gain, v_t0 -> output volts
  double connector_len = 0.3;  // output length of one vertical connector
  double t_offset = 1.375;
  double t_max_raw = 3.625;
  double h_offset = 0.8;
  double h_max_raw = 3.8;

  /// Sensor setup of the reference design: AD22100 temperature sensor,
  /// HIH4000 humidity sensor, 10% humidity resolution, 1:5 divider.
  static MappingParams paper() { return MappingParams{}; }

  /// Same setup, but each saturated level contributes exactly v_r, as in the
  /// measured circuit (no connector length).
  static MappingParams prototype() {
    MappingParams p;
    p.connector_len = 0.0;
    return p;
  }

  double t_span() const { return t_max_raw - t_offset; }
  double h_span() const { return h_max_raw - h_offset; }
  double pitch() const { return v_r + connector_len; }
  /// Largest v_t0 the decoder can report.
  double t_full_scale() const { return v_r / gain; }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(std::isfinite(v) && v > 0.0)) throw ParameterError(std::string(name) + " must be > 0");
    };
    positive(delta_h, "delta_h");
    positive(v_r, "v_r");
    positive(gain, "gain");
    if (num_levels < 1) throw ParameterError("num_levels must be >= 1");
    if (!(std::isfinite(connector_len) && connector_len >= 0.0))
      throw ParameterError("connector_len must be >= 0");
    for (double v : {t_offset, t_max_raw, h_offset, h_max_raw})
      if (!std::isfinite(v)) throw ParameterError("sensor range endpoints must be finite");
    if (!(t_span() > 0.0)) throw ParameterError("t_max_raw must exceed t_offset");
    if (!(h_span() > 0.0)) throw ParameterError("h_max_raw must exceed h_offset");

    // Parameter consistency is checked to a relative 1e-9: the decimal presets
    // (0.2 * 2.25 vs 0.45, 10 * 0.3 vs 3.8 - 0.8) are not exact in binary.
    constexpr double rel = 1e-9;
    if (std::abs(gain * t_span() - v_r) > rel * v_r)
      throw ParameterError("gain * (t_max_raw - t_offset) must equal v_r");
    if ((num_levels - 1) * delta_h > h_span() * (1.0 + rel))
      throw ParameterError("(num_levels - 1) * delta_h exceeds the humidity span");
  }
};

struct SensorReading {
  double v_t = 0.0;
  double v_h = 0.0;
};

struct NormalizedReading {
  double v_t0 = 0.0;
  double v_h0 = 0.0;
};

struct EncodedValue {
  double s = 0.0;
  int level = 1;
  Parity parity = Parity::odd;
};

struct DecodedReading {
  double v_t0_hat = 0.0;
  double v_h0_hat = 0.0;
  int level_hat = 1;
  bool on_connector = false;
};

namespace detail {

inline void check_range(const char* field, double v, double lo, double hi) {
  if (!(v >= lo && v <= hi)) throw RangeError(field, v, lo, hi);
}

}  // namespace detail

/// Upper edge of level k's region, (k - 0.5) * delta_h.
///
/// Regions are closed on top. When the product is not representable the
/// threshold is rounded up, so a value that is the nearest double to the
/// decimal midpoint still belongs to the lower level.
inline double level_threshold(int k, double delta_h) {
  const double half_index = static_cast<double>(k) - 0.5;
  double t = half_index * delta_h;
  if (std::fma(half_index, delta_h, -t) > 0.0) t = std::nextafter(t, std::numeric_limits<double>::infinity());
  return t;
}

inline void check_reading(const SensorReading& r, const MappingParams& p) {
  detail::check_range("v_t", r.v_t, p.t_offset, p.t_max_raw);
  detail::check_range("v_h", r.v_h, p.h_offset, p.h_max_raw);
}

inline void check_normalized(const NormalizedReading& n, const MappingParams& p) {
  detail::check_range("v_t0", n.v_t0, 0.0, p.t_span());
  detail::check_range("v_h0", n.v_h0, 0.0, p.h_span());
}

inline NormalizedReading remove_offset(const SensorReading& r, const MappingParams& p) {
  check_reading(r, p);
  return {r.v_t - p.t_offset, r.v_h - p.h_offset};
}

/// Level whose line is nearest in v_h0; midpoints go to the lower level.
inline int quantize_level(double v_h0, const MappingParams& p) {
  detail::check_range("v_h0", v_h0, 0.0, p.h_span());
  const int top = p.num_levels;
  int n = std::clamp(static_cast<int>(std::floor(v_h0 / p.delta_h + 0.5)) + 1, 1, top);
  while (n > 1 && v_h0 <= level_threshold(n - 1, p.delta_h)) --n;
  while (n < top && v_h0 > level_threshold(n, p.delta_h)) ++n;
  return n;
}

inline double s_max(const MappingParams& p) { return (p.num_levels - 1) * p.pitch() + p.v_r; }

inline EncodedValue encode(const NormalizedReading& norm, const MappingParams& p) {
  check_normalized(norm, p);
  const int n = quantize_level(norm.v_h0, p);
  const double x = p.gain * norm.v_t0;
  const double base = (n - 1) * p.pitch();
  const Parity parity = parity_of(n);
  const double s = parity == Parity::odd ? base + x : base + (p.v_r - x);
  return {s, n, parity};
}

struct ProjectionOptions {
  bool include_connectors = false;
};

/// Nearest-point projection onto a sampled copy of the curve.
///
/// Every line is sampled at multiples of grid_step (plus its far endpoint);
/// the sample nearest to the input in the (v_t0, v_h0) plane wins, ties going
/// to the smaller arc length. Arc lengths are accumulated segment by segment
/// along the polyline rather than taken from the closed form used by encode.
inline EncodedValue encode_bruteforce(const NormalizedReading& norm, const MappingParams& p, double grid_step,
                                      ProjectionOptions opts = {}) {
  if (!(std::isfinite(grid_step) && grid_step > 0.0)) throw ParameterError("grid_step must be > 0");
  check_normalized(norm, p);

  const double t_len = p.t_span();
  const double line_len = p.gain * t_len;
  const auto samples = static_cast<long long>(std::floor(t_len / grid_step));

  struct Best {
    double d2 = std::numeric_limits<double>::infinity();
    double s = 0.0;
    int level = 1;
  } best;

  auto consider = [&](double t, double h, double s, int level) {
    const double dt = norm.v_t0 - t;
    const double dh = norm.v_h0 - h;
    const double d2 = dt * dt + dh * dh;
    if (d2 < best.d2 || (d2 == best.d2 && s < best.s)) best = {d2, s, level};
  };

  double line_start = 0.0;  // arc length where the current line begins
  for (int n = 1; n <= p.num_levels; ++n) {
    const double h = (n - 1) * p.delta_h;
    const bool left_to_right = (n % 2 != 0);
    auto arc_at = [&](double t) { return line_start + p.gain * (left_to_right ? t : t_len - t); };

    // Only samples adjacent to v_t0 can be nearest on a horizontal line.
    const auto j0 = static_cast<long long>(std::llround(norm.v_t0 / grid_step));
    for (long long j = std::max(0LL, j0 - 1); j <= std::min(samples, j0 + 1); ++j) {
      const double t = static_cast<double>(j) * grid_step;
      if (t <= t_len) consider(t, h, arc_at(t), n);
    }
    consider(t_len, h, arc_at(t_len), n);

    const double line_end = line_start + line_len;
    if (opts.include_connectors && n < p.num_levels) {
      const double t_edge = left_to_right ? t_len : 0.0;
      const auto h_samples = static_cast<long long>(std::floor(p.delta_h / grid_step));
      for (long long k = 1; k < h_samples; ++k) {
        const double dh = static_cast<double>(k) * grid_step;
        // Interior connector points are credited to the line they leave.
        consider(t_edge, h + dh, line_end + p.connector_len * (dh / p.delta_h), n);
      }
    }
    line_start = line_end + p.connector_len;
  }
  return {best.s, best.level, parity_of(best.level)};
}

/// Nearest point on the arc-length axis.
///
/// Remainders that fall on a connector split at the connector midpoint; the
/// connector sits at the right edge after an odd line and at the left edge
/// after an even line, so v_t0_hat is full scale or zero respectively.
/// Out-of-range s is clamped first since channel noise produces it routinely.
inline DecodedReading decode(double s, const MappingParams& p) {
  if (!std::isfinite(s)) throw InputError("s must be finite");
  const int top = p.num_levels;
  const double gamma = p.pitch();
  s = std::clamp(s, 0.0, s_max(p));

  int m = static_cast<int>(std::floor(s / gamma));
  if (m > 0 && s - m * gamma < 0.0) --m;
  if (s - (m + 1) * gamma >= 0.0) ++m;
  if (m > top - 1) m = top - 1;  // s_max with zero-length connectors
  const double r = s - m * gamma;

  DecodedReading out;
  const double full = p.t_full_scale();
  if (r <= p.v_r) {
    out.level_hat = m + 1;
    out.v_t0_hat = parity_of(out.level_hat) == Parity::odd ? r / p.gain : (p.v_r - r) / p.gain;
  } else {
    out.on_connector = true;
    out.level_hat = (r <= p.v_r + 0.5 * p.connector_len) ? m + 1 : m + 2;
    out.v_t0_hat = parity_of(m + 1) == Parity::odd ? full : 0.0;
  }
  out.level_hat = std::clamp(out.level_hat, 1, top);
  out.v_t0_hat = std::clamp(out.v_t0_hat, 0.0, full);
  out.v_h0_hat = (out.level_hat - 1) * p.delta_h;
  return out;
}

/// Raw sensor volts corresponding to a decoded reading.
inline SensorReading restore_offset(const DecodedReading& d, const MappingParams& p) {
  return {d.v_t0_hat + p.t_offset, d.v_h0_hat + p.h_offset};
}

}  // namespace ajscc

#endif  // AJSCC_MAPPING_HPP
