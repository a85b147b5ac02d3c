#ifndef AJSCC_TESTS_ORACLES_HPP
#define AJSCC_TESTS_ORACLES_HPP

// Reference computations used only by the tests. They walk the curve
// geometrically and never call into the closed-form encoder or decoder.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ajscc/mapping.hpp"

namespace oracle {

/// Arc length where each line begins, accumulated segment by segment.
inline std::vector<double> line_starts(const ajscc::MappingParams& p) {
  std::vector<double> starts;
  double acc = 0.0;
  for (int n = 1; n <= p.num_levels; ++n) {
    starts.push_back(acc);
    acc += p.gain * p.t_span();
    acc += p.connector_len;
  }
  return starts;
}

struct Projection {
  double s = 0.0;
  int level = 1;
  double t = 0.0;
};

/// Every sample of every line is visited; nearest in the plane wins, ties go
/// to the smaller arc length.
inline Projection exhaustive_projection(double v_t0, double v_h0, const ajscc::MappingParams& p, double step) {
  const auto starts = line_starts(p);
  const double t_len = p.t_span();
  Projection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= p.num_levels; ++n) {
    const double h = (n - 1) * p.delta_h;
    for (long long j = 0;; ++j) {
      double t = static_cast<double>(j) * step;
      const bool last = t >= t_len;
      if (last) t = t_len;
      const double along = (n % 2 != 0) ? t : t_len - t;
      const double s = starts[n - 1] + p.gain * along;
      const double d2 = (v_t0 - t) * (v_t0 - t) + (v_h0 - h) * (v_h0 - h);
      if (d2 < best_d2 || (d2 == best_d2 && s < best.s)) {
        best_d2 = d2;
        best = {s, n, t};
      }
      if (last) break;
    }
  }
  return best;
}

/// Point on the horizontal lines whose arc length is nearest to s (ties to
/// the smaller arc length). This is maximum-likelihood decoding of s under
/// symmetric noise, restricted to points the encoder can emit.
inline Projection nearest_arc_point(double s, const ajscc::MappingParams& p, double step) {
  const auto starts = line_starts(p);
  const double t_len = p.t_span();
  Projection best;
  double best_d = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= p.num_levels; ++n) {
    for (long long j = 0;; ++j) {
      double t = static_cast<double>(j) * step;
      const bool last = t >= t_len;
      if (last) t = t_len;
      const double along = (n % 2 != 0) ? t : t_len - t;
      const double a = starts[n - 1] + p.gain * along;
      const double d = std::abs(a - s);
      if (d < best_d || (d == best_d && a < best.s)) {
        best_d = d;
        best = {a, n, t};
      }
      if (last) break;
    }
  }
  return best;
}

/// Level of v = i / 1000 V under half-open regions ((n-1.5)D, (n-0.5)D],
/// with D = delta_milli / 1000 V, evaluated in exact integer arithmetic.
inline int decimal_level(long long i, long long delta_milli, int num_levels) {
  int n = 1;
  while (n < num_levels && 2 * i > (2LL * n - 1) * delta_milli) ++n;
  return n;
}

/// Uniform quantization noise power of a step of width q.
inline double quantization_mse(double q) { return q * q / 12.0; }

}  // namespace oracle

#endif  // AJSCC_TESTS_ORACLES_HPP
