#ifndef AJSCC_EXPERIMENTS_HPP
#define AJSCC_EXPERIMENTS_HPP

// SDR-vs-CSNR Monte-Carlo sweeps and deterministic transfer curves.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ajscc/channel.hpp"
#include "ajscc/circuit.hpp"
#include "ajscc/errors.hpp"
#include "ajscc/io.hpp"
#include "ajscc/mapping.hpp"

namespace ajscc {

enum class EncoderKind { ideal, circuit };
enum class InputDistribution { uniform, fixed, grid };

/// Equal-weight SDR of the two [0,1]-normalized sources, in dB.
/// Returns +inf when both errors vanish.
inline double compute_sdr(double mse_t_norm, double mse_h_norm) {
  if (!(mse_t_norm >= 0.0 && mse_h_norm >= 0.0)) throw ParameterError("MSE values must be >= 0");
  const double mean = 0.5 * (mse_t_norm + mse_h_norm);
  if (mean == 0.0) return std::numeric_limits<double>::infinity();
  return -10.0 * std::log10(mean);
}

/// Encoder front end plus the mapping the receiver decodes against.
///
/// The circuit saturates each finished level at saturation_voltage, so its
/// effective connector length is saturation_voltage - v_r.
class Transmitter {
 public:
  Transmitter(EncoderKind kind, const MappingParams& params, const CircuitConfig& config)
      : kind_(kind), params_(params), decode_params_(params) {
    params.validate();
    if (kind == EncoderKind::circuit) {
      const double connector = config.saturation_voltage - params.v_r;
      if (connector < 0.0) throw ParameterError("saturation_voltage below v_r cannot be decoded");
      decode_params_.connector_len = connector;
      circuit_.emplace(params, config);
    }
  }

  const MappingParams& params() const { return params_; }
  const MappingParams& decode_params() const { return decode_params_; }

  double encode(const SensorReading& r) const {
    if (circuit_) return circuit_->encode(r);
    return ajscc::encode(remove_offset(r, params_), params_).s;
  }

  DecodedReading decode(double s) const { return ajscc::decode(s, decode_params_); }

 private:
  EncoderKind kind_;
  MappingParams params_;
  MappingParams decode_params_;
  std::optional<CircuitModel> circuit_;
};

struct SweepSpec {
  std::vector<double> csnr_points;
  int trials_per_point = 10000;
  InputDistribution input = InputDistribution::uniform;
  SensorReading fixed_input{2.5, 2.3};  // raw volts, used by InputDistribution::fixed
  MappingParams params;
  CircuitConfig config;
  EncoderKind encoder = EncoderKind::ideal;
  std::uint64_t seed = 1;
  int sensors = 1;  // independent FDMA channels, one run each

  void validate() const {
    params.validate();
    config.validate();
    if (trials_per_point < 1) throw ParameterError("trials_per_point must be >= 1");
    if (sensors < 1) throw ParameterError("sensors must be >= 1");
    if (csnr_points.empty()) throw ParameterError("csnr list must not be empty");
    for (std::size_t i = 0; i < csnr_points.size(); ++i) {
      const double c = csnr_points[i];
      if (std::isnan(c) || c == -std::numeric_limits<double>::infinity())
        throw ParameterError("csnr points must be finite or +inf");
      if (i > 0 && !(c > csnr_points[i - 1])) throw ParameterError("csnr points must be strictly increasing");
    }
    if (input == InputDistribution::fixed) check_reading(fixed_input, params);
  }
};

struct SweepRecord {
  int sensor_id = 1;
  double csnr_db = 0.0;
  double sdr_db = 0.0;
  double mse_t_norm = 0.0;
  double mse_h_norm = 0.0;
  long long trials = 0;
  double level_error_rate = 0.0;  // decoded level differs from the transmitted one
  double gross_error_rate = 0.0;  // |v_h0_hat - v_h0| > delta_h
};

namespace detail {

inline Rng point_rng(std::uint64_t seed, int sensor, std::size_t point, int stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(sensor), static_cast<std::uint32_t>(point),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

inline std::vector<SensorReading> draw_inputs(const SweepSpec& spec, Rng& rng) {
  const MappingParams& p = spec.params;
  const auto n = static_cast<std::size_t>(spec.trials_per_point);
  std::vector<SensorReading> out;
  out.reserve(n);
  switch (spec.input) {
    case InputDistribution::uniform: {
      std::uniform_real_distribution<double> ut(0.0, p.t_span());
      std::uniform_real_distribution<double> uh(0.0, p.h_span());
      for (std::size_t i = 0; i < n; ++i) {
        const double t0 = ut(rng);
        const double h0 = uh(rng);
        out.push_back({std::min(p.t_offset + t0, p.t_max_raw), std::min(p.h_offset + h0, p.h_max_raw)});
      }
      break;
    }
    case InputDistribution::fixed:
      out.assign(n, spec.fixed_input);
      break;
    case InputDistribution::grid: {
      // Cell centers of a side x side lattice, row by row.
      const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (std::size_t i = 0; i < n; ++i) {
        const double ft = (static_cast<double>(i % side) + 0.5) / static_cast<double>(side);
        const double fh = (static_cast<double>(i / side) + 0.5) / static_cast<double>(side);
        out.push_back({p.t_offset + ft * p.t_span(), p.h_offset + fh * p.h_span()});
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

/// One record per (sensor, CSNR point), ordered by sensor then CSNR.
///
/// Each point draws its inputs and its noise from generators seeded by
/// (seed, sensor, point index), so records do not depend on evaluation order.
inline std::vector<SweepRecord> run_sdr_vs_csnr(const SweepSpec& spec) {
  spec.validate();
  const Transmitter tx(spec.encoder, spec.params, spec.config);
  const MappingParams& p = spec.params;
  const double t_span = p.t_span();
  const double h_span = p.h_span();

  std::vector<SweepRecord> records;
  records.reserve(spec.csnr_points.size() * static_cast<std::size_t>(spec.sensors));
  for (int sensor = 1; sensor <= spec.sensors; ++sensor) {
    for (std::size_t k = 0; k < spec.csnr_points.size(); ++k) {
      Rng input_rng = detail::point_rng(spec.seed, sensor, k, 0);
      const auto inputs = detail::draw_inputs(spec, input_rng);

      std::vector<double> sent;
      sent.reserve(inputs.size());
      for (const auto& r : inputs) sent.push_back(tx.encode(r));

      const double power = measure_signal_power(sent);
      // An all-zero ensemble has no defined CSNR; treat it as noiseless.
      const double sigma = power > 0.0 ? noise_sigma(spec.csnr_points[k], power) : 0.0;
      AwgnChannel channel(sigma, detail::point_rng(spec.seed, sensor, k, 1));

      long double sum_t = 0.0L, sum_h = 0.0L;
      long long level_errors = 0, gross_errors = 0;
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        const NormalizedReading truth = remove_offset(inputs[i], p);
        const DecodedReading est = tx.decode(channel.transmit(sent[i]));
        const double et = (est.v_t0_hat - truth.v_t0) / t_span;
        const double eh = (est.v_h0_hat - truth.v_h0) / h_span;
        sum_t += static_cast<long double>(et) * et;
        sum_h += static_cast<long double>(eh) * eh;
        if (est.level_hat != quantize_level(truth.v_h0, p)) ++level_errors;
        if (std::abs(est.v_h0_hat - truth.v_h0) > p.delta_h) ++gross_errors;
      }

      SweepRecord rec;
      rec.sensor_id = sensor;
      rec.csnr_db = spec.csnr_points[k];
      rec.trials = static_cast<long long>(inputs.size());
      rec.mse_t_norm = static_cast<double>(sum_t / rec.trials);
      rec.mse_h_norm = static_cast<double>(sum_h / rec.trials);
      rec.sdr_db = compute_sdr(rec.mse_t_norm, rec.mse_h_norm);
      rec.level_error_rate = static_cast<double>(level_errors) / static_cast<double>(rec.trials);
      rec.gross_error_rate = static_cast<double>(gross_errors) / static_cast<double>(rec.trials);
      records.push_back(rec);
    }
  }
  return records;
}

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << "sensor_id,csnr_db,sdr_db,mse_t_norm,mse_h_norm,trials\n";
  for (const auto& r : records)
    os << r.sensor_id << ',' << shortest(r.csnr_db) << ',' << shortest(r.sdr_db) << ',' << shortest(r.mse_t_norm)
       << ',' << shortest(r.mse_h_norm) << ',' << r.trials << '\n';
  return os.str();
}

/// One transfer-curve sample, raw sensor volts throughout.
struct CurvePoint {
  double x = 0.0;  // the swept input (v_t or v_h)
  double s = 0.0;
  double v_t_hat = 0.0;
  double v_h_hat = 0.0;
};

namespace detail {

inline CurvePoint curve_point(const Transmitter& tx, double x, const SensorReading& r) {
  const double s = tx.encode(r);
  const SensorReading back = restore_offset(tx.decode(s), tx.decode_params());
  return {x, s, back.v_t, back.v_h};
}

}  // namespace detail

/// Sweep v_t over its raw range at fixed v_h. A one-point grid samples t_offset.
inline std::vector<CurvePoint> sweep_vt_fixed_vh(double v_h, int t_grid, const MappingParams& p,
                                                 const CircuitConfig& c, EncoderKind encoder) {
  if (t_grid < 1) throw ParameterError("t_grid must be >= 1");
  detail::check_range("v_h", v_h, p.h_offset, p.h_max_raw);
  const Transmitter tx(encoder, p, c);
  std::vector<CurvePoint> out;
  for (double vt : linspace(p.t_offset, p.t_max_raw, t_grid)) out.push_back(detail::curve_point(tx, vt, {vt, v_h}));
  return out;
}

inline std::vector<CurvePoint> sweep_vh_fixed_vt(double v_t, int h_grid, const MappingParams& p,
                                                 const CircuitConfig& c, EncoderKind encoder) {
  if (h_grid < 1) throw ParameterError("h_grid must be >= 1");
  detail::check_range("v_t", v_t, p.t_offset, p.t_max_raw);
  const Transmitter tx(encoder, p, c);
  std::vector<CurvePoint> out;
  for (double vh : linspace(p.h_offset, p.h_max_raw, h_grid)) out.push_back(detail::curve_point(tx, vh, {v_t, vh}));
  return out;
}

/// `swept` names the first column: "v_t" or "v_h".
inline std::string curve_csv(const std::vector<CurvePoint>& curve, const std::string& swept) {
  std::ostringstream os;
  os << swept << ",s_volts,v_t_hat,v_h_hat\n";
  for (const auto& pt : curve)
    os << fixed(pt.x) << ',' << fixed(pt.s) << ',' << fixed(pt.v_t_hat) << ',' << fixed(pt.v_h_hat) << '\n';
  return os.str();
}

inline std::string surface_csv(const StageSurface& surf) {
  std::ostringstream os;
  os << "v_t,v_h,output_volts\n";
  for (std::size_t i = 0; i < surf.v_h.size(); ++i)
    for (std::size_t j = 0; j < surf.v_t.size(); ++j)
      os << fixed(surf.v_t[j]) << ',' << fixed(surf.v_h[i]) << ',' << fixed(surf.at(i, j)) << '\n';
  return os.str();
}

/// Number of maximal runs of equal consecutive values.
inline std::size_t count_plateaus(const std::vector<double>& values) {
  if (values.empty()) return 0;
  std::size_t runs = 1;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] != values[i - 1]) ++runs;
  return runs;
}

}  // namespace ajscc

#endif  // AJSCC_EXPERIMENTS_HPP
