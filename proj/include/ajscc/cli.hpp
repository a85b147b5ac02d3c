#ifndef AJSCC_CLI_HPP
#define AJSCC_CLI_HPP

// Command implementations behind the `ajscc` tool. Each command prints to the
// given streams and throws ajscc::Error subclasses on failure; run_guarded
// maps those onto the process exit codes.

#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include "ajscc/circuit.hpp"
#include "ajscc/errors.hpp"
#include "ajscc/experiments.hpp"
#include "ajscc/io.hpp"
#include "ajscc/mapping.hpp"
#include "ajscc/power_cost.hpp"
#include "ajscc/run_config.hpp"

namespace ajscc::cli {

enum ExitCode : int { ok = 0, internal_error = 1, validation_error = 2, io_error = 3 };

inline int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return ok;
  } catch (const RangeError& e) {
    err << "error: " << e.field() << " out of range: " << e.what() << '\n';
    return validation_error;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return io_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return validation_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
}

inline void cmd_encode(const RunConfig& cfg, double v_t, double v_h, std::ostream& out) {
  const EncodedValue e = encode(remove_offset({v_t, v_h}, cfg.params), cfg.params);
  out << "s=" << fixed(e.s) << '\n' << "level=" << e.level << '\n' << "parity=" << to_string(e.parity) << '\n';
}

inline void cmd_decode(const RunConfig& cfg, double s, std::ostream& out, std::ostream& err) {
  if (!std::isfinite(s)) throw InputError("s must be finite");
  const double top = s_max(cfg.params);
  if (s < 0.0 || s > top)
    err << "warning: s=" << shortest(s) << " outside [0, " << fixed(top) << "], clamped before decoding\n";
  const DecodedReading d = decode(s, cfg.params);
  const SensorReading raw = restore_offset(d, cfg.params);
  out << "v_t_hat=" << fixed(raw.v_t) << '\n'
      << "v_h_hat=" << fixed(raw.v_h) << '\n'
      << "level=" << d.level_hat << '\n'
      << "on_connector=" << (d.on_connector ? "true" : "false") << '\n';
}

inline void cmd_surface(const RunConfig& cfg, int stage, int t_grid, int h_grid, const std::string& out_path,
                        std::ostream& out) {
  const StageSurface surf = stage_surface(stage, t_grid, h_grid, cfg.params, cfg.circuit);
  write_file_atomic(out_path, surface_csv(surf));
  out << "rows=" << surf.output.size() << '\n';
}

inline void cmd_sweep(const RunConfig& cfg, const std::string& out_path, std::ostream& out) {
  const auto records = run_sdr_vs_csnr(cfg.sweep_spec());
  write_file_atomic(out_path, sweep_csv(records));
  out << "records=" << records.size() << '\n';
}

/// Transfer curve: `axis` is "vt" (sweep v_t at fixed v_h) or "vh".
inline void cmd_curve(const RunConfig& cfg, const std::string& axis, double fixed_value, int grid,
                      const std::string& out_path, std::ostream& out) {
  std::vector<CurvePoint> curve;
  if (axis == "vt")
    curve = sweep_vt_fixed_vh(fixed_value, grid, cfg.params, cfg.circuit, cfg.encoder);
  else if (axis == "vh")
    curve = sweep_vh_fixed_vt(fixed_value, grid, cfg.params, cfg.circuit, cfg.encoder);
  else
    throw ParameterError("axis must be vt or vh");
  write_file_atomic(out_path, curve_csv(curve, axis == "vt" ? "v_t" : "v_h"));
  out << "rows=" << curve.size() << '\n';
}

inline std::vector<ComponentSpec> load_bom(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read BOM file " + path);
  return parse_bom(in);
}

inline std::vector<ComponentSpec> preset_bom(const std::string& name) {
  if (name == "paper") return presets::low_power_ic();
  if (name == "prototype") return presets::prototype_board();
  throw ParameterError("unknown BOM preset '" + name + "' (expected paper or prototype)");
}

inline void cmd_power(const std::vector<ComponentSpec>& bom, const std::string& csv_path, std::ostream& out) {
  const BomReport r = make_report(bom);
  out << report_text(r);
  if (!csv_path.empty()) write_file_atomic(csv_path, report_csv(r));
}

}  // namespace ajscc::cli

#endif  // AJSCC_CLI_HPP
