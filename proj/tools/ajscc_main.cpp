// ajscc: command-line front end for the rectangular-mapping toolkit.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ajscc/cli.hpp"

namespace {

std::string default_out(const ajscc::RunConfig& cfg, const std::string& out, const char* name) {
  if (!out.empty()) return out;
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ajscc;

  CLI::App app{"Rectangular-mapping AJSCC encoder, circuit model, channel sweeps and BOM estimates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset = "paper";
  std::optional<std::uint64_t> seed;
  std::string out_path;
  app.add_option("--config", config_path, "key=value run configuration applied on top of the preset");
  app.add_option("--preset", preset, "built-in setup: paper (default) or prototype")
      ->check(CLI::IsMember({"paper", "prototype"}));
  app.add_option("--seed", seed, "overrides the configured seed");
  app.add_option("--out", out_path, "output file path");

  double v_t = 0.0, v_h = 0.0;
  auto* encode = app.add_subcommand("encode", "encode one raw (v_t, v_h) reading")->fallthrough();
  encode->add_option("v_t", v_t, "raw temperature voltage")->required();
  encode->add_option("v_h", v_h, "raw humidity voltage")->required();

  std::string s_text;
  auto* decode = app.add_subcommand("decode", "decode one received value s")->fallthrough();
  decode->add_option("s", s_text, "received accumulated-length voltage")->required();

  int stage = 2, t_grid = 51, h_grid = 51;
  auto* surface = app.add_subcommand("surface", "write one stage's output surface as CSV")->fallthrough();
  surface->add_option("--stage", stage, "stage index, 1-based");
  surface->add_option("--t-grid", t_grid, "v_t samples");
  surface->add_option("--h-grid", h_grid, "v_h samples");

  auto* sweep = app.add_subcommand("sweep", "run the SDR-vs-CSNR sweep and write sdr_vs_csnr.csv")->fallthrough();

  std::string axis = "vt";
  double curve_value = 0.0;
  int curve_grid = 101;
  auto* curve = app.add_subcommand("curve", "write a transfer curve (v_t or v_h swept)")->fallthrough();
  curve->add_option("--axis", axis, "vt: sweep v_t at fixed v_h; vh: sweep v_h at fixed v_t")
      ->check(CLI::IsMember({"vt", "vh"}));
  curve->add_option("--fixed", curve_value, "value of the other input, raw volts")->required();
  curve->add_option("--grid", curve_grid, "samples along the swept axis");

  std::string bom_path;
  std::string csv_path;
  auto* power = app.add_subcommand("power", "roll up BOM power and cost")->fallthrough();
  power->add_option("bom", bom_path, "BOM file (name, count, unit_power_w, unit_cost per line); "
                                     "omit to use the --preset BOM");
  power->add_option("--csv", csv_path, "also write the report as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::validation_error;
  }

  return cli::run_guarded(
      [&] {
        if (power->parsed()) {
          const auto bom = bom_path.empty() ? cli::preset_bom(preset) : cli::load_bom(bom_path);
          cli::cmd_power(bom, csv_path, std::cout);
          return;
        }

        RunConfig cfg = RunConfig::paper();
        if (preset == "prototype") {
          cfg.params = MappingParams::prototype();
          cfg.circuit = CircuitConfig::paper(cfg.params);
        }
        if (!config_path.empty()) cfg = load_run_config(config_path, cfg);
        if (seed) {
          cfg.seed = *seed;
          cfg.circuit.seed = *seed;
        }
        cfg.validate();

        if (encode->parsed()) {
          cli::cmd_encode(cfg, v_t, v_h, std::cout);
        } else if (decode->parsed()) {
          double s = 0.0;
          if (!detail::parse_number(s_text, s)) throw InputError("s is not a number: " + s_text);
          cli::cmd_decode(cfg, s, std::cout, std::cerr);
        } else if (surface->parsed()) {
          cli::cmd_surface(cfg, stage, t_grid, h_grid, default_out(cfg, out_path, "stage_surface.csv"), std::cout);
        } else if (sweep->parsed()) {
          cli::cmd_sweep(cfg, default_out(cfg, out_path, "sdr_vs_csnr.csv"), std::cout);
        } else if (curve->parsed()) {
          cli::cmd_curve(cfg, axis, curve_value, curve_grid,
                         default_out(cfg, out_path, axis == "vt" ? "curve_vt.csv" : "curve_vh.csv"), std::cout);
        }
      },
      std::cerr);
}
