#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "ajscc/experiments.hpp"
#include "oracles.hpp"

using namespace ajscc;
using Catch::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SweepSpec small_spec() {
  SweepSpec s;
  s.csnr_points = {0, 10, 20, kInf};
  s.trials_per_point = 2000;
  s.params = MappingParams::paper();
  s.config = CircuitConfig::paper(s.params);
  s.seed = 17;
  return s;
}

}  // namespace

TEST_CASE("compute_sdr", "[experiments][sdr]") {
  REQUIRE(compute_sdr(0.01, 0.01) == Approx(20.0).margin(1e-12));
  REQUIRE(compute_sdr(0.01, 0.03) == Approx(16.9897).margin(1e-4));
  REQUIRE(compute_sdr(0.0, 0.0) == kInf);
  REQUIRE(compute_sdr(0.0, 0.02) == Approx(20.0).margin(1e-12));
  REQUIRE_THROWS_AS(compute_sdr(-1e-3, 0.01), ParameterError);
}

TEST_CASE("quantization-only humidity error matches the uniform-noise formula", "[experiments][oracle]") {
  const auto p = MappingParams::paper();
  const double floor = oracle::quantization_mse(p.delta_h / p.h_span());
  REQUIRE(floor == Approx(8.3333e-4).margin(1e-8));

  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> ut(0.0, p.t_span()), uh(0.0, p.h_span());
  long double acc = 0.0L;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const NormalizedReading x{ut(rng), uh(rng)};
    const auto d = decode(encode(x, p).s, p);
    const double e = (d.v_h0_hat - x.v_h0) / p.h_span();
    acc += static_cast<long double>(e) * e;
  }
  REQUIRE(static_cast<double>(acc / n) == Approx(floor).epsilon(0.01));
}

TEST_CASE("run_sdr_vs_csnr basics", "[experiments][sweep]") {
  const auto spec = small_spec();
  const auto recs = run_sdr_vs_csnr(spec);
  REQUIRE(recs.size() == 4);
  for (const auto& r : recs) {
    REQUIRE(r.trials == 2000);
    REQUIRE(r.mse_t_norm >= 0.0);
    REQUIRE(r.mse_h_norm >= 0.0);
    REQUIRE(r.sdr_db == Approx(compute_sdr(r.mse_t_norm, r.mse_h_norm)));
  }
  const auto& clean = recs.back();
  REQUIRE(clean.csnr_db == kInf);
  REQUIRE(clean.mse_t_norm <= 1e-12);
  REQUIRE(clean.mse_h_norm == Approx(8.3333e-4).epsilon(0.1));
  REQUIRE(clean.level_error_rate == 0.0);
  REQUIRE(recs.front().level_error_rate > 0.1);
  REQUIRE(recs.front().gross_error_rate > 0.1);

  SECTION("deterministic per seed") {
    const auto again = run_sdr_vs_csnr(spec);
    REQUIRE(sweep_csv(again) == sweep_csv(recs));
    auto other = spec;
    other.seed = 18;
    REQUIRE(sweep_csv(run_sdr_vs_csnr(other)) != sweep_csv(recs));
  }
}

TEST_CASE("sweep points do not depend on their neighbours", "[experiments][sweep]") {
  auto spec = small_spec();
  const auto full = run_sdr_vs_csnr(spec);
  // Point indices feed the seeds, so drop only trailing points.
  spec.csnr_points = {0, 10};
  const auto head = run_sdr_vs_csnr(spec);
  REQUIRE(head[0].sdr_db == full[0].sdr_db);
  REQUIRE(head[1].sdr_db == full[1].sdr_db);
}

TEST_CASE("three FDMA sensors run independently", "[experiments][sweep]") {
  auto spec = small_spec();
  spec.sensors = 3;
  const auto recs = run_sdr_vs_csnr(spec);
  REQUIRE(recs.size() == 12);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    REQUIRE(recs[i].sensor_id == static_cast<int>(i / 4) + 1);
    REQUIRE(recs[i].csnr_db == spec.csnr_points[i % 4]);
  }
  REQUIRE(recs[0].mse_h_norm != recs[4].mse_h_norm);

  const auto csv = sweep_csv(recs);
  REQUIRE(csv.rfind("sensor_id,csnr_db,sdr_db,mse_t_norm,mse_h_norm,trials\n", 0) == 0);
  REQUIRE(csv.find(",inf,") != std::string::npos);
}

TEST_CASE("input distributions and encoders", "[experiments][sweep]") {
  auto spec = small_spec();
  SECTION("fixed input, noiseless") {
    spec.input = InputDistribution::fixed;
    spec.fixed_input = {2.5, 2.3};
    spec.csnr_points = {kInf};
    const auto r = run_sdr_vs_csnr(spec).front();
    // v_h0 = 1.5 is a level center (level 6), so nothing is lost.
    REQUIRE(r.mse_t_norm <= 1e-24);
    REQUIRE(r.mse_h_norm <= 1e-24);
  }
  SECTION("grid input reaches the quantization floor") {
    spec.input = InputDistribution::grid;
    spec.trials_per_point = 90000;
    spec.csnr_points = {kInf};
    const auto r = run_sdr_vs_csnr(spec).front();
    REQUIRE(r.mse_h_norm == Approx(8.3333e-4).epsilon(0.02));
  }
  SECTION("circuit encoder decodes against its own saturation") {
    spec.encoder = EncoderKind::circuit;
    spec.csnr_points = {kInf};
    const auto r = run_sdr_vs_csnr(spec).front();
    REQUIRE(r.mse_t_norm <= 1e-12);
    REQUIRE(r.mse_h_norm == Approx(8.3333e-4).epsilon(0.1));
  }
  SECTION("invalid specs are rejected before any work") {
    spec.csnr_points = {10, 5};
    REQUIRE_THROWS_AS(run_sdr_vs_csnr(spec), ParameterError);
    spec.csnr_points = {};
    REQUIRE_THROWS_AS(run_sdr_vs_csnr(spec), ParameterError);
    spec.csnr_points = {0};
    spec.trials_per_point = 0;
    REQUIRE_THROWS_AS(run_sdr_vs_csnr(spec), ParameterError);
    spec.trials_per_point = 10;
    spec.input = InputDistribution::fixed;
    spec.fixed_input = {0.0, 0.0};
    REQUIRE_THROWS_AS(run_sdr_vs_csnr(spec), RangeError);
  }
}

TEST_CASE("V_T transfer curve at fixed V_H", "[experiments][curve]") {
  const auto p = MappingParams::paper();
  const auto c = CircuitConfig::paper(p);
  const auto curve = sweep_vt_fixed_vh(1.83, 101, p, c, EncoderKind::ideal);
  REQUIRE(curve.size() == 101);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const double slope = (curve[i].s - curve[i - 1].s) / (curve[i].x - curve[i - 1].x);
    REQUIRE(std::abs(std::abs(slope) - p.gain) <= 1e-9);
  }
  for (const auto& pt : curve) {
    REQUIRE(std::abs(pt.v_t_hat - pt.x) <= 1e-9);
    REQUIRE(pt.v_h_hat == Approx(0.8 + 0.9).margin(1e-12));
  }

  // Level 3 center (odd): s spans [2 * pitch, 2 * pitch + V_R].
  const auto odd = sweep_vt_fixed_vh(0.8 + 0.6, 5, p, c, EncoderKind::ideal);
  REQUIRE(odd.front().s == Approx(1.5).margin(1e-12));
  REQUIRE(odd.back().s == Approx(1.95).margin(1e-12));

  REQUIRE(sweep_vt_fixed_vh(1.83, 1, p, c, EncoderKind::ideal).size() == 1);
  REQUIRE_THROWS_AS(sweep_vt_fixed_vh(4.0, 11, p, c, EncoderKind::ideal), RangeError);
  REQUIRE_THROWS_AS(sweep_vt_fixed_vh(1.83, 0, p, c, EncoderKind::ideal), ParameterError);
}

TEST_CASE("V_H transfer curve at fixed V_T", "[experiments][curve]") {
  const auto p = MappingParams::paper();
  const auto c = CircuitConfig::paper(p);
  const auto curve = sweep_vh_fixed_vt(1.71, 3001, p, c, EncoderKind::ideal);
  std::vector<double> vh_hat, s;
  for (const auto& pt : curve) {
    REQUIRE(std::abs(pt.v_t_hat - 1.71) <= 1e-9);
    vh_hat.push_back(pt.v_h_hat);
    s.push_back(pt.s);
  }
  REQUIRE(count_plateaus(vh_hat) == 11);
  REQUIRE(count_plateaus(s) == 11);

  SECTION("circuit encoder shows the same staircase") {
    const auto circ = sweep_vh_fixed_vt(1.71, 3001, p, c, EncoderKind::circuit);
    std::vector<double> h;
    for (const auto& pt : circ) h.push_back(pt.v_h_hat);
    REQUIRE(count_plateaus(h) == 11);
  }

  SECTION("grid inside one level interval has no variance") {
    auto q = p;
    std::set<double> values;
    for (int i = 0; i <= 20; ++i) {
      const double vh = 0.8 + 0.46 + i * 0.0145;  // inside (0.45, 0.75]
      values.insert(sweep_vt_fixed_vh(vh, 1, q, c, EncoderKind::ideal).front().s);
    }
    REQUIRE(values.size() == 1);
  }
  REQUIRE_THROWS_AS(sweep_vh_fixed_vt(1.0, 11, p, c, EncoderKind::ideal), RangeError);
}

TEST_CASE("count_plateaus", "[experiments]") {
  REQUIRE(count_plateaus({}) == 0);
  REQUIRE(count_plateaus({1.0}) == 1);
  REQUIRE(count_plateaus({1, 1, 2, 2, 2, 3, 1}) == 4);
}
