#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tjcm/model.hpp"

namespace tjcm {

/// Uniform time grid plus named channels, one value per grid point.
struct TimeSeries {
  std::vector<double> grid;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;

  /// Throws UsageError for an unknown name.
  const std::vector<double>& channel(std::string_view name) const;
  bool operator==(const TimeSeries&) const = default;
};

struct ScanConfig {
  ModelParams params{5.0, 0.5, 1};
  double t_max = 25.0;  ///< units of 1/lambda_1
  int steps = 2500;     ///< grid points, endpoints included
  std::vector<std::string> channels;
  std::string output_path;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Every channel name run_scan understands, in canonical order.
std::span<const std::string_view> valid_channels();

/// T_i = t_max * i / (steps - 1).
std::vector<double> time_grid(double t_max, int steps);

/// Evaluates the requested channels on the grid. Grid points are computed
/// in parallel against one shared eigenblock cache; results land in grid
/// order. Unknown channels or an invalid grid raise UsageError.
TimeSeries run_scan(const ScanConfig& cfg);

struct Preset {
  std::string name;
  ScanConfig config;
};

/// fig1 = (5, 0.5, 1), fig2 = (5, 0.5, 2), fig4 = (5, 1, 1). fig3 is the
/// von Neumann entropy of fig1 and fig2 side by side; see run_preset.
std::span<const std::string_view> preset_names();
Preset preset(std::string_view name);

/// Runs a preset. For fig3 the result merges the gamma channels of the
/// fig1 and fig2 models under the names gamma1_l1, gamma2_l1, gamma1_l2,
/// gamma2_l2.
TimeSeries run_preset(std::string_view name, std::optional<double> t_max = std::nullopt,
                      std::optional<int> steps = std::nullopt, std::optional<double> cutoff_eps = std::nullopt,
                      std::optional<std::vector<std::string>> channels = std::nullopt);

struct VerifyOptions {
  std::uint64_t seed = 20061;
  /// RK4 step; 0 selects oracle::default_time_step.
  double dt = 0.0;
  /// Largest joint-space dimension the oracle may allocate.
  std::size_t max_dimension = 200000;
  /// Corrupts one block coefficient of the analytic path (fault injection).
  bool inject_fault = false;
};

struct VerifyReport {
  std::vector<double> sample_times;
  double max_deviation = 0.0;      ///< analytic vs oracle, entrywise, both atoms
  double max_eur_violation = 0.0;  ///< max(0, -EUR residual) over the whole grid
  double max_norm_drift = 0.0;     ///< RK4 norm drift over the samples
  std::size_t oracle_dimension = 0;
  double dt = 0.0;
  std::string failure;  ///< set when the oracle itself gave up
  bool pass = false;
};

inline constexpr double kVerifyDeviationTolerance = 1e-8;
inline constexpr double kVerifyEurTolerance = 1e-10;
inline constexpr double kVerifyNormTolerance = 1e-7;

/// Cross-checks the analytic pipeline against the RK4 oracle at
/// `sample_count` distinct grid times drawn with a seeded generator.
/// Throws UsageError for sample_count < 10 and ResourceRefusal when the
/// oracle would exceed options.max_dimension.
VerifyReport run_verify(const ScanConfig& cfg, int sample_count, const VerifyOptions& options = {});

}  // namespace tjcm
