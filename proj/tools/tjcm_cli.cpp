// tjcm: time series and verification runs for the two-atom l-photon
// Tavis-Cummings model.
//
//   tjcm scan   --alpha 5 --g 0.5 --l 1 --channels inv1,ey2 --out a.csv
//   tjcm preset fig2 --out fig2.csv
//   tjcm verify --alpha 5 --g 0.5 --l 1 --samples 50
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 resource refusal.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tjcm/csv.hpp"
#include "tjcm/errors.hpp"
#include "tjcm/scan.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kRefused = 3 };

struct ModelFlags {
  double alpha = 5.0;
  double g = 0.5;
  int l = 1;
  double t_max = 25.0;
  int steps = 2500;
  double cutoff_eps = 1e-12;
  std::vector<std::string> channels;
  std::string out;
  unsigned threads = 0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--alpha", f.alpha, "coherent amplitude")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--g", f.g, "coupling ratio lambda2/lambda1")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--l", f.l, "photons per atomic flip")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_grid_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--tmax", f.t_max, "end of the scaled-time grid")->capture_default_str();
  cmd->add_option("--steps", f.steps, "grid points including both ends")->capture_default_str();
  cmd->add_option("--cutoff-eps", f.cutoff_eps, "Fock tail mass tolerance")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();
}

void emit(const tjcm::TimeSeries& ts, const std::string& out) {
  if (out.empty() || out == "-") {
    tjcm::write_csv(std::cout, ts);
  } else {
    tjcm::write_csv(out, ts);
  }
}

tjcm::ScanConfig to_config(const ModelFlags& f) {
  tjcm::ScanConfig cfg{tjcm::ModelParams(f.alpha, f.g, f.l, f.cutoff_eps), f.t_max, f.steps, f.channels, f.out,
                       f.threads};
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom Tavis-Cummings entropy squeezing toolkit"};
  app.require_subcommand(1);

  ModelFlags scan_flags;
  auto* scan = app.add_subcommand("scan", "evaluate channels on a uniform time grid and write CSV");
  add_model_flags(scan, scan_flags);
  add_grid_flags(scan, scan_flags);
  scan->add_option("--channels", scan_flags.channels, "comma-separated channel names")
      ->delimiter(',')
      ->required();
  scan->add_option("--out", scan_flags.out, "output CSV path (stdout if omitted)");

  ModelFlags preset_flags;
  std::string preset_name;
  std::optional<double> preset_tmax;
  std::optional<int> preset_steps;
  std::optional<double> preset_eps;
  std::vector<std::string> preset_channels;
  auto* preset = app.add_subcommand("preset", "reproduce a figure: fig1, fig2, fig3 or fig4");
  preset->add_option("name", preset_name, "preset name")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3", "fig4"}));
  preset->add_option("--tmax", preset_tmax, "override the grid end");
  preset->add_option("--steps", preset_steps, "override the grid size");
  preset->add_option("--cutoff-eps", preset_eps, "override the Fock tail tolerance");
  preset->add_option("--channels", preset_channels, "override the channel set")->delimiter(',');
  preset->add_option("--out", preset_flags.out, "output CSV path (stdout if omitted)");

  ModelFlags verify_flags;
  int samples = 50;
  tjcm::VerifyOptions verify_opts;
  auto* verify = app.add_subcommand("verify", "cross-check against the brute-force RK4 oracle");
  add_model_flags(verify, verify_flags);
  add_grid_flags(verify, verify_flags);
  verify->add_option("--samples", samples, "number of random grid times to check")->capture_default_str();
  verify->add_option("--seed", verify_opts.seed, "sampling seed")->capture_default_str();
  verify->add_option("--dt", verify_opts.dt, "RK4 step (default: min(1e-3, 0.015/||H||))");
  verify->add_option("--max-dim", verify_opts.max_dimension, "largest oracle dimension allowed")->capture_default_str();
  verify->add_flag("--inject-fault", verify_opts.inject_fault, "corrupt one coefficient to exercise the failure path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*scan) {
      emit(tjcm::run_scan(to_config(scan_flags)), scan_flags.out);
      return kOk;
    }
    if (*preset) {
      std::optional<std::vector<std::string>> channels;
      if (!preset_channels.empty()) channels = preset_channels;
      emit(tjcm::run_preset(preset_name, preset_tmax, preset_steps, preset_eps, channels), preset_flags.out);
      return kOk;
    }
    if (*verify) {
      const auto report = tjcm::run_verify(to_config(verify_flags), samples, verify_opts);
      std::printf("samples            %zu\n", report.sample_times.size());
      std::printf("oracle dimension   %zu\n", report.oracle_dimension);
      std::printf("rk4 step           %.3e\n", report.dt);
      std::printf("max deviation      %.3e  (tolerance %.0e)\n", report.max_deviation, tjcm::kVerifyDeviationTolerance);
      std::printf("max EUR violation  %.3e  (tolerance %.0e)\n", report.max_eur_violation, tjcm::kVerifyEurTolerance);
      std::printf("max norm drift     %.3e  (tolerance %.0e)\n", report.max_norm_drift, tjcm::kVerifyNormTolerance);
      if (!report.failure.empty()) std::printf("oracle failure     %s\n", report.failure.c_str());
      std::printf("%s\n", report.pass ? "PASS" : "FAIL");
      return report.pass ? kOk : kVerifyFailed;
    }
  } catch (const tjcm::ResourceRefusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const tjcm::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const tjcm::InvalidParameter& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const tjcm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kUsage;
}
