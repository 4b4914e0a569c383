#include "tjcm/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <string>
#include <thread>

#include "tjcm/errors.hpp"
#include "tjcm/jcm_reference.hpp"
#include "tjcm/observables.hpp"
#include "tjcm/oracle.hpp"
#include "tjcm/reduced_density.hpp"

namespace tjcm {

namespace {

constexpr std::array<std::string_view, 18> kChannels = {
    "inv1", "inv2", "sy1",    "sy2",    "ey1",  "ey2",  "ex1",    "ex2",    "fy1",
    "fy2",  "gamma1", "gamma2", "eur1", "eur2", "jcm_sz", "jcm_sy", "jcm_ey", "harmonic_sy"};

constexpr std::array<std::string_view, 4> kPresets = {"fig1", "fig2", "fig3", "fig4"};

using Row = std::array<double, kChannels.size()>;

std::string channel_list() {
  std::string s;
  for (auto c : kChannels) {
    if (!s.empty()) s += ", ";
    s += c;
  }
  return s;
}

std::size_t channel_index(std::string_view name) {
  const auto it = std::find(kChannels.begin(), kChannels.end(), name);
  if (it == kChannels.end()) {
    throw UsageError("unknown channel '" + std::string(name) + "'; valid channels: " + channel_list());
  }
  return static_cast<std::size_t>(it - kChannels.begin());
}

bool needs_jcm(const std::vector<std::size_t>& idx) {
  return std::any_of(idx.begin(), idx.end(), [](std::size_t i) { return i >= 14; });
}

Row evaluate_row(const Dynamics& dyn, double T, bool with_jcm) {
  const auto [first, second] = dyn.atom_states(T);
  const BlochVector b1 = bloch(first);
  const BlochVector b2 = bloch(second);
  const SqueezeReport r1 = squeeze_report(b1);
  const SqueezeReport r2 = squeeze_report(b2);
  // Order matches kChannels.
  Row row = {b1.sz,   b2.sz,   b1.sy,    b2.sy,    r1.e_y,           r2.e_y,           r1.e_x, r2.e_x, r1.f_y,
             r2.f_y,  r1.gamma, r2.gamma, eur_residual(b1), eur_residual(b2), 0.0, 0.0,    0.0,    0.0};
  if (with_jcm) {
    const BlochVector j = jcm_bloch(dyn.weights(), T);
    row[14] = j.sz;
    row[15] = j.sy;
    row[16] = entropy_squeezing(j, Axis::y);
    row[17] = tjcm_harmonic_sy(dyn.weights(), T);
  }
  return row;
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      const std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);
}

void check_grid(double t_max, int steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw UsageError("t_max must be finite and > 0");
  if (steps < 2) throw UsageError("steps must be >= 2");
}

}  // namespace

const std::vector<double>& TimeSeries::channel(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return values[i];
  throw UsageError("time series has no channel '" + std::string(name) + "'");
}

std::span<const std::string_view> valid_channels() { return kChannels; }

std::vector<double> time_grid(double t_max, int steps) {
  check_grid(t_max, steps);
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);
  grid.back() = t_max;
  return grid;
}

TimeSeries run_scan(const ScanConfig& cfg) {
  check_grid(cfg.t_max, cfg.steps);
  if (cfg.channels.empty()) throw UsageError("no channels requested; valid channels: " + channel_list());
  std::vector<std::size_t> idx;
  for (const auto& name : cfg.channels) idx.push_back(channel_index(name));

  const Dynamics dyn(cfg.params);
  const bool with_jcm = needs_jcm(idx);

  TimeSeries ts;
  ts.grid = time_grid(cfg.t_max, cfg.steps);
  ts.names = cfg.channels;
  ts.values.assign(idx.size(), std::vector<double>(ts.grid.size()));

  parallel_for(ts.grid.size(), cfg.threads, [&](std::size_t i) {
    const Row row = evaluate_row(dyn, ts.grid[i], with_jcm);
    for (std::size_t c = 0; c < idx.size(); ++c) ts.values[c][i] = row[idx[c]];
  });
  return ts;
}

std::span<const std::string_view> preset_names() { return kPresets; }

Preset preset(std::string_view name) {
  const std::vector<std::string> figure_channels = {"inv1", "inv2", "sy1", "sy2",    "ey1",
                                                    "ey2",  "fy1",  "fy2", "gamma1", "gamma2"};
  auto make = [&](double g, int l, std::vector<std::string> channels) {
    ScanConfig cfg{ModelParams(5.0, g, l), 25.0, 2500, std::move(channels), "", 0};
    return Preset{std::string(name), std::move(cfg)};
  };
  if (name == "fig1") return make(0.5, 1, figure_channels);
  if (name == "fig2") return make(0.5, 2, figure_channels);
  if (name == "fig3") return make(0.5, 1, {"gamma1", "gamma2"});
  if (name == "fig4") return make(1.0, 1, {"inv1", "sy1", "ey1", "fy1", "jcm_sz", "jcm_sy", "jcm_ey", "harmonic_sy"});
  throw UsageError("unknown preset '" + std::string(name) + "'; valid presets: fig1, fig2, fig3, fig4");
}

TimeSeries run_preset(std::string_view name, std::optional<double> t_max, std::optional<int> steps,
                      std::optional<double> cutoff_eps, std::optional<std::vector<std::string>> channels) {
  auto apply = [&](ScanConfig cfg) {
    if (t_max) cfg.t_max = *t_max;
    if (steps) cfg.steps = *steps;
    if (cutoff_eps) cfg.params = ModelParams(cfg.params.alpha(), cfg.params.g(), cfg.params.l(), *cutoff_eps);
    if (channels) cfg.channels = *channels;
    return cfg;
  };

  if (name != "fig3") return run_scan(apply(preset(name).config));

  if (channels) throw UsageError("preset fig3 has a fixed channel set");
  ScanConfig one = apply(preset("fig1").config);
  ScanConfig two = apply(preset("fig2").config);
  one.channels = two.channels = {"gamma1", "gamma2"};
  const TimeSeries a = run_scan(one);
  const TimeSeries b = run_scan(two);
  TimeSeries merged;
  merged.grid = a.grid;
  merged.names = {"gamma1_l1", "gamma2_l1", "gamma1_l2", "gamma2_l2"};
  merged.values = {a.values[0], a.values[1], b.values[0], b.values[1]};
  return merged;
}

VerifyReport run_verify(const ScanConfig& cfg, int sample_count, const VerifyOptions& options) {
  if (sample_count < 10) throw UsageError("verify needs at least 10 samples");
  check_grid(cfg.t_max, cfg.steps);
  if (sample_count > cfg.steps) throw UsageError("more samples requested than grid points");

  const Dynamics dyn(cfg.params);
  const int l = cfg.params.l();
  const int n_fock = oracle::required_fock_cutoff(dyn.weights(), l);
  const std::size_t dim = 4 * static_cast<std::size_t>(n_fock + 1);
  if (dim > options.max_dimension) {
    throw ResourceRefusal("oracle dimension " + std::to_string(dim) + " exceeds the bound " +
                          std::to_string(options.max_dimension) + "; lower alpha or raise the bound");
  }

  VerifyReport report;
  report.oracle_dimension = dim;
  const auto grid = time_grid(cfg.t_max, cfg.steps);

  // Distinct grid indices, drawn deterministically.
  std::vector<std::size_t> indices(grid.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  std::mt19937_64 rng(options.seed);
  std::shuffle(indices.begin(), indices.end(), rng);
  indices.resize(static_cast<std::size_t>(sample_count));
  std::sort(indices.begin(), indices.end());
  for (auto i : indices) report.sample_times.push_back(grid[i]);

  // EUR over the whole grid.
  std::vector<double> eur_min(grid.size());
  parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
    const auto [a, b] = dyn.atom_states(grid[i]);
    eur_min[i] = std::min(eur_residual(bloch(a)), eur_residual(bloch(b)));
  });
  for (double r : eur_min) report.max_eur_violation = std::max(report.max_eur_violation, -r);

  const auto h = oracle::build_joint_hamiltonian(l, cfg.params.g(), n_fock);
  report.dt = options.dt > 0.0 ? options.dt : oracle::default_time_step(h);
  std::vector<oracle::Rk4Result> samples;
  try {
    samples = oracle::rk4_sample(h, oracle::initial_state(dyn.weights(), l, n_fock), report.sample_times, report.dt);
  } catch (const StepSizeError& e) {
    report.failure = e.what();
    report.max_norm_drift = kVerifyNormTolerance * 2;
    return report;
  }

  // Fault injection rotates (X1, X4) of the most populated block by a small
  // angle: trace and the purely imaginary coherence survive, the state does not.
  int fault_block = 0;
  for (int n = 0; n <= dyn.weights().n_max(); ++n)
    if (dyn.weights().at(n) > dyn.weights().at(fault_block)) fault_block = n;

  for (const auto& s : samples) {
    auto coeffs = dyn.cache().coefficients_at(s.T);
    if (options.inject_fault) {
      auto& b = coeffs[static_cast<std::size_t>(fault_block)];
      const double c = std::cos(1e-3);
      const double sn = std::sin(1e-3);
      const double x1 = b.x1;
      const double x4 = b.x4;
      b.x1 = c * x1 - sn * x4;
      b.x4 = sn * x1 + c * x4;
    }
    report.max_norm_drift = std::max(report.max_norm_drift, s.norm_drift);
    for (AtomId atom : {AtomId::first, AtomId::second}) {
      const ReducedAtomState analytic = reduced_state(dyn.weights(), coeffs, l, atom);
      const ReducedAtomState brute = oracle::partial_trace_atom(s.psi, atom);
      const double dev = std::max({std::abs(analytic.p_plus - brute.p_plus), std::abs(analytic.p_minus - brute.p_minus),
                                   std::abs(analytic.coh - brute.coh)});
      report.max_deviation = std::max(report.max_deviation, dev);
    }
  }

  report.pass = report.max_deviation < kVerifyDeviationTolerance &&
                report.max_eur_violation <= kVerifyEurTolerance && report.max_norm_drift <= kVerifyNormTolerance;
  return report;
}

}  // namespace tjcm
