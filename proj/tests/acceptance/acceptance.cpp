// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all twelve
//   acceptance --criterion 6   run one (exit 0 on PASS, 1 on FAIL)

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "tjcm/jcm_reference.hpp"
#include "tjcm/model.hpp"
#include "tjcm/observables.hpp"
#include "tjcm/reduced_density.hpp"
#include "tjcm/scan.hpp"

using namespace tjcm;

namespace {

const double kPi = std::numbers::pi;
const double kOptimal = 1.0 - std::numbers::sqrt2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += buf;
  if (!ok) o.detail += " [FAIL]";
  o.pass = o.pass && ok;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double min_where(const TimeSeries& ts, const std::string& ch, double lo, double hi) {
  double m = 1e300;
  for (std::size_t i = 0; i < ts.grid.size(); ++i)
    if (ts.grid[i] > lo && ts.grid[i] <= hi) m = std::min(m, ts.channel(ch)[i]);
  return m;
}

std::size_t nearest(const std::vector<double>& grid, double T) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs(grid[i] - T) < std::abs(grid[best] - T)) best = i;
  return best;
}

TimeSeries scan(double alpha, double g, int l, std::vector<std::string> channels, double t_max = 25.0,
                int steps = 2500) {
  return run_scan(ScanConfig{ModelParams(alpha, g, l), t_max, steps, std::move(channels), "", 0});
}

// Revival-envelope peaks of the inversion: local maxima of |sz - median|
// above 0.1 for T > 1, grouped when closer than 1.0, one time per group.
std::vector<double> revival_peaks(const std::vector<double>& grid, const std::vector<double>& sz) {
  std::vector<double> sorted = sz;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  std::vector<double> dev(sz.size());
  for (std::size_t i = 0; i < sz.size(); ++i) dev[i] = std::abs(sz[i] - median);

  std::vector<double> peaks;
  double group_end = -1e300;
  double group_best = 0.0;
  for (std::size_t i = 1; i + 1 < sz.size(); ++i) {
    const double T = grid[i];
    if (T <= 1.0 || T > grid.back() - 0.5) continue;  // edge maxima are artifacts of the window
    if (!(dev[i] > 0.1 && dev[i] >= dev[i - 1] && dev[i] >= dev[i + 1])) continue;
    if (T - group_end < 1.0 && !peaks.empty()) {
      if (dev[i] > group_best) {
        group_best = dev[i];
        peaks.back() = T;
      }
    } else {
      peaks.push_back(T);
      group_best = dev[i];
    }
    group_end = T;
  }
  return peaks;
}

double mean_spacing(const std::vector<double>& peaks) {
  if (peaks.size() < 2) return 0.0;
  return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
}

// Contiguous windows where v < level, as [start, end] in T.
std::vector<std::pair<double, double>> windows_below(const std::vector<double>& grid, const std::vector<double>& v,
                                                     double level) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] >= level) continue;
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] < level) ++j;
    out.emplace_back(grid[i], grid[j]);
    i = j;
  }
  return out;
}

Outcome c1() {
  Outcome o;
  double worst = 0.0;
  for (int n = 0; n <= 40; ++n) {
    const EigenBlock eb = diagonalize_block(build_block(n, 1, 1.0));
    for (int i = 0; i < 1000; ++i) {
      const double T = 25.0 * i / 999.0;
      const auto a = evolve_block(eb, T);
      const auto b = closed_form_x(n, T);
      worst = std::max({worst, std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2), std::abs(a.x3 - b.x3),
                        std::abs(a.x4 - b.x4)});
    }
  }
  note(o, worst < 1e-10, "max |X_numeric - X_closed| = %.2e (< 1e-10)", worst);
  return o;
}

Outcome c2() {
  Outcome o;
  for (const char* name : {"fig1", "fig2", "fig4"}) {
    const auto r = run_verify(preset(name).config, 100);
    note(o, r.pass && r.max_deviation < 1e-8, "%s dev %.2e drift %.1e", name, r.max_deviation, r.max_norm_drift);
  }
  return o;
}

Outcome c3() {
  Outcome o;
  double worst = 0.0;
  for (const char* name : {"fig1", "fig2", "fig4"}) {
    const Dynamics dyn(preset(name).config.params);
    for (AtomId atom : {AtomId::first, AtomId::second}) {
      const auto r = squeeze_report(dyn.atom_state(0.0, atom));
      const double sz = bloch(dyn.atom_state(0.0, atom)).sz;
      worst = std::max({worst, std::abs(r.e_y), std::abs(r.gamma), std::abs(sz - 1.0)});
    }
  }
  note(o, worst < 1e-9, "max deviation at T = 0: %.2e (< 1e-9)", worst);
  return o;
}

Outcome c4() {
  Outcome o;
  const double h = std::numbers::sqrt2 / 2;
  for (double sign : {1.0, -1.0}) {
    // (|+> + sign i |->) / sqrt 2
    const ReducedAtomState s{0.5, 0.5, {0.0, -sign * h * h}};
    const double e = entropy_squeezing(bloch(s), Axis::y);
    const bool ok = std::abs(e - kOptimal) < 1e-12 && std::abs(std::round(e * 1000) / 1000 - (-0.414)) < 1e-12;
    note(o, ok, "E_y = %.6f", e);
  }
  return o;
}

Outcome c5() {
  Outcome o;
  const auto ts = scan(5.0, 0.5, 1, {"ey1", "ey2"});
  const double on1 = min_where(ts, "ey1", 0.0, 3.0);
  const double on2 = min_where(ts, "ey2", 0.0, 3.0);
  note(o, on1 < -0.05 && on2 < -0.05, "min E_y on (0,3]: %.4f, %.4f (< -0.05)", on1, on2);
  const double m1 = min_of(ts.channel("ey1"));
  const double m2 = min_of(ts.channel("ey2"));
  note(o, m2 < m1, "min E_y1 %.5f, min E_y2 %.5f (atom 2 deeper)", m1, m2);
  return o;
}

Outcome c6() {
  Outcome o;
  const auto ts = scan(5.0, 0.5, 2, {"ey1", "ey2", "inv1", "inv2"});
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) worst = std::max(worst, std::abs(ts.channel("ey1")[nearest(ts.grid, k * kPi)]));
  note(o, worst < 0.02, "max |E_y1| at pi, 2pi, 3pi = %.4f (< 0.02)", worst);

  const auto wins = windows_below(ts.grid, ts.channel("ey2"), -0.05);
  for (double target : {kPi / 2, 3 * kPi / 2}) {
    double best = 0.0;
    for (auto [a, b] : wins)
      if (a - 0.5 <= target && target <= b + 0.5) best = std::max(best, b - a);
    note(o, best >= 0.2, "E_y2 < -0.05 window near %.3f: width %.3f (>= 0.2)", target, best);
  }

  const double s1 = mean_spacing(revival_peaks(ts.grid, ts.channel("inv1")));
  const double s2 = mean_spacing(revival_peaks(ts.grid, ts.channel("inv2")));
  note(o, std::abs(s1 / kPi - 1.0) < 0.05, "atom 1 peak spacing %.3f (pi)", s1);
  note(o, std::abs(s2 / (2 * kPi) - 1.0) < 0.05, "atom 2 peak spacing %.3f (2 pi)", s2);
  return o;
}

Outcome c7() {
  Outcome o;
  struct Model {
    double alpha, g;
    int l;
  };
  double ex_min = 1e300;
  double eur_min = 1e300;
  for (Model m : {Model{5, 0.5, 1}, Model{5, 0.5, 2}, Model{5, 1, 1}, Model{5, 0.5, 3}, Model{5, 1, 3},
                  Model{0.5, 1, 1}}) {
    const auto ts = scan(m.alpha, m.g, m.l, {"ex1", "ex2", "eur1", "eur2"});
    ex_min = std::min({ex_min, min_of(ts.channel("ex1")), min_of(ts.channel("ex2"))});
    eur_min = std::min({eur_min, min_of(ts.channel("eur1")), min_of(ts.channel("eur2"))});
  }
  note(o, ex_min >= -1e-12, "min E_x = %.3e (>= -1e-12)", ex_min);
  note(o, eur_min >= -1e-10, "min EUR residual = %.3e (>= -1e-10)", eur_min);
  return o;
}

Outcome c8() {
  Outcome o;
  const double g = 0.5;
  const auto a = scan(5.0, g, 1, {"inv1", "sy1", "ey1", "fy1", "gamma1"});
  const auto b = scan(5.0, 1.0 / g, 1, {"inv2", "sy2", "ey2", "fy2", "gamma2"}, g * 25.0);
  double worst = 0.0;
  for (std::size_t c = 0; c < a.values.size(); ++c)
    for (std::size_t i = 0; i < a.grid.size(); ++i) worst = std::max(worst, std::abs(a.values[c][i] - b.values[c][i]));
  note(o, worst < 1e-9, "max |atom1(g,T) - atom2(1/g,gT)| = %.2e (< 1e-9)", worst);
  return o;
}

Outcome c9() {
  Outcome o;
  const auto ts = scan(5.0, 1.0, 1, {"ey1", "sy1", "jcm_ey", "jcm_sy"});
  const double tj = min_of(ts.channel("ey1"));
  const double jc = min_of(ts.channel("jcm_ey"));
  note(o, jc < tj, "min E_y JCM %.5f, TJCM %.5f (JCM deeper)", jc, tj);
  const double ratio = max_abs(ts.channel("sy1")) / max_abs(ts.channel("jcm_sy"));
  note(o, ratio >= 0.3 && ratio <= 0.7, "max|sy| TJCM/JCM = %.3f (in [0.3, 0.7])", ratio);
  return o;
}

Outcome c10() {
  Outcome o;
  for (double g : {0.5, 1.0}) {
    const auto ts = scan(5.0, g, 3, {"ey1", "ey2"});
    const double m1 = min_of(ts.channel("ey1"));
    const double m2 = min_of(ts.channel("ey2"));
    note(o, m1 >= -1e-6, "g=%.1f atom 1 min E_y %.3e", g, m1);
    note(o, m2 >= -1e-6, "g=%.1f atom 2 min E_y %.3e", g, m2);
  }
  return o;
}

Outcome c11() {
  Outcome o;
  const auto ts = scan(0.5, 1.0, 1, {"ey1", "ey2", "fy1", "fy2"});
  const double e = std::min(min_of(ts.channel("ey1")), min_of(ts.channel("ey2")));
  const double f = std::min(min_of(ts.channel("fy1")), min_of(ts.channel("fy2")));
  note(o, e >= -1e-6, "min E_y %.3e (>= -1e-6)", e);
  note(o, f >= -1e-6, "min F_y %.3e (>= -1e-6)", f);
  return o;
}

Outcome c12() {
  Outcome o;
  const double mixed = 2.0 - std::numbers::sqrt2;
  int near_optimal = 0;
  int near_mixed = 0;
  double worst_pure = 0.0;
  double worst_mixed = 1e300;
  for (const char* name : {"fig1", "fig2", "fig4"}) {
    auto cfg = preset(name).config;
    cfg.channels = {"ey1", "ey2", "gamma1", "gamma2"};
    const auto ts = run_scan(cfg);
    for (int atom = 0; atom < 2; ++atom) {
      const auto& e = ts.values[static_cast<std::size_t>(atom)];
      const auto& gam = ts.values[static_cast<std::size_t>(atom) + 2];
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (std::abs(e[i] - kOptimal) < 0.02) {
          ++near_optimal;
          worst_pure = std::max(worst_pure, gam[i]);
        }
        if (e[i] > mixed - 0.02) {
          ++near_mixed;
          worst_mixed = std::min(worst_mixed, gam[i]);
        }
      }
    }
  }
  note(o, worst_pure < 0.05, "E_y near 1-sqrt2 at %d points, max gamma %.3f (< 0.05)", near_optimal, worst_pure);
  note(o, near_mixed == 0 || worst_mixed > std::numbers::ln2 - 0.08,
       "E_y near 2-sqrt2 at %d points, min gamma %.3f (> ln2 - 0.08)", near_mixed,
       near_mixed ? worst_mixed : std::numbers::ln2);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  bool all = true;
  for (int k = 1; k <= 12; ++k) {
    if (only != 0 && k != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[static_cast<std::size_t>(k - 1)]();
    } catch (const std::exception& e) {
      out = Outcome{false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("C%-2d %s  (%.1fs) %s\n", k, out.pass ? "PASS" : "FAIL", secs, out.detail.c_str());
    std::fflush(stdout);
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
