#include "tjcm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "tjcm/errors.hpp"

namespace tjcm::oracle {

namespace {

constexpr double kMaxNormDrift = 1e-7;
constexpr double kTraceNormTolerance = 1e-7;
// RK4 phase error grows as (dt omega)^4 T; 0.015 keeps the l = 2 presets at
// ~1e-9 against the exact blocks over T = 25.
constexpr double kStepScale = 0.015;
constexpr std::complex<double> kMinusI{0.0, -1.0};

constexpr Level kLevels[] = {Level::plus, Level::minus};

// sqrt((n+l)!/n!), kept separate from model-core on purpose.
double ladder_factor(int n, int l) {
  double prod = 1.0;
  for (int k = 1; k <= l; ++k) prod *= static_cast<double>(n + k);
  return std::sqrt(prod);
}

}  // namespace

JointStateVector::JointStateVector(int n_fock) : n_fock_(n_fock) {
  if (n_fock < 0) throw InvalidParameter("Fock cutoff must be >= 0");
  amp_.assign(4 * static_cast<std::size_t>(n_fock + 1), {0.0, 0.0});
}

double JointStateVector::norm2() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s;
}

double JointHamiltonian::inf_norm() const {
  double best = 0.0;
  for (std::size_t r = 0; r + 1 < row_ptr_.size(); ++r) {
    double row = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) row += std::abs(values_[k]);
    best = std::max(best, row);
  }
  return best;
}

double JointHamiltonian::entry(std::size_t row, std::size_t col) const {
  if (row >= dimension() || col >= dimension()) throw InvalidParameter("Hamiltonian index out of range");
  for (std::size_t k = row_ptr_[row]; k < row_ptr_[row + 1]; ++k)
    if (cols_[k] == col) return values_[k];
  return 0.0;
}

void JointHamiltonian::apply_minus_i(std::span<const std::complex<double>> in,
                                     std::span<std::complex<double>> out) const {
  const std::size_t dim = dimension();
  for (std::size_t r = 0; r < dim; ++r) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * in[cols_[k]];
    out[r] = kMinusI * acc;
  }
}

JointHamiltonian build_joint_hamiltonian(int l, double g, int n_fock) {
  if (l < 1) throw InvalidParameter("transition parameter l must be >= 1");
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidParameter("coupling ratio g must be finite and >= 0");
  const JointStateVector layout(n_fock);

  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  auto link = [&](std::size_t a, std::size_t b, double v) {
    if (v == 0.0) return;
    triplets.emplace_back(a, b, v);
    triplets.emplace_back(b, a, v);
  };
  for (int n = 0; n + l <= n_fock; ++n) {
    const double f = ladder_factor(n, l);
    for (Level other : kLevels) {
      // atom 1 flips, atom 2 spectates
      link(layout.index(Level::minus, other, n + l), layout.index(Level::plus, other, n), f);
      // atom 2 flips, atom 1 spectates
      link(layout.index(other, Level::minus, n + l), layout.index(other, Level::plus, n), g * f);
    }
  }
  std::sort(triplets.begin(), triplets.end());

  JointHamiltonian h;
  h.l_ = l;
  h.g_ = g;
  h.n_fock_ = n_fock;
  const std::size_t dim = layout.dimension();
  h.row_ptr_.assign(dim + 1, 0);
  for (const auto& [r, c, v] : triplets) {
    ++h.row_ptr_[r + 1];
    h.cols_.push_back(c);
    h.values_.push_back(v);
  }
  for (std::size_t r = 0; r < dim; ++r) h.row_ptr_[r + 1] += h.row_ptr_[r];
  return h;
}

int required_fock_cutoff(const FockWeights& weights, int l) { return weights.n_max() + 2 * l; }

JointStateVector initial_state(const FockWeights& weights, int l, int n_fock) {
  const int need = required_fock_cutoff(weights, l);
  if (n_fock < need) {
    throw TruncationError("Fock cutoff " + std::to_string(n_fock) + " is below the required " +
                          std::to_string(need));
  }
  JointStateVector psi(n_fock);
  for (int n = 0; n <= weights.n_max(); ++n) psi(Level::plus, Level::plus, n) = weights.at(n);
  return psi;
}

double default_time_step(const JointHamiltonian& h) {
  const double norm = h.inf_norm();
  return norm > 0.0 ? std::min(1e-3, kStepScale / norm) : 1e-3;
}

std::vector<Rk4Result> rk4_sample(const JointHamiltonian& h, const JointStateVector& psi0,
                                  std::span<const double> times, double dt) {
  if (psi0.dimension() != h.dimension()) throw InvalidParameter("state and Hamiltonian dimensions differ");
  if (!(dt > 0.0)) throw InvalidParameter("RK4 step must be > 0");
  const double norm = h.inf_norm();
  if (norm > 0.0 && dt > 0.5 / norm) {
    throw InvalidParameter("RK4 step " + std::to_string(dt) + " exceeds the stability margin 0.5/||H|| = " +
                           std::to_string(0.5 / norm));
  }

  const std::size_t dim = h.dimension();
  std::vector<std::complex<double>> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  std::vector<std::complex<double>> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);
  const double norm0 = std::sqrt(psi0.norm2());

  auto step = [&](double tau) {
    h.apply_minus_i(psi, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * tau * k1[i];
    h.apply_minus_i(tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * tau * k2[i];
    h.apply_minus_i(tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + tau * k3[i];
    h.apply_minus_i(tmp, k4);
    for (std::size_t i = 0; i < dim; ++i) psi[i] += (tau / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  };

  std::vector<Rk4Result> out;
  out.reserve(times.size());
  double now = 0.0;
  for (double target : times) {
    if (!(target >= now)) throw InvalidParameter("RK4 sample times must be ascending and >= 0");
    const double span = target - now;
    if (span > 0.0) {
      const auto steps = static_cast<long long>(std::ceil(span / dt - 1e-9));
      const double tau = span / static_cast<double>(steps);
      for (long long s = 0; s < steps; ++s) step(tau);
    }
    now = target;

    Rk4Result r{JointStateVector(psi0.n_fock()), target, 0.0};
    std::copy(psi.begin(), psi.end(), r.psi.amplitudes().begin());
    r.norm_drift = std::abs(std::sqrt(r.psi.norm2()) - norm0);
    if (r.norm_drift > kMaxNormDrift) {
      throw StepSizeError("RK4 norm drift " + std::to_string(r.norm_drift) + " at T=" + std::to_string(target) +
                          " exceeds 1e-7; use a smaller step");
    }
    out.push_back(std::move(r));
  }
  return out;
}

Rk4Result rk4_evolve(const JointHamiltonian& h, const JointStateVector& psi0, double T, double dt) {
  if (!(T >= 0.0)) throw InvalidParameter("RK4 end time must be >= 0");
  const double times[] = {T};
  return std::move(rk4_sample(h, psi0, times, dt).front());
}

ReducedAtomState partial_trace_atom(const JointStateVector& psi, AtomId atom) {
  const double norm = std::sqrt(psi.norm2());
  if (std::abs(norm - 1.0) > kTraceNormTolerance) {
    throw ContractViolation("partial trace needs a normalized state, norm = " + std::to_string(norm));
  }
  // rho_{ab} = sum over spectator level and photon number of amp(a) conj(amp(b)).
  std::complex<double> rho[2][2] = {};
  for (Level spectator : kLevels) {
    for (int n = 0; n <= psi.n_fock(); ++n) {
      for (Level a : kLevels) {
        for (Level b : kLevels) {
          const auto& amp_a = atom == AtomId::first ? psi(a, spectator, n) : psi(spectator, a, n);
          const auto& amp_b = atom == AtomId::first ? psi(b, spectator, n) : psi(spectator, b, n);
          rho[static_cast<int>(a)][static_cast<int>(b)] += amp_a * std::conj(amp_b);
        }
      }
    }
  }
  return ReducedAtomState{rho[0][0].real(), rho[1][1].real(), rho[0][1]};
}

double excitation_expectation(const JointStateVector& psi, int l) {
  double s = 0.0;
  for (Level a1 : kLevels) {
    for (Level a2 : kLevels) {
      const int excited = (a1 == Level::plus) + (a2 == Level::plus);
      for (int n = 0; n <= psi.n_fock(); ++n) s += std::norm(psi(a1, a2, n)) * (n + l * excited);
    }
  }
  return s;
}

}  // namespace tjcm::oracle
