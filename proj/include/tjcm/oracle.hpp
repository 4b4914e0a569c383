#pragma once

// Brute-force reference path: the full joint Schrodinger equation in the
// truncated product space, integrated with fixed-step RK4, then a direct
// partial trace. Uses nothing from model-core except FockWeights, so
// agreement with the block pipeline is independent evidence.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tjcm/model.hpp"
#include "tjcm/reduced_density.hpp"

namespace tjcm::oracle {

enum class Level { plus = 0, minus = 1 };

/// Amplitudes over |a1, a2, n>, n = 0..n_fock.
class JointStateVector {
 public:
  explicit JointStateVector(int n_fock);

  int n_fock() const noexcept { return n_fock_; }
  std::size_t dimension() const noexcept { return amp_.size(); }

  std::size_t index(Level a1, Level a2, int n) const noexcept {
    return (static_cast<std::size_t>(a1) * 2 + static_cast<std::size_t>(a2)) *
               static_cast<std::size_t>(n_fock_ + 1) +
           static_cast<std::size_t>(n);
  }
  std::complex<double>& operator()(Level a1, Level a2, int n) { return amp_[index(a1, a2, n)]; }
  const std::complex<double>& operator()(Level a1, Level a2, int n) const { return amp_[index(a1, a2, n)]; }

  std::span<std::complex<double>> amplitudes() noexcept { return amp_; }
  std::span<const std::complex<double>> amplitudes() const noexcept { return amp_; }

  double norm2() const;

 private:
  int n_fock_;
  std::vector<std::complex<double>> amp_;
};

/// Interaction Hamiltonian on the JointStateVector index set, CSR storage,
/// units of lambda_1.
class JointHamiltonian {
 public:
  int l() const noexcept { return l_; }
  double g() const noexcept { return g_; }
  int n_fock() const noexcept { return n_fock_; }
  std::size_t dimension() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// Max absolute row sum.
  double inf_norm() const;
  double entry(std::size_t row, std::size_t col) const;
  /// out = -i H in
  void apply_minus_i(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) const;

 private:
  friend JointHamiltonian build_joint_hamiltonian(int l, double g, int n_fock);

  int l_ = 1;
  double g_ = 1.0;
  int n_fock_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

/// <-,.,n+l| H |+,.,n> = sqrt((n+l)!/n!) for atom 1 and g times that for
/// atom 2, plus transposes. g = 0 is allowed.
JointHamiltonian build_joint_hamiltonian(int l, double g, int n_fock);

/// Both atoms excited, field coherent. Throws TruncationError unless
/// n_fock >= n_max + 2l, i.e. every populated invariant block fits.
JointStateVector initial_state(const FockWeights& weights, int l, int n_fock);

/// Smallest Fock cutoff initial_state accepts.
int required_fock_cutoff(const FockWeights& weights, int l);

/// min(1e-3, 0.015 / ||H||_inf).
double default_time_step(const JointHamiltonian& h);

struct Rk4Result {
  JointStateVector psi;
  double T = 0.0;
  /// |norm(psi(T)) - norm(psi0)|, never renormalized.
  double norm_drift = 0.0;
};

/// Classic RK4 on d psi/dT = -i H psi with uniform steps no longer than dt.
/// Requires dt <= 0.5 / ||H||_inf and T >= 0. Throws StepSizeError when the
/// norm drifts by more than 1e-7.
Rk4Result rk4_evolve(const JointHamiltonian& h, const JointStateVector& psi0, double T, double dt);

/// One trajectory, sampled at each of `times` (ascending, >= 0).
std::vector<Rk4Result> rk4_sample(const JointHamiltonian& h, const JointStateVector& psi0,
                                  std::span<const double> times, double dt);

/// Direct partial trace over the other atom and the field. psi must be
/// normalized within 1e-7 (ContractViolation otherwise).
ReducedAtomState partial_trace_atom(const JointStateVector& psi, AtomId atom);

/// <n + l * (number of excited atoms)>, conserved by H.
double excitation_expectation(const JointStateVector& psi, int l);

}  // namespace tjcm::oracle
