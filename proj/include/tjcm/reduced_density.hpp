#pragma once

#include <complex>
#include <span>
#include <utility>

#include "tjcm/model.hpp"

namespace tjcm {

enum class AtomId { first, second };

/// Single-atom density matrix in the {|+>, |->} basis:
///   [[p_plus, coh], [conj(coh), p_minus]].
struct ReducedAtomState {
  double p_plus = 1.0;
  double p_minus = 0.0;
  std::complex<double> coh{0.0, 0.0};
};

/// Per-n summands of the reduced density matrix: Q1(n,n), Q2(n,n) and
/// Q3(n,n+l).
struct QTerms {
  double q1 = 0.0;
  double q2 = 0.0;
  std::complex<double> q3{0.0, 0.0};
};

/// Summands for index n. `coeffs[k]` must hold block k; entries past the
/// weight table or the coefficient table count as zero. For the second atom
/// X2 and X3 are exchanged before evaluation.
QTerms q_terms(const FockWeights& weights, std::span<const BlockCoefficients> coeffs, int l, AtomId atom,
               int n);

/// Sums the Q terms in ascending n with compensated accumulation.
///
/// Throws TruncationError when the trace is off by more than
/// 10 * cutoff_eps, and InternalConsistency when the coherence picks up a
/// real part above 1e-10 (it is purely imaginary for this initial state).
ReducedAtomState reduced_state(const FockWeights& weights, std::span<const BlockCoefficients> coeffs, int l,
                               AtomId atom);

/// Model, weights and eigenblock cache bundled for repeated evaluation over
/// a time grid. Immutable after construction; safe to share across threads.
class Dynamics {
 public:
  explicit Dynamics(const ModelParams& params);

  const ModelParams& params() const noexcept { return cache_.params(); }
  const FockWeights& weights() const noexcept { return weights_; }
  const BlockCache& cache() const noexcept { return cache_; }

  ReducedAtomState atom_state(double T, AtomId atom) const;
  /// Both atoms from one coefficient table.
  std::pair<ReducedAtomState, ReducedAtomState> atom_states(double T) const;

 private:
  FockWeights weights_;
  BlockCache cache_;
};

}  // namespace tjcm
