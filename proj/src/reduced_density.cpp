#include "tjcm/reduced_density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tjcm/detail/compensated_sum.hpp"
#include "tjcm/errors.hpp"

namespace tjcm {

namespace {

constexpr double kRealCoherenceTolerance = 1e-10;

// Complex block amplitudes (X1, i X2, i X3, X4) on |+,+>, |+,->, |-,+>, |-,->,
// with the atoms relabelled for the second atom.
struct Amplitudes {
  std::complex<double> pp, pm, mp, mm;
};

Amplitudes amplitudes_for(const BlockCoefficients& b, AtomId atom) {
  const double x2 = atom == AtomId::second ? b.x3 : b.x2;
  const double x3 = atom == AtomId::second ? b.x2 : b.x3;
  return {{b.x1, 0.0}, {0.0, x2}, {0.0, x3}, {b.x4, 0.0}};
}

}  // namespace

QTerms q_terms(const FockWeights& weights, std::span<const BlockCoefficients> coeffs, int l, AtomId atom,
               int n) {
  if (n < 0) throw InvalidParameter("q_terms index n must be >= 0");
  if (l < 1) throw InvalidParameter("transition parameter l must be >= 1");
  QTerms q;
  const auto size = static_cast<int>(coeffs.size());
  if (n >= size) return q;

  const double cn = weights.at(n);
  const Amplitudes a = amplitudes_for(coeffs[static_cast<std::size_t>(n)], atom);
  q.q1 = cn * cn * (std::norm(a.pp) + std::norm(a.pm));
  q.q2 = cn * cn * (std::norm(a.mp) + std::norm(a.mm));

  // <+,s,k| rho |-,s,k> pairs block n (atom down) with block n+l (atom up)
  // at the same spectator level s and photon number k.
  const int m = n + l;
  const double cm = weights.at(m);
  if (m < size && cm != 0.0) {
    const Amplitudes b = amplitudes_for(coeffs[static_cast<std::size_t>(m)], atom);
    q.q3 = cm * cn * (b.pp * std::conj(a.mp) + b.pm * std::conj(a.mm));
  }
  return q;
}

ReducedAtomState reduced_state(const FockWeights& weights, std::span<const BlockCoefficients> coeffs, int l,
                               AtomId atom) {
  detail::CompensatedSum p_plus;
  detail::CompensatedSum p_minus;
  detail::CompensatedSum coh_re;
  detail::CompensatedSum coh_im;
  const int top = std::min(weights.n_max(), static_cast<int>(coeffs.size()) - 1);
  for (int n = 0; n <= top; ++n) {
    const QTerms q = q_terms(weights, coeffs, l, atom, n);
    p_plus += q.q1;
    p_minus += q.q2;
    coh_re += q.q3.real();
    coh_im += q.q3.imag();
  }

  ReducedAtomState s{p_plus.value(), p_minus.value(), {coh_re.value(), coh_im.value()}};
  const double trace_error = std::abs(s.p_plus + s.p_minus - 1.0);
  if (trace_error > 10.0 * weights.cutoff_eps) {
    throw TruncationError("reduced state trace is off by " + std::to_string(trace_error) +
                          "; the Fock table is too coarse");
  }
  if (std::abs(s.coh.real()) > kRealCoherenceTolerance) {
    throw InternalConsistency("reduced-state coherence acquired a real part of " +
                              std::to_string(s.coh.real()));
  }
  return s;
}

Dynamics::Dynamics(const ModelParams& params) : weights_(coherent_weights(params)), cache_(params) {}

ReducedAtomState Dynamics::atom_state(double T, AtomId atom) const {
  const auto coeffs = cache_.coefficients_at(T);
  return reduced_state(weights_, coeffs, params().l(), atom);
}

std::pair<ReducedAtomState, ReducedAtomState> Dynamics::atom_states(double T) const {
  const auto coeffs = cache_.coefficients_at(T);
  return {reduced_state(weights_, coeffs, params().l(), AtomId::first),
          reduced_state(weights_, coeffs, params().l(), AtomId::second)};
}

}  // namespace tjcm
