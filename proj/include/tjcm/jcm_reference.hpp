#pragma once

#include "tjcm/model.hpp"
#include "tjcm/observables.hpp"

namespace tjcm {

// Single-atom resonant Jaynes-Cummings baseline, one-photon transitions,
// atom initially excited, T = lambda t. Block n evolves as
//   |+,n>  ->  cos(T sqrt(n+1)) |+,n>  -  i sin(T sqrt(n+1)) |-,n+1>.

/// sx = 0, sy = 2 sum C_n C_{n+1} cos(T sqrt(n+2)) sin(T sqrt(n+1)),
/// sz = sum C_n^2 cos(2 T sqrt(n+1)).
BlochVector jcm_bloch(const FockWeights& weights, double T);

/// E_y of the JCM atom.
double jcm_entropy_squeezing(const FockWeights& weights, double T);

/// Harmonic (large-alpha) approximation of <sigma_y> for the symmetric
/// one-photon two-atom model:
///   sum C_n C_{n+1} { 1/2 sin[T(th_n - th_{n+1})]
///                    + sin[T(th_n + th_{n+1})/2] cos[T(th_n - th_{n+1})/2] },
/// th_n = sqrt(4n + 6).
double tjcm_harmonic_sy(const FockWeights& weights, double T);

}  // namespace tjcm
