#pragma once

#include "tjcm/reduced_density.hpp"

namespace tjcm {

/// (<sigma_x>, <sigma_y>, <sigma_z>) of one atom. sy follows the
/// 2 Im(rho_{+-}) sign convention used throughout the model; every entropy
/// below is even in sy, so the sign choice never reaches a reported number.
struct BlochVector {
  double sx = 0.0;
  double sy = 0.0;
  double sz = 0.0;

  double norm() const;
};

enum class Axis { x, y };

/// All scalar diagnostics of one atom at one instant. Entropies in nats.
struct SqueezeReport {
  double e_x = 0.0;  ///< entropy squeezing, x component
  double e_y = 0.0;  ///< entropy squeezing, y component
  double f_x = 0.0;  ///< variance squeezing, x component
  double f_y = 0.0;  ///< variance squeezing, y component
  double h_x = 0.0;
  double h_y = 0.0;
  double h_z = 0.0;
  double gamma = 0.0;  ///< von Neumann entropy
};

BlochVector bloch(const ReducedAtomState& state);

/// Shannon entropy (nats) of the two-outcome distribution (1 +- m)/2.
/// |m| up to 1 + 1e-12 is clamped; beyond that InvalidParameter.
double binary_entropy_of_mean(double m);

/// E_k = exp(H(sigma_k)) - 2 / sqrt(exp(H(sigma_z))). Negative means the
/// k component is squeezed in the entropic sense. Bounded by
/// [1 - sqrt(2), 2 - sqrt(2)].
double entropy_squeezing(const BlochVector& b, Axis axis);

/// F_k = (1 - <sigma_k>^2) - |<sigma_z>|.
double variance_squeezing(const BlochVector& b, Axis axis);

/// -mu_+ ln mu_+ - mu_- ln mu_-, mu_pm = (1 +- |b|)/2 with |b| clamped to 1.
double von_neumann(const BlochVector& b);
double von_neumann(const ReducedAtomState& state);

/// H(sigma_x) + H(sigma_y) + H(sigma_z) - ln 4; the two-level entropic
/// uncertainty relation says this is never negative.
double eur_residual(const BlochVector& b);

/// |E_x - 2 (1 - 1/sqrt(exp H(sigma_z)))|. Only meaningful when sx = 0
/// (|sx| <= 1e-10), otherwise NotApplicable.
double e_x_identity_check(const BlochVector& b);

SqueezeReport squeeze_report(const BlochVector& b);
SqueezeReport squeeze_report(const ReducedAtomState& state);

}  // namespace tjcm
