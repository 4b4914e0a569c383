#include "tjcm/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tjcm/errors.hpp"

namespace tjcm {

namespace {

constexpr double kMeanSlack = 1e-12;
constexpr double kSxZeroTolerance = 1e-10;

double xlogx(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

double component(const BlochVector& b, Axis axis) { return axis == Axis::x ? b.sx : b.sy; }

}  // namespace

double BlochVector::norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }

BlochVector bloch(const ReducedAtomState& state) {
  return BlochVector{2.0 * state.coh.real(), 2.0 * state.coh.imag(), state.p_plus - state.p_minus};
}

double binary_entropy_of_mean(double m) {
  if (!(std::abs(m) <= 1.0 + kMeanSlack)) {
    throw InvalidParameter("mean of a Pauli operator must lie in [-1, 1], got " + std::to_string(m));
  }
  const double up = std::clamp(0.5 * (1.0 + m), 0.0, 1.0);
  const double down = std::clamp(0.5 * (1.0 - m), 0.0, 1.0);
  return -(xlogx(up) + xlogx(down));
}

double entropy_squeezing(const BlochVector& b, Axis axis) {
  const double spread_k = std::exp(binary_entropy_of_mean(component(b, axis)));
  const double spread_z = std::exp(binary_entropy_of_mean(b.sz));
  return spread_k - 2.0 / std::sqrt(spread_z);
}

double variance_squeezing(const BlochVector& b, Axis axis) {
  const double mean = component(b, axis);
  return (1.0 - mean * mean) - std::abs(b.sz);
}

double von_neumann(const BlochVector& b) {
  const double r = std::min(1.0, b.norm());
  const double mu_plus = 0.5 + 0.5 * r;
  const double mu_minus = 0.5 - 0.5 * r;
  return -(xlogx(mu_plus) + xlogx(mu_minus));
}

double von_neumann(const ReducedAtomState& state) { return von_neumann(bloch(state)); }

double eur_residual(const BlochVector& b) {
  return binary_entropy_of_mean(b.sx) + binary_entropy_of_mean(b.sy) + binary_entropy_of_mean(b.sz) -
         2.0 * std::numbers::ln2;
}

double e_x_identity_check(const BlochVector& b) {
  if (!(std::abs(b.sx) <= kSxZeroTolerance)) {
    throw NotApplicable("E_x identity holds only for <sigma_x> = 0, got " + std::to_string(b.sx));
  }
  const double closed = 2.0 * (1.0 - 1.0 / std::sqrt(std::exp(binary_entropy_of_mean(b.sz))));
  return std::abs(entropy_squeezing(b, Axis::x) - closed);
}

SqueezeReport squeeze_report(const BlochVector& b) {
  SqueezeReport r;
  r.h_x = binary_entropy_of_mean(b.sx);
  r.h_y = binary_entropy_of_mean(b.sy);
  r.h_z = binary_entropy_of_mean(b.sz);
  const double z_term = 2.0 / std::sqrt(std::exp(r.h_z));
  r.e_x = std::exp(r.h_x) - z_term;
  r.e_y = std::exp(r.h_y) - z_term;
  r.f_x = variance_squeezing(b, Axis::x);
  r.f_y = variance_squeezing(b, Axis::y);
  r.gamma = von_neumann(b);
  return r;
}

SqueezeReport squeeze_report(const ReducedAtomState& state) { return squeeze_report(bloch(state)); }

}  // namespace tjcm
