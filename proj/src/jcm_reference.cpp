#include "tjcm/jcm_reference.hpp"

#include <cmath>

#include "tjcm/detail/compensated_sum.hpp"

namespace tjcm {

BlochVector jcm_bloch(const FockWeights& weights, double T) {
  detail::CompensatedSum sy;
  detail::CompensatedSum sz;
  const int top = weights.n_max();
  for (int n = 0; n <= top; ++n) {
    const double cn = weights.at(n);
    const double rabi = std::sqrt(n + 1.0);
    sz += cn * cn * std::cos(2.0 * T * rabi);
    sy += 2.0 * cn * weights.at(n + 1) * std::cos(T * std::sqrt(n + 2.0)) * std::sin(T * rabi);
  }
  return BlochVector{0.0, sy.value(), sz.value()};
}

double jcm_entropy_squeezing(const FockWeights& weights, double T) {
  return entropy_squeezing(jcm_bloch(weights, T), Axis::y);
}

double tjcm_harmonic_sy(const FockWeights& weights, double T) {
  detail::CompensatedSum sy;
  const int top = weights.n_max();
  for (int n = 0; n < top; ++n) {
    const double th = std::sqrt(4.0 * n + 6.0);
    const double th_next = std::sqrt(4.0 * n + 10.0);
    const double diff = th - th_next;
    const double term = 0.5 * std::sin(T * diff) + std::sin(0.5 * T * (th + th_next)) * std::cos(0.5 * T * diff);
    sy += weights.at(n) * weights.at(n + 1) * term;
  }
  return sy.value();
}

}  // namespace tjcm
