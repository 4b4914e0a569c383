#include "tjcm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tjcm/detail/compensated_sum.hpp"
#include "tjcm/errors.hpp"

namespace tjcm {

namespace {

constexpr double kJacobiTolerance = 1e-16;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kCrossTermTolerance = 1e-10;

void check_weight_inputs(double alpha, double cutoff_eps) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("alpha must be finite and >= 0, got " + std::to_string(alpha));
  }
  if (!(cutoff_eps > 0.0 && cutoff_eps < 1.0)) {
    throw InvalidParameter("cutoff_eps must lie in (0, 1), got " + std::to_string(cutoff_eps));
  }
}

int truncation_floor(double alpha) {
  return static_cast<int>(std::ceil(alpha * alpha + 10.0 * alpha + 20.0));
}

// Amplitudes far enough past the Poisson peak (mean alpha^2, width alpha)
// that whatever is left is below any representable tolerance.
std::vector<double> raw_amplitudes(double alpha, int min_count) {
  const int count = std::max(min_count, static_cast<int>(std::ceil(alpha * alpha + 20.0 * alpha + 50.0)));
  std::vector<double> c(static_cast<std::size_t>(count));
  c[0] = std::exp(-0.5 * alpha * alpha);
  for (int n = 0; n + 1 < count; ++n) {
    c[static_cast<std::size_t>(n) + 1] = c[static_cast<std::size_t>(n)] * alpha / std::sqrt(n + 1.0);
  }
  return c;
}

// Smallest k such that sum_{n > k} c_n^2 < eps.
int tail_index(const std::vector<double>& c, double eps) {
  double tail = 0.0;
  int k = static_cast<int>(c.size()) - 1;
  // Walk down from the far end while the tail including c_k stays below eps.
  while (k > 0) {
    const double with_k = tail + c[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(k)];
    if (with_k >= eps) break;
    tail = with_k;
    --k;
  }
  return k;
}

}  // namespace

ModelParams::ModelParams(double alpha, double g, int l, double cutoff_eps)
    : alpha_(alpha), g_(g), l_(l), cutoff_eps_(cutoff_eps) {
  check_weight_inputs(alpha, cutoff_eps);
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw InvalidParameter("coupling ratio g must be finite and > 0, got " + std::to_string(g));
  }
  if (l < 1) {
    throw InvalidParameter("transition parameter l must be >= 1, got " + std::to_string(l));
  }
  const int floor_n = truncation_floor(alpha);
  n_max_ = std::max(floor_n, tail_index(raw_amplitudes(alpha, floor_n + 1), cutoff_eps));
}

ModelParams ModelParams::swapped() const { return ModelParams(alpha_, 1.0 / g_, l_, cutoff_eps_); }

double FockWeights::mass() const {
  detail::CompensatedSum s;
  for (double v : c) s += v * v;
  return s.value();
}

FockWeights coherent_weights(double alpha, double cutoff_eps, int n_floor) {
  check_weight_inputs(alpha, cutoff_eps);
  if (n_floor < 0) throw InvalidParameter("n_floor must be >= 0");
  auto c = raw_amplitudes(alpha, n_floor + 1);
  const int n_max = std::max(n_floor, tail_index(c, cutoff_eps));
  c.resize(static_cast<std::size_t>(n_max) + 1);
  return FockWeights{std::move(c), cutoff_eps};
}

FockWeights coherent_weights(const ModelParams& params) {
  auto w = coherent_weights(params.alpha(), params.cutoff_eps(), params.n_max());
  w.c.resize(static_cast<std::size_t>(params.n_max()) + 1);
  return w;
}

double transition_factor(int n, int l) {
  if (n < 0 || l < 0) throw InvalidParameter("transition_factor needs n >= 0 and l >= 0");
  long double prod = 1.0L;
  for (int k = n + 1; k <= n + l; ++k) prod *= static_cast<long double>(k);
  return static_cast<double>(std::sqrt(prod));
}

InteractionBlock build_block(int n, int l, double g) {
  if (n < 0) throw InvalidParameter("block index n must be >= 0");
  if (l < 1) throw InvalidParameter("transition parameter l must be >= 1");
  if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidParameter("coupling ratio g must be finite and >= 0");

  const double f1 = transition_factor(n, l);
  const double f2 = transition_factor(n + l, l);
  InteractionBlock b;
  b.n = n;
  // Basis: |+,+,n>, |+,-,n+l>, |-,+,n+l>, |-,-,n+2l>.
  b.h = {{{0.0, g * f1, f1, 0.0},
          {g * f1, 0.0, 0.0, f2},
          {f1, 0.0, 0.0, g * f2},
          {0.0, f2, g * f2, 0.0}}};
  return b;
}

EigenBlock diagonalize_block(const InteractionBlock& block) {
  Mat4 a = block.h;
  double frob2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(a[i][j])) throw ContractViolation("interaction block has a non-finite entry");
      if (a[i][j] != a[j][i]) throw ContractViolation("interaction block is not symmetric");
      frob2 += a[i][j] * a[i][j];
    }
  }

  Mat4 v{};
  for (int i = 0; i < 4; ++i) v[i][i] = 1.0;

  const double target = kJacobiTolerance * kJacobiTolerance * frob2;
  bool converged = false;
  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off2 += 2.0 * a[p][q] * a[p][q];
    if (off2 <= target) {
      converged = true;
      break;
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double apq = a[p][q];
        if (apq == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p][p] -= t * apq;
        a[q][q] += t * apq;
        a[p][q] = a[q][p] = 0.0;
        for (int r = 0; r < 4; ++r) {
          if (r != p && r != q) {
            const double arp = a[r][p];
            const double arq = a[r][q];
            a[r][p] = a[p][r] = c * arp - s * arq;
            a[r][q] = a[q][r] = s * arp + c * arq;
          }
          const double vrp = v[r][p];
          const double vrq = v[r][q];
          v[r][p] = c * vrp - s * vrq;
          v[r][q] = s * vrp + c * vrq;
        }
      }
    }
  }
  if (!converged) {
    throw InternalConsistency("Jacobi iteration did not converge for block n=" + std::to_string(block.n));
  }

  std::array<int, 4> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });

  EigenBlock eb;
  eb.n = block.n;
  for (int k = 0; k < 4; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    eb.eigvals[static_cast<std::size_t>(k)] = a[src][src];
    int big = 0;
    for (int i = 1; i < 4; ++i)
      if (std::abs(v[i][src]) > std::abs(v[big][src])) big = i;
    const double sign = v[big][src] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < 4; ++i) eb.eigvecs[i][k] = sign * v[i][src];
  }
  return eb;
}

BlockCoefficients evolve_block(const EigenBlock& eb, double T) {
  std::array<double, 4> re{};
  std::array<double, 4> im{};
  for (int k = 0; k < 4; ++k) {
    const double phase = eb.eigvals[static_cast<std::size_t>(k)] * T;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double overlap = eb.eigvecs[0][k];
    for (int i = 0; i < 4; ++i) {
      const double w = overlap * eb.eigvecs[i][k];
      re[static_cast<std::size_t>(i)] += c * w;
      im[static_cast<std::size_t>(i)] -= s * w;
    }
  }
  const double cross = std::max({std::abs(im[0]), std::abs(im[3]), std::abs(re[1]), std::abs(re[2])});
  if (!(cross < kCrossTermTolerance)) {
    throw InternalConsistency("block n=" + std::to_string(eb.n) + " produced a cross term of " +
                              std::to_string(cross) + " at T=" + std::to_string(T));
  }
  return BlockCoefficients{eb.n, T, re[0], im[1], im[2], re[3]};
}

BlockCoefficients closed_form_x(int n, double T) {
  if (n < 0) throw InvalidParameter("block index n must be >= 0");
  const double nn = n;
  const double theta = std::sqrt(4.0 * nn + 6.0);
  const double c = std::cos(T * theta);
  const double s = std::sin(T * theta);
  const double denom = 2.0 * nn + 3.0;
  BlockCoefficients x;
  x.n = n;
  x.T = T;
  x.x1 = ((nn + 1.0) * c + (nn + 2.0)) / denom;
  x.x2 = -(std::sqrt(nn + 1.0) / theta) * s;
  x.x3 = x.x2;
  x.x4 = std::sqrt((nn + 1.0) * (nn + 2.0)) / denom * (c - 1.0);
  return x;
}

BlockCache::BlockCache(const ModelParams& params) : params_(params) {
  blocks_.reserve(static_cast<std::size_t>(params.n_max()) + 1);
  for (int n = 0; n <= params.n_max(); ++n) {
    blocks_.push_back(diagonalize_block(build_block(n, params.l(), params.g())));
  }
}

std::vector<BlockCoefficients> BlockCache::coefficients_at(double T) const {
  std::vector<BlockCoefficients> out;
  out.reserve(blocks_.size());
  for (const auto& eb : blocks_) out.push_back(evolve_block(eb, T));
  return out;
}

}  // namespace tjcm
