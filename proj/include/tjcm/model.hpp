#pragma once

// Exact evolution of the two-atom, l-photon resonant Tavis-Cummings model.
//
// With both atoms initially excited and the field in a real coherent state,
// the joint state only ever populates the four-dimensional invariant blocks
//
//     |+,+,n>, |+,-,n+l>, |-,+,n+l>, |-,-,n+2l>        (n = 0, 1, 2, ...)
//
// and inside block n it reads
//
//     C_n [ X1 |+,+,n> + i X2 |+,-,n+l> + i X3 |-,+,n+l> + X4 |-,-,n+2l> ]
//
// with real X_j(T, n). Everything is in the interaction picture at exact
// resonance (atomic frequency = 2 l times the mode frequency). Energies are
// in units of the atom-1 coupling lambda_1; T = lambda_1 t.

#include <array>
#include <span>
#include <vector>

namespace tjcm {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Physical configuration plus numerical truncation policy.
///
/// `n_max` is derived: the smallest index whose Poissonian tail mass drops
/// below `cutoff_eps`, floored at ceil(alpha^2 + 10 alpha + 20) so that sums
/// touching n + l and n + 2l never run off a thin table.
class ModelParams {
 public:
  ModelParams(double alpha, double g, int l, double cutoff_eps = 1e-12);

  double alpha() const noexcept { return alpha_; }
  double g() const noexcept { return g_; }
  int l() const noexcept { return l_; }
  double cutoff_eps() const noexcept { return cutoff_eps_; }
  int n_max() const noexcept { return n_max_; }

  /// Relabels the atoms: (g, T) -> (1/g, g T) describes the same physics
  /// with the roles of atom 1 and atom 2 exchanged.
  ModelParams swapped() const;

 private:
  double alpha_;
  double g_;
  int l_;
  double cutoff_eps_;
  int n_max_;
};

/// Truncated coherent-state amplitudes C_n = alpha^n / sqrt(n!) e^{-alpha^2/2}.
struct FockWeights {
  std::vector<double> c;
  double cutoff_eps = 0.0;

  int n_max() const noexcept { return static_cast<int>(c.size()) - 1; }
  /// C_n, or zero past the truncation.
  double at(int n) const noexcept {
    return (n >= 0 && n < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(n)] : 0.0;
  }
  /// Sum of C_n^2 over the stored table.
  double mass() const;
};

/// Coherent weights truncated at the smallest n_max with tail mass below
/// `cutoff_eps`, but never shorter than `n_floor + 1` entries.
FockWeights coherent_weights(double alpha, double cutoff_eps, int n_floor = 0);

/// Weights sized for a model: n_max() == params.n_max().
FockWeights coherent_weights(const ModelParams& params);

/// sqrt((n+l)! / n!) as a running product of l consecutive integers.
double transition_factor(int n, int l);

/// Real symmetric 4x4 interaction block for base excitation index n.
struct InteractionBlock {
  int n = 0;
  Mat4 h{};
};

/// Eigendecomposition of one block. Column k of `eigvecs` belongs to
/// `eigvals[k]`; eigenvalues are sorted ascending.
struct EigenBlock {
  int n = 0;
  std::array<double, 4> eigvals{};
  Mat4 eigvecs{};
};

/// X_1..X_4 of block n at scaled time T.
struct BlockCoefficients {
  int n = 0;
  double T = 0.0;
  double x1 = 1.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double x4 = 0.0;

  double norm2() const noexcept { return x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4; }
};

/// g may be zero here (atom 2 decoupled), which ModelParams forbids.
InteractionBlock build_block(int n, int l, double g);

/// Cyclic Jacobi sweeps to an off-diagonal norm of 1e-16 relative to the
/// Frobenius norm. Each eigenvector is signed so its largest-magnitude
/// component is positive.
EigenBlock diagonalize_block(const InteractionBlock& block);

/// Applies exp(-i h T) to (1,0,0,0) and reads off the real X_j.
/// Throws InternalConsistency if the components that must vanish by the
/// bipartite structure of h exceed 1e-10.
BlockCoefficients evolve_block(const EigenBlock& eb, double T);

/// Closed form for (l, g) = (1, 1); theta_n = sqrt(4n + 6).
BlockCoefficients closed_form_x(int n, double T);

/// Eigenblocks for n = 0..n_max of one model, built once and shared
/// read-only between threads.
class BlockCache {
 public:
  explicit BlockCache(const ModelParams& params);

  const ModelParams& params() const noexcept { return params_; }
  std::span<const EigenBlock> blocks() const noexcept { return blocks_; }

  /// Coefficient table indexed by n = 0..n_max.
  std::vector<BlockCoefficients> coefficients_at(double T) const;

 private:
  ModelParams params_;
  std::vector<EigenBlock> blocks_;
};

}  // namespace tjcm
