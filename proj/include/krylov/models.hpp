#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "krylov/linear_operator.hpp"
#include "krylov/state.hpp"

namespace krylov {

inline constexpr std::size_t kDefaultIsingSpinCap = 20;
inline constexpr std::size_t kDefaultRandomMatrixCap = 4096;

/// Open-boundary Ising chain
///   H = sum_k (h_x sx_k + h_z sz_k) - J sum_{k<n} sz_k sz_{k+1}.
/// Defaults are a nonintegrable point of the model.
struct IsingParams {
  std::size_t n_spins = 10;
  double J = 1.0;
  double h_x = 1.0;
  double h_z = 0.5;
};

/// Matrix-free Ising Hamiltonian on 2^n basis states. Spin k (0-based) is
/// bit k of the basis index; bit value 0 is the sz = +1 state.
class IsingOperator final : public LinearOperator {
public:
  /// Throws std::invalid_argument for n_spins < 2 or above `spin_cap`.
  explicit IsingOperator(const IsingParams& params, std::size_t spin_cap = kDefaultIsingSpinCap);

  std::size_t dim() const override { return diagonal_.size(); }
  void apply(const CVector& in, CVector& out) const override;

  const IsingParams& params() const { return params_; }

private:
  IsingParams params_;
  std::vector<double> diagonal_;  // h_z and zz terms per basis state
};

IsingOperator ising_operator(const IsingParams& params, std::size_t spin_cap = kDefaultIsingSpinCap);

/// (G + G^T)/2 with i.i.d. standard normal G. Deterministic per seed within
/// one build (std::mt19937_64 + std::normal_distribution).
DenseOperator goe_sample(std::size_t dim, std::uint64_t seed, std::size_t cap = kDefaultRandomMatrixCap);

/// (G + G^dagger)/2 with G having i.i.d. standard normal real and imaginary parts.
DenseOperator gue_sample(std::size_t dim, std::uint64_t seed, std::size_t cap = kDefaultRandomMatrixCap);

/// Normalized vector of i.i.d. complex standard normal amplitudes.
ComplexState random_state(std::size_t dim, std::uint64_t seed);

/// Dense homogeneous chain: alpha on the diagonal, beta on the first off-diagonals.
DenseOperator toeplitz_operator(std::size_t n_sites, double alpha, double beta);

}  // namespace krylov
