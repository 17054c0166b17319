#pragma once

#include <cstddef>

#include "krylov/linear_operator.hpp"
#include "krylov/state.hpp"

namespace krylov {

inline constexpr std::size_t kDefaultOracleCap = 4096;

/// Exact propagator e^{-iHt} from a full Hermitian eigendecomposition.
///
/// Verification only: construction refuses operators larger than the cap.
/// The decomposition is computed once, so sweeping many times is cheap.
class DenseOracle {
public:
  explicit DenseOracle(const LinearOperator& h, std::size_t cap = kDefaultOracleCap);

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues_.size()); }
  const RVector& eigenvalues() const { return eigenvalues_; }

  ComplexState evolve(const ComplexState& psi, double t) const;

private:
  RVector eigenvalues_;
  // Exactly one of these is populated; real symmetric inputs take the cheaper path.
  Eigen::MatrixXd real_vectors_;
  Eigen::MatrixXcd complex_vectors_;
  bool real_ = false;
};

ComplexState exact_evolve_dense(const LinearOperator& h, const ComplexState& psi, double t,
                                std::size_t cap = kDefaultOracleCap);

}  // namespace krylov
