#include "krylov/models.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace krylov {

IsingOperator::IsingOperator(const IsingParams& params, std::size_t spin_cap) : params_(params) {
  const std::size_t n = params.n_spins;
  if (n < 2) throw std::invalid_argument("ising_operator: need at least 2 spins");
  if (n > spin_cap || n >= 63) {
    throw std::invalid_argument("ising_operator: " + std::to_string(n) + " spins exceeds the cap of " +
                                std::to_string(spin_cap));
  }
  const std::size_t dim = std::size_t{1} << n;
  diagonal_.resize(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double e = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = ((b >> k) & 1U) ? -1.0 : 1.0;
      e += params.h_z * sk;
      if (k + 1 < n) {
        const double sk1 = ((b >> (k + 1)) & 1U) ? -1.0 : 1.0;
        e -= params.J * sk * sk1;
      }
    }
    diagonal_[b] = e;
  }
}

void IsingOperator::apply(const CVector& in, CVector& out) const {
  const auto dim = static_cast<Eigen::Index>(diagonal_.size());
  if (in.size() != dim) throw std::invalid_argument("IsingOperator::apply: dimension mismatch");
  out.resize(dim);
  const double hx = params_.h_x;
  const std::size_t n = params_.n_spins;
  for (Eigen::Index b = 0; b < dim; ++b) {
    complex_t acc = diagonal_[static_cast<std::size_t>(b)] * in[b];
    for (std::size_t k = 0; k < n; ++k) acc += hx * in[b ^ (Eigen::Index{1} << k)];
    out[b] = acc;
  }
}

IsingOperator ising_operator(const IsingParams& params, std::size_t spin_cap) { return IsingOperator(params, spin_cap); }

namespace {

void check_random_dim(std::size_t dim, std::size_t cap, const char* who) {
  if (dim < 2) throw std::invalid_argument(std::string(who) + ": dimension must be at least 2");
  if (dim > cap) {
    throw std::invalid_argument(std::string(who) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                                std::to_string(cap));
  }
}

}  // namespace

DenseOperator goe_sample(std::size_t dim, std::uint64_t seed, std::size_t cap) {
  check_random_dim(dim, cap, "goe_sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = normal(rng);
  const Eigen::MatrixXd a = 0.5 * (g + g.transpose());
  return DenseOperator(a.cast<complex_t>());
}

DenseOperator gue_sample(std::size_t dim, std::uint64_t seed, std::size_t cap) {
  check_random_dim(dim, cap, "gue_sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double re = normal(rng);
      g(i, j) = complex_t(re, normal(rng));
    }
  }
  Eigen::MatrixXcd a = 0.5 * (g + g.adjoint());
  // Exact Hermiticity: mirror the upper triangle.
  for (Eigen::Index j = 0; j < d; ++j) {
    a(j, j) = a(j, j).real();
    for (Eigen::Index i = j + 1; i < d; ++i) a(i, j) = std::conj(a(j, i));
  }
  return DenseOperator(std::move(a));
}

ComplexState random_state(std::size_t dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_state: dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    v[i] = complex_t(re, normal(rng));
  }
  ComplexState s(std::move(v));
  s.normalize();
  return s;
}

DenseOperator toeplitz_operator(std::size_t n_sites, double alpha, double beta) {
  if (n_sites < 1) throw std::invalid_argument("toeplitz_operator: need at least one site");
  const auto n = static_cast<Eigen::Index>(n_sites);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = alpha;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = beta;
  }
  return DenseOperator(std::move(m));
}

}  // namespace krylov
