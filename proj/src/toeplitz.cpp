#include "krylov/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "krylov/propagator.hpp"

namespace krylov {

namespace {

void check_chain(const ToeplitzChain& chain) {
  if (chain.n_sites < 1) throw std::invalid_argument("ToeplitzChain: n_sites must be at least 1");
}

void check_index(const ToeplitzChain& chain, std::size_t i, const char* what) {
  if (i < 1 || i > chain.n_sites) throw std::invalid_argument(std::string("toeplitz: ") + what + " out of range 1..N");
}

double mode_angle(const ToeplitzChain& chain, std::size_t n, std::size_t k) {
  return static_cast<double>(n * k) * std::numbers::pi / static_cast<double>(chain.n_sites + 1);
}

}  // namespace

double toeplitz_eigenvalue(const ToeplitzChain& chain, std::size_t k) {
  check_chain(chain);
  check_index(chain, k, "mode index k");
  return chain.alpha + 2.0 * chain.beta * std::cos(mode_angle(chain, 1, k));
}

double toeplitz_eigenvector_component(const ToeplitzChain& chain, std::size_t n, std::size_t k) {
  check_chain(chain);
  check_index(chain, n, "site index n");
  check_index(chain, k, "mode index k");
  return std::sqrt(2.0 / static_cast<double>(chain.n_sites + 1)) * std::sin(mode_angle(chain, n, k));
}

complex_t toeplitz_transition(const ToeplitzChain& chain, std::size_t n, std::size_t n_prime, double t) {
  check_chain(chain);
  check_index(chain, n, "site index n");
  check_index(chain, n_prime, "site index n'");
  complex_t sum = 0.0;
  for (std::size_t k = 1; k <= chain.n_sites; ++k) {
    sum += std::sin(mode_angle(chain, n, k)) * std::sin(mode_angle(chain, n_prime, k)) *
           std::polar(1.0, t * toeplitz_eigenvalue(chain, k));
  }
  return (2.0 / static_cast<double>(chain.n_sites + 1)) * sum;
}

ToeplitzPropagator::ToeplitzPropagator(const ToeplitzChain& chain) : chain_(chain) {
  check_chain(chain);
  const auto n = static_cast<Eigen::Index>(chain.n_sites);
  modes_.resize(n, n);
  energies_.resize(n);
  for (std::size_t k = 1; k <= chain.n_sites; ++k) {
    energies_[static_cast<Eigen::Index>(k - 1)] = toeplitz_eigenvalue(chain, k);
    for (std::size_t s = 1; s <= chain.n_sites; ++s) {
      modes_(static_cast<Eigen::Index>(s - 1), static_cast<Eigen::Index>(k - 1)) =
          toeplitz_eigenvector_component(chain, s, k);
    }
  }
}

CVector ToeplitzPropagator::column(std::size_t n_prime, double t) const {
  check_index(chain_, n_prime, "site index n'");
  const Eigen::Index n = modes_.rows();
  const auto col = static_cast<Eigen::Index>(n_prime - 1);
  if (t == 0.0 || chain_.beta == 0.0) {
    // Identity at t = 0; a chain without hopping only picks up the onsite phase.
    CVector out = CVector::Zero(n);
    out[col] = std::polar(1.0, t * chain_.alpha);
    return out;
  }
  RVector c_re(n), c_im(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double w = modes_(col, k);
    c_re[k] = w * std::cos(t * energies_[k]);
    c_im[k] = w * std::sin(t * energies_[k]);
  }
  CVector out(n);
  out.real() = modes_ * c_re;
  out.imag() = modes_ * c_im;
  return out;
}

namespace {

// Columns S^N_{.,1}(t) and S^{N'}_{.,1}(t), zero-padded to a common length.
// Since T is real symmetric, S^{N'}_{1,n}(-t) = conj(S^{N'}_{n,1}(t)), so the
// echo is <b|a> with a, b the returned vectors.
std::pair<CVector, CVector> echo_columns(std::size_t n, std::size_t n_prime, double alpha, double beta, double t) {
  const CVector a = ToeplitzPropagator({n, alpha, beta}).column(1, t);
  const CVector b = ToeplitzPropagator({n_prime, alpha, beta}).column(1, t);
  const Eigen::Index len = std::max(a.size(), b.size());
  CVector pa = CVector::Zero(len), pb = CVector::Zero(len);
  pa.head(a.size()) = a;
  pb.head(b.size()) = b;
  return {pa, pb};
}

}  // namespace

complex_t toeplitz_echo(std::size_t n, std::size_t n_prime, double alpha, double beta, double t) {
  if (n < 1 || n_prime < 1) throw std::invalid_argument("toeplitz_echo: chain lengths must be at least 1");
  const auto [a, b] = echo_columns(n, n_prime, alpha, beta, t);
  return b.dot(a);
}

double toeplitz_echo_infidelity(std::size_t n, std::size_t n_prime, double alpha, double beta, double t) {
  if (n < 1 || n_prime < 1) throw std::invalid_argument("toeplitz_echo: chain lengths must be at least 1");
  const auto [a, b] = echo_columns(n, n_prime, alpha, beta, t);
  return infidelity(a, b);
}

std::pair<complex_t, complex_t> rescaling_check(std::size_t n, std::size_t n_prime, double alpha, double beta,
                                                double t) {
  return {toeplitz_echo(n, n_prime, alpha, beta, t), toeplitz_echo(n, n_prime, 0.0, 1.0, beta * t)};
}

}  // namespace krylov
