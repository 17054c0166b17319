#include "krylov/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace krylov {

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> d, std::vector<double> e)
    : diag(std::move(d)), offdiag(std::move(e)) {
  if (diag.empty() ? !offdiag.empty() : offdiag.size() + 1 != diag.size()) {
    throw std::invalid_argument("SymmetricTridiagonal: offdiag must have exactly size()-1 entries");
  }
}

SymmetricTridiagonal SymmetricTridiagonal::homogeneous(std::size_t n, double alpha, double beta) {
  if (n == 0) throw std::invalid_argument("SymmetricTridiagonal::homogeneous: n must be positive");
  return SymmetricTridiagonal(std::vector<double>(n, alpha), std::vector<double>(n - 1, beta));
}

SymmetricTridiagonal SymmetricTridiagonal::leading(std::size_t m) const {
  if (m == 0 || m > size()) throw std::invalid_argument("SymmetricTridiagonal::leading: block size out of range");
  return SymmetricTridiagonal(std::vector<double>(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(m)),
                              std::vector<double>(offdiag.begin(), offdiag.begin() + static_cast<std::ptrdiff_t>(m - 1)));
}

SymmetricTridiagonal SymmetricTridiagonal::extended(double coupling, double alpha) const {
  SymmetricTridiagonal out = *this;
  if (!out.diag.empty()) out.offdiag.push_back(coupling);
  out.diag.push_back(alpha);
  return out;
}

Eigen::MatrixXd SymmetricTridiagonal::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
      m(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

double SymmetricTridiagonal::max_abs() const {
  double m = 0.0;
  for (double a : diag) m = std::max(m, std::abs(a));
  for (double b : offdiag) m = std::max(m, std::abs(b));
  return m;
}

namespace {

// QL iteration with implicit shifts (EISPACK tql2 layout). e[i] couples
// sites i and i+1; e[n-1] is scratch.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd& v) {
  const std::size_t n = d.size();
  const double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 100;

  double f = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps) throw std::runtime_error("eig_sym_tridiagonal: QL iteration did not converge");

        // Shift from the leading 2x2 block.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          const auto i0 = static_cast<Eigen::Index>(ii);
          for (Eigen::Index k = 0; k < v.rows(); ++k) {
            h = v(k, i0 + 1);
            v(k, i0 + 1) = s * v(k, i0) + c * h;
            v(k, i0) = c * v(k, i0) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace

TridiagonalEigen eig_sym_tridiagonal(const SymmetricTridiagonal& t) {
  const std::size_t n = t.size();
  if (n == 0) throw std::invalid_argument("eig_sym_tridiagonal: empty matrix");

  std::vector<double> d = t.diag;
  std::vector<double> e(n, 0.0);
  std::copy(t.offdiag.begin(), t.offdiag.end(), e.begin());
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(ni, ni);

  ql_implicit(d, e, v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen out;
  out.eigenvalues.resize(ni);
  out.eigenvectors.resize(ni, ni);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    out.eigenvalues[kk] = d[order[k]];
    out.eigenvectors.col(kk) = v.col(static_cast<Eigen::Index>(order[k]));
    for (Eigen::Index i = 0; i < ni; ++i) {
      const double x = out.eigenvectors(i, kk);
      if (x != 0.0) {
        if (x < 0.0) out.eigenvectors.col(kk) *= -1.0;
        break;
      }
    }
  }
  return out;
}

TridiagonalPropagator::TridiagonalPropagator(const SymmetricTridiagonal& t)
    : eig_(eig_sym_tridiagonal(t)), first_row_(eig_.eigenvectors.row(0).transpose()) {}

CVector TridiagonalPropagator::apply(double t, const CVector& v) const {
  if (static_cast<std::size_t>(v.size()) != size()) {
    throw std::invalid_argument("TridiagonalPropagator::apply: dimension mismatch");
  }
  if (t == 0.0) return v;
  const Eigen::MatrixXd& q = eig_.eigenvectors;
  const RVector re = q.transpose() * v.real();
  const RVector im = q.transpose() * v.imag();
  RVector out_re(re.size()), out_im(re.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) {
    const double phase = -eig_.eigenvalues[k] * t;
    const double c = std::cos(phase), s = std::sin(phase);
    out_re[k] = c * re[k] - s * im[k];
    out_im[k] = s * re[k] + c * im[k];
  }
  CVector out(re.size());
  out.real() = q * out_re;
  out.imag() = q * out_im;
  return out;
}

CVector TridiagonalPropagator::evolve_first_site(double t) const {
  const Eigen::Index n = first_row_.size();
  if (t == 0.0) return CVector::Unit(n, 0);
  RVector c_re(n), c_im(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double phase = -eig_.eigenvalues[k] * t;
    c_re[k] = first_row_[k] * std::cos(phase);
    c_im[k] = first_row_[k] * std::sin(phase);
  }
  CVector out(n);
  out.real() = eig_.eigenvectors * c_re;
  out.imag() = eig_.eigenvectors * c_im;
  return out;
}

CVector expi_tridiagonal_apply(const SymmetricTridiagonal& t, double time, const CVector& v) {
  if (static_cast<std::size_t>(v.size()) != t.size()) {
    throw std::invalid_argument("expi_tridiagonal_apply: dimension mismatch");
  }
  return TridiagonalPropagator(t).apply(time, v);
}

}  // namespace krylov
