#include "beambounds/band_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "beambounds/errors.hpp"

namespace beambounds {

SymmetricBandMatrix::SymmetricBandMatrix(std::size_t size, std::size_t bandwidth)
    : size_(size), bandwidth_(bandwidth), data_(size * (bandwidth + 1), 0.0) {}

double SymmetricBandMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bandwidth_) return 0.0;
  return at(i, j);
}

void SymmetricBandMatrix::add(std::size_t i, std::size_t j, double v) {
  if (i < j) std::swap(i, j);
  if (i >= size_ || i - j > bandwidth_) throw InvalidArgument("SymmetricBandMatrix::add: outside band");
  at(i, j) += v;
}

Eigen::VectorXd SymmetricBandMatrix::multiply(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != size_) throw InvalidArgument("band multiply: size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size_));
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j0 = i > bandwidth_ ? i - bandwidth_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double v = at(i, j);
      y[i] += v * x[j];
      y[j] += v * x[i];
    }
    y[i] += at(i, i) * x[i];
  }
  return y;
}

Eigen::VectorXd SymmetricBandMatrix::multiply_abs(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != size_) throw InvalidArgument("band multiply: size mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size_));
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j0 = i > bandwidth_ ? i - bandwidth_ : 0;
    for (std::size_t j = j0; j < i; ++j) {
      const double v = std::abs(at(i, j));
      y[i] += v * std::abs(x[j]);
      y[j] += v * std::abs(x[i]);
    }
    y[i] += std::abs(at(i, i) * x[i]);
  }
  return y;
}

Eigen::MatrixXd SymmetricBandMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(size_);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j0 = i > bandwidth_ ? i - bandwidth_ : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      m(i, j) = at(i, j);
      m(j, i) = at(i, j);
    }
  }
  return m;
}

SymmetricBandMatrix SymmetricBandMatrix::scaled(double s) const {
  SymmetricBandMatrix out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

BandCholesky::BandCholesky(const SymmetricBandMatrix& a) : factor_(a.size(), a.bandwidth()) {
  const std::size_t n = a.size();
  const std::size_t w = a.bandwidth();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k0 = j > w ? j - w : 0;
    double d = a(j, j);
    for (std::size_t k = k0; k < j; ++k) d -= factor_(j, k) * factor_(j, k);
    if (!(d > 0.0) || !std::isfinite(d))
      throw FactorizationFailure("band Cholesky: matrix is not positive definite");
    const double ljj = std::sqrt(d);
    factor_.add(j, j, ljj);
    for (std::size_t i = j + 1; i < std::min(n, j + w + 1); ++i) {
      double s = a(i, j);
      const std::size_t m0 = i > w ? i - w : 0;
      for (std::size_t k = std::max(k0, m0); k < j; ++k) s -= factor_(i, k) * factor_(j, k);
      factor_.add(i, j, s / ljj);
    }
  }
}

Eigen::VectorXd BandCholesky::solve(const Eigen::VectorXd& b) const {
  const std::size_t n = factor_.size();
  const std::size_t w = factor_.bandwidth();
  if (static_cast<std::size_t>(b.size()) != n) throw InvalidArgument("band solve: size mismatch");
  Eigen::VectorXd y = b;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k0 = i > w ? i - w : 0;
    for (std::size_t k = k0; k < i; ++k) y[i] -= factor_(i, k) * y[k];
    y[i] /= factor_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < std::min(n, i + w + 1); ++k) y[i] -= factor_(k, i) * y[k];
    y[i] /= factor_(i, i);
  }
  return y;
}

}  // namespace beambounds
