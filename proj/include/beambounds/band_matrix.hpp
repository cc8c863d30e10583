#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace beambounds {

/// Symmetric matrix stored as its lower band: entries (i, j) with
/// 0 <= i - j <= bandwidth. Entries outside the band are zero.
class SymmetricBandMatrix {
 public:
  SymmetricBandMatrix() = default;
  SymmetricBandMatrix(std::size_t size, std::size_t bandwidth);

  std::size_t size() const { return size_; }
  std::size_t bandwidth() const { return bandwidth_; }

  double operator()(std::size_t i, std::size_t j) const;
  /// Adds v at (i, j); (j, i) is implied by symmetry.
  void add(std::size_t i, std::size_t j, double v);

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  /// |A| |x|, entrywise absolute values.
  Eigen::VectorXd multiply_abs(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;
  SymmetricBandMatrix scaled(double s) const;

 private:
  double& at(std::size_t i, std::size_t j) { return data_[i * (bandwidth_ + 1) + (i - j)]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * (bandwidth_ + 1) + (i - j)]; }

  std::size_t size_ = 0;
  std::size_t bandwidth_ = 0;
  std::vector<double> data_;
};

/// Band Cholesky factor L (A = L Lᵀ) with the same bandwidth as A.
class BandCholesky {
 public:
  /// Throws FactorizationFailure when A is not numerically positive definite.
  explicit BandCholesky(const SymmetricBandMatrix& a);

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  std::size_t size() const { return factor_.size(); }

 private:
  SymmetricBandMatrix factor_;
};

}  // namespace beambounds
