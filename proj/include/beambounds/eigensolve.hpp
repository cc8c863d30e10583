#pragma once

// Smallest eigenpairs of the symmetric-definite pencil A x = λ B x.

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beambounds/band_matrix.hpp"
#include "beambounds/fem.hpp"

namespace beambounds {

enum class SolverMethod { Auto, Dense, ShiftInvert };

struct SolverOptions {
  SolverMethod method = SolverMethod::Auto;
  /// Residual target: ‖A x − λ B x‖ <= rtol (‖A x‖ + λ ‖B x‖).
  double rtol = 1e-10;
  int max_iterations = 500;
  /// Auto uses the dense path up to this dimension.
  std::size_t dense_limit = 2048;
};

struct EigenResult {
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // B-orthonormal columns
  std::vector<double> residuals;    // ‖A x_i − λ_i B x_i‖₂
  // residual / (‖A x_i‖ + λ_i ‖B x_i‖), and the rounding floor of that ratio:
  // u (‖|A||x_i|‖ + λ_i ‖|B||x_i|‖) / (‖A x_i‖ + λ_i ‖B x_i‖), u = 2⁻⁵³.
  std::vector<double> relative_residuals;
  std::vector<double> rounding_floors;
  int iterations = 0;
  std::string method;

  std::size_t size() const { return eigenvalues.size(); }
};

/// A pair is accepted once its relative residual is at most
/// max(rtol, 4 × rounding floor). Below the floor no double-precision vector can
/// do better; on fine meshes of a clamped beam the floor exceeds 1e-10.

/// Dense route: A = L Lᵀ, then the m largest eigenvalues μ of L⁻¹ B L⁻ᵀ give
/// λ = 1/μ. Throws FactorizationFailure if A or B is not positive definite.
EigenResult smallest_eigenpairs_dense(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t m,
                                      const SolverOptions& options = {});

/// Banded route: block inverse iteration (shift 0) with B-orthonormal
/// Gram–Schmidt, Rayleigh–Ritz on the block and locking of converged pairs.
EigenResult smallest_eigenpairs_shift_invert(const SymmetricBandMatrix& a, const SymmetricBandMatrix& b,
                                             std::size_t m, const SolverOptions& options = {});

EigenResult smallest_eigenpairs(const SymmetricBandMatrix& a, const SymmetricBandMatrix& b, std::size_t m,
                                const SolverOptions& options = {});

EigenResult smallest_eigenpairs(const AssembledSystem& system, std::size_t m, const SolverOptions& options = {});

struct ResidualReport {
  std::vector<double> residuals;           // ‖A x_i − λ_i B x_i‖₂
  std::vector<double> relative_residuals;  // residual / (‖A x_i‖ + λ_i ‖B x_i‖)
  std::vector<double> rounding_floors;     // see EigenResult
  double orthonormality_defect = 0.0;      // max |x_iᵀ B x_j − δ_ij|
  double rtol = 0.0;
  bool passed = false;                 // every relative residual and the defect <= rtol
  bool within_rounding_floor = false;  // every relative residual <= max(rtol, 4 × floor)
};

/// Recomputes residual and B-orthonormality norms from scratch. Throws
/// StaleResult when the result does not match the matrix dimensions.
ResidualReport verify_residuals(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const EigenResult& result,
                                double rtol = 1e-10);
ResidualReport verify_residuals(const AssembledSystem& system, const EigenResult& result, double rtol = 1e-10);

}  // namespace beambounds
