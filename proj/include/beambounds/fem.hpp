#pragma once

// Cubic Hermite elements for the clamped beam: element matrices of the
// bending form a(u,v) = ∫ EI u'' v'' and the geometric form b(u,v) = ∫ u' v',
// global assembly, and elimination of the clamped degrees of freedom.

#include <array>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "beambounds/band_matrix.hpp"
#include "beambounds/model.hpp"

namespace beambounds {

using ElementMatrix = Eigen::Matrix4d;

/// Local DOF order on an element: (u_left, u'_left, u_right, u'_right).
/// `s` is the reference coordinate in [0, 1], `h` the element length;
/// derivatives are with respect to the physical coordinate x = x0 + s h.
struct HermiteBasis {
  static std::array<double, 4> values(double s, double h);
  static std::array<double, 4> first_derivatives(double s, double h);
  static std::array<double, 4> second_derivatives(double s, double h);
};

inline constexpr int kDefaultQuadraturePoints = 5;

/// Closed-form beam stiffness matrix for constant EI.
ElementMatrix element_bending_matrix(double h, double stiffness);

/// Gauss–Legendre integration of EI(x) φ_i'' φ_j'' over [x0, x0 + h]. An
/// n-point rule is exact while deg(EI) + 2 <= 2n - 1.
ElementMatrix element_bending_matrix(double x0, double h, const Polynomial& stiffness,
                                     int quadrature_points = kDefaultQuadraturePoints);

/// Closed-form ∫ φ_i' φ_j' over an element of length h.
ElementMatrix element_geometric_matrix(double h);

enum class DofKind { Deflection, Slope };

/// Interleaved numbering (u_1, u'_1, u_2, u'_2, ...) with the four clamped
/// DOFs at x = 0 and x = L removed.
class DofMap {
 public:
  explicit DofMap(std::size_t num_nodes) : num_nodes_(num_nodes) {}

  std::size_t size() const { return 2 * num_nodes_ - 4; }
  std::size_t num_nodes() const { return num_nodes_; }
  /// Reduced index, or nullopt for a clamped DOF.
  std::optional<std::size_t> index(std::size_t node, DofKind kind) const;
  /// Reduced index of full (interleaved) index g, or nullopt if clamped.
  std::optional<std::size_t> reduced(std::size_t full_index) const;

 private:
  std::size_t num_nodes_;
};

/// Half-bandwidth of the interleaved Hermite system (full bandwidth 7).
inline constexpr std::size_t kHermiteBandwidth = 3;

struct AssembledSystem {
  SymmetricBandMatrix bending;    // A
  SymmetricBandMatrix geometric;  // B
  DofMap dofs;
  int quadrature_points;

  std::size_t dimension() const { return dofs.size(); }
};

/// Bending matrix of the clamped-reduced system. Piecewise-constant profiles
/// require an aligned mesh (MisalignedMesh otherwise).
SymmetricBandMatrix assemble_bending(const Mesh& mesh, const StiffnessProfile& profile,
                                     int quadrature_points = kDefaultQuadraturePoints);

/// Bending matrix for a per-element constant stiffness.
SymmetricBandMatrix assemble_bending(const Mesh& mesh, std::span<const double> element_stiffness);

SymmetricBandMatrix assemble_geometric(const Mesh& mesh);

/// Assembles A and B and checks both factorize (FactorizationFailure if not).
AssembledSystem assemble(const Mesh& mesh, const StiffnessProfile& profile,
                         int quadrature_points = kDefaultQuadraturePoints);

/// Energies of the finite element function with reduced coefficients x:
/// ∫ EI (w'')² and ∫ (w')², summed element by element from the local
/// curvature and slope. Their ratio is the Rayleigh quotient xᵀAx / xᵀBx
/// without the cancellation that limits xᵀAx to about u·cond(A) on fine meshes.
double bending_energy(const Mesh& mesh, const StiffnessProfile& profile, const Eigen::VectorXd& x,
                      int quadrature_points = kDefaultQuadraturePoints);
double bending_energy(const Mesh& mesh, std::span<const double> element_stiffness, const Eigen::VectorXd& x);
double geometric_energy(const Mesh& mesh, const Eigen::VectorXd& x);

}  // namespace beambounds
