#include "beambounds/fem.hpp"

#include <array>
#include <vector>

#include "beambounds/errors.hpp"
#include "beambounds/quadrature.hpp"

namespace beambounds {

std::array<double, 4> HermiteBasis::values(double s, double h) {
  const double s2 = s * s, s3 = s2 * s;
  return {1.0 - 3.0 * s2 + 2.0 * s3, h * (s - 2.0 * s2 + s3), 3.0 * s2 - 2.0 * s3, h * (s3 - s2)};
}

std::array<double, 4> HermiteBasis::first_derivatives(double s, double h) {
  const double s2 = s * s;
  return {6.0 * (s2 - s) / h, 1.0 - 4.0 * s + 3.0 * s2, 6.0 * (s - s2) / h, 3.0 * s2 - 2.0 * s};
}

std::array<double, 4> HermiteBasis::second_derivatives(double s, double h) {
  return {(12.0 * s - 6.0) / (h * h), (6.0 * s - 4.0) / h, (6.0 - 12.0 * s) / (h * h), (6.0 * s - 2.0) / h};
}

ElementMatrix element_bending_matrix(double h, double stiffness) {
  if (!(h > 0.0)) throw InvalidArgument("element_bending_matrix: element length must be positive");
  const double c = stiffness / (h * h * h);
  const double h2 = h * h;
  ElementMatrix k;
  k << 12.0, 6.0 * h, -12.0, 6.0 * h,
       6.0 * h, 4.0 * h2, -6.0 * h, 2.0 * h2,
       -12.0, -6.0 * h, 12.0, -6.0 * h,
       6.0 * h, 2.0 * h2, -6.0 * h, 4.0 * h2;
  return c * k;
}

ElementMatrix element_bending_matrix(double x0, double h, const Polynomial& stiffness, int quadrature_points) {
  if (!(h > 0.0)) throw InvalidArgument("element_bending_matrix: element length must be positive");
  const GaussRule& rule = gauss_legendre(quadrature_points);
  ElementMatrix k = ElementMatrix::Zero();
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double s = 0.5 * (rule.nodes[q] + 1.0);
    const double w = 0.5 * h * rule.weights[q] * stiffness(x0 + s * h);
    const auto d2 = HermiteBasis::second_derivatives(s, h);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j <= i; ++j) k(i, j) += w * d2[i] * d2[j];
  }
  // Accumulated as the lower triangle so the result is exactly symmetric.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k(i, j) = k(j, i);
  return k;
}

ElementMatrix element_geometric_matrix(double h) {
  if (!(h > 0.0)) throw InvalidArgument("element_geometric_matrix: element length must be positive");
  const double h2 = h * h;
  ElementMatrix g;
  g << 36.0, 3.0 * h, -36.0, 3.0 * h,
       3.0 * h, 4.0 * h2, -3.0 * h, -h2,
       -36.0, -3.0 * h, 36.0, -3.0 * h,
       3.0 * h, -h2, -3.0 * h, 4.0 * h2;
  return g / (30.0 * h);
}

std::optional<std::size_t> DofMap::index(std::size_t node, DofKind kind) const {
  if (node >= num_nodes_) throw InvalidArgument("DofMap::index: node out of range");
  return reduced(2 * node + (kind == DofKind::Slope ? 1 : 0));
}

std::optional<std::size_t> DofMap::reduced(std::size_t full_index) const {
  if (full_index < 2 || full_index >= 2 * num_nodes_ - 2) return std::nullopt;
  return full_index - 2;
}

namespace {

void scatter(SymmetricBandMatrix& global, const DofMap& dofs, std::size_t element, const ElementMatrix& local) {
  for (int i = 0; i < 4; ++i) {
    const auto gi = dofs.reduced(2 * element + i);
    if (!gi) continue;
    for (int j = 0; j <= i; ++j) {
      const auto gj = dofs.reduced(2 * element + j);
      if (!gj) continue;
      global.add(*gi, *gj, local(i, j));
    }
  }
}

// Local coefficients (u_k, u'_k, u_{k+1}, u'_{k+1}); clamped DOFs are zero.
std::array<double, 4> element_coefficients(const DofMap& dofs, const Eigen::VectorXd& x, std::size_t element) {
  std::array<double, 4> c{};
  for (int i = 0; i < 4; ++i)
    if (const auto g = dofs.reduced(2 * element + i)) c[i] = x[static_cast<Eigen::Index>(*g)];
  return c;
}

double combine(const std::array<double, 4>& basis, const std::array<double, 4>& c) {
  return basis[0] * c[0] + basis[1] * c[1] + basis[2] * c[2] + basis[3] * c[3];
}

void require_coefficients(const Mesh& mesh, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != DofMap(mesh.num_nodes()).size())
    throw InvalidArgument("energy: coefficient vector does not match the mesh");
}

// ∫ over the element of (w'')², w'' linear between the end curvatures.
double curvature_square_integral(double h, const std::array<double, 4>& c) {
  const double c0 = combine(HermiteBasis::second_derivatives(0.0, h), c);
  const double c1 = combine(HermiteBasis::second_derivatives(1.0, h), c);
  return h * (c0 * c0 + c0 * c1 + c1 * c1) / 3.0;
}

void require_interior(const Mesh& mesh) {
  if (mesh.num_elements() < 2)
    throw InvalidArgument("clamped beam needs at least two elements (one free node)");
}

}  // namespace

SymmetricBandMatrix assemble_bending(const Mesh& mesh, const StiffnessProfile& profile, int quadrature_points) {
  require_interior(mesh);
  if (!check_alignment(mesh, profile))
    throw MisalignedMesh("mesh does not align with the piecewise-constant stiffness breakpoints");
  const DofMap dofs(mesh.num_nodes());
  SymmetricBandMatrix a(dofs.size(), kHermiteBandwidth);
  const auto nodes = mesh.nodes();
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    ElementMatrix local;
    switch (profile.kind()) {
      case StiffnessProfile::Kind::Uniform:
        local = element_bending_matrix(h, profile.values()[0]);
        break;
      case StiffnessProfile::Kind::PiecewiseConstant: {
        const int seg = profile.segment_containing(nodes[k], nodes[k + 1]);
        if (seg < 0) throw MisalignedMesh("element straddles a stiffness breakpoint");
        local = element_bending_matrix(h, profile.values()[static_cast<std::size_t>(seg)]);
        break;
      }
      case StiffnessProfile::Kind::Polynomial:
        local = element_bending_matrix(nodes[k], h, profile.polynomial(), quadrature_points);
        break;
    }
    scatter(a, dofs, k, local);
  }
  return a;
}

SymmetricBandMatrix assemble_bending(const Mesh& mesh, std::span<const double> element_stiffness) {
  require_interior(mesh);
  if (element_stiffness.size() != mesh.num_elements())
    throw InvalidArgument("assemble_bending: one stiffness value per element required");
  const DofMap dofs(mesh.num_nodes());
  SymmetricBandMatrix a(dofs.size(), kHermiteBandwidth);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k)
    scatter(a, dofs, k, element_bending_matrix(mesh.element_length(k), element_stiffness[k]));
  return a;
}

SymmetricBandMatrix assemble_geometric(const Mesh& mesh) {
  require_interior(mesh);
  const DofMap dofs(mesh.num_nodes());
  SymmetricBandMatrix b(dofs.size(), kHermiteBandwidth);
  for (std::size_t k = 0; k < mesh.num_elements(); ++k)
    scatter(b, dofs, k, element_geometric_matrix(mesh.element_length(k)));
  return b;
}

double bending_energy(const Mesh& mesh, const StiffnessProfile& profile, const Eigen::VectorXd& x,
                      int quadrature_points) {
  require_coefficients(mesh, x);
  if (profile.kind() != StiffnessProfile::Kind::Polynomial) {
    if (!check_alignment(mesh, profile))
      throw MisalignedMesh("mesh does not align with the piecewise-constant stiffness breakpoints");
    std::vector<double> stiffness;
    const auto nodes = mesh.nodes();
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
      const int seg = profile.segment_containing(nodes[k], nodes[k + 1]);
      if (seg < 0) throw MisalignedMesh("element straddles a stiffness breakpoint");
      stiffness.push_back(profile.values()[static_cast<std::size_t>(seg)]);
    }
    return bending_energy(mesh, stiffness, x);
  }
  const DofMap dofs(mesh.num_nodes());
  const GaussRule& rule = gauss_legendre(quadrature_points);
  const auto nodes = mesh.nodes();
  double total = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    const auto c = element_coefficients(dofs, x, k);
    const double c0 = combine(HermiteBasis::second_derivatives(0.0, h), c);
    const double c1 = combine(HermiteBasis::second_derivatives(1.0, h), c);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);
      const double curvature = (1.0 - s) * c0 + s * c1;
      total += 0.5 * h * rule.weights[q] * profile(nodes[k] + s * h) * curvature * curvature;
    }
  }
  return total;
}

double bending_energy(const Mesh& mesh, std::span<const double> element_stiffness, const Eigen::VectorXd& x) {
  require_coefficients(mesh, x);
  if (element_stiffness.size() != mesh.num_elements())
    throw InvalidArgument("bending_energy: one stiffness value per element required");
  const DofMap dofs(mesh.num_nodes());
  double total = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k)
    total += element_stiffness[k] * curvature_square_integral(mesh.element_length(k), element_coefficients(dofs, x, k));
  return total;
}

double geometric_energy(const Mesh& mesh, const Eigen::VectorXd& x) {
  require_coefficients(mesh, x);
  const DofMap dofs(mesh.num_nodes());
  const GaussRule& rule = gauss_legendre(3);  // (w')² has degree 4
  double total = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    const auto c = element_coefficients(dofs, x, k);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double slope = combine(HermiteBasis::first_derivatives(0.5 * (rule.nodes[q] + 1.0), h), c);
      total += 0.5 * h * rule.weights[q] * slope * slope;
    }
  }
  return total;
}

AssembledSystem assemble(const Mesh& mesh, const StiffnessProfile& profile, int quadrature_points) {
  AssembledSystem system{assemble_bending(mesh, profile, quadrature_points), assemble_geometric(mesh),
                         DofMap(mesh.num_nodes()), quadrature_points};
  try {
    BandCholesky{system.bending};
    BandCholesky{system.geometric};
  } catch (const FactorizationFailure&) {
    throw FactorizationFailure("assemble: singular system (A or B not positive definite)");
  }
  return system;
}

}  // namespace beambounds
