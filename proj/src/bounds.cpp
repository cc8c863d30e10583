#include "beambounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "beambounds/errors.hpp"
#include "beambounds/fem.hpp"

namespace beambounds {

KappaVector kappa_vector(const Mesh& mesh, const StiffnessProfile& profile) {
  KappaVector kappa;
  kappa.values.reserve(mesh.num_elements());
  const auto nodes = mesh.nodes();
  switch (profile.kind()) {
    case StiffnessProfile::Kind::Uniform:
      kappa.values.assign(mesh.num_elements(), profile.values()[0]);
      kappa.provenance = KappaProvenance::Exact;
      break;
    case StiffnessProfile::Kind::PiecewiseConstant:
      if (!check_alignment(mesh, profile))
        throw MisalignedMesh("kappa_vector: mesh does not align with the stiffness breakpoints");
      for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
        const int seg = profile.segment_containing(nodes[k], nodes[k + 1]);
        if (seg < 0) throw MisalignedMesh("kappa_vector: element straddles a breakpoint");
        kappa.values.push_back(profile.values()[static_cast<std::size_t>(seg)]);
      }
      kappa.provenance = KappaProvenance::Exact;
      break;
    case StiffnessProfile::Kind::Polynomial:
      if (!profile.monotone())
        throw UnsupportedProfile("kappa_vector: element infimum of a general polynomial cannot be certified");
      for (std::size_t k = 0; k < mesh.num_elements(); ++k)
        kappa.values.push_back(std::min(profile(nodes[k]), profile(nodes[k + 1])));
      kappa.provenance = KappaProvenance::EndpointMonotone;
      break;
  }
  return kappa;
}

double scaled_mesh_size(const Mesh& mesh, const KappaVector& kappa) {
  if (kappa.values.size() != mesh.num_elements())
    throw InvalidArgument("scaled_mesh_size: one kappa per element required");
  double worst = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    worst = std::max(worst, h * h / kappa.values[k]);
  }
  return std::sqrt(worst);
}

InterpolationConstant interpolation_constant(double scaled_mesh_size) {
  if (!(scaled_mesh_size > 0.0)) throw InvalidArgument("interpolation_constant: h_EI must be positive");
  const double c = scaled_mesh_size / (2.0 * std::numbers::pi);
  return {c, c * c};
}

double lower_bound(double upper, double c_squared) { return upper / (1.0 + upper * c_squared); }

BoundsReport two_sided_bounds(const Mesh& mesh, const StiffnessProfile& profile, std::size_t m,
                              const SolverOptions& options) {
  if (m < 1) throw InvalidArgument("two_sided_bounds: need m >= 1");
  const KappaVector kappa = kappa_vector(mesh, profile);

  BoundsReport report;
  report.num_elements = mesh.num_elements();
  report.mesh_size = mesh.max_element_length();
  report.provenance = kappa.provenance;
  report.guaranteed = true;
  report.scaled_mesh_size = scaled_mesh_size(mesh, kappa);
  report.constant = interpolation_constant(report.scaled_mesh_size);

  const AssembledSystem system = assemble(mesh, profile);
  report.upper_solve = smallest_eigenpairs(system, m, options);
  const EigenResult* lower_source = &report.upper_solve;

  if (profile.kind() == StiffnessProfile::Kind::Polynomial) {
    // Auxiliary problem: same mesh and B, stiffness replaced by κ(x).
    const SymmetricBandMatrix auxiliary = assemble_bending(mesh, kappa.values);
    report.auxiliary_solve = smallest_eigenpairs(auxiliary, system.geometric, m, options);
    report.used_auxiliary = true;
    lower_source = &*report.auxiliary_solve;
  }

  // Eigenvalues are re-evaluated as energy Rayleigh quotients of the computed
  // vectors; on fine meshes this recovers digits the algebraic solve loses.
  auto quotient = [&](const Eigen::VectorXd& x, bool auxiliary) {
    const double num = auxiliary ? bending_energy(mesh, kappa.values, x) : bending_energy(mesh, profile, x);
    return num / geometric_energy(mesh, x);
  };
  for (std::size_t i = 0; i < m; ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    const double upper = quotient(report.upper_solve.eigenvectors.col(col), false);
    const double aux = quotient(lower_source->eigenvectors.col(col), report.used_auxiliary);
    const double lower = lower_bound(aux, report.constant.squared);
    report.bounds.push_back({lower, upper, (upper - lower) / upper, aux});
  }
  return report;
}

BoundsReport stepped_scaled_bounds(const Mesh& mesh, std::span<const double> breakpoints,
                                   std::span<const double> thicknesses, std::size_t m,
                                   const SolverOptions& options) {
  std::vector<double> cubes;
  cubes.reserve(thicknesses.size());
  for (double t : thicknesses) {
    if (!(t > 0.0)) throw InvalidArgument("stepped_scaled_bounds: thicknesses must be positive");
    cubes.push_back(t * t * t);
  }
  const auto profile = StiffnessProfile::piecewise_constant({breakpoints.begin(), breakpoints.end()}, cubes);
  return two_sided_bounds(mesh, profile, m, options);
}

double rectangular_load(double lambda, double youngs_modulus, double width) {
  return youngs_modulus * width * lambda / 12.0;
}

double circular_load(double lambda, double youngs_modulus) {
  return youngs_modulus * std::numbers::pi * lambda / 4.0;
}

AnalyticEigenvalue analytic_first_eigenvalue(const BeamGeometry& geometry) {
  if (!geometry.is_uniform())
    throw UnsupportedProfile("analytic_first_eigenvalue: only uniform cross-sections have a closed form");
  const double d = geometry.dimension().values()[0];
  const double length = geometry.length();
  const double lambda =
      4.0 * std::numbers::pi * std::numbers::pi * std::pow(d, geometry.dimension_power()) / (length * length);
  return {lambda, geometry.load_scale() * lambda};
}

std::vector<AnalyticEigenvalue> analytic_eigenvalues(const BeamGeometry& geometry, std::size_t count) {
  if (!geometry.is_uniform())
    throw UnsupportedProfile("analytic_eigenvalues: only uniform cross-sections have a closed form");
  constexpr double pi = std::numbers::pi;
  // Wavenumbers k of the clamped-clamped buckling modes on a unit interval.
  std::vector<double> wavenumbers;
  for (int n = 1; wavenumbers.size() < 2 * count + 2; ++n) {
    wavenumbers.push_back(2.0 * n * pi);
    // Root of tan x = x in (nπ, nπ + π/2).
    double lo = n * pi, hi = n * pi + 0.5 * pi - 1e-12;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::tan(mid) - mid < 0.0) lo = mid; else hi = mid;
    }
    wavenumbers.push_back(lo + hi);
  }
  std::sort(wavenumbers.begin(), wavenumbers.end());
  const double d = std::pow(geometry.dimension().values()[0], geometry.dimension_power());
  const double length = geometry.length();
  std::vector<AnalyticEigenvalue> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double k = wavenumbers[i] / length;
    const double lambda = k * k * d;
    out.push_back({lambda, geometry.load_scale() * lambda});
  }
  return out;
}

}  // namespace beambounds
