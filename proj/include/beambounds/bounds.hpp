#pragma once

// Guaranteed two-sided eigenvalue bounds for the clamped beam.
//
// Upper bounds are the conforming Hermite eigenvalues P_{h,i}. Lower bounds
// use the explicit interpolation constant C_h = h_EI / (2π), where
//   h_EI² = max_k h_k² / κ_k,   κ_k = min over element k of E(x)I(x),
// and the transform P_low = P / (1 + P C_h²). For piecewise-constant
// stiffness on an aligned mesh P is P_{h,i} itself; otherwise P is the
// eigenvalue of the auxiliary problem with stiffness κ(x), which can only
// be smaller than the true one.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "beambounds/eigensolve.hpp"
#include "beambounds/model.hpp"

namespace beambounds {

enum class KappaProvenance {
  Exact,             // stiffness constant on each element
  EndpointMonotone,  // monotone stiffness, infimum at an element endpoint
};

struct KappaVector {
  std::vector<double> values;
  KappaProvenance provenance = KappaProvenance::Exact;
};

/// Per-element infima of the stiffness. Throws UnsupportedProfile for a
/// polynomial profile not known to be monotone, MisalignedMesh for a
/// piecewise-constant profile whose breakpoints miss the mesh nodes.
KappaVector kappa_vector(const Mesh& mesh, const StiffnessProfile& profile);

/// h_EI = sqrt(max_k h_k² / κ_k).
double scaled_mesh_size(const Mesh& mesh, const KappaVector& kappa);

struct InterpolationConstant {
  double value;    // C_h
  double squared;  // C_h²
};

InterpolationConstant interpolation_constant(double scaled_mesh_size);

/// upper / (1 + upper · c_squared).
double lower_bound(double upper, double c_squared);

struct EigenvalueBounds {
  double lower;
  double upper;
  double eta_rel;    // (upper − lower) / upper
  double auxiliary;  // eigenvalue fed to the lower-bound transform
};

struct BoundsReport {
  std::vector<EigenvalueBounds> bounds;
  double scaled_mesh_size = 0.0;  // h_EI
  InterpolationConstant constant{0.0, 0.0};
  double mesh_size = 0.0;  // h
  std::size_t num_elements = 0;
  KappaProvenance provenance = KappaProvenance::Exact;
  bool guaranteed = false;
  bool used_auxiliary = false;
  EigenResult upper_solve;
  std::optional<EigenResult> auxiliary_solve;
};

BoundsReport two_sided_bounds(const Mesh& mesh, const StiffnessProfile& profile, std::size_t m,
                              const SolverOptions& options = {});

/// Stepped rectangular beam in the t³-weighted form: eigenvalues are
/// λ = 12 P / (E b) in metres. `breakpoints` are absolute (0 .. L).
BoundsReport stepped_scaled_bounds(const Mesh& mesh, std::span<const double> breakpoints,
                                   std::span<const double> thicknesses, std::size_t m,
                                   const SolverOptions& options = {});

/// P = E b λ / 12.
double rectangular_load(double lambda, double youngs_modulus, double width);
/// P = E π λ / 4.
double circular_load(double lambda, double youngs_modulus);

struct AnalyticEigenvalue {
  double lambda;  // 4π² t³ / L² or 4π² r⁴ / L²  [m]
  double load;    // P_1 [N]
};

/// Closed-form first eigenvalue of a uniform clamped beam. Throws
/// UnsupportedProfile for non-uniform geometry.
AnalyticEigenvalue analytic_first_eigenvalue(const BeamGeometry& geometry);

/// First `count` eigenvalues λ_i = (k_i / L)² d^p of a uniform clamped beam:
/// k = 2nπ for symmetric modes, k = 2x with tan x = x for antisymmetric ones.
std::vector<AnalyticEigenvalue> analytic_eigenvalues(const BeamGeometry& geometry, std::size_t count);

}  // namespace beambounds
