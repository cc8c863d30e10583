#pragma once

// Numerical checks of the interpolation results behind the lower bounds:
// Hermite interpolation, the Wirtinger-based estimate
//   ‖u − I_h u‖_b <= C_h ‖u − I_h u‖_a,
// and a(u − I_h u, v_h) = 0 for piecewise-constant stiffness on aligned meshes.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beambounds/model.hpp"

namespace beambounds {

/// Closed-form test function on [0, L] with its first two derivatives.
struct SampledFunction {
  std::string name;
  double length = 1.0;
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;
  std::string smoothness;
};

/// Validates the clamped conditions u(0) = u'(0) = u(L) = u'(L) = 0 to 1e-14
/// (relative to the function's scale); throws InvalidArgument otherwise.
SampledFunction make_clamped_function(std::string name, double length, std::function<double(double)> value,
                                      std::function<double(double)> first, std::function<double(double)> second,
                                      std::string smoothness);

/// sin²(πξ), ξ²(1−ξ)², sin²(πξ)cos(2πξ), ξ³(1−ξ)³ with ξ = x/L.
std::vector<SampledFunction> test_corpus(double length = 1.0);

/// C¹ piecewise cubic given by nodal values and slopes.
class HermiteInterpolant {
 public:
  HermiteInterpolant(Mesh mesh, Eigen::VectorXd coefficients);

  const Mesh& mesh() const { return mesh_; }
  /// Interleaved (u_1, u'_1, ..., u_{N+1}, u'_{N+1}).
  const Eigen::VectorXd& coefficients() const { return coefficients_; }

  double value(double x) const;
  double first(double x) const;
  double second(double x) const;
  /// Element-local evaluation, s in [0, 1]; derivative order 0, 1 or 2.
  double evaluate(std::size_t element, double s, int order) const;

  SampledFunction as_function(std::string name) const;

 private:
  std::size_t locate(double x) const;

  Mesh mesh_;
  Eigen::VectorXd coefficients_;
};

HermiteInterpolant hermite_interpolate(const SampledFunction& u, const Mesh& mesh);

struct InterpolationErrorNorms {
  double b_norm;  // ‖w‖_b = (∫ (w')²)^½
  double a_norm;  // ‖w‖_a = (∫ EI (w'')²)^½
};

/// Norms of w = u − I_h u with 20-point Gauss on every element.
InterpolationErrorNorms interpolation_error_norms(const SampledFunction& u, const Mesh& mesh,
                                                  const StiffnessProfile& profile);

/// max over reduced Hermite basis functions v_h of
///   |a(w, v_h)| / (‖w‖_a ‖v_h‖_a),  w = u − I_h u.
/// When ‖w‖_a is below 1e-12 ‖u‖_a (u already in V_h) ‖u‖_a replaces it.
double galerkin_orthogonality_defect(const SampledFunction& u, const Mesh& mesh, const StiffnessProfile& profile);

struct WirtingerResult {
  double ratio;  // ∫f² / [((β−α)²/4π²) ∫(f')²]
  double mean;   // ∫f / (β−α)
  double endpoint_max;  // max(|f(α)|, |f(β)|)
  bool hypotheses_hold;  // zero endpoints and zero mean, to 1e-12
};

WirtingerResult wirtinger_check(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                double alpha, double beta);

struct VerificationRecord {
  std::string check;
  std::string instance;
  double measured;
  double bound;
  bool passed;
};

/// Interpolation estimate, orthogonality (with a quartic-stiffness negative
/// control) and Wirtinger checks over the fixed corpus and N = 2..32.
std::vector<VerificationRecord> run_verification_suite();

/// Plain-text table: check, instance, measured, bound, pass/fail.
std::string format_verification_report(const std::vector<VerificationRecord>& records);

}  // namespace beambounds
