#pragma once

// Beam geometry, bending-stiffness profiles and 1D meshes. All quantities
// are SI (m, Pa, N·m²); nothing is converted implicitly.

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace beambounds {

/// Dense univariate polynomial, coefficients in increasing powers of x.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  /// c0 + c1 x.
  static Polynomial affine(double c0, double c1);

  double operator()(double x) const;
  Polynomial derivative() const;
  Polynomial pow(int exponent) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double s) const;

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  std::span<const double> coefficients() const { return coefficients_; }

 private:
  std::vector<double> coefficients_{0.0};
};

/// Thickness or radius along the beam. Breakpoints are stored as fractions
/// of the beam length so a profile does not depend on L.
class DimensionProfile {
 public:
  enum class Kind { Constant, PiecewiseConstant, Affine };

  static DimensionProfile constant(double value);
  /// `segment_fractions` are segment lengths as fractions of L (sum 1).
  static DimensionProfile piecewise(std::vector<double> segment_fractions,
                                    std::vector<double> values);
  static DimensionProfile equal_segments(std::vector<double> values);
  /// Linear from `start` at x = 0 to `end` at x = L.
  static DimensionProfile affine(double start, double end);

  Kind kind() const { return kind_; }
  /// Fractional breakpoints 0 = y_1 < ... < y_{r+1} = 1.
  std::span<const double> breakpoints() const { return breakpoints_; }
  /// Constant: one value. Piecewise: one per segment. Affine: {start, end}.
  std::span<const double> values() const { return values_; }
  double min_value() const;
  double max_value() const;

 private:
  DimensionProfile(Kind kind, std::vector<double> breakpoints, std::vector<double> values);

  Kind kind_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

struct RectangularSection {
  double width;  // b [m]
  DimensionProfile thickness;  // t(x) [m]
};

struct CircularSection {
  DimensionProfile radius;  // r(x) [m]
};

using CrossSection = std::variant<RectangularSection, CircularSection>;

class BeamGeometry {
 public:
  BeamGeometry(double length, double youngs_modulus, CrossSection section);

  double length() const { return length_; }
  double youngs_modulus() const { return youngs_modulus_; }
  const CrossSection& section() const { return section_; }
  bool is_uniform() const;

  /// Factor s with E·I(x) = s · d(x)^p, i.e. E·b/12 (p = 3) or E·π/4 (p = 4).
  /// Eigenvalues of the d^p-weighted problem times s give loads in N.
  double load_scale() const;
  int dimension_power() const;
  const DimensionProfile& dimension() const;

 private:
  double length_;
  double youngs_modulus_;
  CrossSection section_;
};

/// Bending stiffness E(x)I(x) on [0, L].
class StiffnessProfile {
 public:
  enum class Kind { Uniform, PiecewiseConstant, Polynomial };

  static StiffnessProfile uniform(double length, double value);
  /// Absolute breakpoints y_1 = 0 < ... < y_{r+1} = L, one value per segment.
  static StiffnessProfile piecewise_constant(std::vector<double> breakpoints,
                                             std::vector<double> values);
  /// `monotone` asserts the polynomial is monotone on [0, L]; element infima
  /// are then attained at element endpoints.
  static StiffnessProfile polynomial(double length, Polynomial p, bool monotone);

  Kind kind() const { return kind_; }
  double length() const { return length_; }
  double operator()(double x) const;

  /// C1 = inf E·I and C2 = sup E·I over [0, L].
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  const Polynomial& polynomial() const { return polynomial_; }
  bool monotone() const { return monotone_; }

  /// Index of the segment containing [a, b] (piecewise constant only), or
  /// -1 when the interval straddles a breakpoint.
  int segment_containing(double a, double b) const;

  StiffnessProfile scaled(double s) const;

 private:
  StiffnessProfile() = default;
  void compute_bounds();

  Kind kind_ = Kind::Uniform;
  double length_ = 0.0;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  Polynomial polynomial_;
  bool monotone_ = false;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

class Mesh {
 public:
  explicit Mesh(std::vector<double> nodes);

  std::size_t num_elements() const { return nodes_.size() - 1; }
  std::size_t num_nodes() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  double length() const { return nodes_.back(); }
  double element_length(std::size_t k) const { return nodes_[k + 1] - nodes_[k]; }
  /// h = max_k h_k.
  double max_element_length() const;

  /// Every element split at its midpoint; old nodes are kept.
  Mesh bisected() const;

 private:
  std::vector<double> nodes_;
};

Mesh make_uniform_mesh(double length, int num_elements);

/// Absolute node/breakpoint matching tolerance, relative to L.
inline constexpr double kAlignmentTolerance = 1e-12;

bool check_alignment(const Mesh& mesh, const StiffnessProfile& profile);

StiffnessProfile stiffness_from_geometry(const BeamGeometry& geometry);

/// Profile of d(x)^p (t³ or r⁴), i.e. E·I divided by load_scale().
StiffnessProfile scaled_stiffness_from_geometry(const BeamGeometry& geometry);

}  // namespace beambounds
