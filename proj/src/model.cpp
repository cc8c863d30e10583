#include "beambounds/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "beambounds/errors.hpp"

namespace beambounds {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.push_back(0.0);
}

Polynomial Polynomial::affine(double c0, double c1) { return Polynomial({c0, c1}); }

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coefficients_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(coefficients_.size() - 1);
  for (std::size_t i = 1; i < coefficients_.size(); ++i) d[i - 1] = static_cast<double>(i) * coefficients_[i];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> c(coefficients_.size() + other.coefficients_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    for (std::size_t j = 0; j < other.coefficients_.size(); ++j)
      c[i + j] += coefficients_[i] * other.coefficients_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<double> c = coefficients_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw InvalidArgument("Polynomial::pow: negative exponent");
  Polynomial result({1.0});
  for (int i = 0; i < exponent; ++i) result = result * *this;
  return result;
}

// ---------------------------------------------------------------------------
// DimensionProfile

DimensionProfile::DimensionProfile(Kind kind, std::vector<double> breakpoints,
                                   std::vector<double> values)
    : kind_(kind), breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidArgument("dimension profile values must be positive and finite");
}

DimensionProfile DimensionProfile::constant(double value) {
  return DimensionProfile(Kind::Constant, {0.0, 1.0}, {value});
}

DimensionProfile DimensionProfile::piecewise(std::vector<double> segment_fractions,
                                             std::vector<double> values) {
  if (segment_fractions.empty() || segment_fractions.size() != values.size())
    throw InvalidArgument("piecewise profile: need one fraction per segment value");
  std::vector<double> breakpoints{0.0};
  double total = 0.0;
  for (double f : segment_fractions) {
    if (!(f > 0.0)) throw InvalidArgument("piecewise profile: segment fractions must be positive");
    total += f;
    breakpoints.push_back(total);
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("piecewise profile: segment fractions must sum to 1");
  breakpoints.back() = 1.0;
  return DimensionProfile(Kind::PiecewiseConstant, std::move(breakpoints), std::move(values));
}

DimensionProfile DimensionProfile::equal_segments(std::vector<double> values) {
  const std::size_t r = values.size();
  if (r == 0) throw InvalidArgument("piecewise profile: no segments");
  std::vector<double> breakpoints(r + 1);
  for (std::size_t j = 0; j <= r; ++j) breakpoints[j] = static_cast<double>(j) / static_cast<double>(r);
  return DimensionProfile(Kind::PiecewiseConstant, std::move(breakpoints), std::move(values));
}

DimensionProfile DimensionProfile::affine(double start, double end) {
  return DimensionProfile(Kind::Affine, {0.0, 1.0}, {start, end});
}

double DimensionProfile::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double DimensionProfile::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

// ---------------------------------------------------------------------------
// BeamGeometry

BeamGeometry::BeamGeometry(double length, double youngs_modulus, CrossSection section)
    : length_(length), youngs_modulus_(youngs_modulus), section_(std::move(section)) {
  if (!(length_ > 0.0)) throw InvalidArgument("beam length must be positive");
  if (!(youngs_modulus_ > 0.0)) throw InvalidArgument("Young's modulus must be positive");
  if (const auto* rect = std::get_if<RectangularSection>(&section_)) {
    if (!(rect->width > 0.0)) throw InvalidArgument("section width must be positive");
  }
}

const DimensionProfile& BeamGeometry::dimension() const {
  return std::visit(
      [](const auto& s) -> const DimensionProfile& {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, RectangularSection>)
          return s.thickness;
        else
          return s.radius;
      },
      section_);
}

bool BeamGeometry::is_uniform() const { return dimension().kind() == DimensionProfile::Kind::Constant; }

int BeamGeometry::dimension_power() const {
  return std::holds_alternative<RectangularSection>(section_) ? 3 : 4;
}

double BeamGeometry::load_scale() const {
  if (const auto* rect = std::get_if<RectangularSection>(&section_))
    return youngs_modulus_ * rect->width / 12.0;
  return youngs_modulus_ * std::numbers::pi / 4.0;
}

// ---------------------------------------------------------------------------
// StiffnessProfile

StiffnessProfile StiffnessProfile::uniform(double length, double value) {
  if (!(length > 0.0)) throw InvalidArgument("profile length must be positive");
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidArgument("uniform stiffness must be positive");
  StiffnessProfile p;
  p.kind_ = Kind::Uniform;
  p.length_ = length;
  p.breakpoints_ = {0.0, length};
  p.values_ = {value};
  p.compute_bounds();
  return p;
}

StiffnessProfile StiffnessProfile::piecewise_constant(std::vector<double> breakpoints,
                                                      std::vector<double> values) {
  if (breakpoints.size() < 2 || values.size() + 1 != breakpoints.size())
    throw InvalidArgument("piecewise stiffness: need r+1 breakpoints for r values");
  if (breakpoints.front() != 0.0) throw InvalidArgument("piecewise stiffness: first breakpoint must be 0");
  for (std::size_t j = 1; j < breakpoints.size(); ++j)
    if (!(breakpoints[j] > breakpoints[j - 1]))
      throw InvalidArgument("piecewise stiffness: breakpoints must be strictly increasing");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("piecewise stiffness: values must be positive");
  StiffnessProfile p;
  p.kind_ = Kind::PiecewiseConstant;
  p.length_ = breakpoints.back();
  p.breakpoints_ = std::move(breakpoints);
  p.values_ = std::move(values);
  p.compute_bounds();
  return p;
}

StiffnessProfile StiffnessProfile::polynomial(double length, Polynomial poly, bool monotone) {
  if (!(length > 0.0)) throw InvalidArgument("profile length must be positive");
  StiffnessProfile p;
  p.kind_ = Kind::Polynomial;
  p.length_ = length;
  p.breakpoints_ = {0.0, length};
  p.polynomial_ = std::move(poly);
  p.monotone_ = monotone;
  p.compute_bounds();
  if (!(p.lower_ > 0.0)) throw InvalidArgument("polynomial stiffness must be positive on [0, L]");
  return p;
}

void StiffnessProfile::compute_bounds() {
  switch (kind_) {
    case Kind::Uniform:
    case Kind::PiecewiseConstant:
      lower_ = *std::min_element(values_.begin(), values_.end());
      upper_ = *std::max_element(values_.begin(), values_.end());
      return;
    case Kind::Polynomial:
      break;
  }
  const double a = polynomial_(0.0);
  const double b = polynomial_(length_);
  lower_ = std::min(a, b);
  upper_ = std::max(a, b);
  if (monotone_) return;
  // Interior extrema: bracket sign changes of p' on a grid, then bisect.
  const Polynomial dp = polynomial_.derivative();
  constexpr int kGrid = 2048;
  double x0 = 0.0;
  double d0 = dp(x0);
  for (int i = 1; i <= kGrid; ++i) {
    double x1 = length_ * i / kGrid;
    double d1 = dp(x1);
    if (d0 == 0.0 || d0 * d1 < 0.0) {
      double lo = x0, hi = x1;
      for (int it = 0; it < 80 && d0 != 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (dp(lo) * dp(mid) <= 0.0) hi = mid; else lo = mid;
      }
      const double v = polynomial_(d0 == 0.0 ? x0 : 0.5 * (lo + hi));
      lower_ = std::min(lower_, v);
      upper_ = std::max(upper_, v);
    }
    x0 = x1;
    d0 = d1;
  }
}

double StiffnessProfile::operator()(double x) const {
  switch (kind_) {
    case Kind::Uniform:
      return values_.front();
    case Kind::PiecewiseConstant: {
      auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
      auto j = static_cast<std::ptrdiff_t>(it - breakpoints_.begin()) - 1;
      j = std::clamp<std::ptrdiff_t>(j, 0, static_cast<std::ptrdiff_t>(values_.size()) - 1);
      return values_[static_cast<std::size_t>(j)];
    }
    case Kind::Polynomial:
      return polynomial_(x);
  }
  return 0.0;
}

int StiffnessProfile::segment_containing(double a, double b) const {
  const double tol = kAlignmentTolerance * length_;
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j)
    if (a >= breakpoints_[j] - tol && b <= breakpoints_[j + 1] + tol) return static_cast<int>(j);
  return -1;
}

StiffnessProfile StiffnessProfile::scaled(double s) const {
  if (!(s > 0.0)) throw InvalidArgument("stiffness scale must be positive");
  StiffnessProfile p = *this;
  for (double& v : p.values_) v *= s;
  p.polynomial_ = polynomial_ * s;
  p.lower_ *= s;
  p.upper_ *= s;
  return p;
}

// ---------------------------------------------------------------------------
// Mesh

Mesh::Mesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw InvalidArgument("mesh needs at least one element");
  if (nodes_.front() != 0.0) throw InvalidArgument("mesh must start at x = 0");
  for (std::size_t k = 1; k < nodes_.size(); ++k)
    if (!(nodes_[k] > nodes_[k - 1])) throw InvalidArgument("mesh nodes must be strictly increasing");
}

double Mesh::max_element_length() const {
  double h = 0.0;
  for (std::size_t k = 0; k < num_elements(); ++k) h = std::max(h, element_length(k));
  return h;
}

Mesh Mesh::bisected() const {
  std::vector<double> fine;
  fine.reserve(2 * nodes_.size() - 1);
  for (std::size_t k = 0; k < num_elements(); ++k) {
    fine.push_back(nodes_[k]);
    fine.push_back(0.5 * (nodes_[k] + nodes_[k + 1]));
  }
  fine.push_back(nodes_.back());
  return Mesh(std::move(fine));
}

Mesh make_uniform_mesh(double length, int num_elements) {
  if (!(length > 0.0)) throw InvalidArgument("make_uniform_mesh: length must be positive");
  if (num_elements < 1) throw InvalidArgument("make_uniform_mesh: need at least one element");
  std::vector<double> nodes(static_cast<std::size_t>(num_elements) + 1);
  for (int k = 0; k <= num_elements; ++k) nodes[k] = length * k / num_elements;
  nodes.back() = length;
  return Mesh(std::move(nodes));
}

bool check_alignment(const Mesh& mesh, const StiffnessProfile& profile) {
  if (profile.kind() != StiffnessProfile::Kind::PiecewiseConstant) return true;
  const double tol = kAlignmentTolerance * profile.length();
  if (std::abs(mesh.length() - profile.length()) > tol) return false;
  const auto nodes = mesh.nodes();
  for (double y : profile.breakpoints()) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), y - tol);
    if (it == nodes.end() || std::abs(*it - y) > tol) return false;
  }
  return true;
}

namespace {

StiffnessProfile profile_from_dimension(double length, const DimensionProfile& d, int power, double scale) {
  switch (d.kind()) {
    case DimensionProfile::Kind::Constant:
      return StiffnessProfile::uniform(length, scale * std::pow(d.values()[0], power));
    case DimensionProfile::Kind::PiecewiseConstant: {
      std::vector<double> breakpoints;
      for (double y : d.breakpoints()) breakpoints.push_back(y * length);
      breakpoints.back() = length;
      std::vector<double> values;
      for (double v : d.values()) values.push_back(scale * std::pow(v, power));
      return StiffnessProfile::piecewise_constant(std::move(breakpoints), std::move(values));
    }
    case DimensionProfile::Kind::Affine: {
      const double start = d.values()[0];
      const double end = d.values()[1];
      Polynomial p = Polynomial::affine(start, (end - start) / length).pow(power) * scale;
      return StiffnessProfile::polynomial(length, std::move(p), /*monotone=*/true);
    }
  }
  throw UnsupportedProfile("unsupported dimension profile");
}

}  // namespace

StiffnessProfile stiffness_from_geometry(const BeamGeometry& geometry) {
  return profile_from_dimension(geometry.length(), geometry.dimension(), geometry.dimension_power(),
                                geometry.load_scale());
}

StiffnessProfile scaled_stiffness_from_geometry(const BeamGeometry& geometry) {
  return profile_from_dimension(geometry.length(), geometry.dimension(), geometry.dimension_power(), 1.0);
}

}  // namespace beambounds
