#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beambounds/bounds.hpp"
#include "beambounds/errors.hpp"
#include "beambounds/study.hpp"

using namespace beambounds;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kT3 = 0.015 * 0.015 * 0.015;
}  // namespace

TEST(ScaledMeshSize, UniformRectangularQuarterMesh) {
  const Mesh mesh = make_uniform_mesh(1.0, 4);
  const auto kappa = kappa_vector(mesh, StiffnessProfile::uniform(1.0, kT3));
  const double h = scaled_mesh_size(mesh, kappa);
  EXPECT_NEAR(h * h, 18518.52, 0.01);
  EXPECT_EQ(kappa.provenance, KappaProvenance::Exact);
}

TEST(InterpolationConstant, MatchesClosedForm) {
  const auto c = interpolation_constant(std::sqrt(0.25 / kT3));
  EXPECT_NEAR(c.squared, 0.25 / (4.0 * kPi * kPi * kT3), 1e-9);
  EXPECT_NEAR(c.squared, 1876.32, 0.01);
  EXPECT_NEAR(c.value * c.value, c.squared, 1e-9);
  // Stepped beam at h = 1/8, thinnest segment t = 0.010.
  EXPECT_NEAR(interpolation_constant(std::sqrt((1.0 / 64.0) / 1e-6)).squared, 395.79, 0.01);
  EXPECT_THROW(interpolation_constant(0.0), InvalidArgument);
}

TEST(LowerBound, ReproducesTableOneRows) {
  const double c2_half = 0.25 / (4.0 * kPi * kPi * kT3);
  EXPECT_NEAR(lower_bound(1.350000e-4, c2_half), 1.077154e-4, 5e-11);
  const double c2_quarter = 0.0625 / (4.0 * kPi * kPi * kT3);
  // The printed upper bound is rounded, so the result may differ by one unit.
  EXPECT_NEAR(lower_bound(1.342419e-4, c2_quarter), 1.262895e-4, 1e-10);
  // Equivalent form 1 / (1/λ + C²) and monotonicity in both arguments.
  EXPECT_NEAR(lower_bound(2.0, 3.0), 1.0 / (0.5 + 3.0), 1e-15);
  EXPECT_LT(lower_bound(2.0, 3.0), lower_bound(2.1, 3.0));
  EXPECT_LT(lower_bound(2.0, 3.1), lower_bound(2.0, 3.0));
}

TEST(KappaVector, PiecewiseMonotoneAndUnsupportedProfiles) {
  const Mesh mesh = make_uniform_mesh(1.0, 4);
  const auto stepped = StiffnessProfile::piecewise_constant({0.0, 0.5, 1.0}, {2.0, 1.0});
  const auto k = kappa_vector(mesh, stepped);
  EXPECT_EQ(k.values, (std::vector<double>{2.0, 2.0, 1.0, 1.0}));

  const auto decreasing = StiffnessProfile::polynomial(1.0, Polynomial::affine(2.0, -1.0), true);
  const auto kd = kappa_vector(mesh, decreasing);
  EXPECT_EQ(kd.provenance, KappaProvenance::EndpointMonotone);
  EXPECT_DOUBLE_EQ(kd.values[0], 1.75);
  EXPECT_DOUBLE_EQ(kd.values[3], 1.0);

  const auto bump = StiffnessProfile::polynomial(1.0, Polynomial({1.0, 1.0, -1.0}), false);
  EXPECT_THROW(kappa_vector(mesh, bump), UnsupportedProfile);
  EXPECT_THROW(kappa_vector(make_uniform_mesh(1.0, 3), stepped), MisalignedMesh);
}

TEST(TwoSidedBounds, UniformBeamBracketsAnalyticEigenvalue) {
  for (int n : {4, 16, 64}) {
    const auto r = two_sided_bounds(make_uniform_mesh(1.0, n), StiffnessProfile::uniform(1.0, 1.0), 1);
    EXPECT_FALSE(r.used_auxiliary);
    EXPECT_TRUE(r.guaranteed);
    EXPECT_LE(r.bounds[0].lower, 4.0 * kPi * kPi);
    EXPECT_GE(r.bounds[0].upper, 4.0 * kPi * kPi);
    EXPECT_NEAR(r.bounds[0].eta_rel, (r.bounds[0].upper - r.bounds[0].lower) / r.bounds[0].upper, 1e-15);
  }
}

TEST(TwoSidedBounds, ConicalBeamUsesAuxiliaryProblem) {
  const auto profile = scaled_stiffness_from_geometry(preset_geometry(CasePreset::Conical));
  const auto r = two_sided_bounds(make_uniform_mesh(1.0, 8), profile, 2);
  EXPECT_TRUE(r.used_auxiliary);
  ASSERT_TRUE(r.auxiliary_solve.has_value());
  for (const auto& b : r.bounds) {
    EXPECT_LT(b.auxiliary, b.upper);
    EXPECT_LT(b.lower, b.auxiliary);
  }
  EXPECT_NEAR(r.bounds[0].lower, 7.782018e-7, 5e-13);
  EXPECT_NEAR(r.bounds[0].upper, 8.889449e-7, 5e-13);
}

TEST(TwoSidedBounds, SteppedHelperMatchesGenericPath) {
  const std::vector<double> breaks{0.0, 0.25, 0.75, 1.0};
  const std::vector<double> t{0.012, 0.02, 0.012};
  const Mesh mesh = make_uniform_mesh(1.0, 16);
  const auto a = stepped_scaled_bounds(mesh, breaks, t, 2);
  const auto b = two_sided_bounds(
      mesh, StiffnessProfile::piecewise_constant(breaks, {std::pow(0.012, 3), 8e-6, std::pow(0.012, 3)}), 2);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(a.bounds[i].upper, b.bounds[i].upper, 1e-12 * b.bounds[i].upper);
    EXPECT_NEAR(a.bounds[i].lower, b.bounds[i].lower, 1e-12 * b.bounds[i].lower);
  }
}

TEST(Analytic, FirstEigenvaluesAndLoads) {
  const auto rect = analytic_first_eigenvalue(preset_geometry(CasePreset::UniformRect));
  EXPECT_NEAR(rect.lambda, 4.0 * kPi * kPi * kT3, 1e-12 * rect.lambda);
  EXPECT_NEAR(rect.load, 1.165847e5, 0.05);
  EXPECT_NEAR(rectangular_load(rect.lambda, 21e10, 0.05), rect.load, 1e-9);
  const auto circ = analytic_first_eigenvalue(preset_geometry(CasePreset::UniformCirc));
  EXPECT_NEAR(circ.load, 6.511318e4, 0.005);
  EXPECT_NEAR(circular_load(circ.lambda, 21e10), circ.load, 1e-9);
  EXPECT_THROW(analytic_first_eigenvalue(preset_geometry(CasePreset::Conical)), UnsupportedProfile);
}

TEST(TwoSidedBounds, EnergyQuotientKeepsUpperBoundOnFineMeshes) {
  const auto r = two_sided_bounds(make_uniform_mesh(1.0, 1100), StiffnessProfile::uniform(1.0, 1.0), 1);
  EXPECT_EQ(r.upper_solve.method, "shift-invert");
  EXPECT_GE(r.bounds[0].upper, 4.0 * kPi * kPi);
  EXPECT_NEAR(r.bounds[0].upper, 4.0 * kPi * kPi, 1e-10 * r.bounds[0].upper);
}

TEST(Analytic, HigherModesAlternateSymmetricAndAntisymmetric) {
  const BeamGeometry unit(1.0, 12.0, RectangularSection{1.0, DimensionProfile::constant(1.0)});
  const auto e = analytic_eigenvalues(unit, 4);
  const double x1 = 4.493409457909064, x2 = 7.725251836937707;  // roots of tan x = x
  EXPECT_NEAR(e[0].lambda, 4.0 * kPi * kPi, 1e-10);
  EXPECT_NEAR(e[1].lambda, 4.0 * x1 * x1, 1e-9);
  EXPECT_NEAR(e[2].lambda, 16.0 * kPi * kPi, 1e-9);
  EXPECT_NEAR(e[3].lambda, 4.0 * x2 * x2, 1e-9);
  const auto r = two_sided_bounds(make_uniform_mesh(1.0, 64), StiffnessProfile::uniform(1.0, 1.0), 4);
  for (int i = 0; i < 4; ++i) {
    EXPECT_LE(r.bounds[i].lower, e[i].lambda);
    EXPECT_GE(r.bounds[i].upper, e[i].lambda);
  }
}
