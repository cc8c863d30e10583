#include "beambounds/verification.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <sstream>

#include "beambounds/bounds.hpp"
#include "beambounds/errors.hpp"
#include "beambounds/fem.hpp"
#include "beambounds/quadrature.hpp"

namespace beambounds {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kNormQuadrature = 20;

}  // namespace

SampledFunction make_clamped_function(std::string name, double length, std::function<double(double)> value,
                                      std::function<double(double)> first, std::function<double(double)> second,
                                      std::string smoothness) {
  if (!(length > 0.0)) throw InvalidArgument("test function length must be positive");
  double scale = 0.0;
  for (int i = 0; i <= 16; ++i) scale = std::max(scale, std::abs(value(length * i / 16.0)));
  scale = std::max(scale, 1.0);
  const double tol = 1e-14 * scale;
  if (std::abs(value(0.0)) > tol || std::abs(value(length)) > tol ||
      std::abs(first(0.0)) * length > tol || std::abs(first(length)) * length > tol)
    throw InvalidArgument("test function '" + name + "' violates the clamped boundary conditions");
  return {std::move(name), length, std::move(value), std::move(first), std::move(second), std::move(smoothness)};
}

std::vector<SampledFunction> test_corpus(double length) {
  const double L = length;
  std::vector<SampledFunction> corpus;
  corpus.push_back(make_clamped_function(
      "sin^2(pi x)", L,
      [L](double x) { const double s = std::sin(kPi * x / L); return s * s; },
      [L](double x) { return kPi / L * std::sin(2.0 * kPi * x / L); },
      [L](double x) { return 2.0 * kPi * kPi / (L * L) * std::cos(2.0 * kPi * x / L); }, "analytic"));
  corpus.push_back(make_clamped_function(
      "x^2(1-x)^2", L,
      [L](double x) { const double t = x / L; return t * t * (1 - t) * (1 - t); },
      [L](double x) { const double t = x / L; return (2 * t - 6 * t * t + 4 * t * t * t) / L; },
      [L](double x) { const double t = x / L; return (2 - 12 * t + 12 * t * t) / (L * L); }, "quartic"));
  corpus.push_back(make_clamped_function(
      "sin^2(pi x)cos(2pi x)", L,
      [L](double x) {
        const double s = std::sin(kPi * x / L);
        return s * s * std::cos(2.0 * kPi * x / L);
      },
      [L](double x) {
        const double c = std::cos(2.0 * kPi * x / L), s = std::sin(2.0 * kPi * x / L);
        return -kPi / L * s * (1.0 - 2.0 * c);
      },
      [L](double x) {
        const double c = std::cos(2.0 * kPi * x / L), s = std::sin(2.0 * kPi * x / L);
        return -2.0 * kPi * kPi / (L * L) * (c - 2.0 * c * c + 2.0 * s * s);
      },
      "analytic"));
  corpus.push_back(make_clamped_function(
      "x^3(1-x)^3", L,
      [L](double x) { const double t = x / L, q = t * (1 - t); return q * q * q; },
      [L](double x) {
        const double t = x / L;
        return (3 * t * t - 12 * t * t * t + 15 * std::pow(t, 4) - 6 * std::pow(t, 5)) / L;
      },
      [L](double x) {
        const double t = x / L;
        return (6 * t - 36 * t * t + 60 * t * t * t - 30 * std::pow(t, 4)) / (L * L);
      },
      "sextic"));
  return corpus;
}

// ---------------------------------------------------------------------------
// HermiteInterpolant

HermiteInterpolant::HermiteInterpolant(Mesh mesh, Eigen::VectorXd coefficients)
    : mesh_(std::move(mesh)), coefficients_(std::move(coefficients)) {
  if (static_cast<std::size_t>(coefficients_.size()) != 2 * mesh_.num_nodes())
    throw InvalidArgument("HermiteInterpolant: need two coefficients per node");
}

double HermiteInterpolant::evaluate(std::size_t element, double s, int order) const {
  const double h = mesh_.element_length(element);
  std::array<double, 4> phi;
  switch (order) {
    case 0: phi = HermiteBasis::values(s, h); break;
    case 1: phi = HermiteBasis::first_derivatives(s, h); break;
    case 2: phi = HermiteBasis::second_derivatives(s, h); break;
    default: throw InvalidArgument("HermiteInterpolant: derivative order must be 0, 1 or 2");
  }
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += phi[i] * coefficients_[static_cast<Eigen::Index>(2 * element + i)];
  return v;
}

std::size_t HermiteInterpolant::locate(double x) const {
  const auto nodes = mesh_.nodes();
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  auto k = static_cast<std::ptrdiff_t>(it - nodes.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(mesh_.num_elements()) - 1));
}

double HermiteInterpolant::value(double x) const {
  const std::size_t k = locate(x);
  return evaluate(k, (x - mesh_.nodes()[k]) / mesh_.element_length(k), 0);
}

double HermiteInterpolant::first(double x) const {
  const std::size_t k = locate(x);
  return evaluate(k, (x - mesh_.nodes()[k]) / mesh_.element_length(k), 1);
}

double HermiteInterpolant::second(double x) const {
  const std::size_t k = locate(x);
  return evaluate(k, (x - mesh_.nodes()[k]) / mesh_.element_length(k), 2);
}

SampledFunction HermiteInterpolant::as_function(std::string name) const {
  auto self = std::make_shared<HermiteInterpolant>(*this);
  return make_clamped_function(
      std::move(name), mesh_.length(), [self](double x) { return self->value(x); },
      [self](double x) { return self->first(x); }, [self](double x) { return self->second(x); },
      "piecewise cubic");
}

HermiteInterpolant hermite_interpolate(const SampledFunction& u, const Mesh& mesh) {
  if (std::abs(mesh.length() - u.length) > kAlignmentTolerance * u.length)
    throw InvalidArgument("hermite_interpolate: mesh and function lengths differ");
  Eigen::VectorXd c(static_cast<Eigen::Index>(2 * mesh.num_nodes()));
  const auto nodes = mesh.nodes();
  for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
    c[static_cast<Eigen::Index>(2 * i)] = u.value(nodes[i]);
    c[static_cast<Eigen::Index>(2 * i + 1)] = u.first(nodes[i]);
  }
  return HermiteInterpolant(mesh, std::move(c));
}

// ---------------------------------------------------------------------------
// Norms and orthogonality

InterpolationErrorNorms interpolation_error_norms(const SampledFunction& u, const Mesh& mesh,
                                                  const StiffnessProfile& profile) {
  const HermiteInterpolant iu = hermite_interpolate(u, mesh);
  const GaussRule& rule = gauss_legendre(kNormQuadrature);
  const auto nodes = mesh.nodes();
  double b2 = 0.0, a2 = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);
      const double x = nodes[k] + s * h;
      const double w = 0.5 * h * rule.weights[q];
      const double d1 = u.first(x) - iu.evaluate(k, s, 1);
      const double d2 = u.second(x) - iu.evaluate(k, s, 2);
      b2 += w * d1 * d1;
      a2 += w * profile(x) * d2 * d2;
    }
  }
  return {std::sqrt(b2), std::sqrt(a2)};
}

double galerkin_orthogonality_defect(const SampledFunction& u, const Mesh& mesh, const StiffnessProfile& profile) {
  const HermiteInterpolant iu = hermite_interpolate(u, mesh);
  const DofMap dofs(mesh.num_nodes());
  const GaussRule& rule = gauss_legendre(kNormQuadrature);
  const auto nodes = mesh.nodes();
  std::vector<double> projection(dofs.size(), 0.0);
  std::vector<double> basis_energy(dofs.size(), 0.0);
  double w_energy = 0.0, u_energy = 0.0;
  for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
    const double h = mesh.element_length(k);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = 0.5 * (rule.nodes[q] + 1.0);
      const double x = nodes[k] + s * h;
      const double weight = 0.5 * h * rule.weights[q] * profile(x);
      const double u2 = u.second(x);
      const double w2 = u2 - iu.evaluate(k, s, 2);
      w_energy += weight * w2 * w2;
      u_energy += weight * u2 * u2;
      const auto phi2 = HermiteBasis::second_derivatives(s, h);
      for (int i = 0; i < 4; ++i) {
        const auto g = dofs.reduced(2 * k + static_cast<std::size_t>(i));
        if (!g) continue;
        projection[*g] += weight * w2 * phi2[i];
        basis_energy[*g] += weight * phi2[i] * phi2[i];
      }
    }
  }
  const double w_norm = std::sqrt(w_energy);
  const double u_norm = std::sqrt(u_energy);
  const double denom = w_norm > 1e-12 * u_norm ? w_norm : u_norm;
  if (!(denom > 0.0)) return 0.0;
  double defect = 0.0;
  for (std::size_t g = 0; g < dofs.size(); ++g)
    defect = std::max(defect, std::abs(projection[g]) / (denom * std::sqrt(basis_energy[g])));
  return defect;
}

WirtingerResult wirtinger_check(const std::function<double(double)>& f, const std::function<double(double)>& df,
                                double alpha, double beta) {
  if (!(beta > alpha)) throw InvalidArgument("wirtinger_check: need alpha < beta");
  constexpr int kPieces = 64;
  const double width = beta - alpha;
  const double f2 = integrate([&](double x) { const double v = f(x); return v * v; }, alpha, beta,
                              kNormQuadrature, kPieces);
  const double df2 = integrate([&](double x) { const double v = df(x); return v * v; }, alpha, beta,
                               kNormQuadrature, kPieces);
  const double mean = integrate(f, alpha, beta, kNormQuadrature, kPieces) / width;
  const double endpoint = std::max(std::abs(f(alpha)), std::abs(f(beta)));
  const double scale = std::sqrt(f2 / width);
  WirtingerResult r;
  r.ratio = f2 / (width * width / (4.0 * kPi * kPi) * df2);
  r.mean = mean;
  r.endpoint_max = endpoint;
  r.hypotheses_hold = endpoint <= 1e-12 * std::max(scale, 1e-300) && std::abs(mean) <= 1e-12 * std::max(scale, 1e-300);
  return r;
}

// ---------------------------------------------------------------------------
// Suite

namespace {

struct NamedProfile {
  std::string name;
  StiffnessProfile profile;
  int min_elements;
};

std::string instance_name(const std::string& f, const std::string& p, int n) {
  return f + " | " + p + " | N=" + std::to_string(n);
}

}  // namespace

std::vector<VerificationRecord> run_verification_suite() {
  std::vector<VerificationRecord> records;
  const auto corpus = test_corpus(1.0);
  const std::vector<int> refinements{2, 4, 8, 16, 32};

  std::vector<double> stepped_cubes;
  for (double t : {0.0155, 0.010, 0.0153, 0.0192, 0.0192, 0.0153, 0.010, 0.0155}) stepped_cubes.push_back(t * t * t);
  std::vector<double> eighths;
  for (int j = 0; j <= 8; ++j) eighths.push_back(j / 8.0);

  const std::vector<NamedProfile> profiles{
      {"EI=1", StiffnessProfile::uniform(1.0, 1.0), 2},
      {"EI={1,8}", StiffnessProfile::piecewise_constant({0.0, 0.5, 1.0}, {1.0, 8.0}), 2},
      {"EI=t^3 stepped", StiffnessProfile::piecewise_constant(eighths, stepped_cubes), 8},
  };

  double worst_orthogonality = 0.0;
  for (const auto& u : corpus) {
    for (const auto& p : profiles) {
      for (int n : refinements) {
        if (n < p.min_elements) continue;
        const Mesh mesh = make_uniform_mesh(1.0, n);
        const auto norms = interpolation_error_norms(u, mesh, p.profile);
        const double c_h = interpolation_constant(scaled_mesh_size(mesh, kappa_vector(mesh, p.profile))).value;
        const double ratio = norms.b_norm / norms.a_norm;
        records.push_back({"interpolation estimate", instance_name(u.name, p.name, n), ratio, c_h, ratio <= c_h});

        const double defect = galerkin_orthogonality_defect(u, mesh, p.profile);
        worst_orthogonality = std::max(worst_orthogonality, defect);
        records.push_back({"orthogonality", instance_name(u.name, p.name, n), defect, 1e-10, defect <= 1e-10});
      }
    }
  }

  // Negative control: smooth quartic stiffness breaks the orthogonality.
  const Polynomial cone = Polynomial::affine(0.015, -0.005).pow(4) * (1.0 / std::pow(0.015, 4));
  const auto quartic = StiffnessProfile::polynomial(1.0, cone, true);
  double weakest_control = INFINITY;
  for (const auto& u : corpus) {
    const double defect = galerkin_orthogonality_defect(u, make_uniform_mesh(1.0, 8), quartic);
    weakest_control = std::min(weakest_control, defect);
    records.push_back({"orthogonality control", instance_name(u.name, "EI quartic", 8), defect, 1e-6, defect >= 1e-6});
  }
  records.push_back({"orthogonality separation", "min control / max piecewise-constant",
                     weakest_control / std::max(worst_orthogonality, 1e-300), 1e4,
                     weakest_control >= 1e4 * worst_orthogonality});

  // Wirtinger inequality.
  auto add_wirtinger = [&](const std::string& name, const std::function<double(double)>& f,
                           const std::function<double(double)>& df, double a, double b, double expected) {
    const auto r = wirtinger_check(f, df, a, b);
    records.push_back({"wirtinger", name, r.ratio, expected, std::abs(r.ratio - expected) <= 1e-12});
  };
  add_wirtinger("sin(2 pi x) on (0,1)", [](double x) { return std::sin(2 * kPi * x); },
                [](double x) { return 2 * kPi * std::cos(2 * kPi * x); }, 0.0, 1.0, 1.0);
  add_wirtinger("sin(2 pi (x-0.3)/1.4) on (0.3,1.7)", [](double x) { return std::sin(2 * kPi * (x - 0.3) / 1.4); },
                [](double x) { return 2 * kPi / 1.4 * std::cos(2 * kPi * (x - 0.3) / 1.4); }, 0.3, 1.7, 1.0);
  add_wirtinger("sin(4 pi x) on (0,1)", [](double x) { return std::sin(4 * kPi * x); },
                [](double x) { return 4 * kPi * std::cos(4 * kPi * x); }, 0.0, 1.0, 0.25);

  // The estimate's proof step: Wirtinger applied to w' on every element.
  for (const auto& u : corpus) {
    const Mesh mesh = make_uniform_mesh(1.0, 4);
    const HermiteInterpolant iu = hermite_interpolate(u, mesh);
    double worst = 0.0;
    for (std::size_t k = 0; k < mesh.num_elements(); ++k) {
      const double a = mesh.nodes()[k], b = mesh.nodes()[k + 1];
      const auto r = wirtinger_check([&](double x) { return u.first(x) - iu.evaluate(k, (x - a) / (b - a), 1); },
                                     [&](double x) { return u.second(x) - iu.evaluate(k, (x - a) / (b - a), 2); },
                                     a, b);
      worst = std::max(worst, r.ratio);
    }
    records.push_back({"wirtinger on w'", instance_name(u.name, "elements", 4), worst, 1.0, worst <= 1.0 + 1e-12});
  }
  return records;
}

std::string format_verification_report(const std::vector<VerificationRecord>& records) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-26s %-48s %14s %14s %s\n", "check", "instance", "measured", "bound", "result");
  out << line;
  std::size_t failures = 0;
  for (const auto& r : records) {
    std::snprintf(line, sizeof line, "%-26s %-48s %14.6e %14.6e %s\n", r.check.c_str(), r.instance.c_str(), r.measured,
                  r.bound, r.passed ? "pass" : "FAIL");
    out << line;
    failures += r.passed ? 0 : 1;
  }
  out << records.size() - failures << "/" << records.size() << " checks passed\n";
  return out.str();
}

}  // namespace beambounds
