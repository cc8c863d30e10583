// Acceptance suite: one PASS/FAIL line per criterion on stdout, mismatch
// details on stderr. `--criterion N` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beambounds/bounds.hpp"
#include "beambounds/eigensolve.hpp"
#include "beambounds/fem.hpp"
#include "beambounds/model.hpp"
#include "beambounds/study.hpp"
#include "beambounds/verification.hpp"

namespace bb = beambounds;

namespace {

struct Outcome {
  bool passed = true;
  std::string summary;
  std::vector<std::string> failures;

  void fail(std::string what) {
    passed = false;
    failures.push_back(std::move(what));
  }
};

// A value as printed in a table: its magnitude and one unit in the last place.
struct Printed {
  double value;
  double ulp;
  std::string text;
};

Printed printed(const std::string& text) {
  const auto e = text.find_first_of("eE");
  const std::string mantissa = text.substr(0, e);
  const int exponent = e == std::string::npos ? 0 : std::stoi(text.substr(e + 1));
  const auto dot = mantissa.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
  return {std::stod(text), std::pow(10.0, exponent - decimals), text};
}

// Computed value rounded to the printed digits lies within ±1 unit of the print.
bool within_ulp(double computed, const Printed& p) {
  const double rounded = std::round(computed / p.ulp) * p.ulp;
  return std::abs(rounded - p.value) <= p.ulp * (1.0 + 1e-9);
}

bool within_relative(double computed, const Printed& p, double rtol) {
  return std::abs(computed - p.value) <= rtol * std::abs(p.value);
}

std::string sci(double v, int digits = 7) { return bb::format_scientific(v, digits); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bb::ConvergenceTable table_for(bb::CasePreset preset) {
  bb::ExperimentConfig config;
  config.source = preset;
  return bb::run_case(config);
}

// Tables with exact eigenvalue: N, λ_low, E_low, EOC_low, λ_up, E_up, EOC_up.
struct ExactRow {
  int n;
  const char* lower;
  const char* err_low;
  const char* eoc_low;
  const char* upper;
  const char* err_up;
  const char* eoc_up;
};

// Tables without exact eigenvalue: N, λ_low, λ_up, η_rel, EOC.
struct EtaRow {
  int n;
  const char* lower;
  const char* upper;
  const char* eta;
  const char* eoc;
};

const std::vector<ExactRow> kUniformRectRef = {
    {2, "1.077154e-4", "1.9157e-1", "", "1.350000e-4", "1.3212e-2", ""},
    {4, "1.262895e-4", "5.2163e-2", "1.8767", "1.342419e-4", "7.5223e-3", "0.8126"},
    {8, "1.312560e-4", "1.4888e-2", "1.8089", "1.333079e-4", "5.1214e-4", "3.8766"},
    {16, "1.327255e-4", "3.8585e-3", "1.9480", "1.332440e-4", "3.2766e-5", "3.9663"},
    {32, "1.331099e-4", "9.7355e-4", "1.9867", "1.332399e-4", "2.0602e-6", "3.9913"},
    {64, "1.332072e-4", "2.4395e-4", "1.9967", "1.332397e-4", "1.2899e-7", "3.9975"},
    {128, "1.332315e-4", "6.1023e-5", "1.9992", "1.332397e-4", "8.3319e-9", "3.9525"},
};

const std::vector<ExactRow> kUniformCircRef = {
    {2, "3.191567e-7", "1.9157e-1", "", "4.000000e-7", "1.3212e-2", ""},
    {4, "3.741910e-7", "5.2163e-2", "1.8767", "3.977539e-7", "7.5223e-3", "0.8126"},
    {8, "3.889066e-7", "1.4888e-2", "1.8089", "3.949864e-7", "5.1214e-4", "3.8766"},
    {16, "3.932609e-7", "3.8585e-3", "1.9480", "3.947971e-7", "3.2766e-5", "3.9663"},
    {32, "3.943998e-7", "9.7355e-4", "1.9867", "3.947850e-7", "2.0602e-6", "3.9913"},
    {64, "3.946879e-7", "2.4395e-4", "1.9967", "3.947842e-7", "1.2900e-7", "3.9973"},
    {128, "3.947601e-7", "6.1023e-5", "1.9992", "3.947842e-7", "8.3956e-9", "3.9416"},
};

const std::vector<EtaRow> kSteppedRef = {
    {8, "1.501389e-4", "1.596242e-4", "5.9423e-2", ""},
    {16, "1.570246e-4", "1.595028e-4", "1.5537e-2", "1.9353"},
    {32, "1.588612e-4", "1.594879e-4", "3.9297e-3", "1.9832"},
    {64, "1.593297e-4", "1.594869e-4", "9.8532e-4", "1.9958"},
    {128, "1.594475e-4", "1.594868e-4", "2.4651e-4", "1.9989"},
    {256, "1.594770e-4", "1.594868e-4", "6.1639e-5", "1.9997"},
};

const std::vector<EtaRow> kConicalRef = {
    {8, "7.782018e-7", "8.889449e-7", "1.246e-1", ""},
    {16, "8.366585e-7", "8.883111e-7", "5.815e-2", "1.0993"},
    {32, "8.636850e-7", "8.882674e-7", "2.767e-2", "1.0711"},
    {64, "8.763233e-7", "8.882646e-7", "1.344e-2", "1.0417"},
    {128, "8.823860e-7", "8.882644e-7", "6.618e-3", "1.0225"},
    {256, "8.853489e-7", "8.882644e-7", "3.282e-3", "1.0116"},
};

void check_cell(Outcome& out, int n, const char* column, const std::optional<double>& computed,
                const char* expected, bool ulp_rule, double rtol = 5e-7) {
  if (*expected == '\0') return;
  const Printed p = printed(expected);
  if (!computed) {
    out.fail("N=" + std::to_string(n) + " " + column + ": missing, expected " + p.text);
    return;
  }
  const bool ok = ulp_rule ? within_ulp(*computed, p) : within_relative(*computed, p, rtol);
  if (!ok) out.fail("N=" + std::to_string(n) + " " + column + ": computed " + sci(*computed, 8) + ", printed " + p.text);
}

Outcome exact_table(bb::CasePreset preset, const std::vector<ExactRow>& expected, double budget_s) {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = table_for(preset);
  const double elapsed = seconds_since(t0);
  if (table.rows.size() != expected.size()) {
    out.fail("row count " + std::to_string(table.rows.size()));
    return out;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& r = table.rows[i];
    const auto& e = expected[i];
    if (r.num_elements != e.n) out.fail("row " + std::to_string(i) + " has N=" + std::to_string(r.num_elements));
    check_cell(out, e.n, "lower", r.lower, e.lower, false);
    check_cell(out, e.n, "upper", r.upper, e.upper, false);
    check_cell(out, e.n, "err_low", r.err_low, e.err_low, true);
    check_cell(out, e.n, "eoc_low", r.eoc_low, e.eoc_low, true);
    check_cell(out, e.n, "err_up", r.err_up, e.err_up, true);
    check_cell(out, e.n, "eoc_up", r.eoc_up, e.eoc_up, true);
  }
  if (elapsed > budget_s) out.fail("runtime " + std::to_string(elapsed) + " s");
  std::ostringstream s;
  s << expected.size() << " rows, " << out.failures.size() << " mismatched cells, " << std::fixed
    << std::setprecision(3) << elapsed << " s";
  out.summary = s.str();
  return out;
}

Outcome eta_table(const bb::ConvergenceTable& table, const std::vector<EtaRow>& expected, bool lambda_ulp_rule,
                  double eoc_tolerance) {
  Outcome out;
  if (table.rows.size() != expected.size()) {
    out.fail("row count " + std::to_string(table.rows.size()));
    return out;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& r = table.rows[i];
    const auto& e = expected[i];
    check_cell(out, e.n, "lower", r.lower, e.lower, lambda_ulp_rule);
    check_cell(out, e.n, "upper", r.upper, e.upper, lambda_ulp_rule);
    check_cell(out, e.n, "eta_rel", r.eta_rel, e.eta, true);
    if (*e.eoc != '\0') {
      const Printed p = printed(e.eoc);
      const bool ok = r.eoc_eta && (eoc_tolerance > 0.0 ? std::abs(*r.eoc_eta - p.value) <= eoc_tolerance + 1e-12
                                                         : within_ulp(*r.eoc_eta, p));
      if (!ok)
        out.fail("N=" + std::to_string(e.n) + " eoc: computed " + (r.eoc_eta ? bb::format_fixed(*r.eoc_eta) : "-") +
                 ", printed " + p.text);
    }
  }
  return out;
}

Outcome criterion_uniform_rect() { return exact_table(bb::CasePreset::UniformRect, kUniformRectRef, 1.0); }
Outcome criterion_uniform_circ() { return exact_table(bb::CasePreset::UniformCirc, kUniformCircRef, 1.0); }

Outcome criterion_stepped() {
  Outcome out;
  std::string details;
  bool any = false;
  for (auto preset : {bb::CasePreset::SteppedPrinted, bb::CasePreset::SteppedSymmetric}) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = eta_table(table_for(preset), kSteppedRef, false, 1e-3);
    const double elapsed = seconds_since(t0);
    if (elapsed > 2.0) o.fail("runtime " + std::to_string(elapsed) + " s");
    details += std::string(bb::preset_name(preset)) + ": " + std::to_string(o.failures.size()) + " mismatched; ";
    if (o.passed) any = true;
    for (auto& f : o.failures) out.failures.push_back(std::string(bb::preset_name(preset)) + " " + f);
  }
  out.passed = any;
  out.summary = details + (any ? "a preset reproduces the table" : "no preset reproduces the table");
  return out;
}

Outcome criterion_conical() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out = eta_table(table_for(bb::CasePreset::Conical), kConicalRef, true, 0.0);
  const double elapsed = seconds_since(t0);
  if (elapsed > 2.0) out.fail("runtime " + std::to_string(elapsed) + " s");
  std::ostringstream s;
  s << kConicalRef.size() << " rows, " << out.failures.size() << " mismatched cells, " << std::fixed
    << std::setprecision(3) << elapsed << " s";
  out.summary = s.str();
  return out;
}

Outcome criterion_analytic() {
  Outcome out;
  constexpr double pi = std::numbers::pi;
  const auto rect = bb::analytic_first_eigenvalue(bb::preset_geometry(bb::CasePreset::UniformRect));
  const auto circ = bb::analytic_first_eigenvalue(bb::preset_geometry(bb::CasePreset::UniformCirc));
  const double t = 0.015, r = 0.01;
  const double rect_expected = 4.0 * pi * pi * t * t * t;
  const double circ_expected = 4.0 * pi * pi * r * r * r * r;
  if (std::abs(rect.lambda - rect_expected) > 1e-12 * rect_expected) out.fail("rectangular lambda " + sci(rect.lambda, 16));
  if (std::abs(circ.lambda - circ_expected) > 1e-12 * circ_expected) out.fail("circular lambda " + sci(circ.lambda, 16));
  const Printed p_rect = printed("1.165847e5"), p_circ = printed("6.511318e4");
  if (!within_ulp(rect.load, p_rect)) out.fail("rectangular load " + sci(rect.load, 10));
  if (!within_ulp(circ.load, p_circ)) out.fail("circular load " + sci(circ.load, 10));
  out.summary = "P1 = " + sci(rect.load) + " N (rectangular), " + sci(circ.load) + " N (circular)";
  return out;
}

Outcome criterion_sandwich() {
  Outcome out;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> segments(1, 8);
  std::uniform_real_distribution<double> log_value(std::log(1e-6), std::log(1e-2));
  constexpr std::size_t m = 5;
  constexpr double tol = 1e-10;
  int checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // Breakpoints on multiples of 1/8 so every mesh with N in {8, 16, 32} aligns.
    const int r = segments(rng);
    std::vector<int> cuts(7);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(r - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> breakpoints{0.0};
    for (int c : cuts) breakpoints.push_back(c / 8.0);
    breakpoints.push_back(1.0);
    std::vector<double> values;
    for (int k = 0; k < r; ++k) values.push_back(std::exp(log_value(rng)));
    const auto profile = bb::StiffnessProfile::piecewise_constant(breakpoints, values);

    std::vector<double> previous;
    for (int n : {8, 16, 32}) {
      const auto report = bb::two_sided_bounds(bb::make_uniform_mesh(1.0, n), profile, m);
      for (std::size_t i = 0; i < m; ++i) {
        const auto& b = report.bounds[i];
        ++checks;
        if (!(b.lower <= b.upper * (1.0 + tol)))
          out.fail("trial " + std::to_string(trial) + " N=" + std::to_string(n) + " i=" + std::to_string(i + 1) +
                   ": lower " + sci(b.lower) + " > upper " + sci(b.upper));
        if (!previous.empty() && !(b.upper <= previous[i] * (1.0 + tol)))
          out.fail("trial " + std::to_string(trial) + " N=" + std::to_string(n) + " i=" + std::to_string(i + 1) +
                   ": upper increased under refinement");
      }
      previous.clear();
      for (const auto& b : report.bounds) previous.push_back(b.upper);
    }
  }
  out.summary = "50 profiles, " + std::to_string(checks) + " bound pairs, " + std::to_string(out.failures.size()) +
                " violations";
  return out;
}

Outcome criterion_auxiliary() {
  Outcome out;
  const auto profile = bb::scaled_stiffness_from_geometry(bb::preset_geometry(bb::CasePreset::Conical));
  double smallest_gap = INFINITY;
  for (int n : {8, 16, 32, 64}) {
    const auto report = bb::two_sided_bounds(bb::make_uniform_mesh(1.0, n), profile, 1);
    const auto& b = report.bounds[0];
    const double gap = (b.upper - b.auxiliary) / b.upper;
    smallest_gap = std::min(smallest_gap, gap);
    if (!report.used_auxiliary) out.fail("N=" + std::to_string(n) + ": auxiliary problem not used");
    if (!(gap >= 1e-6))
      out.fail("N=" + std::to_string(n) + ": auxiliary " + sci(b.auxiliary) + " vs upper " + sci(b.upper));
  }
  out.summary = "smallest relative gap " + sci(smallest_gap, 4);
  return out;
}

Outcome criterion_estimates() {
  Outcome out;
  const auto records = bb::run_verification_suite();
  std::size_t failed = 0;
  for (const auto& r : records)
    if (!r.passed) {
      ++failed;
      out.fail(r.check + " / " + r.instance + ": measured " + sci(r.measured, 6) + " bound " + sci(r.bound, 6));
    }
  if (records.empty()) out.fail("verification suite produced no records");
  out.summary = std::to_string(records.size()) + " checks, " + std::to_string(failed) + " failed";
  return out;
}

Outcome criterion_eigensolver() {
  Outcome out;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dims(8, 50);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), scale(0.5, 2.0), spectrum(1.0, 1e3);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = dims(rng);
    // Congruence with X = Q D: A = X⁻ᵀ Λ X⁻¹, B = X⁻ᵀ X⁻¹ has spectrum Λ.
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = unit(rng);
    const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
    Eigen::VectorXd d(n), lambda(n);
    for (int i = 0; i < n; ++i) {
      d[i] = scale(rng);
      lambda[i] = spectrum(rng);
    }
    std::sort(lambda.data(), lambda.data() + n);
    const Eigen::MatrixXd x_inv = (q * d.asDiagonal()).inverse();
    Eigen::MatrixXd a = x_inv.transpose() * lambda.asDiagonal() * x_inv;
    Eigen::MatrixXd b = x_inv.transpose() * x_inv;
    a = 0.5 * (a + a.transpose()).eval();
    b = 0.5 * (b + b.transpose()).eval();

    bb::SymmetricBandMatrix band_a(static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1));
    bb::SymmetricBandMatrix band_b(static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        band_a.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, j));
        band_b.add(static_cast<std::size_t>(i), static_cast<std::size_t>(j), b(i, j));
      }
    const auto dense = bb::smallest_eigenpairs_dense(a, b, 5);
    bb::SolverOptions si;
    si.method = bb::SolverMethod::ShiftInvert;
    const auto iterative = bb::smallest_eigenpairs(band_a, band_b, 5, si);
    for (int i = 0; i < 5; ++i) {
      for (const auto* res : {&dense, &iterative}) {
        const double rel = std::abs(res->eigenvalues[static_cast<std::size_t>(i)] - lambda[i]) / lambda[i];
        worst = std::max(worst, rel);
        if (rel > 1e-10)
          out.fail("pair " + std::to_string(trial) + " (" + res->method + ") lambda_" + std::to_string(i + 1) +
                   " relative error " + sci(rel, 3));
      }
    }
  }

  // Residual and B-orthonormality invariants on every benchmark solve.
  int solves = 0, literal_failures = 0;
  double worst_residual = 0.0;
  for (auto preset : bb::all_presets()) {
    const auto profile = bb::scaled_stiffness_from_geometry(bb::preset_geometry(preset));
    for (int n : bb::preset_refinements(preset)) {
      const auto mesh = bb::make_uniform_mesh(1.0, n);
      if (!bb::check_alignment(mesh, profile)) continue;
      const auto system = bb::assemble(mesh, profile);
      std::vector<bb::ResidualReport> reports;
      const auto upper = bb::smallest_eigenpairs(system, 1);
      reports.push_back(bb::verify_residuals(system, upper));
      if (profile.kind() == bb::StiffnessProfile::Kind::Polynomial) {
        const auto kappa = bb::kappa_vector(mesh, profile);
        const auto aux_a = bb::assemble_bending(mesh, kappa.values);
        const auto aux = bb::smallest_eigenpairs(aux_a, system.geometric, 1);
        reports.push_back(bb::verify_residuals(aux_a.to_dense(), system.geometric.to_dense(), aux));
      }
      for (const auto& rep : reports) {
        ++solves;
        worst_residual = std::max(worst_residual, rep.relative_residuals[0]);
        if (!rep.passed) {
          ++literal_failures;
          out.fail(std::string(bb::preset_name(preset)) + " N=" + std::to_string(n) + ": relative residual " +
                   sci(rep.relative_residuals[0], 3) + " (rounding floor " + sci(rep.rounding_floors[0], 3) +
                   "), B-orthonormality defect " + sci(rep.orthonormality_defect, 3));
        }
      }
    }
  }
  out.summary = "20 congruence pairs, worst eigenvalue error " + sci(worst, 3) + "; " + std::to_string(solves) +
                " benchmark solves, " + std::to_string(literal_failures) + " above residual 1e-10 (worst " +
                sci(worst_residual, 3) + ")";
  return out;
}

Outcome criterion_rates() {
  Outcome out;
  std::ostringstream s;
  auto check = [&](const std::string& label, const std::vector<double>& errors, const std::vector<double>& h,
                   double lo, double hi) {
    const double slope = bb::least_squares_slope(errors, h, 3);
    s << label << "=" << bb::format_fixed(slope, 3) << " ";
    if (!(slope >= lo && slope <= hi))
      out.fail(label + " slope " + bb::format_fixed(slope, 4) + " outside [" + bb::format_fixed(lo, 2) + ", " +
               bb::format_fixed(hi, 2) + "]");
  };
  for (auto preset : {bb::CasePreset::UniformRect, bb::CasePreset::UniformCirc}) {
    const auto t = table_for(preset);
    std::vector<double> h, low, up;
    for (const auto& r : t.rows) {
      h.push_back(r.h);
      low.push_back(*r.err_low);
      up.push_back(*r.err_up);
    }
    check(std::string(bb::preset_name(preset)) + ".lower", low, h, 1.9, 2.1);
    check(std::string(bb::preset_name(preset)) + ".upper", up, h, 3.8, 4.1);
  }
  // Stepped beams have no closed form; the reference is the upper bound on a
  // much finer mesh (its error decays like h⁴).
  for (auto preset : {bb::CasePreset::SteppedPrinted, bb::CasePreset::SteppedSymmetric}) {
    const auto profile = bb::scaled_stiffness_from_geometry(bb::preset_geometry(preset));
    bb::SolverOptions banded;
    banded.method = bb::SolverMethod::ShiftInvert;
    const double reference =
        bb::two_sided_bounds(bb::make_uniform_mesh(1.0, 1024), profile, 1, banded).bounds[0].upper;
    const auto t = table_for(preset);
    std::vector<double> h, low;
    for (const auto& r : t.rows) {
      h.push_back(r.h);
      low.push_back((reference - r.lower) / reference);
    }
    check(std::string(bb::preset_name(preset)) + ".lower", low, h, 1.9, 2.1);
  }
  {
    const auto t = table_for(bb::CasePreset::Conical);
    std::vector<double> h, eta;
    for (const auto& r : t.rows) {
      h.push_back(r.h);
      eta.push_back(*r.eta_rel);
    }
    check("conical.eta_rel", eta, h, 0.95, 1.1);
  }
  out.summary = s.str();
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: " << argv[0] << " [--criterion N]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "reference table, uniform rectangular beam", criterion_uniform_rect},
      {2, "reference table, uniform circular beam", criterion_uniform_circ},
      {3, "reference table, stepped beam", criterion_stepped},
      {4, "reference table, conical beam", criterion_conical},
      {5, "analytic eigenvalues and loads", criterion_analytic},
      {6, "sandwich and refinement monotonicity", criterion_sandwich},
      {7, "auxiliary problem below exact-profile bound", criterion_auxiliary},
      {8, "interpolation, orthogonality and Wirtinger checks", criterion_estimates},
      {9, "eigensolver oracle and residual invariants", criterion_eigensolver},
      {10, "least-squares convergence rates", criterion_rates},
  };

  bool all = true;
  bool found = false;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    found = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
      o.summary = "aborted";
    }
    std::printf("[%s] criterion %d: %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.summary.c_str());
    std::fflush(stdout);
    for (const auto& f : o.failures) std::cerr << "    criterion " << c.id << ": " << f << "\n";
    all = all && o.passed;
  }
  if (!found) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return all ? 0 : 1;
}
