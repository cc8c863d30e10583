// beambounds: two-sided buckling-load bounds for clamped Euler–Bernoulli beams.
//
//   beambounds run --case conical --refinements 8,16,32 --format md
//   beambounds run --case uniform-rect --eigenvalues 5 --out curves.csv
//   beambounds bounds --config beam.json
//   beambounds verify
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beambounds/errors.hpp"
#include "beambounds/study.hpp"
#include "beambounds/verification.hpp"

namespace bb = beambounds;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    bb::write_text(out, text);
}

std::string render(const std::vector<bb::ConvergenceTable>& tables, bb::TableFormat format) {
  if (tables.size() == 1) return bb::format_table(tables.front(), format);
  if (format == bb::TableFormat::Csv) return bb::format_curves(tables);
  std::string text;
  for (const auto& t : tables) {
    if (format == bb::TableFormat::Markdown) text += "### " + t.title + " [" + t.units + "]\n\n";
    text += bb::format_table(t, format) + "\n";
  }
  return text;
}

// Least-squares slopes over the three finest meshes; informative only.
void print_slopes(const std::vector<bb::ConvergenceTable>& tables, std::ostream& os) {
  for (const auto& t : tables) {
    if (t.rows.size() < 3) continue;
    std::vector<double> h, lo, up, eta;
    for (const auto& r : t.rows) {
      h.push_back(r.h);
      lo.push_back(r.err_low.value_or(0.0));
      up.push_back(r.err_up.value_or(0.0));
      eta.push_back((r.upper - r.lower) / r.upper);
    }
    os << "# eigenvalue " << t.eigen_index << " slopes (least squares, finest three, non-normative):";
    auto slope = [&](const std::vector<double>& e, const char* label) {
      try {
        os << " " << label << "=" << bb::format_fixed(bb::least_squares_slope(e, h), 4);
      } catch (const bb::InvalidArgument&) {
        os << " " << label << "=n/a";
      }
    };
    if (t.has_exact()) {
      slope(lo, "err_low");
      slope(up, "err_up");
    }
    slope(eta, "eta_rel");
    os << "\n";
  }
}

int run_verification(const std::string& out) {
  const auto records = bb::run_verification_suite();
  emit(bb::format_verification_report(records), out);
  for (const auto& r : records)
    if (!r.passed) return kExitNumerical;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Guaranteed lower and upper bounds for buckling loads of clamped Euler-Bernoulli beams"};
  app.require_subcommand(1);

  std::string case_name;
  std::vector<int> refinements;
  std::size_t eigenvalues = 1;
  std::string format_name = "csv";
  std::string out;
  bool with_verification = false;
  std::string config_path;

  auto* run = app.add_subcommand("run", "Convergence study for a benchmark beam");
  run->add_option("--case", case_name, "uniform-rect | stepped-printed | stepped-symmetric | uniform-circ | conical")
      ->required();
  run->add_option("--refinements", refinements, "Element counts, e.g. 2,4,8")->delimiter(',');
  run->add_option("--eigenvalues", eigenvalues, "Number of eigenvalues m")->check(CLI::PositiveNumber);
  run->add_option("--format", format_name, "csv | md | plain");
  run->add_option("--out", out, "Output file (default: stdout)");
  run->add_flag("--verify", with_verification, "Also run the verification suite");

  auto* bounds = app.add_subcommand("bounds", "Bounds for a beam described in a JSON config file");
  bounds->add_option("--config", config_path, "Beam description file")->required();
  bounds->add_option("--refinements", refinements, "Override the config's element counts")->delimiter(',');
  bounds->add_option("--eigenvalues", eigenvalues, "Override the config's eigenvalue count")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--format", format_name, "csv | md | plain");
  bounds->add_option("--out", out, "Output file (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Numerical checks of the interpolation estimates");
  verify->add_option("--out", out, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) return run_verification(out);

    bb::ExperimentConfig config;
    config.refinements = refinements;
    config.format = bb::parse_format(format_name);
    config.output = out;
    config.include_verification = with_verification;
    if (run->parsed()) {
      config.source = bb::parse_preset(case_name);
      config.eigenvalues = eigenvalues;
    } else {
      config.source = std::filesystem::path(config_path);
      const auto beam = bb::load_custom_beam(config_path);
      config.eigenvalues = bounds->count("--eigenvalues") ? eigenvalues : beam.eigenvalues;
    }

    const auto tables = bb::run_multi_eigenvalue_study(config);
    emit(render(tables, config.format), out);
    if (config.eigenvalues > 1) print_slopes(tables, out.empty() ? std::cerr : std::cout);

    if (config.include_verification) {
      const auto records = bb::run_verification_suite();
      std::cerr << bb::format_verification_report(records);
      for (const auto& r : records)
        if (!r.passed) return kExitNumerical;
    }
    return 0;
  } catch (const bb::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
