#pragma once

// Convergence studies over uniform refinements: the four benchmark beams,
// EOC columns, and table emission (CSV, Markdown, plain text).

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "beambounds/bounds.hpp"
#include "beambounds/model.hpp"

namespace beambounds {

enum class CasePreset {
  UniformRect,       // (i)   t = 0.015, b = 0.05
  SteppedPrinted,      // (ii)  eight thicknesses exactly as printed (sixth 0.053)
  SteppedSymmetric,  // (ii)  sixth thickness 0.0153, mirror-symmetric design
  UniformCirc,       // (iii) r = 0.01
  Conical,           // (iv)  r from 0.015 to 0.01, affine
};

std::string_view preset_name(CasePreset preset);
/// Throws ConfigError for unknown names.
CasePreset parse_preset(std::string_view name);
std::vector<CasePreset> all_presets();

/// L = 1 m, E = 21e10 Pa for every preset.
BeamGeometry preset_geometry(CasePreset preset);
std::vector<int> preset_refinements(CasePreset preset);

enum class TableFormat { Csv, Markdown, Plain };

TableFormat parse_format(std::string_view name);

/// A beam that is not one of the presets, usually read from a config file.
struct CustomBeam {
  std::optional<BeamGeometry> geometry;  // absent for a direct E·I profile
  StiffnessProfile profile;
  std::vector<int> refinements;
  std::size_t eigenvalues = 1;
};

struct ExperimentConfig {
  std::variant<CasePreset, std::filesystem::path> source = CasePreset::UniformRect;
  std::vector<int> refinements;  // empty: preset default
  std::size_t eigenvalues = 1;
  TableFormat format = TableFormat::Csv;
  std::filesystem::path output;  // empty: stdout
  bool include_verification = false;

  /// Throws ConfigError for an empty, non-positive or non-increasing
  /// refinement list or m = 0.
  void validate() const;
};

struct ConvergenceRow {
  int num_elements;
  double h;
  double lower;
  double upper;
  // With a known exact eigenvalue: true relative errors and their EOC.
  std::optional<double> err_low, eoc_low, err_up, eoc_up;
  // Otherwise: η_rel and its EOC.
  std::optional<double> eta_rel, eoc_eta;
};

struct ConvergenceTable {
  std::string title;
  std::size_t eigen_index = 1;  // 1-based
  std::string units;            // "m" (scaled λ) or "N" (load P)
  std::optional<double> exact;
  std::vector<ConvergenceRow> rows;

  bool has_exact() const { return exact.has_value(); }
};

/// EOC_j = log(e_{j−1}/e_j) / log(h_{j−1}/h_j), j = 1..n−1.
std::vector<double> compute_eoc(std::span<const double> errors, std::span<const double> mesh_sizes);

/// Least-squares slope of log(error) against log(h) over the last `points`
/// entries. A convenience summary of the raw data, not a normative rate.
double least_squares_slope(std::span<const double> errors, std::span<const double> mesh_sizes,
                           std::size_t points = 3);

/// Bounds for every refinement and eigenvalue index 1..m of `profile`
/// (already in the units the table should carry).
std::vector<ConvergenceTable> convergence_study(const StiffnessProfile& profile, std::span<const int> refinements,
                                                std::size_t m, std::span<const double> exact,
                                                const std::string& title, const std::string& units);

/// First eigenvalue table of a preset or config-file beam. Presets are
/// reported in the scaled λ units of the benchmark tables (metres).
ConvergenceTable run_case(const ExperimentConfig& config);

/// One table per eigenvalue index 1..m.
std::vector<ConvergenceTable> run_multi_eigenvalue_study(const ExperimentConfig& config);

CustomBeam load_custom_beam(const std::filesystem::path& path);
CustomBeam parse_custom_beam(std::string_view json_text);

std::string format_table(const ConvergenceTable& table, TableFormat format);
/// Long-format CSV (index, N, h, lower, upper, errors) for log–log plots.
std::string format_curves(const std::vector<ConvergenceTable>& tables);
/// Writes `contents` to `path`; throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& contents);
void emit_table(const ConvergenceTable& table, TableFormat format, const std::filesystem::path& path);

/// "%.6e"-style scientific string built with std::to_chars (locale free).
std::string format_scientific(double value, int significant_digits = 7);
std::string format_fixed(double value, int decimals = 4);

}  // namespace beambounds
