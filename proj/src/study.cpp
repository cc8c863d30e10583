#include "beambounds/study.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "beambounds/errors.hpp"

namespace beambounds {
namespace {

constexpr double kLength = 1.0;
constexpr double kYoungsModulus = 21e10;
constexpr double kWidth = 0.05;

struct PresetInfo {
  CasePreset preset;
  std::string_view name;
};

constexpr PresetInfo kPresets[] = {
    {CasePreset::UniformRect, "uniform-rect"},
    {CasePreset::SteppedPrinted, "stepped-printed"},
    {CasePreset::SteppedSymmetric, "stepped-symmetric"},
    {CasePreset::UniformCirc, "uniform-circ"},
    {CasePreset::Conical, "conical"},
};

std::vector<int> powers_of_two(int from, int to) {
  std::vector<int> out;
  for (int n = from; n <= to; n *= 2) out.push_back(n);
  return out;
}

}  // namespace

std::string_view preset_name(CasePreset preset) {
  for (const auto& p : kPresets)
    if (p.preset == preset) return p.name;
  return "unknown";
}

CasePreset parse_preset(std::string_view name) {
  for (const auto& p : kPresets)
    if (p.name == name) return p.preset;
  throw ConfigError("unknown case preset '" + std::string(name) + "'");
}

std::vector<CasePreset> all_presets() {
  std::vector<CasePreset> out;
  for (const auto& p : kPresets) out.push_back(p.preset);
  return out;
}

BeamGeometry preset_geometry(CasePreset preset) {
  switch (preset) {
    case CasePreset::UniformRect:
      return BeamGeometry(kLength, kYoungsModulus, RectangularSection{kWidth, DimensionProfile::constant(0.015)});
    case CasePreset::SteppedPrinted:
      return BeamGeometry(kLength, kYoungsModulus,
                          RectangularSection{kWidth, DimensionProfile::equal_segments(
                                                         {0.0155, 0.010, 0.0153, 0.0192, 0.0192, 0.053, 0.010, 0.0155})});
    case CasePreset::SteppedSymmetric:
      return BeamGeometry(kLength, kYoungsModulus,
                          RectangularSection{kWidth, DimensionProfile::equal_segments(
                                                         {0.0155, 0.010, 0.0153, 0.0192, 0.0192, 0.0153, 0.010, 0.0155})});
    case CasePreset::UniformCirc:
      return BeamGeometry(kLength, kYoungsModulus, CircularSection{DimensionProfile::constant(0.01)});
    case CasePreset::Conical:
      return BeamGeometry(kLength, kYoungsModulus, CircularSection{DimensionProfile::affine(0.015, 0.01)});
  }
  throw ConfigError("unknown case preset");
}

std::vector<int> preset_refinements(CasePreset preset) {
  switch (preset) {
    case CasePreset::UniformRect:
    case CasePreset::UniformCirc:
      return powers_of_two(2, 128);
    case CasePreset::SteppedPrinted:
    case CasePreset::SteppedSymmetric:
    case CasePreset::Conical:
      return powers_of_two(8, 256);
  }
  return {};
}

TableFormat parse_format(std::string_view name) {
  if (name == "csv") return TableFormat::Csv;
  if (name == "md" || name == "markdown") return TableFormat::Markdown;
  if (name == "plain" || name == "txt") return TableFormat::Plain;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (eigenvalues < 1) throw ConfigError("number of eigenvalues must be at least 1");
  for (std::size_t j = 0; j < refinements.size(); ++j) {
    if (refinements[j] < 2) throw ConfigError("refinements must be at least 2 elements");
    if (j > 0 && refinements[j] <= refinements[j - 1]) throw ConfigError("refinement list must be strictly increasing");
  }
}

// ---------------------------------------------------------------------------
// EOC

std::vector<double> compute_eoc(std::span<const double> errors, std::span<const double> mesh_sizes) {
  if (errors.size() != mesh_sizes.size() || errors.size() < 2)
    throw InvalidArgument("compute_eoc: need equal-length sequences with at least two entries");
  for (std::size_t j = 0; j < errors.size(); ++j) {
    if (!(errors[j] > 0.0)) throw InvalidArgument("compute_eoc: errors must be positive");
    if (!(mesh_sizes[j] > 0.0)) throw InvalidArgument("compute_eoc: mesh sizes must be positive");
    if (j > 0 && !(mesh_sizes[j] < mesh_sizes[j - 1]))
      throw InvalidArgument("compute_eoc: mesh sizes must be strictly decreasing");
  }
  std::vector<double> eoc;
  for (std::size_t j = 1; j < errors.size(); ++j)
    eoc.push_back(std::log(errors[j - 1] / errors[j]) / std::log(mesh_sizes[j - 1] / mesh_sizes[j]));
  return eoc;
}

double least_squares_slope(std::span<const double> errors, std::span<const double> mesh_sizes, std::size_t points) {
  if (errors.size() != mesh_sizes.size() || points < 2 || errors.size() < points)
    throw InvalidArgument("least_squares_slope: not enough points");
  const std::size_t first = errors.size() - points;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = first; j < errors.size(); ++j) {
    if (!(errors[j] > 0.0) || !(mesh_sizes[j] > 0.0)) throw InvalidArgument("least_squares_slope: nonpositive data");
    const double x = std::log(mesh_sizes[j]);
    const double y = std::log(errors[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// Studies

namespace {

void fill_eoc(std::vector<ConvergenceRow>& rows, std::optional<double> ConvergenceRow::*err,
              std::optional<double> ConvergenceRow::*eoc) {
  for (std::size_t j = 1; j < rows.size(); ++j) {
    const auto& prev = rows[j - 1].*err;
    const auto& cur = rows[j].*err;
    if (prev && cur && *prev > 0.0 && *cur > 0.0) {
      const double e[] = {*prev, *cur};
      const double h[] = {rows[j - 1].h, rows[j].h};
      rows[j].*eoc = compute_eoc(e, h).front();
    }
  }
}

struct ResolvedCase {
  std::string title;
  std::string units;
  StiffnessProfile profile;
  std::vector<int> refinements;
  std::vector<double> exact;
};

ResolvedCase resolve(const ExperimentConfig& config, std::size_t m) {
  config.validate();
  if (const auto* preset = std::get_if<CasePreset>(&config.source)) {
    const BeamGeometry geometry = preset_geometry(*preset);
    ResolvedCase r{std::string(preset_name(*preset)), "m", scaled_stiffness_from_geometry(geometry),
                   config.refinements.empty() ? preset_refinements(*preset) : config.refinements, {}};
    if (geometry.is_uniform())
      for (const auto& e : analytic_eigenvalues(geometry, m)) r.exact.push_back(e.lambda);
    return r;
  }
  const auto& path = std::get<std::filesystem::path>(config.source);
  CustomBeam beam = load_custom_beam(path);
  ResolvedCase r{path.filename().string(), "N", beam.profile,
                 config.refinements.empty() ? beam.refinements : config.refinements, {}};
  if (r.refinements.empty()) throw ConfigError("no refinements given in config or on the command line");
  if (beam.geometry && beam.geometry->is_uniform())
    for (const auto& e : analytic_eigenvalues(*beam.geometry, m)) r.exact.push_back(e.load);
  return r;
}

}  // namespace

std::vector<ConvergenceTable> convergence_study(const StiffnessProfile& profile, std::span<const int> refinements,
                                                std::size_t m, std::span<const double> exact,
                                                const std::string& title, const std::string& units) {
  if (refinements.empty()) throw ConfigError("empty refinement list");
  if (m < 1) throw ConfigError("number of eigenvalues must be at least 1");
  if (!exact.empty() && exact.size() < m) throw InvalidArgument("convergence_study: too few exact eigenvalues");
  if (m > static_cast<std::size_t>(2 * refinements.front() - 2))
    throw ConfigError("more eigenvalues requested than degrees of freedom on the coarsest mesh");

  std::vector<ConvergenceTable> tables(m);
  for (std::size_t i = 0; i < m; ++i) {
    tables[i].title = title + ", eigenvalue " + std::to_string(i + 1);
    tables[i].eigen_index = i + 1;
    tables[i].units = units;
    if (!exact.empty()) tables[i].exact = exact[i];
  }

  for (int n : refinements) {
    const Mesh mesh = make_uniform_mesh(profile.length(), n);
    if (!check_alignment(mesh, profile))
      throw MisalignedMesh("refinement N=" + std::to_string(n) + " does not align with the stiffness segments");
    const BoundsReport report = two_sided_bounds(mesh, profile, m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& b = report.bounds[i];
      ConvergenceRow row{n, mesh.max_element_length(), b.lower, b.upper, {}, {}, {}, {}, {}, {}};
      if (tables[i].exact) {
        const double ex = *tables[i].exact;
        row.err_low = (ex - b.lower) / ex;
        row.err_up = (b.upper - ex) / ex;
      } else {
        row.eta_rel = b.eta_rel;
      }
      tables[i].rows.push_back(row);
    }
  }
  for (auto& t : tables) {
    fill_eoc(t.rows, &ConvergenceRow::err_low, &ConvergenceRow::eoc_low);
    fill_eoc(t.rows, &ConvergenceRow::err_up, &ConvergenceRow::eoc_up);
    fill_eoc(t.rows, &ConvergenceRow::eta_rel, &ConvergenceRow::eoc_eta);
  }
  return tables;
}

ConvergenceTable run_case(const ExperimentConfig& config) {
  const ResolvedCase r = resolve(config, 1);
  return convergence_study(r.profile, r.refinements, 1, r.exact, r.title, r.units).front();
}

std::vector<ConvergenceTable> run_multi_eigenvalue_study(const ExperimentConfig& config) {
  const ResolvedCase r = resolve(config, config.eigenvalues);
  return convergence_study(r.profile, r.refinements, config.eigenvalues, r.exact, r.title, r.units);
}

// ---------------------------------------------------------------------------
// Formatting

std::string format_scientific(double value, int significant_digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, significant_digits - 1);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  return std::string(buf, res.ptr);
}

namespace {

std::string opt_sci(const std::optional<double>& v) { return v ? format_scientific(*v) : std::string(); }
std::string opt_eoc(const std::optional<double>& v) { return v ? format_fixed(*v) : std::string(); }

std::string mesh_label(const ConvergenceRow& row) {
  if (std::abs(row.h * row.num_elements - 1.0) < 1e-12) return "1/" + std::to_string(row.num_elements);
  return format_scientific(row.h);
}

std::vector<std::string> header(const ConvergenceTable& t) {
  if (t.has_exact()) return {"h", "lower", "err_low", "eoc_low", "upper", "err_up", "eoc_up"};
  return {"h", "lower", "upper", "eta_rel", "eoc"};
}

std::vector<std::string> cells(const ConvergenceTable& t, const ConvergenceRow& r, bool h_as_fraction) {
  const std::string h = h_as_fraction ? mesh_label(r) : format_scientific(r.h);
  if (t.has_exact())
    return {h, format_scientific(r.lower), opt_sci(r.err_low), opt_eoc(r.eoc_low),
            format_scientific(r.upper), opt_sci(r.err_up), opt_eoc(r.eoc_up)};
  return {h, format_scientific(r.lower), format_scientific(r.upper), opt_sci(r.eta_rel), opt_eoc(r.eoc_eta)};
}

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

}  // namespace

std::string format_table(const ConvergenceTable& table, TableFormat format) {
  std::string out;
  const auto head = header(table);
  switch (format) {
    case TableFormat::Csv:
      out += join(head, ",") + "\n";
      for (const auto& r : table.rows) out += join(cells(table, r, false), ",") + "\n";
      break;
    case TableFormat::Markdown: {
      out += "| " + join(head, " | ") + " |\n";
      out += "|" + join(std::vector<std::string>(head.size(), "---"), "|") + "|\n";
      for (const auto& r : table.rows) out += "| " + join(cells(table, r, true), " | ") + " |\n";
      break;
    }
    case TableFormat::Plain: {
      std::vector<std::vector<std::string>> grid{head};
      for (const auto& r : table.rows) grid.push_back(cells(table, r, true));
      std::vector<std::size_t> width(head.size(), 0);
      for (const auto& row : grid)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
      out += "# " + table.title + " [" + table.units + "]\n";
      for (const auto& row : grid) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c) line += "  ";
          line += row[c] + std::string(width[c] - row[c].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
      }
      break;
    }
  }
  return out;
}

std::string format_curves(const std::vector<ConvergenceTable>& tables) {
  std::string out = "index,N,h,lower,upper,err_low,err_up,eta_rel\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      const double eta = (r.upper - r.lower) / r.upper;
      out += join({std::to_string(t.eigen_index), std::to_string(r.num_elements), format_scientific(r.h),
                   format_scientific(r.lower), format_scientific(r.upper), opt_sci(r.err_low), opt_sci(r.err_up),
                   format_scientific(eta)},
                  ",") +
             "\n";
    }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_table(const ConvergenceTable& table, TableFormat format, const std::filesystem::path& path) {
  write_text(path, format_table(table, format));
}

}  // namespace beambounds
