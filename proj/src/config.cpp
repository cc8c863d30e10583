// Beam description files (JSON):
//
//   {
//     "geometry":  {"length": 1.0, "youngs_modulus": 2.1e11,
//                   "section": "rectangular" | "circular" | "direct",
//                   "width": 0.05},
//     "stiffness": {"profile": "constant", "value": 0.015}
//                | {"profile": "stepped", "segments": [[0.5, 0.01], [0.5, 0.02]]}
//                | {"profile": "affine", "start": 0.015, "end": 0.01}
//                | {"profile": "polynomial", "coefficients": [...], "monotone": true},
//     "mesh":      {"refinements": [8, 16, 32]},
//     "eigenvalues": 1
//   }
//
// For "rectangular" the stiffness values are thicknesses t [m], for
// "circular" radii r [m], for "direct" bending stiffness E·I [N·m²].
// Segment pairs are (length fraction, value); fractions sum to 1.
// "polynomial" is only accepted for "direct" sections.

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beambounds/errors.hpp"
#include "beambounds/study.hpp"

namespace beambounds {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key))
    throw ConfigError(std::string("missing key '") + key + "' in " + where);
  return obj.at(key);
}

double positive_number(const json& obj, const char* key, const char* where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' in " + where + " must be a number");
  const double d = v.get<double>();
  if (!(d > 0.0)) throw ConfigError(std::string("'") + key + "' in " + where + " must be positive");
  return d;
}

DimensionProfile parse_dimension(const json& s) {
  const std::string kind = require(s, "profile", "stiffness").get<std::string>();
  if (kind == "constant") return DimensionProfile::constant(positive_number(s, "value", "stiffness"));
  if (kind == "affine")
    return DimensionProfile::affine(positive_number(s, "start", "stiffness"), positive_number(s, "end", "stiffness"));
  if (kind == "stepped") {
    std::vector<double> fractions, values;
    for (const auto& seg : require(s, "segments", "stiffness")) {
      if (!seg.is_array() || seg.size() != 2) throw ConfigError("segments must be [fraction, value] pairs");
      fractions.push_back(seg[0].get<double>());
      values.push_back(seg[1].get<double>());
    }
    return DimensionProfile::piecewise(std::move(fractions), std::move(values));
  }
  throw UnsupportedProfile("unsupported stiffness profile '" + kind + "'");
}

StiffnessProfile parse_direct(const json& s, double length) {
  const std::string kind = require(s, "profile", "stiffness").get<std::string>();
  if (kind == "polynomial") {
    std::vector<double> coefficients = require(s, "coefficients", "stiffness").get<std::vector<double>>();
    const bool monotone = s.value("monotone", false);
    return StiffnessProfile::polynomial(length, Polynomial(std::move(coefficients)), monotone);
  }
  const DimensionProfile d = parse_dimension(s);
  switch (d.kind()) {
    case DimensionProfile::Kind::Constant:
      return StiffnessProfile::uniform(length, d.values()[0]);
    case DimensionProfile::Kind::PiecewiseConstant: {
      std::vector<double> breakpoints;
      for (double y : d.breakpoints()) breakpoints.push_back(y * length);
      breakpoints.back() = length;
      return StiffnessProfile::piecewise_constant(std::move(breakpoints), {d.values().begin(), d.values().end()});
    }
    case DimensionProfile::Kind::Affine: {
      const double a = d.values()[0], b = d.values()[1];
      return StiffnessProfile::polynomial(length, Polynomial::affine(a, (b - a) / length), true);
    }
  }
  throw UnsupportedProfile("unsupported stiffness profile '" + kind + "'");
}

}  // namespace

CustomBeam parse_custom_beam(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    const json& g = require(root, "geometry", "config");
    const json& s = require(root, "stiffness", "config");
    const double length = positive_number(g, "length", "geometry");
    const std::string section = require(g, "section", "geometry").get<std::string>();

    CustomBeam beam{std::nullopt, StiffnessProfile::uniform(length, 1.0), {}, 1};
    if (section == "direct") {
      beam.profile = parse_direct(s, length);
    } else if (section == "rectangular" || section == "circular") {
      const double e = positive_number(g, "youngs_modulus", "geometry");
      CrossSection cs = section == "rectangular"
                            ? CrossSection(RectangularSection{positive_number(g, "width", "geometry"), parse_dimension(s)})
                            : CrossSection(CircularSection{parse_dimension(s)});
      beam.geometry.emplace(length, e, std::move(cs));
      beam.profile = stiffness_from_geometry(*beam.geometry);
    } else {
      throw ConfigError("geometry.section must be rectangular, circular or direct");
    }

    if (root.contains("mesh")) {
      const json& mesh = root.at("mesh");
      if (mesh.contains("refinements")) beam.refinements = mesh.at("refinements").get<std::vector<int>>();
    }
    if (root.contains("eigenvalues")) {
      const int m = root.at("eigenvalues").get<int>();
      if (m < 1) throw ConfigError("eigenvalues must be at least 1");
      beam.eigenvalues = static_cast<std::size_t>(m);
    }
    return beam;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

CustomBeam load_custom_beam(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_custom_beam(ss.str());
}

}  // namespace beambounds
