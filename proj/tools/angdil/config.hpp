#pragma once

// Run configuration for the angdil command-line tool.
//
// A run is described by one JSON document:
//
//   { "map": { "family": "radial_power", "alpha": 2.0 },
//     "p": [2, 3],
//     "grid": { "r_min": 0.05, "r_max": 0.95, "count": 20, "spacing": "linear" },
//     "schwarz_grid": { "r_min": 1e-6, "r_max": 0.9, "count": 40 },
//     "quadrature": { "circle_nodes": 256, "rel_tol": 1e-9, "abs_tol": 1e-12,
//                     "max_depth": 40, "r_min": 1e-3 },
//     "checks": ["lemma1", "theorem1_p2"],
//     "tolerance": { "abs": 1e-10, "rel": 1e-7 },
//     "output": { "directory": "out", "formats": ["csv", "json"], "plots": false },
//     "mask_violations": false,
//     "lemma3_pair_cap": 50 }
//
// Every key is optional. Flags are merged into the document before it is
// validated, so flag values win over file values, which win over defaults.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "angdil/bounds.hpp"
#include "angdil/mapping.hpp"

namespace angdil::cli {

/// Invalid configuration; field() is the dotted path of the offending entry.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

enum class Spacing { linear, geometric };

struct GridSpec {
  double r_min = 0.05;
  double r_max = 0.95;
  std::size_t count = 20;
  Spacing spacing = Spacing::linear;

  std::vector<double> radii() const;
};

struct OutputSpec {
  std::filesystem::path directory = "out";
  bool csv = true;
  bool json = true;
  bool plots = false;
};

struct RunConfig {
  nlohmann::json map_spec;  // validated copy of the "map" object
  Mapping map = Mapping::identity();
  std::string map_label = "identity";
  std::vector<double> p_list{2.0};
  GridSpec grid{};
  GridSpec schwarz_grid{1e-6, 0.9, 40, Spacing::geometric};
  BoundSettings settings{};
  /// nullopt: every check; an empty vector selects nothing.
  std::optional<std::vector<InequalityId>> checks;
  std::size_t lemma3_pair_cap = 50;
  bool mask_violations = false;
  OutputSpec output{};
};

/// Command-line values; unset members leave the document untouched.
struct FlagOverrides {
  std::optional<std::string> family;
  std::optional<double> alpha;
  std::optional<double> phi;
  std::optional<std::vector<double>> coeffs;
  std::optional<std::vector<double>> cos_coeffs;
  std::optional<std::vector<double>> a;
  std::optional<std::string> input;
  std::optional<std::vector<double>> p;
  std::optional<double> r_min;
  std::optional<double> r_max;
  std::optional<long long> r_count;
  std::optional<std::string> spacing;
  std::optional<long long> circle_nodes;
  std::optional<double> tol_rel;
  std::optional<double> tol_abs;
  std::optional<std::vector<std::string>> checks;
  std::optional<std::string> out;
  std::optional<std::vector<std::string>> formats;
  bool plots = false;
  bool mask_violations = false;
};

/// Reads a config file; malformed JSON is reported against the field "config".
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Writes flag values into the document at their config paths.
void apply_overrides(nlohmann::json& doc, const FlagOverrides& flags);

/// Validates the document and builds the mapping (loading sampled data).
/// default_output is used when output.directory is absent.
RunConfig build_config(const nlohmann::json& doc,
                       const std::filesystem::path& default_output = "out");

/// Mapping from a "map" object; `field` prefixes error paths.
Mapping build_mapping(const nlohmann::json& spec, const std::string& field);

}  // namespace angdil::cli
