#include "angdil/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <set>
#include <sstream>

#include "angdil/errors.hpp"
#include "angdil/ingest.hpp"

namespace angdil::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected an object");
}

void allow_keys(const json& j, const std::string& field, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(join(field, key), "unknown field");
  }
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
  return v;
}

long long get_integer(const json& j, const std::string& field) {
  if (j.is_number_integer() || j.is_number_unsigned()) return j.get<long long>();
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15)
      return static_cast<long long>(v);
  }
  throw ConfigError(field, "expected an integer");
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) throw ConfigError(field, "expected true or false");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

std::vector<double> get_numbers(const json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k)
    out.push_back(get_number(j[k], field + "[" + std::to_string(k) + "]"));
  return out;
}

double number_or(const json& obj, const char* key, const std::string& field, double fallback) {
  return obj.contains(key) ? get_number(obj[key], join(field, key)) : fallback;
}

template <class F>
auto guarded(const std::string& field, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

GridSpec parse_grid(const json& doc, const char* key, GridSpec grid) {
  const std::string field = key;
  if (doc.contains(key)) {
    const json& g = doc[key];
    require_object(g, field);
    allow_keys(g, field, {"r_min", "r_max", "count", "spacing"});
    grid.r_min = number_or(g, "r_min", field, grid.r_min);
    grid.r_max = number_or(g, "r_max", field, grid.r_max);
    if (g.contains("count")) {
      const long long n = get_integer(g["count"], field + ".count");
      if (n < 2) throw ConfigError(field + ".count", "must be at least 2");
      if (n > 100000) throw ConfigError(field + ".count", "must be at most 100000");
      grid.count = static_cast<std::size_t>(n);
    }
    if (g.contains("spacing")) {
      const std::string s = get_string(g["spacing"], field + ".spacing");
      if (s == "linear") grid.spacing = Spacing::linear;
      else if (s == "geometric") grid.spacing = Spacing::geometric;
      else throw ConfigError(field + ".spacing", "expected linear or geometric, got '" + s + "'");
    }
  }
  if (!(grid.r_min > 0.0)) throw ConfigError(field + ".r_min", "must be > 0");
  if (!(grid.r_max <= 1.0)) throw ConfigError(field + ".r_max", "must be <= 1");
  if (!(grid.r_min < grid.r_max)) throw ConfigError(field + ".r_max", "must exceed r_min");
  return grid;
}

}  // namespace

std::vector<double> GridSpec::radii() const {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(count - 1);
    out[k] = spacing == Spacing::linear ? r_min + (r_max - r_min) * t
                                        : r_min * std::pow(r_max / r_min, t);
  }
  out.front() = r_min;
  out.back() = r_max;
  return out;
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  try {
    json doc = json::parse(in);
    require_object(doc, "config");
    return doc;
  } catch (const json::exception& e) {
    throw ConfigError("config", std::string("invalid JSON in ") + path.string() + ": " + e.what());
  }
}

void apply_overrides(json& doc, const FlagOverrides& f) {
  if (!doc.is_object()) doc = json::object();
  const auto section = [&](const char* key) -> json& {
    json& s = doc[key];
    if (!s.is_object()) s = json::object();
    return s;
  };
  if (f.input) {
    doc["map"] = json{{"family", "sampled"}, {"path", *f.input}};
  }
  if (f.family) {
    if (!f.input || *f.family != "sampled") doc["map"] = json{{"family", *f.family}};
    if (f.input) doc["map"]["path"] = *f.input;
  }
  if (f.alpha || f.phi || f.coeffs || f.cos_coeffs || f.a) {
    json& m = section("map");
    if (f.alpha) m["alpha"] = *f.alpha;
    if (f.phi) m["phi"] = *f.phi;
    if (f.coeffs) m["coeffs"] = *f.coeffs;
    if (f.cos_coeffs) m["cos_coeffs"] = *f.cos_coeffs;
    if (f.a) m["a"] = *f.a;
  }
  if (f.p) doc["p"] = *f.p;
  if (f.r_min) section("grid")["r_min"] = *f.r_min;
  if (f.r_max) section("grid")["r_max"] = *f.r_max;
  if (f.r_count) section("grid")["count"] = *f.r_count;
  if (f.spacing) section("grid")["spacing"] = *f.spacing;
  if (f.circle_nodes) section("quadrature")["circle_nodes"] = *f.circle_nodes;
  if (f.tol_rel) section("tolerance")["rel"] = *f.tol_rel;
  if (f.tol_abs) section("tolerance")["abs"] = *f.tol_abs;
  if (f.checks) {
    json list = json::array();
    for (const auto& c : *f.checks)
      if (!c.empty() && c != "none") list.push_back(c);
    doc["checks"] = list;
  }
  if (f.out) section("output")["directory"] = *f.out;
  if (f.formats) section("output")["formats"] = *f.formats;
  if (f.plots) section("output")["plots"] = true;
  if (f.mask_violations) doc["mask_violations"] = true;
}

Mapping build_mapping(const json& spec, const std::string& field) {
  require_object(spec, field);
  if (!spec.contains("family")) throw ConfigError(field + ".family", "missing");
  const std::string family = get_string(spec["family"], field + ".family");

  if (family == "identity") {
    allow_keys(spec, field, {"family"});
    return Mapping::identity();
  }
  if (family == "rotation") {
    allow_keys(spec, field, {"family", "phi"});
    return Mapping::rotation(number_or(spec, "phi", field, 0.0));
  }
  if (family == "radial_power") {
    allow_keys(spec, field, {"family", "alpha"});
    if (!spec.contains("alpha")) throw ConfigError(field + ".alpha", "missing");
    const double alpha = get_number(spec["alpha"], field + ".alpha");
    return guarded(field + ".alpha", [&] { return Mapping::radial_power(alpha); });
  }
  if (family == "twist") {
    allow_keys(spec, field, {"family", "coeffs"});
    if (!spec.contains("coeffs")) throw ConfigError(field + ".coeffs", "missing");
    TwistProfile g{get_numbers(spec["coeffs"], field + ".coeffs")};
    return guarded(field + ".coeffs", [&] { return Mapping::twist(std::move(g)); });
  }
  if (family == "angular_reparam") {
    allow_keys(spec, field, {"family", "coeffs", "cos_coeffs"});
    AngularProfile h;
    if (spec.contains("coeffs")) h.sin_coeffs = get_numbers(spec["coeffs"], field + ".coeffs");
    if (spec.contains("cos_coeffs"))
      h.cos_coeffs = get_numbers(spec["cos_coeffs"], field + ".cos_coeffs");
    return guarded(field + ".coeffs", [&] { return Mapping::angular_reparam(std::move(h)); });
  }
  if (family == "mobius") {
    allow_keys(spec, field, {"family", "a"});
    if (!spec.contains("a")) throw ConfigError(field + ".a", "missing");
    const std::vector<double> a = get_numbers(spec["a"], field + ".a");
    if (a.size() != 2) throw ConfigError(field + ".a", "expected [re, im]");
    return guarded(field + ".a", [&] { return Mapping::mobius({a[0], a[1]}); });
  }
  if (family == "composition") {
    allow_keys(spec, field, {"family", "members"});
    if (!spec.contains("members") || !spec["members"].is_array() || spec["members"].empty())
      throw ConfigError(field + ".members", "expected a non-empty list of maps");
    std::vector<Mapping> members;
    for (std::size_t k = 0; k < spec["members"].size(); ++k)
      members.push_back(build_mapping(spec["members"][k], field + ".members[" + std::to_string(k) + "]"));
    return guarded(field + ".members", [&] { return Mapping::composition(std::move(members)); });
  }
  if (family == "sampled") {
    allow_keys(spec, field, {"family", "path"});
    if (!spec.contains("path")) throw ConfigError(field + ".path", "missing");
    const std::string path = get_string(spec["path"], field + ".path");
    return guarded(field + ".path", [&] {
      return Mapping::sampled(std::make_shared<const SampledMapping>(parse_sampled_map(path)));
    });
  }
  throw ConfigError(field + ".family", "unknown family '" + family + "'");
}

RunConfig build_config(const json& doc, const std::filesystem::path& default_output) {
  require_object(doc, "config");
  allow_keys(doc, "", {"map", "p", "grid", "schwarz_grid", "quadrature", "checks", "tolerance",
                       "output", "mask_violations", "lemma3_pair_cap"});
  RunConfig cfg;

  if (doc.contains("p")) {
    const json& p = doc["p"];
    cfg.p_list = p.is_number() ? std::vector<double>{get_number(p, "p")} : get_numbers(p, "p");
    if (cfg.p_list.empty()) throw ConfigError("p", "must not be empty");
    for (std::size_t k = 0; k < cfg.p_list.size(); ++k)
      if (!(cfg.p_list[k] >= 2.0))
        throw ConfigError("p[" + std::to_string(k) + "]", "exponent must be >= 2");
    std::sort(cfg.p_list.begin(), cfg.p_list.end());
    cfg.p_list.erase(std::unique(cfg.p_list.begin(), cfg.p_list.end()), cfg.p_list.end());
  }

  cfg.grid = parse_grid(doc, "grid", cfg.grid);
  cfg.schwarz_grid = parse_grid(doc, "schwarz_grid", cfg.schwarz_grid);

  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    require_object(q, "quadrature");
    allow_keys(q, "quadrature", {"circle_nodes", "rel_tol", "abs_tol", "max_depth", "r_min"});
    if (q.contains("circle_nodes")) {
      const long long n = get_integer(q["circle_nodes"], "quadrature.circle_nodes");
      if (n < 8 || n % 2 != 0 || n > (1 << 22))
        throw ConfigError("quadrature.circle_nodes", "must be an even integer in [8, 4194304]");
      cfg.settings.circle = CircleRule(static_cast<int>(n));
    }
    RadialRule& rr = cfg.settings.radial;
    rr.rel_tol = number_or(q, "rel_tol", "quadrature", rr.rel_tol);
    rr.abs_tol = number_or(q, "abs_tol", "quadrature", rr.abs_tol);
    if (!(rr.rel_tol > 0.0)) throw ConfigError("quadrature.rel_tol", "must be > 0");
    if (!(rr.abs_tol > 0.0)) throw ConfigError("quadrature.abs_tol", "must be > 0");
    if (q.contains("max_depth")) {
      const long long d = get_integer(q["max_depth"], "quadrature.max_depth");
      if (d < 1 || d > 60) throw ConfigError("quadrature.max_depth", "must lie in [1, 60]");
      rr.max_depth = static_cast<int>(d);
    }
    cfg.settings.r_min = number_or(q, "r_min", "quadrature", cfg.settings.r_min);
    if (!(cfg.settings.r_min > 0.0 && cfg.settings.r_min < 1.0))
      throw ConfigError("quadrature.r_min", "must lie in (0, 1)");
  }

  if (doc.contains("tolerance")) {
    const json& t = doc["tolerance"];
    require_object(t, "tolerance");
    allow_keys(t, "tolerance", {"abs", "rel"});
    cfg.settings.tolerance.abs = number_or(t, "abs", "tolerance", cfg.settings.tolerance.abs);
    cfg.settings.tolerance.rel = number_or(t, "rel", "tolerance", cfg.settings.tolerance.rel);
    if (!(cfg.settings.tolerance.abs >= 0.0)) throw ConfigError("tolerance.abs", "must be >= 0");
    if (!(cfg.settings.tolerance.rel >= 0.0)) throw ConfigError("tolerance.rel", "must be >= 0");
  }

  if (doc.contains("checks")) {
    const json& c = doc["checks"];
    if (!c.is_array()) throw ConfigError("checks", "expected a list of inequality ids");
    std::vector<InequalityId> ids;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::string field = "checks[" + std::to_string(k) + "]";
      const std::string name = get_string(c[k], field);
      const auto id = parse_inequality_id(name);
      if (!id) throw ConfigError(field, "unknown inequality id '" + name + "'");
      if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
    }
    cfg.checks = std::move(ids);
  }

  if (doc.contains("mask_violations")) cfg.mask_violations = get_bool(doc["mask_violations"], "mask_violations");
  if (cfg.mask_violations) cfg.settings.policy = JacobianPolicy::mask;

  if (doc.contains("lemma3_pair_cap")) {
    const long long cap = get_integer(doc["lemma3_pair_cap"], "lemma3_pair_cap");
    if (cap < 1) throw ConfigError("lemma3_pair_cap", "must be >= 1");
    cfg.lemma3_pair_cap = static_cast<std::size_t>(cap);
  }

  cfg.output.directory = default_output;
  if (doc.contains("output")) {
    const json& o = doc["output"];
    require_object(o, "output");
    allow_keys(o, "output", {"directory", "formats", "plots"});
    if (o.contains("directory")) {
      const std::string dir = get_string(o["directory"], "output.directory");
      if (dir.empty()) throw ConfigError("output.directory", "must not be empty");
      cfg.output.directory = dir;
    }
    if (o.contains("formats")) {
      const json& f = o["formats"];
      if (!f.is_array() || f.empty()) throw ConfigError("output.formats", "expected a non-empty list");
      cfg.output.csv = cfg.output.json = false;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const std::string field = "output.formats[" + std::to_string(k) + "]";
        const std::string name = get_string(f[k], field);
        if (name == "csv") cfg.output.csv = true;
        else if (name == "json") cfg.output.json = true;
        else throw ConfigError(field, "expected csv or json, got '" + name + "'");
      }
    }
    if (o.contains("plots")) cfg.output.plots = get_bool(o["plots"], "output.plots");
  }

  if (cfg.grid.r_min < cfg.settings.r_min)
    throw ConfigError("grid.r_min", "must not be below quadrature.r_min (" +
                                        std::to_string(cfg.settings.r_min) + ")");

  cfg.map_spec = doc.contains("map") ? doc["map"] : json{{"family", "identity"}};
  cfg.map = build_mapping(cfg.map_spec, "map");
  cfg.map_label = cfg.map.describe();

  // Sampled data only covers its radial hull.
  if (cfg.map.family() == Family::sampled) {
    const double lo = cfg.map.min_radius(), hi = cfg.map.max_radius();
    if (cfg.grid.r_min < lo - 1e-14)
      throw ConfigError("grid.r_min", "below the sampled hull (smallest radius " +
                                          std::to_string(lo) + ")");
    if (cfg.grid.r_max > hi + 1e-14)
      throw ConfigError("grid.r_max", "above the sampled hull (largest radius " +
                                          std::to_string(hi) + ")");
    cfg.schwarz_grid.r_min = std::max(cfg.schwarz_grid.r_min, lo);
    cfg.schwarz_grid.r_max = std::min(cfg.schwarz_grid.r_max, hi);
    if (!(cfg.schwarz_grid.r_min < cfg.schwarz_grid.r_max))
      throw ConfigError("schwarz_grid", "does not intersect the sampled hull");
  }
  return cfg;
}

}  // namespace angdil::cli
