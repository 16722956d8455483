#include "angdil/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "angdil/bounds.hpp"
#include "angdil/dilatation.hpp"
#include "angdil/errors.hpp"
#include "angdil/geometry.hpp"
#include "angdil/ingest.hpp"
#include "angdil/plot.hpp"
#include "angdil/quadrature.hpp"
#include "angdil/report.hpp"

namespace angdil::cli {

using nlohmann::json;

namespace {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

void prepare_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : std::string()));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  try {
    write_text(path, text);
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

json metadata(const RunConfig& cfg) {
  return json{{"map", cfg.map_label}, {"p", cfg.p_list}};
}

void emit_table(const RunConfig& cfg, const std::string& stem, const Table& table,
                json extra = json::object()) {
  const auto& dir = cfg.output.directory;
  if (cfg.output.csv) write_file(dir / (stem + ".csv"), to_csv(table));
  if (cfg.output.json) {
    json doc = metadata(cfg);
    doc["columns"] = table.columns;
    doc["rows"] = to_json(table);
    for (auto& [k, v] : extra.items()) doc[k] = v;
    write_file(dir / (stem + ".json"), doc.dump(2) + "\n");
  }
}

std::string p_label(double p) {
  std::ostringstream s;
  s << "p=" << p;
  return s.str();
}

/// int_{r_i}^{r_{i+1}} dt / delta_p with the last segment ending at min(1, hull).
std::vector<double> tail_integrals(const RunConfig& cfg, double p, const std::vector<double>& radii) {
  const std::size_t n = radii.size();
  std::vector<double> tails(n);
  double tail = 0.0;
  const double top = std::min(1.0, cfg.map.max_radius());
  for (std::size_t i = n; i-- > 0;) {
    const double upper = i + 1 < n ? radii[i + 1] : top;
    tail += inverse_delta_integral(cfg.map, p, radii[i], upper, cfg.settings.circle,
                                   cfg.settings.radial, cfg.settings.policy)
                .value;
    tails[i] = tail;
  }
  return tails;
}

// ------------------------------------------------------------------ profile

int profile(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> radii = cfg.grid.radii();
  const BoundSettings& s = cfg.settings;

  struct Geo {
    double length, green, jac, deriv;
  };
  std::vector<Geo> geo;
  for (double r : radii) {
    geo.push_back({curve_length(cfg.map, r, s.circle).value,
                   disk_area_green(cfg.map, r, s.circle).value,
                   disk_area_jacobian(cfg.map, r, s.circle, s.radial, s.r_min).value,
                   area_derivative(cfg.map, r, s.circle).value});
  }

  Table table{{"p", "r", "L", "S_green", "S_jacobian", "S_prime", "delta_p", "delta_p_error",
               "theorem1_rhs"},
              {}};
  Chart chart{"Image area S(r) and the whole-disk bound", "r", "area", true, true, {}};
  chart.series.push_back({"S(r)", radii, {}, false, false});
  for (const Geo& g : geo) chart.series.front().y.push_back(g.green);

  for (double p : cfg.p_list) {
    const std::vector<double> tails = tail_integrals(cfg, p, radii);
    Series bound{"bound " + p_label(p), radii, {}, true, false};
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const DeltaResult d = delta_p(cfg.map, p, radii[i], s.circle, s.policy);
      const double rhs = theorem1_rhs(p, tails[i]);
      table.add({p, radii[i], geo[i].length, geo[i].green, geo[i].jac, geo[i].deriv, d.value,
                 d.error_estimate, rhs});
      bound.y.push_back(rhs);
    }
    chart.series.push_back(std::move(bound));
  }

  prepare_directory(cfg.output.directory);
  emit_table(cfg, "profile", table);
  if (cfg.output.plots) write_file(cfg.output.directory / "area_bound.svg", render_svg(chart));
  out << "profile: " << table.rows.size() << " rows for " << cfg.map_label << " written to "
      << cfg.output.directory.string() << "\n";
  return kExitOk;
}

// -------------------------------------------------------------------- check

struct CheckRow {
  std::string id;
  std::optional<double> p;
  std::optional<double> r1, r2;
  double lhs = 0, rhs = 0, margin = 0, tolerance = 0;
  bool pass = false, asserted = true, sharp = false;
  std::string note;
};

CheckRow to_row(const BoundCheckResult& b) {
  CheckRow row;
  row.id = std::string(to_string(b.id));
  row.p = b.p;
  if (!b.radii.empty()) row.r1 = b.radii[0];
  if (b.radii.size() > 1) row.r2 = b.radii[1];
  row.lhs = b.lhs;
  row.rhs = b.rhs;
  row.margin = b.margin;
  row.tolerance = b.tolerance;
  row.pass = b.pass;
  row.asserted = b.asserted;
  row.sharp = std::abs(b.margin) <= 1e-6 * std::abs(b.rhs);
  switch (b.id) {
    case InequalityId::theorem2_p2:
    case InequalityId::theorem2_pgt2:
    case InequalityId::corollary1_rederived:
      row.note = "liminf proxy at r1";
      break;
    case InequalityId::corollary1_paper:
      row.note = "liminf proxy at r1; printed constant, reported only";
      break;
    default:
      break;
  }
  return row;
}

CheckRow violation_row(double r, double theta, double jac, bool masked, const std::string& detail) {
  CheckRow row;
  row.id = "regularity";
  row.r1 = r;
  row.lhs = 0.0;
  row.rhs = jac;
  row.margin = jac;
  row.pass = false;
  row.asserted = !masked;
  std::ostringstream note;
  note << "J_f = " << format_number(jac) << " <= 0 at r = " << format_number(r)
       << ", theta = " << format_number(theta);
  if (!detail.empty()) note << "; " << detail;
  if (masked) note << "; masked";
  row.note = note.str();
  return row;
}

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

int check(const RunConfig& cfg, std::ostream& out) {
  std::vector<CheckRow> rows;
  bool halted = false;
  const std::vector<double> radii = cfg.grid.radii();
  const std::vector<double> schwarz_radii = cfg.schwarz_grid.radii();

  const int n_r = static_cast<int>(std::max<std::size_t>(cfg.grid.count, 8));
  const RegularityReport reg = validate_regular(cfg.map, n_r, cfg.settings.circle.n_nodes(),
                                                cfg.grid.r_min, cfg.grid.r_max, 1e-9);
  if (!reg.pass) {
    std::ostringstream detail;
    detail << reg.nonpositive_count << " of " << reg.sample_count << " samples";
    if (reg.max_modulus > 1.0 + 1e-9) detail << "; max |f| = " << format_number(reg.max_modulus);
    const PolarPoint at = reg.violations.empty() ? reg.min_jacobian_at : reg.violations.front().point;
    const double jac = reg.violations.empty() ? reg.min_jacobian : reg.violations.front().jacobian;
    rows.push_back(violation_row(at.r(), at.theta(), jac, cfg.mask_violations, detail.str()));
    halted = !cfg.mask_violations;
  }

  const bool none_selected = cfg.checks && cfg.checks->empty();
  if (!halted && !none_selected) {
    SuiteRequest req;
    req.p_list = cfg.p_list;
    req.radii = radii;
    req.schwarz_radii = schwarz_radii;
    if (cfg.checks) req.checks = *cfg.checks;
    req.lemma3_pair_cap = cfg.lemma3_pair_cap;
    try {
      for (const BoundCheckResult& b : run_suite(cfg.map, req, cfg.settings)) rows.push_back(to_row(b));
    } catch (const RegularityViolation& e) {
      rows.push_back(violation_row(e.r(), e.theta(), e.jacobian(), false, "raised during the suite"));
    }
  }

  Table table{{"inequality_id", "p", "r1", "r2", "lhs", "rhs", "margin", "tolerance", "pass",
               "asserted", "sharp", "note"},
              {}};
  std::size_t asserted = 0, failed = 0;
  const CheckRow* worst = nullptr;
  for (const CheckRow& row : rows) {
    table.add({row.id, opt(row.p), opt(row.r1), opt(row.r2), row.lhs, row.rhs, row.margin,
               row.tolerance, row.pass, row.asserted, row.sharp, row.note});
    if (!row.asserted) continue;
    ++asserted;
    if (!row.pass) ++failed;
    if (!worst || row.margin < worst->margin) worst = &row;
  }

  std::ostringstream summary;
  summary << "checks: " << rows.size() << " rows, " << asserted << " asserted, " << failed
          << " failed";
  json summary_json{{"rows", rows.size()}, {"asserted", asserted}, {"failed", failed}};
  if (worst) {
    summary << "; min margin " << format_number(worst->margin) << " at " << worst->id;
    if (worst->p) summary << " p=" << format_number(*worst->p);
    if (worst->r1) summary << " r1=" << format_number(*worst->r1);
    if (worst->r2) summary << " r2=" << format_number(*worst->r2);
    summary_json["min_margin"] = {{"inequality_id", worst->id},
                                  {"p", worst->p ? json(*worst->p) : json(nullptr)},
                                  {"r1", worst->r1 ? json(*worst->r1) : json(nullptr)},
                                  {"r2", worst->r2 ? json(*worst->r2) : json(nullptr)},
                                  {"margin", worst->margin}};
  }

  prepare_directory(cfg.output.directory);
  emit_table(cfg, "checks", table, json{{"summary", summary_json}});
  if (cfg.output.plots && !none_selected && !rows.empty()) {
    Chart chart{"Margins rhs - lhs by inequality", "r1", "margin", false, false, {}};
    std::map<std::string, Series> by_id;
    for (const CheckRow& row : rows) {
      if (!row.r1) continue;
      Series& s = by_id[row.id];
      s.name = row.id;
      s.markers = true;
      s.x.push_back(*row.r1);
      s.y.push_back(row.margin);
    }
    for (auto& [_, s] : by_id) chart.series.push_back(std::move(s));
    write_file(cfg.output.directory / "margins.svg", render_svg(chart));
  }
  out << summary.str() << "\n";
  return failed == 0 ? kExitOk : kExitFailed;
}

// ------------------------------------------------------------------ schwarz

int schwarz(const RunConfig& cfg, std::ostream& out) {
  require_origin_fixed(cfg.map);
  const std::vector<double> grid = cfg.schwarz_grid.radii();
  Table table{{"p", "r", "min_modulus", "tail_integral", "functional", "in_tail"}, {}};
  Table proxy{{"p", "proxy_liminf", "proxy_radius", "tail_count"}, {}};
  Chart chart{"Schwarz functional l_f(r) / R_p(r)", "r", "functional", true, false, {}};
  for (double p : cfg.p_list) {
    const SchwarzProfile prof = schwarz_profile(cfg.map, p, grid, cfg.settings);
    const std::size_t n = prof.radii.size();
    for (std::size_t k = 0; k < n; ++k) {
      table.add({p, prof.radii[k], prof.min_modulus[k], prof.tail_integrals[k],
                 prof.functional_values[k], k + prof.tail_count >= n});
    }
    proxy.add({p, prof.proxy_liminf, prof.proxy_radius, static_cast<double>(prof.tail_count)});
    chart.series.push_back({p_label(p), prof.radii, prof.functional_values, false, false});
    out << "schwarz " << p_label(p) << ": proxy liminf " << format_number(prof.proxy_liminf)
        << " at r=" << format_number(prof.proxy_radius) << "\n";
  }
  prepare_directory(cfg.output.directory);
  emit_table(cfg, "schwarz", table, json{{"proxy", to_json(proxy)}});
  if (cfg.output.csv) write_file(cfg.output.directory / "schwarz_proxy.csv", to_csv(proxy));
  if (cfg.output.plots) write_file(cfg.output.directory / "schwarz.svg", render_svg(chart));
  return kExitOk;
}

// ------------------------------------------------------------ ingest-verify

int ingest_verify(const RunConfig& cfg, std::ostream& out) {
  const SampledMapping* data = cfg.map.sampled_data();
  if (!data) throw ConfigError("map.family", "ingest-verify needs a sampled map (--input)");
  const RegularityReport rep =
      validate_regular(cfg.map, static_cast<int>(data->r_values().size()), data->theta_count(),
                       data->r_min(), data->r_max(), 1e-9);
  Table table{{"r", "theta", "jacobian"}, {}};
  for (const RegularitySample& v : rep.violations)
    table.add({v.point.r(), v.point.theta(), v.jacobian});
  const complex f0 = data->origin_estimate();
  const json summary{{"pass", rep.pass},
                     {"radii", data->r_values().size()},
                     {"theta_count", data->theta_count()},
                     {"r_min", data->r_min()},
                     {"r_max", data->r_max()},
                     {"samples_checked", rep.sample_count},
                     {"nonpositive_count", rep.nonpositive_count},
                     {"min_jacobian", rep.min_jacobian},
                     {"min_jacobian_r", rep.min_jacobian_at.r()},
                     {"min_jacobian_theta", rep.min_jacobian_at.theta()},
                     {"max_modulus", rep.max_modulus},
                     {"origin_estimate", {f0.real(), f0.imag()}},
                     {"asserted_regular", data->flags().regular},
                     {"asserted_n_property", data->flags().n_property}};
  prepare_directory(cfg.output.directory);
  emit_table(cfg, "regularity", table, json{{"summary", summary}});
  out << "ingest-verify: " << data->r_values().size() << " x " << data->theta_count()
      << " grid, min J " << format_number(rep.min_jacobian) << " at r="
      << format_number(rep.min_jacobian_at.r()) << " theta="
      << format_number(rep.min_jacobian_at.theta()) << ", " << rep.nonpositive_count
      << " non-positive samples: " << (rep.pass ? "PASS" : "FAIL") << "\n";
  return rep.pass ? kExitOk : kExitFailed;
}

// ----------------------------------------------------------------- selftest

struct Oracle {
  std::string name;
  std::function<double()> computed;
  double expected;
  double rel_tol;
};

std::vector<double> geometric_grid(double hi, double lo, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(hi * std::pow(lo / hi, k / double(n - 1)));
  return g;
}

}  // namespace

int run_profile(const RunConfig& cfg, std::ostream& out) { return profile(cfg, out); }
int run_check(const RunConfig& cfg, std::ostream& out) { return check(cfg, out); }
int run_schwarz(const RunConfig& cfg, std::ostream& out) { return schwarz(cfg, out); }
int run_ingest_verify(const RunConfig& cfg, std::ostream& out) { return ingest_verify(cfg, out); }

int run_selftest(std::ostream& out) {
  const Mapping id = Mapping::identity();
  const Mapping rp2 = Mapping::radial_power(2.0);
  const Mapping ang = Mapping::angular_reparam({{0.3}, {}});
  const std::vector<double> deep = geometric_grid(0.5, 1e-9, 40);
  const std::vector<Oracle> cases = {
      {"circle rule: exp(sin) = 2 pi I0(1)",
       [] { return integrate_circle([](double t) { return std::exp(std::sin(t)); }, CircleRule(64)).value; },
       kTwoPi * std::cyl_bessel_i(0.0, 1.0), 1e-13},
      {"radial rule: int 1/t on [0.25, 1] = ln 4",
       [] { return integrate_radial([](double t) { return 1.0 / t; }, 0.25, 1.0).value; },
       std::log(4.0), 1e-10},
      {"jacobian radial_power(2) r=0.5", [&] { return jacobian(rp2, PolarPoint(0.5, 0.3)); }, 0.5, 1e-13},
      {"D_3 angular_reparam(0.3 sin) at theta=0",
       [&] { return angular_dilatation(ang, 3.0, PolarPoint(0.5, 0.0)); }, 1.69, 1e-13},
      {"delta_2 identity r=0.5", [&] { return delta_p(id, 2.0, 0.5).value; }, kPi, 1e-12},
      {"delta_2 radial_power(2) r=0.5", [&] { return delta_p(rp2, 2.0, 0.5).value; }, kPi / 2, 1e-12},
      {"delta_3 angular_reparam r=0.5", [&] { return delta_p(ang, 3.0, 0.5).value; }, kPi * kPi, 1e-12},
      {"L radial_power(2) r=0.5", [&] { return curve_length(rp2, 0.5).value; }, kPi / 2, 1e-12},
      {"S_green radial_power(2) r=0.5", [&] { return disk_area_green(rp2, 0.5).value; }, kPi / 16, 1e-12},
      {"S_jacobian radial_power(2) r=0.5", [&] { return disk_area_jacobian(rp2, 0.5).value; }, kPi / 16, 1e-9},
      {"lemma 3 identity p=2 rhs (0.25, 0.5)",
       [&] { return check_lemma3(id, 2.0, 0.25, 0.5).rhs; }, kPi / 16, 1e-9},
      {"theorem 1 radial_power(2) p=2 r=0.5",
       [&] { return theorem1_bound(rp2, 2.0, 0.5).rhs; }, kPi / 16, 1e-9},
      {"theorem 1 identity p=3 r=0.5", [&] { return theorem1_bound(id, 3.0, 0.5).rhs; }, kPi / 4, 1e-9},
      {"schwarz proxy radial_power(2) p=2",
       [&] { return schwarz_profile(rp2, 2.0, deep).proxy_liminf; }, 1.0, 1e-6},
      {"schwarz proxy identity p=3", [&] { return schwarz_profile(id, 3.0, deep).proxy_liminf; }, 1.0, 1e-6},
      {"corollary proxy identity p=3",
       [&] { return corollary1_check(id, 3.0, deep).proxy_liminf; }, std::pow(kTwoPi, -2.0), 1e-6},
      {"branch gap identity r=0.5 eps=1e-4",
       [&] {
         const double eps[] = {1e-4};
         return 1.0 + branch_continuity(id, 0.5, eps).gaps[0].relative_gap;
       },
       1.0, 1e-3},
  };
  int failed = 0;
  for (const Oracle& c : cases) {
    double got = std::nan("");
    std::string error;
    try {
      got = c.computed();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double rel = std::abs(got - c.expected) / std::abs(c.expected);
    const bool ok = error.empty() && rel <= c.rel_tol;
    if (!ok) ++failed;
    out << (ok ? "PASS " : "FAIL ") << c.name << ": got " << format_number(got) << ", expected "
        << format_number(c.expected) << " (rel err " << format_number(rel) << " <= "
        << format_number(c.rel_tol) << ")";
    if (!error.empty()) out << " error: " << error;
    out << "\n";
  }
  out << "selftest: " << cases.size() - failed << "/" << cases.size() << " passed\n";
  return failed == 0 ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------- cli

namespace {

struct RawFlags {
  std::string config;
  std::string family, input, spacing, out;
  double alpha = 0, phi = 0, r_min = 0, r_max = 0, tol_rel = 0, tol_abs = 0;
  long long r_count = 0, circle_nodes = 0;
  std::vector<double> coeffs, cos_coeffs, a, p;
  std::vector<std::string> checks, formats;
  bool plots = false, mask = false;
};

void add_run_options(CLI::App* sub, RawFlags& f) {
  sub->add_option("--config", f.config, "JSON run configuration");
  sub->add_option("--map", f.family,
                  "identity|rotation|radial_power|twist|angular_reparam|mobius|sampled");
  sub->add_option("--alpha", f.alpha, "radial_power exponent");
  sub->add_option("--phi", f.phi, "rotation angle");
  sub->add_option("--coeffs", f.coeffs, "twist coefficients, or sine coefficients of angular_reparam")
      ->delimiter(',');
  sub->add_option("--cos-coeffs", f.cos_coeffs, "cosine coefficients of angular_reparam")
      ->delimiter(',');
  sub->add_option("--a", f.a, "mobius parameter re,im")->delimiter(',');
  sub->add_option("--input", f.input, "sampled map file (.csv or .json)");
  sub->add_option("--p", f.p, "exponents, e.g. 2,3")->delimiter(',');
  sub->add_option("--r-min", f.r_min, "smallest grid radius");
  sub->add_option("--r-max", f.r_max, "largest grid radius");
  sub->add_option("--r-count", f.r_count, "number of grid radii");
  sub->add_option("--spacing", f.spacing, "linear|geometric");
  sub->add_option("--circle-nodes", f.circle_nodes, "trapezoid nodes per circle");
  sub->add_option("--tol-rel", f.tol_rel, "relative check tolerance");
  sub->add_option("--tol-abs", f.tol_abs, "absolute check tolerance");
  sub->add_option("--checks", f.checks, "inequality ids, comma separated; 'none' selects nothing")
      ->delimiter(',');
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--format", f.formats, "csv,json")->delimiter(',');
  sub->add_flag("--plots", f.plots, "write SVG plots");
  sub->add_flag("--mask-violations", f.mask, "drop J <= 0 nodes instead of failing");
}

FlagOverrides collect(CLI::App* sub, const RawFlags& f) {
  FlagOverrides o;
  const auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--map")) o.family = f.family;
  if (given("--alpha")) o.alpha = f.alpha;
  if (given("--phi")) o.phi = f.phi;
  if (given("--coeffs")) o.coeffs = f.coeffs;
  if (given("--cos-coeffs")) o.cos_coeffs = f.cos_coeffs;
  if (given("--a")) o.a = f.a;
  if (given("--input")) o.input = f.input;
  if (given("--p")) o.p = f.p;
  if (given("--r-min")) o.r_min = f.r_min;
  if (given("--r-max")) o.r_max = f.r_max;
  if (given("--r-count")) o.r_count = f.r_count;
  if (given("--spacing")) o.spacing = f.spacing;
  if (given("--circle-nodes")) o.circle_nodes = f.circle_nodes;
  if (given("--tol-rel")) o.tol_rel = f.tol_rel;
  if (given("--tol-abs")) o.tol_abs = f.tol_abs;
  if (given("--checks")) o.checks = f.checks;
  if (given("--out")) o.out = f.out;
  if (given("--format")) o.formats = f.formats;
  o.plots = f.plots;
  o.mask_violations = f.mask;
  return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of area-distortion bounds via p-angular dilatation", "angdil"};
  app.require_subcommand(1);
  RawFlags flags;
  using Runner = int (*)(const RunConfig&, std::ostream&);
  const std::pair<const char*, Runner> commands[] = {
      {"profile", run_profile},
      {"check", run_check},
      {"schwarz", run_schwarz},
      {"ingest-verify", run_ingest_verify},
  };
  const char* descriptions[] = {"per-radius L, S, S' and delta_p tables",
                                "evaluate the inequality suite; exit 0 iff all pass",
                                "Schwarz functional and liminf proxy",
                                "parse a sampled map and report regularity"};
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < std::size(commands); ++k) {
    subs.push_back(app.add_subcommand(commands[k].first, descriptions[k]));
    add_run_options(subs.back(), flags);
  }
  CLI::App* selftest = app.add_subcommand("selftest", "run the built-in closed-form oracle suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (selftest->parsed()) return run_selftest(out);

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (!subs[k]->parsed()) continue;
    RunConfig cfg;
    try {
      json doc = flags.config.empty() ? json::object() : read_config_file(flags.config);
      apply_overrides(doc, collect(subs[k], flags));
      const char* env = std::getenv("ANGDIL_OUT");
      cfg = build_config(doc, env && *env ? env : "out");
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitUsage;
    }
    try {
      return commands[k].second(cfg, out);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const HypothesisViolation& e) {
      err << "error: hypothesis_violation: " << e.what() << "\n";
      return kExitRuntime;
    } catch (const IoError& e) {
      err << "error: io: " << e.what() << "\n";
      return kExitRuntime;
    } catch (const Error& e) {
      err << "error: numerical: " << e.what() << "\n";
      return kExitRuntime;
    }
  }
  return kExitUsage;
}

}  // namespace angdil::cli
