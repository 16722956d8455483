// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Every tolerance is fixed here; none is read from the library defaults.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "angdil/bounds.hpp"
#include "angdil/dilatation.hpp"
#include "angdil/geometry.hpp"
#include "angdil/ingest.hpp"
#include "angdil/mapping.hpp"
#include "support/families.hpp"

#ifndef ANGDIL_EXE
#error "ANGDIL_EXE must point at the angdil executable"
#endif

using namespace angdil;
using angdil::testing::acceptance_families;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(lo + (hi - lo) * k / double(n - 1));
  return g;
}

std::vector<double> geometric_grid(double hi, double lo, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(hi * std::pow(lo / hi, k / double(n - 1)));
  return g;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ------------------------------------------------------------------ 1

Outcome universal_suite() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  SuiteRequest req;
  req.p_list = {2.0, 2.5, 3.0, 5.0};
  req.radii = linear_grid(0.05, 0.95, 20);
  req.checks = {InequalityId::lemma1,      InequalityId::isoperimetric, InequalityId::lemma2,
                InequalityId::lemma3_p2,   InequalityId::lemma3_pgt2,   InequalityId::theorem1_p2,
                InequalityId::theorem1_pgt2};
  req.lemma3_pair_cap = 50;
  std::size_t total = 0;
  double worst = INFINITY;
  std::string worst_at;
  for (const auto& fam : acceptance_families()) {
    const auto results = run_suite(fam.map, req);
    // 20 isoperimetric + per p: 20 lemma1 + 20 lemma2 + 50 lemma3 + 20 theorem1
    o.require(results.size() == 20 + 4 * 110, fam.name + " row count " + std::to_string(results.size()));
    for (const BoundCheckResult& c : results) {
      const double tol = 1e-10 + 1e-7 * std::max(1.0, std::abs(c.rhs));
      const double m = c.rhs - c.lhs;
      const bool ok = std::isfinite(m) && m >= -tol;
      if (m / tol < worst) {
        worst = m / tol;
        worst_at = fam.name + " " + std::string(to_string(c.id));
      }
      o.require(ok, fam.name + " " + std::string(to_string(c.id)) + " margin " + fmt(m));
      ++total;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds < 60.0, "runtime " + fmt(seconds) + " s");
  o.detail << total << " checks, min margin/tol " << fmt(worst) << " (" << worst_at << "), "
           << fmt(seconds) << " s";
  return o;
}

// ------------------------------------------------------------------ 2

Outcome sharpness() {
  Outcome o;
  const double alpha = 2.0;
  const Mapping m = Mapping::radial_power(alpha);
  double worst_t1 = 0.0;
  for (double r : linear_grid(0.05, 0.95, 20)) {
    const BoundCheckResult t1 = theorem1_bound(m, 2.0, r);
    const double area = kPi * std::pow(r, 2 * alpha);
    worst_t1 = std::max({worst_t1, rel(t1.rhs, area), rel(t1.lhs, area)});
    o.require(rel(t1.rhs, area) <= 1e-6, "theorem1 bound at r=" + fmt(r));
    o.require(rel(t1.lhs, area) <= 1e-6, "measured area at r=" + fmt(r));
    o.require(std::abs(t1.margin) <= 1e-6 * t1.rhs, "theorem1 margin at r=" + fmt(r));
  }
  const SchwarzProfile prof = schwarz_profile(m, 2.0, geometric_grid(0.9, 1e-6, 40));
  double worst_s = 0.0;
  for (double v : prof.functional_values) {
    worst_s = std::max(worst_s, std::abs(v - 1.0));
    o.require(std::abs(v - 1.0) <= 1e-6, "schwarz functional " + fmt(v));
  }
  o.require(std::abs(prof.proxy_liminf - 1.0) <= 1e-6, "schwarz proxy");
  o.detail << "max rel err theorem 1 " << fmt(worst_t1) << ", max |functional - 1| " << fmt(worst_s);
  return o;
}

// ------------------------------------------------------------------ 3

Outcome dual_area() {
  Outcome o;
  double worst_area = 0.0, worst_fd = 0.0;
  const double h = 1e-4;
  std::vector<double> radii = linear_grid(0.05, 0.95, 20);
  for (double r : {0.1, 0.25, 0.5, 0.75, 1.0}) radii.push_back(r);
  for (const auto& fam : acceptance_families()) {
    const auto S = [&](double r) { return disk_area_green(fam.map, r).value; };
    for (double r : radii) {
      const double green = S(r);
      const double jac = disk_area_jacobian(fam.map, r).value;
      const double d = std::abs(jac - green) / std::max(1.0, green);
      worst_area = std::max(worst_area, d);
      o.require(d <= 1e-7, fam.name + " area methods at r=" + fmt(r));

      const double fd = r + h <= 1.0 ? (S(r + h) - S(r - h)) / (2 * h)
                                     : (3 * S(r) - 4 * S(r - h) + S(r - 2 * h)) / (2 * h);
      const double e = rel(fd, area_derivative(fam.map, r).value);
      worst_fd = std::max(worst_fd, e);
      o.require(e <= 1e-5, fam.name + " dS/dr at r=" + fmt(r));
    }
  }
  o.detail << "max |S_jac - S_green|/max(1,S) " << fmt(worst_area) << ", max FD rel err "
           << fmt(worst_fd);
  return o;
}

// ------------------------------------------------------------------ 4

Outcome jets() {
  Outcome o;
  double worst_fd = 0.0, worst_j = 0.0;
  for (const auto& fam : acceptance_families()) {
    for (double r : linear_grid(0.05, 0.95, 20)) {
      for (int k = 0; k < 16; ++k) {
        const double theta = kTwoPi * (k + 0.3) / 16.0;
        const PolarPoint pt(r, theta);
        const PolarJet jet = polar_jet(fam.map, pt);
        const PolarJet fd = angdil::testing::finite_difference_jet(fam.map, r, theta, 1e-5);
        const double er = std::abs(jet.d_r - fd.d_r) / std::abs(jet.d_r);
        const double et = std::abs(jet.d_theta - fd.d_theta) / std::abs(jet.d_theta);
        worst_fd = std::max({worst_fd, er, et});
        o.require(er <= 1e-6 && et <= 1e-6, fam.name + " jet at r=" + fmt(r));

        const double jp = jacobian(jet, r);
        const double jw = wirtinger(fam.map, pt).jacobian();
        const double ej = std::abs(jp - jw) / std::abs(jp);
        worst_j = std::max(worst_j, ej);
        o.require(ej <= 1e-10, fam.name + " jacobian at r=" + fmt(r));
      }
    }
  }
  o.detail << "max jet vs FD rel err " << fmt(worst_fd) << ", max polar vs Wirtinger J rel err "
           << fmt(worst_j);
  return o;
}

// ------------------------------------------------------------------ 5

Outcome branch() {
  Outcome o;
  const std::vector<double> eps{1e-2, 1e-3, 1e-4};
  for (const auto& [name, m] : {std::pair{std::string("identity"), Mapping::identity()},
                                std::pair{std::string("radial_power(2)"), Mapping::radial_power(2.0)}}) {
    const BranchContinuityReport rep = branch_continuity(m, 0.5, eps);
    const double g4 = rep.gaps.back().relative_gap;
    o.require(g4 <= 1e-3, name + " gap at 1e-4 = " + fmt(g4));
    o.require(rep.gaps[0].relative_gap > rep.gaps[1].relative_gap &&
                  rep.gaps[1].relative_gap > rep.gaps[2].relative_gap,
              name + " gaps not strictly decreasing");
    o.detail << name << " gaps " << fmt(rep.gaps[0].relative_gap) << " > "
             << fmt(rep.gaps[1].relative_gap) << " > " << fmt(g4) << "; ";
  }
  // Both maps above have a p-independent bound, so their gaps are rounding
  // level. A Mobius map has gaps of order eps.
  const BranchContinuityReport mob = branch_continuity(Mapping::mobius({0.3, 0.2}), 0.5, eps);
  o.require(mob.gaps.back().relative_gap <= 1e-3, "mobius gap at 1e-4");
  o.require(mob.monotone && mob.gaps[0].relative_gap > 5.0 * mob.gaps[1].relative_gap,
            "mobius gaps do not shrink with eps");
  o.detail << "mobius(0.3+0.2i) gaps " << fmt(mob.gaps[0].relative_gap) << " > "
           << fmt(mob.gaps[1].relative_gap) << " > " << fmt(mob.gaps[2].relative_gap);
  return o;
}

// ------------------------------------------------------------------ 6

Outcome corollary() {
  Outcome o;
  const std::vector<double> grid = geometric_grid(0.5, 1e-9, 40);
  const Mapping id = Mapping::identity();
  const double target = std::pow(kTwoPi, -2.0);

  const Corollary1Result c3 = corollary1_check(id, 3.0, grid);
  o.require(rel(c3.proxy_liminf, target) <= 1e-6, "p=3 proxy " + fmt(c3.proxy_liminf));
  o.require(rel(c3.paper.rhs, target) <= 1e-12 && rel(c3.rederived.rhs, target) <= 1e-12,
            "p=3 constants differ from (2 pi)^-2");
  o.require(c3.paper.margin >= -1e-6 && c3.rederived.margin >= -1e-6, "p=3 margins");

  const Corollary1Result c4 = corollary1_check(id, 4.0, grid);
  o.require(std::isfinite(c4.paper.rhs) && std::isfinite(c4.paper.margin), "p=4 printed constant");
  o.require(c4.rederived.margin >= -1e-6, "p=4 rederived margin " + fmt(c4.rederived.margin));
  o.detail << "p=3 proxy rel err " << fmt(rel(c3.proxy_liminf, target)) << "; p=4 proxy "
           << fmt(c4.proxy_liminf) << ", rederived constant " << fmt(c4.rederived.rhs)
           << " (margin " << fmt(c4.rederived.margin) << "), printed constant "
           << fmt(c4.paper.rhs) << " (margin " << fmt(c4.paper.margin) << ", reported only)";
  return o;
}

// ------------------------------------------------------------------ 7

double round_trip_error(const fs::path& dir, int n_r, int n_theta) {
  const Mapping closed = Mapping::radial_power(2.0);
  std::vector<double> radii;
  for (int i = 1; i <= n_r; ++i) radii.push_back(double(i) / n_r);
  const fs::path file = dir / ("rp2_" + std::to_string(n_r) + "x" + std::to_string(n_theta) + ".csv");
  {
    std::ofstream out(file);
    write_sampled_csv(closed, radii, n_theta, out);
  }
  const Mapping m = Mapping::sampled(std::make_shared<const SampledMapping>(parse_sampled_map(file)));
  double worst = 0.0;
  for (double r : {0.25, 0.5, 0.75, 1.0}) {
    worst = std::max(worst, rel(delta_p(m, 2.0, r, CircleRule(n_theta)).value, kPi * r));
    worst = std::max(worst, rel(disk_area_green(m, r, CircleRule(n_theta)).value, kPi * std::pow(r, 4)));
  }
  return worst;
}

Outcome ingest_round_trip(const fs::path& dir) {
  Outcome o;
  const double e64 = round_trip_error(dir, 64, 256);
  const double e128 = round_trip_error(dir, 128, 512);
  o.require(e64 <= 1e-3, "64x256 error " + fmt(e64));
  o.require(e128 <= 2.5e-4, "128x512 error " + fmt(e128));
  o.require(e64 >= 4.0 * e128, "convergence factor " + fmt(e64 / e128));
  o.detail << "max rel err 64x256 " << fmt(e64) << ", 128x512 " << fmt(e128) << ", factor "
           << fmt(e64 / e128);
  return o;
}

// ------------------------------------------------------------------ 8

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_contract(const fs::path& dir) {
  Outcome o;
  const std::string exe = ANGDIL_EXE;
  const std::vector<std::pair<std::string, std::string>> families = {
      {"identity", "--map identity"},
      {"rotation", "--map rotation --phi 1.0471975511965976"},
      {"radial_power_0.5", "--map radial_power --alpha 0.5"},
      {"radial_power_2", "--map radial_power --alpha 2"},
      {"twist", "--map twist --coeffs 1"},
      {"angular_reparam", "--map angular_reparam --coeffs 0.3"},
  };
  int passed = 0;
  for (const auto& [name, args] : families) {
    for (const char* run : {"a", "b"}) {
      const fs::path out = dir / run / name;
      const int code = shell(exe + " check " + args + " --p 2,2.5,3,5 --format csv,json --out " +
                             out.string() + " > " + (dir / (name + run + ".log")).string() + " 2>&1");
      o.require(code == 0, name + " exit " + std::to_string(code));
      if (code == 0 && std::string(run) == "a") ++passed;
    }
    for (const char* f : {"checks.csv", "checks.json"}) {
      const std::string a = slurp(dir / "a" / name / f);
      o.require(!a.empty() && a == slurp(dir / "b" / name / f), name + " " + f + " differs");
    }
  }

  // folded sampled map h(theta) = theta + A sin(theta - phase), A > 1
  std::mt19937_64 rng(8);
  const double amplitude = std::uniform_real_distribution<double>(1.2, 2.0)(rng);
  const double phase = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
  const Mapping folded = Mapping::angular_reparam(
      {{amplitude * std::cos(phase)}, {-amplitude * std::sin(phase)}});
  std::vector<double> radii;
  for (int i = 1; i <= 32; ++i) radii.push_back(i / 32.0);
  {
    std::ofstream out(dir / "folded.csv");
    write_sampled_csv(folded, radii, 128, out);
  }
  const int code = shell(exe + " check --input " + (dir / "folded.csv").string() + " --out " +
                         (dir / "folded").string() + " > " + (dir / "folded.log").string() + " 2>&1");
  o.require(code != 0, "folded map exit 0");
  const std::string csv = slurp(dir / "folded" / "checks.csv");
  const std::string row = csv.substr(csv.find('\n') + 1);
  o.require(row.rfind("regularity,", 0) == 0, "no regularity row");
  o.require(row.find("theta = ") != std::string::npos, "violation row not located");

  o.detail << passed << "/6 families exit 0, repeated outputs byte-identical, folded sampled map "
           << "(A=" << fmt(amplitude) << ") exit " << code << " with row: "
           << row.substr(0, row.find('\n'));
  return o;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "angdil_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 universal inequality suite", universal_suite},
      {"2 sharpness witnesses", sharpness},
      {"3 dual-method area agreement", dual_area},
      {"4 jet correctness", jets},
      {"5 branch continuity", branch},
      {"6 corollary closed case", corollary},
      {"7 ingest round-trip", [&] { return ingest_round_trip(dir); }},
      {"8 CLI contract", [&] { return cli_contract(dir); }},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  std::cout << "acceptance: " << criteria.size() - failures << "/" << criteria.size() << " passed"
            << std::endl;
  fs::remove_all(dir);
  return failures == 0 ? 0 : 1;
}
