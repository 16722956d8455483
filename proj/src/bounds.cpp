#include "angdil/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "angdil/errors.hpp"
#include "angdil/ingest.hpp"

namespace angdil {

namespace {

constexpr std::array kAllIds{
    InequalityId::lemma1,           InequalityId::isoperimetric,
    InequalityId::lemma2,           InequalityId::lemma3_p2,
    InequalityId::lemma3_pgt2,      InequalityId::theorem1_p2,
    InequalityId::theorem1_pgt2,    InequalityId::theorem2_p2,
    InequalityId::theorem2_pgt2,    InequalityId::corollary1_paper,
    InequalityId::corollary1_rederived, InequalityId::inclusion_lf,
};

void require_exponent(double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw ArgumentError("exponent p must be a finite real >= 2");
}

void require_open_radius(double r) {
  if (!(r > 0.0) || r > 1.0) throw ArgumentError("radius must lie in (0, 1]");
}

double area(const Mapping& map, double r, const BoundSettings& s) {
  return disk_area_green(map, r, s.circle).value;
}

double delta(const Mapping& map, double p, double r, const BoundSettings& s) {
  return delta_p(map, p, r, s.circle, s.policy).value;
}

double integral(const Mapping& map, double p, double a, double b, const BoundSettings& s) {
  return inverse_delta_integral(map, p, a, b, s.circle, s.radial, s.policy).value;
}

// Pieces of the per-radius checks, shared by the standalone checks and run_suite.
BoundCheckResult lemma1_from(double p, double r, double length, double delta_value,
                             double area_derivative_value, const Tolerance& tol) {
  return make_check(InequalityId::lemma1, p, {r}, std::pow(length, p),
                    delta_value * area_derivative_value, tol);
}

BoundCheckResult isoperimetric_from(double r, double length, double area_value,
                                    const Tolerance& tol) {
  return make_check(InequalityId::isoperimetric, std::nullopt, {r}, 4.0 * kPi * area_value,
                    length * length, tol);
}

BoundCheckResult lemma2_from(double p, double r, double area_value, double delta_value,
                             double area_derivative_value, const Tolerance& tol) {
  const double lhs = std::pow(4.0 * kPi * area_value, 0.5 * p) / delta_value;
  return make_check(InequalityId::lemma2, p, {r}, lhs, area_derivative_value, tol);
}

BoundCheckResult theorem1_from(double p, double r, double area_value, double tail,
                               const Tolerance& tol) {
  const auto id = p == 2.0 ? InequalityId::theorem1_p2 : InequalityId::theorem1_pgt2;
  return make_check(id, p, {r}, area_value, theorem1_rhs(p, tail), tol);
}

BoundCheckResult inclusion_from(double r, double lf, double area_value, const Tolerance& tol) {
  return make_check(InequalityId::inclusion_lf, std::nullopt, {r}, kPi * lf * lf, area_value,
                    tol);
}

// Decreasing copy of a grid, validated against the map's hull.
std::vector<double> decreasing_grid(std::span<const double> grid) {
  std::vector<double> out(grid.begin(), grid.end());
  if (out.empty()) throw ArgumentError("radius grid is empty");
  std::sort(out.begin(), out.end(), std::greater<>());
  for (std::size_t i = 0; i < out.size(); ++i) {
    require_open_radius(out[i]);
    if (i > 0 && out[i] == out[i - 1]) throw ArgumentError("radius grid has duplicates");
  }
  return out;
}

// Tail integrals I_{r_k} = int_{r_k}^1 on a decreasing grid, accumulated segment by segment.
std::vector<double> tail_integrals(const Mapping& map, double p, const std::vector<double>& grid,
                                   const BoundSettings& s) {
  std::vector<double> tails(grid.size());
  double upper = std::min(1.0, map.max_radius());
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    acc += integral(map, p, grid[k], upper, s);
    tails[k] = acc;
    upper = grid[k];
  }
  return tails;
}

struct TailMin {
  double value;
  double radius;
  std::size_t count;
};

TailMin tail_minimum(const std::vector<double>& radii, const std::vector<double>& values) {
  const std::size_t n = values.size();
  const std::size_t count = std::max<std::size_t>(1, (n + 3) / 4);
  TailMin out{values[n - 1], radii[n - 1], count};
  for (std::size_t k = n - count; k < n; ++k) {
    if (values[k] < out.value) {
      out.value = values[k];
      out.radius = radii[k];
    }
  }
  return out;
}

bool sort_before(const BoundCheckResult& a, const BoundCheckResult& b) {
  if (a.id != b.id) return static_cast<int>(a.id) < static_cast<int>(b.id);
  const double pa = a.p.value_or(0.0), pb = b.p.value_or(0.0);
  if (a.p.has_value() != b.p.has_value()) return !a.p.has_value();
  if (pa != pb) return pa < pb;
  return a.radii < b.radii;
}

}  // namespace

// ---------------------------------------------------------------- basic parts

std::string_view to_string(InequalityId id) {
  switch (id) {
    case InequalityId::lemma1: return "lemma1";
    case InequalityId::isoperimetric: return "isoperimetric";
    case InequalityId::lemma2: return "lemma2";
    case InequalityId::lemma3_p2: return "lemma3_p2";
    case InequalityId::lemma3_pgt2: return "lemma3_pgt2";
    case InequalityId::theorem1_p2: return "theorem1_p2";
    case InequalityId::theorem1_pgt2: return "theorem1_pgt2";
    case InequalityId::theorem2_p2: return "theorem2_p2";
    case InequalityId::theorem2_pgt2: return "theorem2_pgt2";
    case InequalityId::corollary1_paper: return "corollary1_paper";
    case InequalityId::corollary1_rederived: return "corollary1_rederived";
    case InequalityId::inclusion_lf: return "inclusion_lf";
  }
  return "unknown";
}

std::optional<InequalityId> parse_inequality_id(std::string_view name) {
  for (InequalityId id : kAllIds)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

std::span<const InequalityId> all_inequality_ids() { return kAllIds; }

double Tolerance::at(double rhs) const { return abs + rel * std::max(1.0, std::abs(rhs)); }

BoundCheckResult make_check(InequalityId id, std::optional<double> p, std::vector<double> radii,
                            double lhs, double rhs, const Tolerance& tol) {
  BoundCheckResult out;
  out.id = id;
  out.p = p;
  out.radii = std::move(radii);
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = rhs - lhs;
  out.tolerance = tol.at(rhs);
  out.pass = std::isfinite(out.margin) && out.margin >= -out.tolerance;
  return out;
}

double theorem1_rhs(double p, double tail_integral) {
  require_exponent(p);
  if (p == 2.0) return kPi * std::exp(-4.0 * kPi * tail_integral);
  const double x = std::pow(kTwoPi, p - 1.0) * (p - 2.0) * tail_integral;
  return kPi * std::exp(-2.0 / (p - 2.0) * std::log1p(x));
}

double schwarz_factor(double p, double tail_integral) {
  require_exponent(p);
  if (p == 2.0) return std::exp(kTwoPi * tail_integral);
  const double x = std::pow(kTwoPi, p - 1.0) * (p - 2.0) * tail_integral;
  return std::exp(std::log1p(x) / (p - 2.0));
}

double corollary1_paper_constant(double p) {
  if (!(p > 2.0)) throw ArgumentError("corollary constant needs p > 2");
  return std::pow(kTwoPi, 1.0 - p) * std::pow(p - 2.0, 1.0 / (2.0 - p));
}

double corollary1_rederived_constant(double p) {
  if (!(p > 2.0)) throw ArgumentError("corollary constant needs p > 2");
  return std::pow(std::pow(kTwoPi, p - 1.0) * (p - 2.0), -1.0 / (p - 2.0));
}

bool origin_fixed(const Mapping& map) {
  const complex f0 = map.origin_value();
  if (const SampledMapping* data = map.sampled_data()) {
    // Ring mean = f(0) + O(r^2); allow r * max|f| on that ring.
    double ring_max = 0.0;
    for (complex w : data->samples().first(static_cast<std::size_t>(data->theta_count())))
      ring_max = std::max(ring_max, std::abs(w));
    return std::abs(f0) <= 1e-9 + data->r_min() * ring_max;
  }
  return std::abs(f0) <= 1e-9;
}

void require_origin_fixed(const Mapping& map) {
  if (!origin_fixed(map)) {
    const complex f0 = map.origin_value();
    throw HypothesisViolation("map does not fix the origin: f(0) = (" +
                              std::to_string(f0.real()) + ", " + std::to_string(f0.imag()) +
                              ")");
  }
}

// -------------------------------------------------------------- single checks

BoundCheckResult check_lemma1(const Mapping& map, double p, double r,
                              const BoundSettings& settings) {
  require_exponent(p);
  require_open_radius(r);
  return lemma1_from(p, r, curve_length(map, r, settings.circle).value,
                     delta(map, p, r, settings),
                     area_derivative(map, r, settings.circle).value, settings.tolerance);
}

BoundCheckResult check_isoperimetric(const Mapping& map, double r,
                                     const BoundSettings& settings) {
  require_open_radius(r);
  return isoperimetric_from(r, curve_length(map, r, settings.circle).value,
                            area(map, r, settings), settings.tolerance);
}

BoundCheckResult check_lemma2(const Mapping& map, double p, double r,
                              const BoundSettings& settings) {
  require_exponent(p);
  require_open_radius(r);
  return lemma2_from(p, r, area(map, r, settings), delta(map, p, r, settings),
                     area_derivative(map, r, settings.circle).value, settings.tolerance);
}

BoundCheckResult lemma3_from_values(double p, double r1, double r2, double area1, double area2,
                                    double integral_value, const Tolerance& tol) {
  require_exponent(p);
  if (p == 2.0) {
    return make_check(InequalityId::lemma3_p2, p, {r1, r2}, area1,
                      area2 * std::exp(-4.0 * kPi * integral_value), tol);
  }
  // d/dr S^{(2-p)/2} <= -(p-2)/2 (4 pi)^{p/2} / delta_p, integrated over [r1, r2].
  const double e = 0.5 * (2.0 - p);
  const double lhs = std::pow(4.0 * kPi, 0.5 * p) * 0.5 * (p - 2.0) * integral_value;
  const double rhs = std::pow(area1, e) - std::pow(area2, e);
  return make_check(InequalityId::lemma3_pgt2, p, {r1, r2}, lhs, rhs, tol);
}

BoundCheckResult check_lemma3(const Mapping& map, double p, double r1, double r2,
                              const BoundSettings& settings) {
  require_exponent(p);
  require_open_radius(r1);
  require_open_radius(r2);
  if (r1 > r2) throw ArgumentError("lemma 3 needs r1 <= r2");
  return lemma3_from_values(p, r1, r2, area(map, r1, settings), area(map, r2, settings),
                            integral(map, p, r1, r2, settings), settings.tolerance);
}

BoundCheckResult theorem1_bound(const Mapping& map, double p, double r,
                                const BoundSettings& settings) {
  require_exponent(p);
  require_open_radius(r);
  return theorem1_from(p, r, area(map, r, settings), integral(map, p, r, 1.0, settings),
                       settings.tolerance);
}

BoundCheckResult check_inclusion(const Mapping& map, double r, const BoundSettings& settings) {
  require_open_radius(r);
  require_origin_fixed(map);
  return inclusion_from(r, min_modulus(map, r, settings.min_modulus_samples),
                        area(map, r, settings), settings.tolerance);
}

// ------------------------------------------------------------- Schwarz family

SchwarzProfile schwarz_profile(const Mapping& map, double p, std::span<const double> r_grid,
                               const BoundSettings& settings) {
  require_exponent(p);
  require_origin_fixed(map);
  SchwarzProfile prof;
  prof.p = p;
  prof.radii = decreasing_grid(r_grid);
  prof.tail_integrals = tail_integrals(map, p, prof.radii, settings);
  for (std::size_t k = 0; k < prof.radii.size(); ++k) {
    const double lf = min_modulus(map, prof.radii[k], settings.min_modulus_samples);
    prof.min_modulus.push_back(lf);
    prof.functional_values.push_back(lf * schwarz_factor(p, prof.tail_integrals[k]));
  }
  const TailMin m = tail_minimum(prof.radii, prof.functional_values);
  prof.proxy_liminf = m.value;
  prof.proxy_radius = m.radius;
  prof.tail_count = m.count;
  return prof;
}

BoundCheckResult check_theorem2(const SchwarzProfile& profile, const Tolerance& tol) {
  const auto id = profile.p == 2.0 ? InequalityId::theorem2_p2 : InequalityId::theorem2_pgt2;
  return make_check(id, profile.p, {profile.proxy_radius}, profile.proxy_liminf, 1.0, tol);
}

Corollary1Result corollary1_check(const Mapping& map, double p, std::span<const double> r_grid,
                                  const BoundSettings& settings) {
  if (!(p > 2.0) || !std::isfinite(p)) throw ArgumentError("corollary check needs p > 2");
  require_origin_fixed(map);
  const std::vector<double> radii = decreasing_grid(r_grid);
  const std::vector<double> tails = tail_integrals(map, p, radii, settings);
  std::vector<double> values;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double lf = min_modulus(map, radii[k], settings.min_modulus_samples);
    values.push_back(lf * std::pow(tails[k], 1.0 / (p - 2.0)));
  }
  const TailMin m = tail_minimum(radii, values);
  Corollary1Result out;
  out.proxy_liminf = m.value;
  out.proxy_radius = m.radius;
  out.paper = make_check(InequalityId::corollary1_paper, p, {m.radius}, m.value,
                         corollary1_paper_constant(p), settings.tolerance);
  out.paper.asserted = false;
  out.rederived = make_check(InequalityId::corollary1_rederived, p, {m.radius}, m.value,
                             corollary1_rederived_constant(p), settings.tolerance);
  return out;
}

BranchContinuityReport branch_continuity(const Mapping& map, double r,
                                         std::span<const double> eps_list,
                                         const BoundSettings& settings) {
  require_open_radius(r);
  BranchContinuityReport rep;
  rep.r = r;
  const double base = theorem1_rhs(2.0, integral(map, 2.0, r, 1.0, settings));
  for (double eps : eps_list) {
    if (!(eps > 0.0 && eps <= 0.5)) throw ArgumentError("branch epsilon must lie in (0, 0.5]");
    const double p = 2.0 + eps;
    const double bound = theorem1_rhs(p, integral(map, p, r, 1.0, settings));
    rep.gaps.push_back({eps, base, bound, std::abs(bound - base) / base});
  }
  // Order the gaps by eps and require a strict decrease towards eps -> 0.
  std::vector<BranchGap> sorted = rep.gaps;
  std::sort(sorted.begin(), sorted.end(),
            [](const BranchGap& a, const BranchGap& b) { return a.eps > b.eps; });
  rep.monotone = true;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (!(sorted[i].relative_gap < sorted[i - 1].relative_gap)) rep.monotone = false;
  return rep;
}

// ---------------------------------------------------------------------- suite

std::vector<std::pair<std::size_t, std::size_t>> lemma3_pairs(std::size_t n, std::size_t cap) {
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
  if (all.size() <= cap) return all;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(cap);
  for (std::size_t k = 0; k < cap; ++k) out.push_back(all[k * all.size() / cap]);
  return out;
}

std::vector<BoundCheckResult> run_suite(const Mapping& map, const SuiteRequest& request,
                                        const BoundSettings& settings) {
  const bool select_all = request.checks.empty();
  const auto wanted = [&](InequalityId id) {
    return select_all ||
           std::find(request.checks.begin(), request.checks.end(), id) != request.checks.end();
  };
  for (double p : request.p_list) require_exponent(p);

  const bool needs_origin = wanted(InequalityId::theorem2_p2) ||
                            wanted(InequalityId::theorem2_pgt2) ||
                            wanted(InequalityId::corollary1_paper) ||
                            wanted(InequalityId::corollary1_rederived) ||
                            wanted(InequalityId::inclusion_lf);
  // With the default selection the f(0) = 0 checks are skipped for maps that
  // move the origin; an explicit request is a hypothesis violation.
  const bool origin_ok = !needs_origin || origin_fixed(map);
  if (needs_origin && !origin_ok && !select_all) require_origin_fixed(map);
  const auto wanted_origin = [&](InequalityId id) { return origin_ok && wanted(id); };

  std::vector<double> radii(request.radii);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (double r : radii) require_open_radius(r);
  const std::size_t n = radii.size();

  const bool per_radius = wanted(InequalityId::lemma1) || wanted(InequalityId::isoperimetric) ||
                          wanted(InequalityId::lemma2) || wanted(InequalityId::lemma3_p2) ||
                          wanted(InequalityId::lemma3_pgt2) ||
                          wanted(InequalityId::theorem1_p2) ||
                          wanted(InequalityId::theorem1_pgt2) ||
                          wanted_origin(InequalityId::inclusion_lf);
  std::vector<double> length(n), area_value(n), area_deriv(n);
  if (per_radius) {
    for (std::size_t i = 0; i < n; ++i) {
      length[i] = curve_length(map, radii[i], settings.circle).value;
      area_value[i] = area(map, radii[i], settings);
      area_deriv[i] = area_derivative(map, radii[i], settings.circle).value;
    }
  }

  std::vector<BoundCheckResult> out;
  const Tolerance& tol = settings.tolerance;

  for (std::size_t i = 0; i < n; ++i) {
    if (wanted(InequalityId::isoperimetric))
      out.push_back(isoperimetric_from(radii[i], length[i], area_value[i], tol));
    if (wanted_origin(InequalityId::inclusion_lf))
      out.push_back(inclusion_from(radii[i],
                                   min_modulus(map, radii[i], settings.min_modulus_samples),
                                   area_value[i], tol));
  }

  for (double p : request.p_list) {
    const bool p2 = p == 2.0;
    const bool want_l1 = wanted(InequalityId::lemma1);
    const bool want_l2 = wanted(InequalityId::lemma2);
    const bool want_l3 = wanted(p2 ? InequalityId::lemma3_p2 : InequalityId::lemma3_pgt2);
    const bool want_t1 = wanted(p2 ? InequalityId::theorem1_p2 : InequalityId::theorem1_pgt2);

    if (n > 0 && (want_l1 || want_l2)) {
      for (std::size_t i = 0; i < n; ++i) {
        const double d = delta(map, p, radii[i], settings);
        if (want_l1) out.push_back(lemma1_from(p, radii[i], length[i], d, area_deriv[i], tol));
        if (want_l2)
          out.push_back(lemma2_from(p, radii[i], area_value[i], d, area_deriv[i], tol));
      }
    }

    if (n > 0 && (want_l3 || want_t1)) {
      // segment[i] = int_{r_i}^{r_{i+1}}, with r_n = 1
      std::vector<double> segment(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double upper = i + 1 < n ? radii[i + 1] : std::min(1.0, map.max_radius());
        segment[i] = integral(map, p, radii[i], upper, settings);
      }
      if (want_t1) {
        double tail = 0.0;
        std::vector<double> tails(n);
        for (std::size_t i = n; i-- > 0;) {
          tail += segment[i];
          tails[i] = tail;
        }
        for (std::size_t i = 0; i < n; ++i)
          out.push_back(theorem1_from(p, radii[i], area_value[i], tails[i], tol));
      }
      if (want_l3) {
        for (const auto& [i, j] : lemma3_pairs(n, request.lemma3_pair_cap)) {
          double sum = 0.0;
          for (std::size_t k = i; k < j; ++k) sum += segment[k];
          out.push_back(
              lemma3_from_values(p, radii[i], radii[j], area_value[i], area_value[j], sum, tol));
        }
      }
    }

    if (!request.schwarz_radii.empty()) {
      if (wanted_origin(p2 ? InequalityId::theorem2_p2 : InequalityId::theorem2_pgt2)) {
        out.push_back(
            check_theorem2(schwarz_profile(map, p, request.schwarz_radii, settings), tol));
      }
      if (!p2 && (wanted_origin(InequalityId::corollary1_paper) ||
                  wanted_origin(InequalityId::corollary1_rederived))) {
        Corollary1Result c = corollary1_check(map, p, request.schwarz_radii, settings);
        if (wanted(InequalityId::corollary1_paper)) out.push_back(std::move(c.paper));
        if (wanted(InequalityId::corollary1_rederived)) out.push_back(std::move(c.rederived));
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), sort_before);
  return out;
}

}  // namespace angdil
