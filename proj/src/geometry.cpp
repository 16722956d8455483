#include "angdil/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "angdil/errors.hpp"

namespace angdil {

namespace {

void require_radius(double r) {
  if (!(r > 0.0)) throw SingularPointError("geometry functional requested at r = 0");
  if (r > 1.0) throw ArgumentError("geometry radius outside (0, 1]");
}

}  // namespace

QuadResult curve_length(const Mapping& map, double r, const CircleRule& rule) {
  require_radius(r);
  return integrate_circle(
      [&](double theta) { return std::abs(polar_jet(map, PolarPoint(r, theta)).d_theta); }, rule);
}

QuadResult area_derivative(const Mapping& map, double r, const CircleRule& rule) {
  require_radius(r);
  return integrate_circle([&](double theta) { return jacobian(map, PolarPoint(r, theta)) * r; },
                          rule);
}

QuadResult disk_area_green(const Mapping& map, double r, const CircleRule& rule) {
  require_radius(r);
  QuadResult q = integrate_circle(
      [&](double theta) {
        const PolarJet jet = polar_jet(map, PolarPoint(r, theta));
        return (std::conj(jet.value) * jet.d_theta).imag();
      },
      rule);
  q.value *= 0.5;
  q.error_estimate *= 0.5;
  return q;
}

AreaEstimate disk_area_jacobian(const Mapping& map, double r, const CircleRule& circle,
                                const RadialRule& radial, double r_min) {
  require_radius(r);
  r_min = std::max(r_min, map.min_radius());
  if (!(r_min > 0.0)) throw ArgumentError("disk_area_jacobian needs r_min > 0");
  if (r < r_min) throw ArgumentError("disk_area_jacobian radius below r_min");

  AreaEstimate out;
  double circle_error = 0.0;
  const RadialResult body = integrate_radial(
      [&](double t) {
        const QuadResult d = area_derivative(map, t, circle);
        circle_error = std::max(circle_error, d.error_estimate);
        return d.value;
      },
      r_min, r, radial);

  // Power-law core: S'(t) ~ c t^k on (0, r_min] gives S(r_min) = S'(r_min) r_min / (k + 1).
  const double s_lo = area_derivative(map, r_min, circle).value;
  const double r_hi = std::min(2.0 * r_min, map.max_radius());
  double k = 1.0;
  if (r_hi > r_min) {
    const double s_hi = area_derivative(map, r_hi, circle).value;
    const double slope = std::log(s_hi / s_lo) / std::log(r_hi / r_min);
    if (std::isfinite(slope) && slope > -1.0 + 1e-6) k = slope;
  }
  out.core_estimate = s_lo * r_min / (k + 1.0);

  double max_mod = 0.0;
  for (int j = 0; j < circle.n_nodes(); ++j)
    max_mod = std::max(max_mod, std::abs(evaluate(map, PolarPoint(r_min, circle.node(j)))));
  out.truncation_bound = kPi * max_mod * max_mod;

  out.value = body.value + out.core_estimate;
  out.error_estimate = body.error_estimate + circle_error * (r - r_min);
  out.degraded = body.degraded;
  return out;
}

GeometryProfile geometry_profile(const Mapping& map, std::span<const double> radii,
                                 const CircleRule& circle, const RadialRule& radial,
                                 double r_min) {
  GeometryProfile prof;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (i > 0 && !(r > radii[i - 1]))
      throw ArgumentError("profile radii must be strictly increasing");
    const QuadResult len = curve_length(map, r, circle);
    const QuadResult green = disk_area_green(map, r, circle);
    const AreaEstimate jac = disk_area_jacobian(map, r, circle, radial, r_min);
    const QuadResult deriv = area_derivative(map, r, circle);
    prof.radii.push_back(r);
    prof.length_values.push_back(len.value);
    prof.area_green.push_back(green.value);
    prof.area_jacobian.push_back(jac.value);
    prof.area_derivative.push_back(deriv.value);
    prof.area_error_budget.push_back(green.error_estimate + jac.error_estimate);
  }
  return prof;
}

}  // namespace angdil
