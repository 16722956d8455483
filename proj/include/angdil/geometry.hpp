#pragma once

// Length L(r) of the image curve f(|z| = r), area S(r) of f(B_r) by two
// independent routes, and S'(r).

#include <span>
#include <vector>

#include "angdil/mapping.hpp"
#include "angdil/quadrature.hpp"

namespace angdil {

/// L(r) = int_0^{2pi} |f_theta(r e^{i theta})| d theta.
QuadResult curve_length(const Mapping& map, double r, const CircleRule& rule = CircleRule{});

/// S'(r) = int_0^{2pi} J_f(r e^{i theta}) r d theta.
QuadResult area_derivative(const Mapping& map, double r, const CircleRule& rule = CircleRule{});

/// S(r) = 1/2 int_0^{2pi} Im(conj(f) f_theta) d theta, the area enclosed by
/// the positively oriented Jordan curve f(|z| = r).
QuadResult disk_area_green(const Mapping& map, double r, const CircleRule& rule = CircleRule{});

struct AreaEstimate {
  double value = 0.0;
  /// Radial quadrature estimate plus the accumulated circle-rule estimates.
  double error_estimate = 0.0;
  /// Contribution attributed to the core disk B_{r_min}.
  double core_estimate = 0.0;
  /// pi (max_{|z| = r_min} |f|)^2, an upper bound for the core area.
  double truncation_bound = 0.0;
  bool degraded = false;
};

/// S(r) as int_{r_min}^r S'(t) dt plus a core estimate for B_{r_min}. The
/// core is extrapolated from S' at r_min and 2 r_min with a power law
/// S'(t) ~ c t^k, which is exact for the radial families. r_min is raised to
/// the map's smallest queryable radius.
AreaEstimate disk_area_jacobian(const Mapping& map, double r, const CircleRule& circle = CircleRule{},
                                const RadialRule& radial = {}, double r_min = 1e-3);

struct GeometryProfile {
  std::vector<double> radii;
  std::vector<double> length_values;
  std::vector<double> area_jacobian;
  std::vector<double> area_green;
  std::vector<double> area_derivative;
  /// |area_jacobian - area_green| is expected below this sum at each radius.
  std::vector<double> area_error_budget;
};

GeometryProfile geometry_profile(const Mapping& map, std::span<const double> radii,
                                 const CircleRule& circle = CircleRule{},
                                 const RadialRule& radial = {}, double r_min = 1e-3);

}  // namespace angdil
