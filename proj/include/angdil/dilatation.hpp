#pragma once

// p-angular dilatation D_p = |f_theta|^p / (r^p J_f), the circle functional
// delta_p(r) = (int_{|z|=r} D_p^{1/(p-1)} |dz|)^{p-1}, and the minimum modulus.

#include <cstddef>
#include <span>
#include <vector>

#include "angdil/mapping.hpp"
#include "angdil/quadrature.hpp"

namespace angdil {

/// How delta_p treats circle nodes where J_f <= 0.
enum class JacobianPolicy {
  strict,  // throw RegularityViolation
  mask,    // drop the node from the integrand (treated as a null set)
};

/// D_p from an already evaluated jet. Throws ArgumentError for p < 2,
/// SingularPointError at r = 0, RegularityViolation if J_f <= 0.
double angular_dilatation(const PolarJet& jet, double p, PolarPoint point);
double angular_dilatation(const Mapping& map, double p, PolarPoint point);

struct DeltaResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t masked_nodes = 0;
};

DeltaResult delta_p(const Mapping& map, double p, double r, const CircleRule& rule = CircleRule{},
                    JacobianPolicy policy = JacobianPolicy::strict);

struct MinModulus {
  double value = 0.0;
  double theta = 0.0;
};

/// min over |z| = r of |f(z)|: n_samples equispaced probes, then golden-section
/// refinement of the best bracket to 1e-12 in theta.
MinModulus min_modulus_at(const Mapping& map, double r, int n_samples = 512);
double min_modulus(const Mapping& map, double r, int n_samples = 512);

/// int_a^b dt / delta_p(t).
RadialResult inverse_delta_integral(const Mapping& map, double p, double a, double b,
                                    const CircleRule& circle = CircleRule{},
                                    const RadialRule& radial = {},
                                    JacobianPolicy policy = JacobianPolicy::strict);

struct DilatationProfile {
  double p = 2.0;
  std::vector<double> radii;
  std::vector<double> delta_values;
  std::vector<double> error_estimates;
};

/// Radii must be strictly increasing within (0, 1].
DilatationProfile dilatation_profile(const Mapping& map, double p, std::span<const double> radii,
                                     const CircleRule& rule = CircleRule{},
                                     JacobianPolicy policy = JacobianPolicy::strict);

}  // namespace angdil
