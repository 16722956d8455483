#include "angdil/dilatation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "angdil/errors.hpp"

namespace angdil {

namespace {

void require_exponent(double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw ArgumentError("dilatation exponent p must be a finite real >= 2, got " +
                        std::to_string(p));
}

void require_radius(const Mapping& map, double r) {
  if (!(r > 0.0)) throw SingularPointError("circle functional requested at r = 0");
  if (r > 1.0) throw ArgumentError("radius " + std::to_string(r) + " outside (0, 1]");
  (void)map;
}

RegularityViolation violation(PolarPoint point, double J) {
  return RegularityViolation("non-positive Jacobian " + std::to_string(J) + " at r = " +
                                 std::to_string(point.r()) +
                                 ", theta = " + std::to_string(point.theta()),
                             point.r(), point.theta(), J);
}

}  // namespace

double angular_dilatation(const PolarJet& jet, double p, PolarPoint point) {
  require_exponent(p);
  const double J = jacobian(jet, point.r());
  if (!(J > 0.0)) throw violation(point, J);
  return std::pow(std::abs(jet.d_theta) / point.r(), p) / J;
}

double angular_dilatation(const Mapping& map, double p, PolarPoint point) {
  require_exponent(p);
  return angular_dilatation(polar_jet(map, point), p, point);
}

DeltaResult delta_p(const Mapping& map, double p, double r, const CircleRule& rule,
                    JacobianPolicy policy) {
  require_exponent(p);
  require_radius(map, r);
  const double q = 1.0 / (p - 1.0);
  std::size_t masked = 0;
  const QuadResult integral = integrate_circle(
      [&](double theta) {
        const PolarPoint pt(r, theta);
        const PolarJet jet = polar_jet(map, pt);
        if (policy == JacobianPolicy::mask && !(jacobian(jet, r) > 0.0)) {
          ++masked;
          return 0.0;
        }
        return std::pow(angular_dilatation(jet, p, pt), q) * r;
      },
      rule);
  if (!(integral.value > 0.0))
    throw RegularityViolation("circle functional vanishes at r = " + std::to_string(r), r, 0.0,
                              0.0);
  DeltaResult out;
  out.value = std::pow(integral.value, p - 1.0);
  out.error_estimate = (p - 1.0) * std::pow(integral.value, p - 2.0) * integral.error_estimate;
  out.masked_nodes = masked;
  return out;
}

MinModulus min_modulus_at(const Mapping& map, double r, int n_samples) {
  if (n_samples < 16) throw ArgumentError("min_modulus needs at least 16 samples");
  if (!(r > 0.0) || r > 1.0) throw ArgumentError("min_modulus radius must lie in (0, 1]");
  const auto modulus = [&](double theta) { return std::abs(evaluate(map, PolarPoint(r, theta))); };

  const double step = kTwoPi / n_samples;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_samples; ++k) {
    const double v = modulus(k * step);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }

  // Golden section on [theta_{k-1}, theta_{k+1}]; unwrapped angles are fine
  // because PolarPoint reduces theta.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = modulus(x1);
  double f2 = modulus(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = modulus(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = modulus(x2);
    }
  }
  MinModulus out{best_value, best * step};
  const double mid = 0.5 * (lo + hi);
  const double fm = modulus(mid);
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{mid, fm}}) {
    if (v < out.value) out = {v, PolarPoint(r, x).theta()};
  }
  return out;
}

double min_modulus(const Mapping& map, double r, int n_samples) {
  return min_modulus_at(map, r, n_samples).value;
}

RadialResult inverse_delta_integral(const Mapping& map, double p, double a, double b,
                                    const CircleRule& circle, const RadialRule& radial,
                                    JacobianPolicy policy) {
  require_exponent(p);
  if (!(a > 0.0)) throw SingularPointError("inverse delta integral must start at r > 0");
  return integrate_radial([&](double t) { return 1.0 / delta_p(map, p, t, circle, policy).value; },
                          a, b, radial);
}

DilatationProfile dilatation_profile(const Mapping& map, double p, std::span<const double> radii,
                                     const CircleRule& rule, JacobianPolicy policy) {
  require_exponent(p);
  DilatationProfile prof;
  prof.p = p;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || radii[i] > 1.0 || (i > 0 && !(radii[i] > radii[i - 1])))
      throw ArgumentError("profile radii must be strictly increasing within (0, 1]");
    const DeltaResult d = delta_p(map, p, radii[i], rule, policy);
    prof.radii.push_back(radii[i]);
    prof.delta_values.push_back(d.value);
    prof.error_estimates.push_back(d.error_estimate);
  }
  return prof;
}

}  // namespace angdil
