#pragma once

// One-dimensional rules: equispaced trapezoid on the circle and globally
// adaptive Simpson on radial intervals.

#include <cstddef>
#include <functional>

namespace angdil {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Equispaced nodes theta_k = 2 pi k / n on [0, 2pi).
class CircleRule {
public:
  /// Throws ArgumentError unless n_nodes >= 8 and even.
  explicit CircleRule(int n_nodes = 256);

  int n_nodes() const noexcept { return n_nodes_; }
  double node(int k) const noexcept;

private:
  int n_nodes_;
};

struct RadialRule {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 40;

  /// Throws ArgumentError on non-positive tolerances or max_depth < 1.
  void validate() const;
};

struct RadialResult {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Set when some panel hit max_depth before meeting its tolerance.
  bool degraded = false;
  std::size_t evaluations = 0;
};

using RealFunction = std::function<double(double)>;

/// Trapezoid (= rectangle) rule over one period. The error estimate is the
/// difference to the half-resolution rule on the even nodes. Throws
/// EvaluationError naming the node if the integrand is non-finite there.
QuadResult integrate_circle(const RealFunction& f, const CircleRule& rule);

/// Adaptive Simpson on [a, b]. Panels are refined in order of decreasing
/// error estimate |S2 - S1| / 15 until the summed estimate drops below
/// max(abs_tol, rel_tol * |value|). Each panel reports S2 + (S2 - S1) / 15.
/// Throws ArgumentError for a > b and EvaluationError for non-finite values.
RadialResult integrate_radial(const RealFunction& f, double a, double b,
                              const RadialRule& rule = {});

/// Composite Simpson with a fixed number of panels (each panel uses 3 nodes).
double simpson_composite(const RealFunction& f, double a, double b, int panels);

}  // namespace angdil
