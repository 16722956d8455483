#include "angdil/quadrature.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "angdil/errors.hpp"
#include "angdil/mapping.hpp"

namespace angdil {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Panel {
  double a, b;
  double fa, fl, fm, fr, fb;  // at a, a+h/4, a+h/2, a+3h/4, b
  double coarse;              // Simpson on (a, m, b)
  double fine;                // two half-panel Simpsons
  int depth;

  double error() const { return std::abs(fine - coarse) / 15.0; }
  double value() const { return fine + (fine - coarse) / 15.0; }
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const { return x.error() < y.error(); }
};

}  // namespace

CircleRule::CircleRule(int n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes < 8 || n_nodes % 2 != 0)
    throw ArgumentError("circle rule needs an even node count >= 8, got " +
                        std::to_string(n_nodes));
}

double CircleRule::node(int k) const noexcept { return kTwoPi * k / n_nodes_; }

QuadResult integrate_circle(const RealFunction& f, const CircleRule& rule) {
  const int n = rule.n_nodes();
  double sum_even = 0.0;
  double sum_odd = 0.0;
  for (int k = 0; k < n; ++k) {
    const double theta = rule.node(k);
    const double v = f(theta);
    if (!std::isfinite(v))
      throw EvaluationError("non-finite circle integrand at node " + std::to_string(k) +
                            " (theta = " + fmt(theta) + ")");
    (k % 2 == 0 ? sum_even : sum_odd) += v;
  }
  const double full = (sum_even + sum_odd) * (kTwoPi / n);
  const double half = sum_even * (kTwoPi / (n / 2));
  return {full, std::abs(full - half)};
}

void RadialRule::validate() const {
  if (!(rel_tol > 0.0)) throw ArgumentError("radial rule rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw ArgumentError("radial rule abs_tol must be positive");
  if (max_depth < 1) throw ArgumentError("radial rule max_depth must be >= 1");
}

RadialResult integrate_radial(const RealFunction& f, double a, double b, const RadialRule& rule) {
  rule.validate();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw ArgumentError("radial integration bounds must be finite");
  if (a > b) throw ArgumentError("radial integration needs a <= b, got a = " + fmt(a) +
                                 ", b = " + fmt(b));
  RadialResult out;
  if (a == b) return out;

  const auto eval = [&](double t) {
    const double v = f(t);
    ++out.evaluations;
    if (!std::isfinite(v))
      throw EvaluationError("non-finite radial integrand at t = " + fmt(t));
    return v;
  };
  const auto make_panel = [](double pa, double pb, double fa, double fl, double fm, double fr,
                             double fb, int depth) {
    const double h = pb - pa;
    Panel p{pa, pb, fa, fl, fm, fr, fb, 0.0, 0.0, depth};
    p.coarse = h / 6.0 * (fa + 4.0 * fm + fb);
    p.fine = h / 12.0 * (fa + 4.0 * fl + 2.0 * fm + 4.0 * fr + fb);
    return p;
  };

  const double h = b - a;
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> active;
  std::vector<Panel> exhausted;
  active.push(make_panel(a, b, eval(a), eval(a + 0.25 * h), eval(a + 0.5 * h),
                         eval(a + 0.75 * h), eval(b), 0));

  double value = active.top().value();
  double error = active.top().error();
  double exhausted_error = 0.0;
  constexpr std::size_t kMaxEvaluations = 4'000'000;

  // Exhausted panels keep their error in the total but do not force the
  // remaining ones past the tolerance.
  while (!active.empty()) {
    const double tol = std::max(rule.abs_tol, rule.rel_tol * std::abs(value));
    if (error <= tol || error - exhausted_error <= tol) break;
    Panel p = active.top();
    active.pop();
    if (p.depth >= rule.max_depth || out.evaluations >= kMaxEvaluations) {
      out.degraded = true;
      exhausted_error += p.error();
      exhausted.push_back(p);
      continue;
    }
    value -= p.value();
    error -= p.error();
    const double m = 0.5 * (p.a + p.b);
    const double q = 0.25 * (p.b - p.a);
    const Panel left = make_panel(p.a, m, p.fa, eval(p.a + 0.5 * q), p.fl, eval(p.a + 1.5 * q),
                                  p.fm, p.depth + 1);
    const Panel right = make_panel(m, p.b, p.fm, eval(m + 0.5 * q), p.fr, eval(m + 1.5 * q),
                                   p.fb, p.depth + 1);
    value += left.value() + right.value();
    error += left.error() + right.error();
    active.push(left);
    active.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  out.value = 0.0;
  out.error_estimate = 0.0;
  while (!active.empty()) {
    out.value += active.top().value();
    out.error_estimate += active.top().error();
    active.pop();
  }
  for (const Panel& p : exhausted) {
    out.value += p.value();
    out.error_estimate += p.error();
  }
  return out;
}

double simpson_composite(const RealFunction& f, double a, double b, int panels) {
  if (panels < 1) throw ArgumentError("simpson_composite needs at least one panel");
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double x0 = a + k * h;
    sum += f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h);
  }
  return sum * h / 6.0;
}

}  // namespace angdil
