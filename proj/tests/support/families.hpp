#pragma once

// Map families shared by the unit and acceptance suites, plus small
// independent oracles (finite differences, fine composite rules).

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "angdil/mapping.hpp"

namespace angdil::testing {

struct NamedMap {
  std::string name;
  Mapping map;
};

/// The six families of the acceptance suite.
inline std::vector<NamedMap> acceptance_families() {
  return {
      {"identity", Mapping::identity()},
      {"rotation(pi/3)", Mapping::rotation(kPi / 3.0)},
      {"radial_power(0.5)", Mapping::radial_power(0.5)},
      {"radial_power(2)", Mapping::radial_power(2.0)},
      {"twist(g=r)", Mapping::twist({{1.0}})},
      {"angular_reparam(0.3 sin)", Mapping::angular_reparam({{0.3}, {}})},
  };
}

/// Acceptance families plus compositions and non-origin-fixing automorphisms.
inline std::vector<NamedMap> extended_families() {
  auto out = acceptance_families();
  out.push_back({"twist(poly)", Mapping::twist({{0.4, -1.2, 0.7}})});
  out.push_back({"angular_reparam(mixed)", Mapping::angular_reparam({{0.2, 0.05}, {0.1, -0.04}})});
  out.push_back({"mobius(0.3+0.2i)", Mapping::mobius({0.3, 0.2})});
  out.push_back({"composition[rp(1.5), twist, ang]",
                 Mapping::composition({Mapping::radial_power(1.5), Mapping::twist({{0.8}}),
                                       Mapping::angular_reparam({{0.25}, {0.1}})})});
  out.push_back({"composition[ang, mobius]",
                 Mapping::composition({Mapping::angular_reparam({{0.3}, {}}),
                                       Mapping::mobius({-0.2, 0.4})})});
  // images of centred circles are not circles
  out.push_back({"composition[mobius, twist]",
                 Mapping::composition({Mapping::mobius({0.3, 0.2}), Mapping::twist({{1.5}})})});
  return out;
}

/// A random valid map: parameters keep h' > 0 and |a| < 1.
inline Mapping random_map(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return Mapping::rotation(kTwoPi * u(rng));
    case 1: return Mapping::radial_power(0.3 + 2.7 * u(rng));
    case 2: return Mapping::twist({{4.0 * u(rng) - 2.0, 2.0 * u(rng) - 1.0}});
    case 3: {
      // sum_k k (|a_k| + |b_k|) < 1 keeps h' > 0
      const double a1 = 0.4 * u(rng) - 0.2, b1 = 0.4 * u(rng) - 0.2, a2 = 0.2 * u(rng) - 0.1;
      return Mapping::angular_reparam({{a1, a2}, {b1}});
    }
    case 4: return Mapping::mobius(std::polar(0.8 * u(rng), kTwoPi * u(rng)));
    default:
      return Mapping::composition({Mapping::radial_power(0.5 + u(rng)),
                                   Mapping::twist({{2.0 * u(rng) - 1.0}}),
                                   Mapping::rotation(kTwoPi * u(rng))});
  }
}

/// Central finite differences of evaluate() in r and theta.
inline PolarJet finite_difference_jet(const Mapping& map, double r, double theta, double h = 1e-5) {
  const auto f = [&](double rr, double tt) { return evaluate(map, PolarPoint(rr, tt)); };
  return {f(r, theta), (f(r + h, theta) - f(r - h, theta)) / (2.0 * h),
          (f(r, theta + h) - f(r, theta - h)) / (2.0 * h)};
}

/// Composite Simpson with many panels; independent of the adaptive rule.
inline double fine_simpson(const std::function<double(double)>& f, double a, double b,
                           int panels = 20000) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k) s += f(a + 0.5 * h * k) * (k % 2 ? 4.0 : 2.0);
  return s * h / 6.0;
}

inline double rel_err(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace angdil::testing
