#pragma once

// Mappings of the closed unit disk and their first-order polar jets.

#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace angdil {

using complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A point z = r e^{i theta} of the closed unit disk.
class PolarPoint {
public:
  PolarPoint() = default;
  /// Throws ArgumentError unless 0 <= r <= 1; theta is reduced to [0, 2pi).
  PolarPoint(double r, double theta);

  /// Polar coordinates of z; moduli up to 1 + 1e-12 are clamped onto the circle.
  static PolarPoint from_complex(complex z);

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }
  complex to_complex() const { return std::polar(r_, theta_); }

private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

/// f, df/dr and df/dtheta at one polar point.
struct PolarJet {
  complex value;
  complex d_r;
  complex d_theta;

  bool finite() const noexcept;
};

struct WirtingerDerivs {
  complex f_z;
  complex f_zbar;

  /// |f_z|^2 - |f_zbar|^2
  double jacobian() const noexcept { return std::norm(f_z) - std::norm(f_zbar); }
};

/// g(r) = sum_k c_k r^k for k = 1..n, so g(0) = 0 by construction.
struct TwistProfile {
  std::vector<double> coeffs;  // coeffs[0] multiplies r^1

  double value(double r) const noexcept;
  double derivative(double r) const noexcept;
};

/// h(theta) = theta + sum_k (a_k sin k theta + b_k cos k theta) for k = 1..n.
/// h(theta + 2pi) = h(theta) + 2pi always holds; h' > 0 is not enforced here
/// (validate_regular reports folds).
struct AngularProfile {
  std::vector<double> sin_coeffs;  // a_1, a_2, ...
  std::vector<double> cos_coeffs;  // b_1, b_2, ...

  double value(double theta) const noexcept;
  double derivative(double theta) const noexcept;
};

enum class Family {
  identity,
  rotation,
  radial_power,
  twist,
  angular_reparam,
  mobius,
  composition,
  sampled,
};

class SampledMapping;

/// Immutable handle to a map of the closed unit disk into itself.
///
/// Built-in families carry closed-form jets:
///   identity          z
///   rotation(phi)     e^{i phi} z
///   radial_power(a)   z |z|^{a-1}                    = r^a e^{i theta}
///   twist(g)          z e^{i g(|z|)}                 = r e^{i(theta + g(r))}
///   angular_reparam(h)                               = r e^{i h(theta)}
///   mobius(a)         (z - a) / (1 - conj(a) z),  |a| < 1
/// composition applies its members in list order (first element first) and
/// differentiates by the Cartesian chain rule. sampled wraps grid data with
/// finite-difference jets.
class Mapping {
public:
  static Mapping identity();
  static Mapping rotation(double phi);
  static Mapping radial_power(double alpha);
  static Mapping twist(TwistProfile g);
  static Mapping angular_reparam(AngularProfile h);
  static Mapping mobius(complex a);
  static Mapping composition(std::vector<Mapping> maps);
  static Mapping sampled(std::shared_ptr<const SampledMapping> data);

  Family family() const;
  std::string describe() const;

  /// f(0) when it is known: exact for closed-form families, estimated from
  /// the innermost ring for sampled data.
  complex origin_value() const;

  /// Smallest / largest radius at which the map may be queried.
  double min_radius() const;
  double max_radius() const;

  /// Null unless family() == Family::sampled.
  const SampledMapping* sampled_data() const;

  struct Model;

private:
  explicit Mapping(std::shared_ptr<const Model> model) : model_(std::move(model)) {}
  std::shared_ptr<const Model> model_;

  friend complex evaluate(const Mapping& map, PolarPoint point);
  friend PolarJet polar_jet(const Mapping& map, PolarPoint point);
  friend WirtingerDerivs wirtinger(const Mapping& map, PolarPoint point);
};

/// f(r e^{i theta}).
complex evaluate(const Mapping& map, PolarPoint point);

/// Throws SingularPointError at r = 0.
PolarJet polar_jet(const Mapping& map, PolarPoint point);

/// f_z and f_zbar of the map. Holomorphic families answer at r = 0 too;
/// everything else goes through wirtinger_from_polar.
WirtingerDerivs wirtinger(const Mapping& map, PolarPoint point);

/// J_f = Im(conj(f_r) f_theta) / r.
double jacobian(const PolarJet& jet, double r);
double jacobian(const Mapping& map, PolarPoint point);

/// f_z = e^{-i theta}/2 (f_r - i f_theta / r), f_zbar = e^{i theta}/2 (f_r + i f_theta / r).
WirtingerDerivs wirtinger_from_polar(const PolarJet& jet, PolarPoint point);

struct RegularitySample {
  PolarPoint point;
  double jacobian = 0.0;
};

struct RegularityReport {
  bool pass = false;
  std::size_t sample_count = 0;
  double min_jacobian = 0.0;
  PolarPoint min_jacobian_at;
  double max_modulus = 0.0;
  PolarPoint max_modulus_at;
  std::size_t nonpositive_count = 0;
  /// First offending samples (J <= 0 or non-finite), at most 32.
  std::vector<RegularitySample> violations;
};

/// Samples J_f and |f| on an n_r x n_theta polar grid over [r_lo, r_hi]
/// (clipped to the map's radial hull). Never throws on a bad map; failures
/// become report entries. Throws ArgumentError for n_r < 2 or n_theta < 4.
RegularityReport validate_regular(const Mapping& map, int n_r, int n_theta, double r_lo = 1e-3,
                                  double r_hi = 1.0, double modulus_tolerance = 1e-12);

}  // namespace angdil
