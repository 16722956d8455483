#include "angdil/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "angdil/errors.hpp"
#include "angdil/ingest.hpp"

namespace angdil {

namespace {

constexpr complex kI{0.0, 1.0};

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(xs[i]);
  }
  return out + "]";
}

void require_positive_radius(PolarPoint p) {
  if (!(p.r() > 0.0)) throw SingularPointError("polar jet requested at r = 0");
}

}  // namespace

// ---------------------------------------------------------------- PolarPoint

PolarPoint::PolarPoint(double r, double theta) {
  if (!std::isfinite(r) || !std::isfinite(theta))
    throw ArgumentError("polar point has non-finite coordinates");
  if (r < 0.0 || r > 1.0)
    throw ArgumentError("polar point radius " + fmt_double(r) + " outside [0, 1]");
  r_ = r;
  theta_ = std::fmod(theta, kTwoPi);
  if (theta_ < 0.0) theta_ += kTwoPi;
  if (theta_ >= kTwoPi) theta_ = 0.0;
}

PolarPoint PolarPoint::from_complex(complex z) {
  double r = std::abs(z);
  if (r > 1.0 && r <= 1.0 + 1e-12) r = 1.0;
  return PolarPoint(r, r > 0.0 ? std::arg(z) : 0.0);
}

bool PolarJet::finite() const noexcept {
  auto ok = [](complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return ok(value) && ok(d_r) && ok(d_theta);
}

// ------------------------------------------------------------------ profiles

double TwistProfile::value(double r) const noexcept {
  // Horner on sum_{k>=1} c_k r^k
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc + *it) * r;
  return acc;
}

double TwistProfile::derivative(double r) const noexcept {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k >= 1; --k)
    acc = acc * r + static_cast<double>(k) * coeffs[k - 1];
  return acc;
}

double AngularProfile::value(double theta) const noexcept {
  double h = theta;
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k)
    h += sin_coeffs[k] * std::sin(static_cast<double>(k + 1) * theta);
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k)
    h += cos_coeffs[k] * std::cos(static_cast<double>(k + 1) * theta);
  return h;
}

double AngularProfile::derivative(double theta) const noexcept {
  double dh = 1.0;
  for (std::size_t k = 0; k < sin_coeffs.size(); ++k) {
    const double m = static_cast<double>(k + 1);
    dh += m * sin_coeffs[k] * std::cos(m * theta);
  }
  for (std::size_t k = 0; k < cos_coeffs.size(); ++k) {
    const double m = static_cast<double>(k + 1);
    dh -= m * cos_coeffs[k] * std::sin(m * theta);
  }
  return dh;
}

// -------------------------------------------------------------------- models

struct Mapping::Model {
  virtual ~Model() = default;
  virtual Family family() const = 0;
  virtual std::string describe() const = 0;
  virtual complex value(PolarPoint p) const = 0;
  // Callers guarantee p.r() > 0.
  virtual PolarJet jet(PolarPoint p) const = 0;
  virtual WirtingerDerivs wirtinger(PolarPoint p) const {
    require_positive_radius(p);
    return wirtinger_from_polar(jet(p), p);
  }
  virtual complex origin() const { return value(PolarPoint(0.0, 0.0)); }
  virtual double min_radius() const { return 0.0; }
  virtual double max_radius() const { return 1.0; }
  virtual const SampledMapping* sampled() const { return nullptr; }
};

namespace {

struct IdentityModel final : Mapping::Model {
  Family family() const override { return Family::identity; }
  std::string describe() const override { return "identity"; }
  complex value(PolarPoint p) const override { return p.to_complex(); }
  PolarJet jet(PolarPoint p) const override {
    const complex e = std::polar(1.0, p.theta());
    return {p.r() * e, e, kI * p.r() * e};
  }
  WirtingerDerivs wirtinger(PolarPoint) const override { return {1.0, 0.0}; }
};

struct RotationModel final : Mapping::Model {
  explicit RotationModel(double phi) : phi(phi), factor(std::polar(1.0, phi)) {}
  double phi;
  complex factor;

  Family family() const override { return Family::rotation; }
  std::string describe() const override { return "rotation(phi=" + fmt_double(phi) + ")"; }
  complex value(PolarPoint p) const override { return factor * p.to_complex(); }
  PolarJet jet(PolarPoint p) const override {
    const complex e = factor * std::polar(1.0, p.theta());
    return {p.r() * e, e, kI * p.r() * e};
  }
  WirtingerDerivs wirtinger(PolarPoint) const override { return {factor, 0.0}; }
};

struct RadialPowerModel final : Mapping::Model {
  explicit RadialPowerModel(double alpha) : alpha(alpha) {}
  double alpha;

  Family family() const override { return Family::radial_power; }
  std::string describe() const override {
    return "radial_power(alpha=" + fmt_double(alpha) + ")";
  }
  complex value(PolarPoint p) const override {
    return std::polar(std::pow(p.r(), alpha), p.theta());
  }
  PolarJet jet(PolarPoint p) const override {
    const complex e = std::polar(1.0, p.theta());
    const double ra = std::pow(p.r(), alpha);
    return {ra * e, alpha * std::pow(p.r(), alpha - 1.0) * e, kI * ra * e};
  }
  WirtingerDerivs wirtinger(PolarPoint p) const override {
    if (p.r() == 0.0 && alpha == 1.0) return {1.0, 0.0};
    return Model::wirtinger(p);
  }
};

struct TwistModel final : Mapping::Model {
  explicit TwistModel(TwistProfile g) : g(std::move(g)) {}
  TwistProfile g;

  Family family() const override { return Family::twist; }
  std::string describe() const override { return "twist(coeffs=" + fmt_list(g.coeffs) + ")"; }
  complex value(PolarPoint p) const override {
    return std::polar(p.r(), p.theta() + g.value(p.r()));
  }
  PolarJet jet(PolarPoint p) const override {
    const double r = p.r();
    const complex e = std::polar(1.0, p.theta() + g.value(r));
    return {r * e, e * complex(1.0, r * g.derivative(r)), kI * r * e};
  }
};

struct AngularReparamModel final : Mapping::Model {
  explicit AngularReparamModel(AngularProfile h) : h(std::move(h)) {}
  AngularProfile h;

  Family family() const override { return Family::angular_reparam; }
  std::string describe() const override {
    return "angular_reparam(sin=" + fmt_list(h.sin_coeffs) + ",cos=" + fmt_list(h.cos_coeffs) +
           ")";
  }
  complex value(PolarPoint p) const override { return std::polar(p.r(), h.value(p.theta())); }
  PolarJet jet(PolarPoint p) const override {
    const complex e = std::polar(1.0, h.value(p.theta()));
    return {p.r() * e, e, kI * p.r() * h.derivative(p.theta()) * e};
  }
};

struct MobiusModel final : Mapping::Model {
  explicit MobiusModel(complex a) : a(a) {}
  complex a;

  complex derivative(complex z) const {
    const complex d = 1.0 - std::conj(a) * z;
    return (1.0 - std::norm(a)) / (d * d);
  }

  Family family() const override { return Family::mobius; }
  std::string describe() const override {
    return "mobius(a=" + fmt_double(a.real()) + "," + fmt_double(a.imag()) + ")";
  }
  complex value(PolarPoint p) const override {
    const complex z = p.to_complex();
    return (z - a) / (1.0 - std::conj(a) * z);
  }
  PolarJet jet(PolarPoint p) const override {
    const complex z = p.to_complex();
    const complex dz = derivative(z);
    return {value(p), dz * std::polar(1.0, p.theta()), dz * kI * z};
  }
  WirtingerDerivs wirtinger(PolarPoint p) const override {
    return {derivative(p.to_complex()), 0.0};
  }
};

struct CompositionModel final : Mapping::Model {
  explicit CompositionModel(std::vector<Mapping> maps) : maps(std::move(maps)) {}
  std::vector<Mapping> maps;

  Family family() const override { return Family::composition; }
  std::string describe() const override {
    std::string out = "composition[";
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (i) out += ", ";
      out += maps[i].describe();
    }
    return out + "]";
  }
  complex value(PolarPoint p) const override {
    complex w = evaluate(maps.front(), p);
    for (std::size_t i = 1; i < maps.size(); ++i)
      w = evaluate(maps[i], PolarPoint::from_complex(w));
    return w;
  }
  PolarJet jet(PolarPoint p) const override {
    PolarJet j = polar_jet(maps.front(), p);
    for (std::size_t i = 1; i < maps.size(); ++i) {
      const PolarPoint w = PolarPoint::from_complex(j.value);
      const WirtingerDerivs d = angdil::wirtinger(maps[i], w);
      j = PolarJet{evaluate(maps[i], w), d.f_z * j.d_r + d.f_zbar * std::conj(j.d_r),
                   d.f_z * j.d_theta + d.f_zbar * std::conj(j.d_theta)};
    }
    return j;
  }
  complex origin() const override {
    complex w = maps.front().origin_value();
    for (std::size_t i = 1; i < maps.size(); ++i)
      w = evaluate(maps[i], PolarPoint::from_complex(w));
    return w;
  }
  double min_radius() const override { return maps.front().min_radius(); }
  double max_radius() const override { return maps.front().max_radius(); }
};

struct SampledModel final : Mapping::Model {
  explicit SampledModel(std::shared_ptr<const SampledMapping> data) : data(std::move(data)) {}
  std::shared_ptr<const SampledMapping> data;

  Family family() const override { return Family::sampled; }
  std::string describe() const override {
    return "sampled(" + std::to_string(data->r_values().size()) + "x" +
           std::to_string(data->theta_count()) + ")";
  }
  complex value(PolarPoint p) const override { return data->value(p); }
  PolarJet jet(PolarPoint p) const override { return data->jet(p); }
  complex origin() const override { return data->origin_estimate(); }
  double min_radius() const override { return data->r_min(); }
  double max_radius() const override { return data->r_max(); }
  const SampledMapping* sampled() const override { return data.get(); }
};

}  // namespace

// ------------------------------------------------------------------- Mapping

Mapping Mapping::identity() { return Mapping(std::make_shared<IdentityModel>()); }

Mapping Mapping::rotation(double phi) {
  if (!std::isfinite(phi)) throw ArgumentError("rotation angle must be finite");
  return Mapping(std::make_shared<RotationModel>(phi));
}

Mapping Mapping::radial_power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ArgumentError("radial_power exponent must be positive, got " + fmt_double(alpha));
  return Mapping(std::make_shared<RadialPowerModel>(alpha));
}

Mapping Mapping::twist(TwistProfile g) {
  for (double c : g.coeffs)
    if (!std::isfinite(c)) throw ArgumentError("twist coefficients must be finite");
  return Mapping(std::make_shared<TwistModel>(std::move(g)));
}

Mapping Mapping::angular_reparam(AngularProfile h) {
  for (double c : h.sin_coeffs)
    if (!std::isfinite(c)) throw ArgumentError("angular coefficients must be finite");
  for (double c : h.cos_coeffs)
    if (!std::isfinite(c)) throw ArgumentError("angular coefficients must be finite");
  return Mapping(std::make_shared<AngularReparamModel>(std::move(h)));
}

Mapping Mapping::mobius(complex a) {
  if (!(std::abs(a) < 1.0)) throw ArgumentError("mobius parameter must satisfy |a| < 1");
  return Mapping(std::make_shared<MobiusModel>(a));
}

Mapping Mapping::composition(std::vector<Mapping> maps) {
  if (maps.empty()) throw ArgumentError("composition needs at least one map");
  for (std::size_t i = 1; i < maps.size(); ++i)
    if (maps[i].family() == Family::sampled)
      throw ArgumentError("sampled maps may only appear first in a composition");
  return Mapping(std::make_shared<CompositionModel>(std::move(maps)));
}

Mapping Mapping::sampled(std::shared_ptr<const SampledMapping> data) {
  if (!data) throw ArgumentError("sampled mapping data is null");
  return Mapping(std::make_shared<SampledModel>(std::move(data)));
}

Family Mapping::family() const { return model_->family(); }
std::string Mapping::describe() const { return model_->describe(); }
complex Mapping::origin_value() const { return model_->origin(); }
double Mapping::min_radius() const { return model_->min_radius(); }
double Mapping::max_radius() const { return model_->max_radius(); }
const SampledMapping* Mapping::sampled_data() const { return model_->sampled(); }

// ---------------------------------------------------------------- operations

complex evaluate(const Mapping& map, PolarPoint point) { return map.model_->value(point); }

PolarJet polar_jet(const Mapping& map, PolarPoint point) {
  require_positive_radius(point);
  return map.model_->jet(point);
}

WirtingerDerivs wirtinger(const Mapping& map, PolarPoint point) {
  return map.model_->wirtinger(point);
}

double jacobian(const PolarJet& jet, double r) {
  if (!(r > 0.0)) throw SingularPointError("jacobian requested at r = 0");
  if (!jet.finite()) throw EvaluationError("non-finite jet component");
  return (std::conj(jet.d_r) * jet.d_theta).imag() / r;
}

double jacobian(const Mapping& map, PolarPoint point) {
  return jacobian(polar_jet(map, point), point.r());
}

WirtingerDerivs wirtinger_from_polar(const PolarJet& jet, PolarPoint point) {
  const double r = point.r();
  if (!(r > 0.0)) throw SingularPointError("Wirtinger conversion at r = 0");
  const complex ft_over_r = kI * jet.d_theta / r;
  return {0.5 * std::polar(1.0, -point.theta()) * (jet.d_r - ft_over_r),
          0.5 * std::polar(1.0, point.theta()) * (jet.d_r + ft_over_r)};
}

RegularityReport validate_regular(const Mapping& map, int n_r, int n_theta, double r_lo,
                                  double r_hi, double modulus_tolerance) {
  if (n_r < 2) throw ArgumentError("validate_regular needs n_r >= 2");
  if (n_theta < 4) throw ArgumentError("validate_regular needs n_theta >= 4");
  r_hi = std::min(r_hi, map.max_radius());
  r_lo = std::max(r_lo, map.min_radius());
  if (!(r_lo > 0.0)) r_lo = r_hi / n_r;
  if (r_lo > r_hi) throw ArgumentError("validate_regular radius range is empty");

  RegularityReport rep;
  rep.min_jacobian = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_r; ++i) {
    const double r = i + 1 == n_r ? r_hi : r_lo + (r_hi - r_lo) * i / (n_r - 1);
    for (int j = 0; j < n_theta; ++j) {
      const PolarPoint pt(r, kTwoPi * j / n_theta);
      ++rep.sample_count;
      double J = std::numeric_limits<double>::quiet_NaN();
      double modulus = std::numeric_limits<double>::quiet_NaN();
      try {
        const PolarJet jet = polar_jet(map, pt);
        modulus = std::abs(jet.value);
        J = jacobian(jet, r);
      } catch (const Error&) {
        // recorded below as a non-finite sample
      }
      if (std::isfinite(modulus) && modulus > rep.max_modulus) {
        rep.max_modulus = modulus;
        rep.max_modulus_at = pt;
      }
      if (!std::isfinite(J) || J <= 0.0) {
        ++rep.nonpositive_count;
        if (rep.violations.size() < 32) rep.violations.push_back({pt, J});
      }
      if (std::isfinite(J) && J < rep.min_jacobian) {
        rep.min_jacobian = J;
        rep.min_jacobian_at = pt;
      }
    }
  }
  rep.pass = rep.nonpositive_count == 0 && rep.min_jacobian > 0.0 &&
             rep.max_modulus <= 1.0 + modulus_tolerance;
  return rep;
}

}  // namespace angdil
