#pragma once

// Externally sampled maps on a polar tensor grid.
//
// CSV format: first line exactly `r,theta,re,im`, then one row per node in any
// order. The (r, theta) pairs must form a full tensor grid whose angles are
// 2 pi j / n to within 1e-12. Paths ending in `.json` are read as
//   { "r_values": [...], "theta_count": n,
//     "samples": [[re, im], ...],            // row-major: r outer, theta inner
//     "asserted_flags": { "regular": bool, "n_property": bool } }

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "angdil/mapping.hpp"

namespace angdil {

/// User assertions that cannot be decided from samples.
struct AssertedFlags {
  bool regular = false;
  bool n_property = false;
};

/// Immutable grid of samples f(r_i e^{2 pi i j / n}) with node jets.
///
/// Jets are computed once at the nodes: f_theta by a periodic five-point
/// central difference, f_r by three-point differences on the (possibly
/// non-uniform) radial grid, one-sided second order at both ends. Queries
/// between nodes interpolate value and jets bilinearly in (r, theta).
class SampledMapping {
public:
  /// Validates the grid invariants; throws StructureError or DomainError.
  SampledMapping(std::vector<double> r_values, int theta_count, std::vector<complex> samples,
                 AssertedFlags flags = {});

  const std::vector<double>& r_values() const noexcept { return r_values_; }
  int theta_count() const noexcept { return theta_count_; }
  std::span<const complex> samples() const noexcept { return samples_; }
  const AssertedFlags& flags() const noexcept { return flags_; }

  complex sample(std::size_t ri, std::size_t tj) const { return samples_[index(ri, tj)]; }
  double r_min() const noexcept { return r_values_.front(); }
  double r_max() const noexcept { return r_values_.back(); }

  /// Throws OutOfDomainError outside [r_min, r_max].
  complex value(PolarPoint point) const;
  PolarJet jet(PolarPoint point) const;

  /// Mean of the innermost ring: a second-order estimate of f(0).
  complex origin_estimate() const;

private:
  struct Cell {
    std::size_t r0, r1, t0, t1;
    double wr, wt;
  };
  Cell locate(PolarPoint point) const;
  std::size_t index(std::size_t ri, std::size_t tj) const {
    return ri * static_cast<std::size_t>(theta_count_) + tj;
  }

  std::vector<double> r_values_;
  int theta_count_;
  std::vector<complex> samples_;
  std::vector<complex> d_r_;
  std::vector<complex> d_theta_;
  AssertedFlags flags_;
};

/// Dispatches on extension: `.json` -> JSON, anything else -> CSV.
SampledMapping parse_sampled_map(const std::filesystem::path& path);
SampledMapping parse_sampled_csv(std::istream& in);
SampledMapping parse_sampled_json(std::istream& in);

/// Samples `map` on r_values x theta_count and writes the CSV format with
/// 17 significant digits.
void write_sampled_csv(const Mapping& map, std::span<const double> r_values, int theta_count,
                       std::ostream& out);
void write_sampled_json(const Mapping& map, std::span<const double> r_values, int theta_count,
                        const AssertedFlags& flags, std::ostream& out);

}  // namespace angdil
