#pragma once

// Area-distortion inequalities as checkable predicates with signed margins.
//
// Every check is phrased as a claim lhs <= rhs and reports
// margin = rhs - lhs; it passes when margin >= -tolerance(rhs).

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "angdil/dilatation.hpp"
#include "angdil/geometry.hpp"
#include "angdil/mapping.hpp"
#include "angdil/quadrature.hpp"

namespace angdil {

enum class InequalityId {
  lemma1,                // L^p <= delta_p S'
  isoperimetric,         // 4 pi S <= L^2
  lemma2,                // (4 pi)^{p/2} S^{p/2} / delta_p <= S'
  lemma3_p2,             // S(r1) <= S(r2) exp(-4 pi I)
  lemma3_pgt2,           // (4 pi)^{p/2} (p-2)/2 I <= S(r1)^{(2-p)/2} - S(r2)^{(2-p)/2}
  theorem1_p2,           // S(r) <= pi exp(-4 pi I_r)
  theorem1_pgt2,         // S(r) <= pi (1 + (2pi)^{p-1} (p-2) I_r)^{-2/(p-2)}
  theorem2_p2,           // liminf |f| / R_2 <= 1
  theorem2_pgt2,         // liminf |f| / R_p <= 1
  corollary1_paper,      // liminf |f| I^{1/(p-2)} <= (2pi)^{1-p} (p-2)^{1/(2-p)}
  corollary1_rederived,  // liminf |f| I^{1/(p-2)} <= ((2pi)^{p-1} (p-2))^{-1/(p-2)}
  inclusion_lf,          // pi l_f(r)^2 <= S(r)
};
// Here I = int_{r1}^{r2} dt / delta_p(t) and I_r = int_r^1 dt / delta_p(t).

std::string_view to_string(InequalityId id);
std::optional<InequalityId> parse_inequality_id(std::string_view name);
std::span<const InequalityId> all_inequality_ids();

/// tol(rhs) = abs + rel * max(1, |rhs|)
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-7;

  double at(double rhs) const;
};

struct BoundCheckResult {
  InequalityId id = InequalityId::lemma1;
  std::optional<double> p;  // empty for the p-independent isoperimetric and inclusion checks
  std::vector<double> radii;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// False for results that are reported but do not count towards a run's
  /// verdict (the printed corollary constant, see corollary1_check).
  bool asserted = true;
};

BoundCheckResult make_check(InequalityId id, std::optional<double> p, std::vector<double> radii,
                            double lhs, double rhs, const Tolerance& tol);

struct BoundSettings {
  CircleRule circle{};
  RadialRule radial{};
  Tolerance tolerance{};
  /// Inner truncation radius for S_jacobian cores.
  double r_min = 1e-3;
  int min_modulus_samples = 512;
  JacobianPolicy policy = JacobianPolicy::strict;
};

/// Right-hand side of the whole-disk area bound given I_r.
double theorem1_rhs(double p, double tail_integral);
/// 1 / R_p(r) given I_r: exp(2 pi I_r) for p = 2, (1 + (2pi)^{p-1}(p-2) I_r)^{1/(p-2)} otherwise.
double schwarz_factor(double p, double tail_integral);
double corollary1_paper_constant(double p);
double corollary1_rederived_constant(double p);

BoundCheckResult check_lemma1(const Mapping& map, double p, double r,
                              const BoundSettings& settings = {});
BoundCheckResult check_isoperimetric(const Mapping& map, double r,
                                     const BoundSettings& settings = {});
BoundCheckResult check_lemma2(const Mapping& map, double p, double r,
                              const BoundSettings& settings = {});
/// Requires 0 < r1 <= r2 <= 1; r2 = 1 is accepted as the limiting case.
BoundCheckResult check_lemma3(const Mapping& map, double p, double r1, double r2,
                              const BoundSettings& settings = {});
BoundCheckResult theorem1_bound(const Mapping& map, double p, double r,
                                const BoundSettings& settings = {});
/// Requires f(0) = 0.
BoundCheckResult check_inclusion(const Mapping& map, double r, const BoundSettings& settings = {});

/// Lemma 3 from precomputed pieces (shared by check_lemma3 and run_suite).
BoundCheckResult lemma3_from_values(double p, double r1, double r2, double area1, double area2,
                                    double integral, const Tolerance& tol);

/// Throws HypothesisViolation unless f(0) = 0 (to 1e-9 for closed forms; for
/// sampled maps to the second-order accuracy of the innermost-ring mean).
void require_origin_fixed(const Mapping& map);
bool origin_fixed(const Mapping& map);

struct SchwarzProfile {
  double p = 2.0;
  std::vector<double> radii;              // decreasing
  std::vector<double> min_modulus;        // l_f(r)
  std::vector<double> tail_integrals;     // I_r
  std::vector<double> functional_values;  // l_f(r) / R_p(r)
  double proxy_liminf = 0.0;              // min over the smallest quarter of radii
  double proxy_radius = 0.0;              // where the minimum is attained
  std::size_t tail_count = 0;
};

/// Theorem-2 functional on a grid; the liminf is approximated by the minimum
/// over the smallest ceil(n/4) radii. Throws HypothesisViolation if f(0) != 0.
SchwarzProfile schwarz_profile(const Mapping& map, double p, std::span<const double> r_grid,
                               const BoundSettings& settings = {});
BoundCheckResult check_theorem2(const SchwarzProfile& profile, const Tolerance& tol = {});

struct Corollary1Result {
  double proxy_liminf = 0.0;
  double proxy_radius = 0.0;
  BoundCheckResult paper;
  BoundCheckResult rederived;
};

/// Compares the liminf proxy of |f(z)| (int_{|z|}^1 dt / delta_p)^{1/(p-2)}
/// against two constants. The rederived one follows from the Theorem-2 bound
/// by dropping the additive 1; the printed one agrees with it only at p = 3
/// and its result is marked asserted = false. Requires p > 2 and f(0) = 0.
Corollary1Result corollary1_check(const Mapping& map, double p, std::span<const double> r_grid,
                                  const BoundSettings& settings = {});

struct BranchGap {
  double eps = 0.0;
  double bound_p2 = 0.0;
  double bound = 0.0;
  double relative_gap = 0.0;
};

struct BranchContinuityReport {
  double r = 0.0;
  std::vector<BranchGap> gaps;  // in the order of eps_list
  /// Gaps strictly decrease as eps decreases.
  bool monotone = false;
};

BranchContinuityReport branch_continuity(const Mapping& map, double r,
                                         std::span<const double> eps_list,
                                         const BoundSettings& settings = {});

/// Stride sample of the pairs (i, j), i < j, of n grid points; at most cap pairs.
std::vector<std::pair<std::size_t, std::size_t>> lemma3_pairs(std::size_t n, std::size_t cap = 50);

struct SuiteRequest {
  std::vector<double> p_list;
  std::vector<double> radii;          // for lemma1..theorem1 and inclusion
  std::vector<double> schwarz_radii;  // for theorem2 and corollary1
  std::vector<InequalityId> checks;   // empty: every check
  std::size_t lemma3_pair_cap = 50;
};

/// Runs the selected checks, sharing circle functionals and radial integrals
/// across checks. Output is sorted by (id, p, radii).
std::vector<BoundCheckResult> run_suite(const Mapping& map, const SuiteRequest& request,
                                        const BoundSettings& settings = {});

}  // namespace angdil
