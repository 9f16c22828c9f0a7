#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "obstruct/polynomial.hpp"
#include "obstruct/rational.hpp"
#include "obstruct/torus.hpp"

namespace obstruct {

/// x_k(B) = (A k^p + B_{p-1} k^{p-1} + ... + B_1 k) mod 1.
///
/// Exact when A is rational and every B_i is dyadic (u / 2^64); then x_k(B)
/// is computed bit-exactly for the B-part and with a single rounding of the
/// A-part to the nearest 2^-64.
class PolySeqSpec {
 public:
  /// `lower` holds B_1..B_{p-1}; shorter vectors are padded with zeros.
  PolySeqSpec(int degree, TorusCoefficient leading, std::vector<TorusCoefficient> lower = {});

  static PolySeqSpec exact(int degree, const Rational& leading,
                           const std::vector<std::uint64_t>& lower_raw = {});
  static PolySeqSpec real(int degree, long double leading,
                          const std::vector<long double>& lower = {});

  int degree() const noexcept { return degree_; }
  const TorusCoefficient& leading() const noexcept { return leading_; }
  const std::vector<TorusCoefficient>& lower() const noexcept { return lower_; }
  bool is_exact() const noexcept { return polynomial_.is_exact(); }
  const TorusPolynomial& polynomial() const noexcept { return polynomial_; }

  std::uint64_t value_raw(std::int64_t k) const { return polynomial_.value_raw(k); }
  TorusPoint value_at(std::int64_t k) const { return polynomial_.value(k); }

 private:
  int degree_;
  TorusCoefficient leading_;
  std::vector<TorusCoefficient> lower_;
  TorusPolynomial polynomial_;
};

enum class Provenance { thinned, elementary, explicit_set };

std::string_view provenance_name(Provenance provenance);
Provenance parse_provenance(std::string_view name);

/// Finite index set P of integers.
struct Pattern {
  std::vector<std::int64_t> indices;  // sorted, distinct
  std::int64_t universe = 0;          // Q > 0: P is a subset of {0..Q-1}; 0: unconstrained
  Provenance provenance = Provenance::explicit_set;
  std::uint64_t seed = 0;  // thinned only

  /// Sorts and validates (distinct indices, inside the universe).
  static Pattern make(std::vector<std::int64_t> indices, std::int64_t universe,
                      Provenance provenance, std::uint64_t seed = 0);

  std::size_t size() const noexcept { return indices.size(); }
  /// Q if constrained, else max |k| + 1.
  std::int64_t effective_universe() const;
};

/// {x_k : k in P} in raw units.
std::vector<std::uint64_t> evaluate_on_pattern(const Pattern& pattern, const PolySeqSpec& f);

/// Uniformly random n-subset of {0..Q-1}, reproducible from `seed`.
/// Fisher–Yates prefix for Q <= 2^16, Floyd's algorithm above.
Pattern thin_pattern(std::int64_t n, std::int64_t universe, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultNetBudget = 100'000'000;

/// B-nets with mesh Delta_i = eps / (100 p Q^i) / scale for i = 1..p-1 and
/// the family of arcs of length 9 eps / 10 with left endpoints on multiples
/// of eps / 100. scale = 1 is the full-resolution recipe; smaller scales
/// coarsen the nets.
struct NetSpec {
  int degree = 1;
  std::int64_t universe = 0;
  double epsilon = 0.0;
  double resolution_scale = 1.0;
  std::vector<double> meshes;        // Delta_1..Delta_{p-1}
  std::vector<std::uint64_t> sizes;  // |B_i| = ceil(1 / Delta_i)
  double interval_stride = 0.0;
  double interval_length = 0.0;
  std::uint64_t interval_count = 0;

  std::uint64_t cells() const;
  /// sum_i Delta_i Q^i: how far x_k(B) can drift from the nearest net point.
  double transfer_slack() const;
  bool full_resolution() const { return resolution_scale >= 1.0; }
};

NetSpec build_nets(int degree, std::int64_t universe, double epsilon, double resolution_scale = 1.0,
                   std::uint64_t cell_budget = kDefaultNetBudget);

enum class HittingMethod { net, sampled };

/// Outcome of an eps-hitting check. A point set meets every closed arc of
/// length eps iff its max circular gap is at most eps.
struct HittingReport {
  HittingMethod method = HittingMethod::sampled;
  double epsilon = 0.0;
  double worst_gap = 0.0;
  std::vector<std::uint64_t> worst_b;  // raw B_1..B_{p-1} of the worst case
  std::uint64_t samples_tested = 0;
  double pass_threshold = 0.0;  // pass iff worst_gap <= pass_threshold
  bool pass = false;
  // Net mode only.
  bool full_resolution = false;
  double transfer_slack = 0.0;
  /// Every closed arc of this length is hit for every real B.
  std::optional<double> guaranteed_epsilon;
};

/// Exhaustive check over the B-net; pass iff every net point has gap
/// <= 9 eps / 10 - 2 sum_i Delta_i Q^i. Requires a rational A.
HittingReport verify_hitting_net(const Pattern& pattern, const Rational& leading, int degree,
                                 double epsilon, const NetSpec& nets);

/// Monte Carlo surrogate: n_samples uniform B in T^{p-1}; no universal
/// guarantee. Pass iff worst observed gap <= eps.
HittingReport verify_hitting_sampled(const Pattern& pattern, const TorusCoefficient& leading,
                                     int degree, double epsilon, std::uint64_t n_samples,
                                     std::uint64_t seed);

struct ElementaryPattern {
  Pattern pattern;  // {0..n-1}
  Rational leading;  // 1 / m^2
  std::int64_t m = 0;  // floor(sqrt(n))
};

/// P = {0..n-1}, A = 1/m^2 with m = floor(sqrt n); n >= 4.
ElementaryPattern elementary_pattern(std::int64_t n);

/// k in {0..n-1} with (k^2/m^2 + B k) mod 1 in `target`, found by selecting
/// the first block i with (B + 2i/m) mod 1 in [1/m, 3/m) and walking
/// l = 0..m-1 inside it. n >= 16, target length >= 10/sqrt(n).
std::int64_t find_hitter(std::int64_t n, const TorusPoint& b, const TorusInterval& target);

struct CalibrationAttempt {
  std::uint64_t seed = 0;
  double worst_gap = 0.0;
};

struct SampledCalibration {
  Pattern pattern;
  double epsilon = 0.0;  // smallest eps the sampled check passes with
  HittingReport report;
  std::vector<CalibrationAttempt> attempts;
};

/// Thins with seeds seed, seed+1, ... (at most `retries` attempts), keeping
/// the pattern with the smallest worst sampled gap. Stops early once an
/// attempt reaches `target_epsilon`.
SampledCalibration calibrate_sampled(std::int64_t n, std::int64_t universe, int degree,
                                     std::uint64_t seed, std::uint64_t n_samples,
                                     std::uint64_t sample_seed, unsigned retries,
                                     std::optional<double> target_epsilon = std::nullopt);

struct NetCalibration {
  double epsilon = 0.0;  // smallest eps the net check passes with
  NetSpec nets;
  HittingReport report;
};

/// Chooses the finest net with at most max_cells cells, scans it once and
/// reports the smallest eps passing verify_hitting_net on that net.
NetCalibration calibrate_net(const Pattern& pattern, const Rational& leading, int degree,
                             std::uint64_t max_cells);

}  // namespace obstruct
