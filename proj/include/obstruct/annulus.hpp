#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "obstruct/pattern.hpp"
#include "obstruct/rational.hpp"
#include "obstruct/torus.hpp"

namespace obstruct {

enum class Parity { even, odd };

/// E = {x : dist(F(x), Z) < (1 - eps)/2} with F(x) = sum x_i^p (even p), or
/// the intersection over sign vectors sigma of the same condition on
/// F_sigma(x) = sum sigma_i x_i^p (odd p).
struct AnnulusSpec {
  int dim = 1;
  int p = 2;
  double epsilon = 0.1;  // [0, 1); 0 is the degenerate full-measure set
  Parity parity = Parity::even;

  /// Parity follows p.
  static AnnulusSpec make(int dim, int p, double epsilon);
  /// (1 - eps) / 2.
  double half_width() const { return (1.0 - epsilon) / 2.0; }
};

/// Strict inequality; odd mode stops at the first failing sign vector.
/// Terms are summed in a fixed order of their values, so the predicate is
/// exactly invariant under coordinate permutations and sign flips.
bool member(const AnnulusSpec& spec, std::span<const double> x);

/// Lebesgue measure of {t in [-R/2, R/2] : sigma t^p mod 1 in I}, summed over
/// the arcs [(m + a)^{1/p}, (m + a + |I|)^{1/p}] clipped to [0, R/2] for both
/// signs of t. Errors with a BudgetError when (R/2)^p exceeds `budget` arcs.
inline constexpr std::uint64_t kMeasureBudget = 100'000'000;
double one_variable_measure(int p, int sigma, double side, const TorusInterval& interval,
                            std::uint64_t budget = kMeasureBudget);

enum class DensityMethod { exact_slice, monte_carlo };

struct DensityOptions {
  DensityMethod method = DensityMethod::monte_carlo;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double slice_step = 0.1;
};

struct DensityReport {
  double side = 0.0;
  double fraction = 0.0;
  double target = 0.0;
  bool target_is_lower_bound = false;  // odd p: 1 - 2^d eps
  DensityMethod method = DensityMethod::monte_carlo;
  bool fell_back = false;  // exact-slice requested for d >= 4
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  double std_error = 0.0;          // Monte Carlo
  double quadrature_error = 0.0;   // exact-slice, |I_h - I_2h|
  double tolerance = 0.0;
  bool pass = false;
};

/// Fraction of [-R/2, R/2]^d inside E. Exact-slice integrates
/// one_variable_measure over a midpoint grid in (x_2..x_d); Monte Carlo uses
/// per-block seeds. pass: |fraction - target| <= tolerance (even p) or
/// fraction >= target - tolerance (odd p), tolerance = 3 se + quadrature
/// error + 3/R.
DensityReport density(const AnnulusSpec& spec, double side, const DensityOptions& options);

/// Candidate copy {x + r k v : k in P}.
struct Placement {
  std::vector<double> x;
  std::vector<double> v;
  std::int64_t j = 1;
  double r = 1.0;

  /// Rescales v to unit l^p norm.
  static Placement make(std::vector<double> x, std::vector<double> v, int p, std::int64_t j,
                        double r);
};

/// (A + j)^{1/p}; requires A + j > 0.
long double annulus_scale(const Rational& leading, std::int64_t j, int p);

/// F(x + r k v) = leading k^p + sum_{l<p} b[l] k^l, with
/// b[l] = C(p, l) r^l sum_i sigma_i x_i^{p-l} v_i^l and sigma_i = sign(v_i)
/// (+1 for even p). `poly` is the same sequence mod 1 with the integer
/// j k^p and the constant b[0] dropped.
struct ReducedPolynomial {
  PolySeqSpec poly;
  std::vector<long double> b;  // b[0..p-1]
  long double leading = 0.0L;  // r^p sum sigma_i v_i^p
  long double leading_target = 0.0L;  // A + j
  double certificate_residual = 0.0;  // |leading - (A + j)|
  std::vector<int> signs;
};

ReducedPolynomial reduce_to_polynomial(const AnnulusSpec& spec, const Pattern& pattern,
                                       const Placement& place, const Rational& leading);

struct NoCopyOptions {
  std::vector<std::int64_t> j_list{1, 2, 3, 4, 5};
  std::uint64_t placements = 10'000;  // per j
  std::uint64_t seed = 0;
  /// eps the pattern was verified for; spec.epsilon below it is an error.
  std::optional<double> verified_epsilon;
};

struct NoCopyReport {
  std::uint64_t placements = 0;
  std::uint64_t violations = 0;  // copies fully inside E
  /// min over placements of max_k dist(F(y_k), Z) - (1 - eps)/2; a copy
  /// leaves E whenever this is >= 0.
  double worst_margin = 0.0;
  /// Placements whose reduced-polynomial gap is <= eps but whose direct
  /// evaluation found no point outside E (should be zero).
  std::uint64_t gap_inconsistencies = 0;
  double max_reduced_gap = 0.0;
  std::vector<std::int64_t> j_list;
  std::uint64_t seed = 0;
  std::optional<Placement> first_violation;
  bool pass = false;
};

/// Samples x uniform in [-10 r_j, 10 r_j]^d and v uniform on the l^p sphere
/// (generalized Gaussian, then normalized) and checks that no sampled copy
/// of P at scale r_j = (A + j)^{1/p} lies inside E. Evaluated in quad
/// precision.
NoCopyReport no_copy_check(const AnnulusSpec& spec, const Pattern& pattern, const Rational& leading,
                           const NoCopyOptions& options);

/// v uniform on the unit l^p sphere from a generalized Gaussian draw.
template <class Rng>
std::vector<double> sample_lp_direction(Rng& rng, int dim, double p);

}  // namespace obstruct

#include "obstruct/detail/lp_sampling.hpp"
