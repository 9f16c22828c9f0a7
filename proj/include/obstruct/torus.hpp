#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "obstruct/rational.hpp"

namespace obstruct {

using u128 = unsigned __int128;
using i128 = __int128;

/// One full turn of the torus in raw units (raw positions are u / 2^64).
inline constexpr u128 kTurn = u128{1} << 64;
inline constexpr double kTwoPow64 = 18446744073709551616.0;

/// Point of T = R/Z.
///
/// Exact mode stores u / 2^64 and all arithmetic is wrapping u64 arithmetic,
/// so sums, integer multiples and reductions mod 1 are bit-exact. Float mode
/// stores a double in [0, 1); mixing the two produces a float-mode result.
class TorusPoint {
 public:
  enum class Mode { exact, real };

  constexpr TorusPoint() = default;

  static constexpr TorusPoint from_raw(std::uint64_t raw) noexcept { return TorusPoint(raw); }
  /// Float mode, t reduced mod 1.
  static TorusPoint from_real(double t);
  /// Exact mode; the nearest multiple of 2^-64 to r mod 1.
  static TorusPoint from_rational(const Rational& r);

  Mode mode() const noexcept { return mode_; }
  bool is_exact() const noexcept { return mode_ == Mode::exact; }

  /// Position in units of 2^-64 (float mode is rounded to the nearest unit).
  std::uint64_t raw() const noexcept;
  /// Position in [0, 1).
  double value() const noexcept;

  TorusPoint operator+(const TorusPoint& other) const;
  TorusPoint operator-(const TorusPoint& other) const;
  TorusPoint operator-() const;
  TorusPoint times(std::int64_t k) const;

  friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
    return a.mode_ == b.mode_ && (a.is_exact() ? a.raw_ == b.raw_ : a.real_ == b.real_);
  }

 private:
  constexpr explicit TorusPoint(std::uint64_t raw) noexcept : raw_(raw) {}

  std::uint64_t raw_ = 0;
  double real_ = 0.0;
  Mode mode_ = Mode::exact;
};

/// Arclength distance to the nearest integer, ||x||.
double torus_norm(const TorusPoint& x);

std::vector<TorusPoint> points_from_raw(std::span<const std::uint64_t> raw);
std::vector<std::uint64_t> raw_positions(std::span<const TorusPoint> points);

enum class Closure { closed, half_open };

/// Arc of T starting at `start` and running forward for `length` in (0, 1].
/// Membership: (x - start) mod 1 < length (half-open) or <= length (closed).
class TorusInterval {
 public:
  TorusInterval() = default;

  /// Lengths >= 1 are clamped to the full circle.
  static TorusInterval make(const TorusPoint& start, double length, Closure closure);
  /// length_raw in [1, 2^64].
  static TorusInterval from_raw(std::uint64_t start_raw, u128 length_raw, Closure closure);

  std::uint64_t start_raw() const noexcept { return start_; }
  u128 length_raw() const noexcept { return length_; }
  double start() const noexcept { return static_cast<double>(start_) / kTwoPow64; }
  double length() const noexcept;
  Closure closure() const noexcept { return closure_; }

  bool contains(const TorusPoint& x) const noexcept { return contains_raw(x.raw()); }
  bool contains_raw(std::uint64_t x) const noexcept {
    const u128 offset = static_cast<std::uint64_t>(x - start_);
    return closure_ == Closure::closed ? offset <= length_ : offset < length_;
  }

 private:
  std::uint64_t start_ = 0;
  u128 length_ = kTurn;
  Closure closure_ = Closure::half_open;
};

/// Largest arc between cyclically consecutive points, in raw units
/// (2^64 when all points coincide). Linear time, exact.
class GapFinder {
 public:
  explicit GapFinder(std::size_t n = 0) { reserve(n); }
  void reserve(std::size_t n);
  u128 max_gap(std::span<const std::uint64_t> raw);

 private:
  std::vector<std::uint64_t> lo_;
  std::vector<std::uint64_t> hi_;
  std::vector<std::uint8_t> used_;
};

/// Throws InputError("empty point set") on empty input.
u128 max_circular_gap_raw(std::span<const std::uint64_t> raw);
double max_circular_gap(std::span<const TorusPoint> points);

inline constexpr std::size_t kDefaultDiscrepancyCap = 100000;

struct DiscrepancyReport {
  std::size_t n_points = 0;
  double exact_discrepancy = 0.0;
  TorusInterval witness;
  /// False when the supremum is only approached (vanishing interval).
  bool witness_attained = true;
  /// False for the grid estimator.
  bool exact = true;
  std::optional<double> et_bound;
  std::int64_t et_cutoff = 0;
};

/// sup over arcs I of |#{x in I}/N - |I||, exact. Errors on empty input or
/// N above `cap`.
DiscrepancyReport exact_discrepancy(std::span<const TorusPoint> points,
                                    std::size_t cap = kDefaultDiscrepancyCap);

/// Lower estimate of the discrepancy from grid arcs [s/G, (s+l)/G] for all
/// s, l in [0, G), both closures. For point sets above the exact cap.
DiscrepancyReport grid_discrepancy(std::span<const TorusPoint> points, std::uint32_t grid);

/// e(raw / 2^64). Exactly conjugate-symmetric: unit_phase(-raw) == conj(unit_phase(raw)).
std::complex<double> unit_phase(std::uint64_t raw);

/// (1/N) sum_k e(m x_k).
std::complex<double> normalized_exponential_sum(std::span<const std::uint64_t> raw,
                                                std::int64_t m);

class TorusPolynomial;

/// sum_{k=0}^{N-1} e(m f(k)). Exact-mode polynomials are reduced mod 1
/// before exponentiation.
std::complex<double> weyl_sum(const TorusPolynomial& f, std::int64_t n_terms,
                              std::int64_t multiplier);

/// 1/(M+1) + 3 sum_{m=1}^{M} (1/m) |(1/N) sum_k e(m x_k)|, an upper bound on
/// the discrepancy.
double erdos_turan_bound(std::span<const TorusPoint> points, std::int64_t cutoff);

/// exact_discrepancy plus the Erdős–Turán bound at the given cutoff.
DiscrepancyReport discrepancy_with_bound(std::span<const TorusPoint> points, std::int64_t cutoff,
                                         std::size_t cap = kDefaultDiscrepancyCap);

}  // namespace obstruct
