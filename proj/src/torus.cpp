#include "obstruct/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "obstruct/errors.hpp"
#include "obstruct/polynomial.hpp"

namespace obstruct {

namespace {

constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

std::uint64_t raw_from_unit_real(double t) {
  // t in [0, 1); round to the nearest 2^-64, wrapping 1 to 0.
  const double scaled = std::nearbyint(std::ldexp(t, 64));
  if (scaled >= kTwoPow64) return 0;
  return static_cast<std::uint64_t>(scaled);
}

double raw_to_unit_real(std::uint64_t raw) {
  // Truncate to 53 bits so the result stays strictly below 1.
  return static_cast<double>(raw >> 11) * kTwoPowMinus53;
}

}  // namespace

TorusPoint TorusPoint::from_real(double t) {
  if (!std::isfinite(t)) throw InputError("torus point must be finite");
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  TorusPoint p;
  p.mode_ = Mode::real;
  p.real_ = r;
  return p;
}

TorusPoint TorusPoint::from_rational(const Rational& r) {
  if (r.den <= 0) throw InputError("rational with non-positive denominator");
  const auto den = static_cast<std::uint64_t>(r.den);
  std::int64_t residue = r.num % r.den;
  if (residue < 0) residue += r.den;
  return from_raw(rational_residue_raw(static_cast<std::uint64_t>(residue), den));
}

std::uint64_t TorusPoint::raw() const noexcept {
  return is_exact() ? raw_ : raw_from_unit_real(real_);
}

double TorusPoint::value() const noexcept {
  return is_exact() ? raw_to_unit_real(raw_) : real_;
}

TorusPoint TorusPoint::operator+(const TorusPoint& other) const {
  if (is_exact() && other.is_exact()) return from_raw(raw_ + other.raw_);
  return from_real(value() + other.value());
}

TorusPoint TorusPoint::operator-(const TorusPoint& other) const {
  if (is_exact() && other.is_exact()) return from_raw(raw_ - other.raw_);
  return from_real(value() - other.value());
}

TorusPoint TorusPoint::operator-() const {
  if (is_exact()) return from_raw(std::uint64_t{0} - raw_);
  return from_real(-real_);
}

TorusPoint TorusPoint::times(std::int64_t k) const {
  if (is_exact()) return from_raw(raw_ * static_cast<std::uint64_t>(k));
  const long double product = static_cast<long double>(real_) * static_cast<long double>(k);
  return from_real(static_cast<double>(product - std::floor(product)));
}

double torus_norm(const TorusPoint& x) {
  const std::uint64_t raw = x.raw();
  const std::uint64_t folded = std::min(raw, std::uint64_t{0} - raw);
  return static_cast<double>(folded) / kTwoPow64;
}

std::vector<TorusPoint> points_from_raw(std::span<const std::uint64_t> raw) {
  std::vector<TorusPoint> out;
  out.reserve(raw.size());
  for (auto r : raw) out.push_back(TorusPoint::from_raw(r));
  return out;
}

std::vector<std::uint64_t> raw_positions(std::span<const TorusPoint> points) {
  std::vector<std::uint64_t> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.raw());
  return out;
}

// ---------------------------------------------------------------------------
// Intervals

TorusInterval TorusInterval::make(const TorusPoint& start, double length, Closure closure) {
  if (!(length > 0.0)) throw InputError("torus interval length must be positive");
  u128 length_raw = kTurn;
  if (length < 1.0) {
    length_raw = static_cast<u128>(std::nearbyint(std::ldexp(length, 64)));
    length_raw = std::clamp<u128>(length_raw, 1, kTurn);
  }
  return from_raw(start.raw(), length_raw, closure);
}

TorusInterval TorusInterval::from_raw(std::uint64_t start_raw, u128 length_raw, Closure closure) {
  if (length_raw == 0 || length_raw > kTurn) throw InputError("torus interval length out of (0, 1]");
  TorusInterval out;
  out.start_ = start_raw;
  out.length_ = length_raw;
  out.closure_ = closure;
  return out;
}

double TorusInterval::length() const noexcept {
  return static_cast<double>(length_) / kTwoPow64;
}

// ---------------------------------------------------------------------------
// Gaps

void GapFinder::reserve(std::size_t n) {
  if (lo_.size() < n) {
    lo_.resize(n);
    hi_.resize(n);
    used_.resize(n);
  }
}

u128 GapFinder::max_gap(std::span<const std::uint64_t> raw) {
  const std::size_t n = raw.size();
  if (n == 0) throw InputError("empty point set");
  if (n == 1) return kTurn;
  reserve(n);
  std::fill_n(used_.begin(), n, std::uint8_t{0});

  // Bucket b holds [b 2^64 / n, (b+1) 2^64 / n). The mean gap is 2^64 / n, so
  // the largest gap is never inside a bucket.
  for (const std::uint64_t x : raw) {
    const auto b = static_cast<std::size_t>((static_cast<u128>(x) * n) >> 64);
    if (!used_[b]) {
      used_[b] = 1;
      lo_[b] = hi_[b] = x;
    } else {
      lo_[b] = std::min(lo_[b], x);
      hi_[b] = std::max(hi_[b], x);
    }
  }

  std::size_t first = 0;
  while (!used_[first]) ++first;
  u128 best = 0;
  std::uint64_t prev_hi = hi_[first];
  std::size_t last = first;
  for (std::size_t b = first + 1; b < n; ++b) {
    if (!used_[b]) continue;
    best = std::max<u128>(best, lo_[b] - prev_hi);
    prev_hi = hi_[b];
    last = b;
  }
  const u128 wrap = kTurn - hi_[last] + lo_[first];
  return std::max(best, wrap);
}

u128 max_circular_gap_raw(std::span<const std::uint64_t> raw) {
  GapFinder finder(raw.size());
  return finder.max_gap(raw);
}

double max_circular_gap(std::span<const TorusPoint> points) {
  if (points.empty()) throw InputError("empty point set");
  const auto raw = raw_positions(points);
  return static_cast<double>(max_circular_gap_raw(raw)) / kTwoPow64;
}

// ---------------------------------------------------------------------------
// Discrepancy

DiscrepancyReport exact_discrepancy(std::span<const TorusPoint> points, std::size_t cap) {
  const std::size_t n = points.size();
  if (n == 0) throw InputError("empty point set");
  if (n > cap) {
    throw BudgetError("exact discrepancy: " + std::to_string(n) + " points exceed the cap of " +
                      std::to_string(cap) + "; use the grid estimator");
  }

  auto raw = raw_positions(points);
  std::sort(raw.begin(), raw.end());

  // Over sorted distinct positions y_j with cumulative counts S_j, every arc
  // value is F(j) - G(i) with F(j) = S_j/N - y_j and G(i) = S_{i-1}/N - y_i,
  // and every residue pair (i, j) is realisable by a closed arc from y_i
  // forward to y_j. Scaled by N 2^64 everything is an exact integer.
  const auto big_n = static_cast<i128>(n);
  i128 best_f = 0, best_g = 0;
  std::uint64_t best_f_pos = 0, best_g_pos = 0;
  bool have = false;
  std::size_t cumulative = 0;
  for (std::size_t idx = 0; idx < n;) {
    const std::uint64_t y = raw[idx];
    std::size_t next = idx;
    while (next < n && raw[next] == y) ++next;
    const i128 before = static_cast<i128>(cumulative) << 64;
    cumulative += next - idx;
    const i128 after = static_cast<i128>(cumulative) << 64;
    const i128 scaled_y = big_n * static_cast<i128>(y);
    const i128 f = after - scaled_y;
    const i128 g = before - scaled_y;
    if (!have || f > best_f) {
      best_f = f;
      best_f_pos = y;
    }
    if (!have || g < best_g) {
      best_g = g;
      best_g_pos = y;
    }
    have = true;
    idx = next;
  }

  DiscrepancyReport report;
  report.n_points = n;
  const i128 scaled = best_f - best_g;
  report.exact_discrepancy = static_cast<double>(static_cast<long double>(scaled) /
                                                 (static_cast<long double>(n) * kTwoPow64));
  const std::uint64_t length = best_f_pos - best_g_pos;
  if (length == 0) {
    // A vanishing closed arc around the point mass; approached by [y, y + 2^-64).
    report.witness = TorusInterval::from_raw(best_g_pos, 1, Closure::half_open);
    report.witness_attained = false;
  } else {
    report.witness = TorusInterval::from_raw(best_g_pos, length, Closure::closed);
    report.witness_attained = true;
  }
  return report;
}

DiscrepancyReport grid_discrepancy(std::span<const TorusPoint> points, std::uint32_t grid) {
  const std::size_t n = points.size();
  if (n == 0) throw InputError("empty point set");
  if (grid == 0) throw InputError("grid resolution must be positive");
  auto raw = raw_positions(points);
  std::sort(raw.begin(), raw.end());

  auto count_below = [&](u128 x, bool inclusive) -> std::size_t {
    // Points with position < x (or <= x), for x in [0, 2^64].
    if (x >= kTurn) return n;
    const auto bound = static_cast<std::uint64_t>(x);
    auto it = inclusive ? std::upper_bound(raw.begin(), raw.end(), bound)
                        : std::lower_bound(raw.begin(), raw.end(), bound);
    return static_cast<std::size_t>(it - raw.begin());
  };

  DiscrepancyReport report;
  report.n_points = n;
  report.exact = false;
  double best = -1.0;
  for (std::uint32_t s = 0; s < grid; ++s) {
    const u128 start = (static_cast<u128>(s) << 64) / grid;
    for (std::uint32_t l = 1; l <= grid; ++l) {
      const u128 len = (static_cast<u128>(l) << 64) / grid;
      for (const Closure closure : {Closure::closed, Closure::half_open}) {
        const bool inclusive = closure == Closure::closed;
        const u128 end = start + len;
        std::size_t count;
        if (len >= kTurn) {
          count = n;
        } else if (end <= kTurn) {
          count = count_below(end, inclusive) - count_below(start, false);
          if (end == kTurn && inclusive) count += count_below(0, true);
        } else {
          count = (n - count_below(start, false)) + count_below(end - kTurn, inclusive);
        }
        const double value = std::abs(static_cast<double>(count) / static_cast<double>(n) -
                                      static_cast<double>(l) / grid);
        if (value > best) {
          best = value;
          report.witness = TorusInterval::from_raw(static_cast<std::uint64_t>(start),
                                                   std::min(len, kTurn), closure);
        }
      }
    }
  }
  report.exact_discrepancy = best;
  report.witness_attained = true;
  return report;
}

// ---------------------------------------------------------------------------
// Exponential sums

std::complex<double> unit_phase(std::uint64_t raw) {
  constexpr std::uint64_t kHalf = std::uint64_t{1} << 63;
  if (raw == 0) return {1.0, 0.0};
  if (raw == kHalf) return {-1.0, 0.0};
  const auto centered = static_cast<std::int64_t>(raw);
  const double t = static_cast<double>(centered) / kTwoPow64;
  const double angle = 2.0 * std::numbers::pi * std::abs(t);
  const double s = std::sin(angle);
  return {std::cos(angle), centered < 0 ? -s : s};
}

std::complex<double> normalized_exponential_sum(std::span<const std::uint64_t> raw,
                                                std::int64_t m) {
  if (raw.empty()) throw InputError("empty point set");
  long double re = 0.0L, im = 0.0L;
  const auto mult = static_cast<std::uint64_t>(m);
  for (const std::uint64_t x : raw) {
    const auto z = unit_phase(x * mult);
    re += z.real();
    im += z.imag();
  }
  const auto n = static_cast<long double>(raw.size());
  return {static_cast<double>(re / n), static_cast<double>(im / n)};
}

std::complex<double> weyl_sum(const TorusPolynomial& f, std::int64_t n_terms,
                              std::int64_t multiplier) {
  if (n_terms < 1) throw InputError("weyl_sum needs N >= 1");
  if (multiplier < 1) throw InputError("weyl_sum needs a positive multiplier");
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t k = 0; k < n_terms; ++k) {
    const auto z = unit_phase(f.value_raw(k, multiplier));
    re += z.real();
    im += z.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

double erdos_turan_bound(std::span<const TorusPoint> points, std::int64_t cutoff) {
  if (points.empty()) throw InputError("empty point set");
  if (cutoff < 1) throw InputError("Erdős–Turán cutoff must be >= 1");
  const auto raw = raw_positions(points);
  long double sum = 0.0L;
  for (std::int64_t m = 1; m <= cutoff; ++m) {
    sum += std::abs(normalized_exponential_sum(raw, m)) / static_cast<long double>(m);
  }
  return static_cast<double>(1.0L / static_cast<long double>(cutoff + 1) + 3.0L * sum);
}

DiscrepancyReport discrepancy_with_bound(std::span<const TorusPoint> points, std::int64_t cutoff,
                                         std::size_t cap) {
  auto report = exact_discrepancy(points, cap);
  report.et_bound = erdos_turan_bound(points, cutoff);
  report.et_cutoff = cutoff;
  return report;
}

}  // namespace obstruct
