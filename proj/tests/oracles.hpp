#pragma once

// Slow, independent reference computations. Nothing here calls into the
// library except for plain data types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using u128 = unsigned __int128;
using i128 = __int128;
using quad = __float128;

inline constexpr u128 kTurn = u128{1} << 64;

// x mod 1 for |x| < 2^126.
inline quad frac(quad x) {
  i128 whole = static_cast<i128>(x);
  if (static_cast<quad>(whole) > x) --whole;
  return x - static_cast<quad>(whole);
}

// Every arc with endpoints at point positions: closed arcs for the excess,
// open arcs for the deficit. O(N^3) counting.
inline double discrepancy(const std::vector<std::uint64_t>& raw) {
  std::vector<std::uint64_t> pos = raw;
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  const i128 n = static_cast<i128>(raw.size());
  i128 best = 0;  // in units of 1 / (N 2^64)
  for (const auto a : pos) {
    for (const auto b : pos) {
      const u128 len = static_cast<std::uint64_t>(b - a);
      i128 closed = 0, open = 0;
      const u128 open_len = a == b ? kTurn : len;
      for (const auto x : raw) {
        const u128 off = static_cast<std::uint64_t>(x - a);
        if (off <= len) ++closed;
        if (off > 0 && off < open_len) ++open;
      }
      const i128 excess = closed * static_cast<i128>(kTurn) - n * static_cast<i128>(len);
      const i128 deficit = n * static_cast<i128>(open_len) - open * static_cast<i128>(kTurn);
      best = std::max({best, excess, deficit});
    }
  }
  return static_cast<double>(static_cast<long double>(best) / static_cast<long double>(n) /
                             18446744073709551616.0L);
}

// Arcs [s/G, (s+l)/G] for s in [0, G), l in [1, G], closed and half-open,
// with membership decided exactly.
inline double grid_discrepancy(const std::vector<std::uint64_t>& raw, unsigned g) {
  const double n = static_cast<double>(raw.size());
  const u128 modulus = static_cast<u128>(g) * kTurn;
  double best = 0.0;
  for (unsigned s = 0; s < g; ++s) {
    std::vector<u128> offsets;
    offsets.reserve(raw.size());
    for (const auto x : raw) {
      const u128 scaled = static_cast<u128>(g) * x;
      const u128 start = static_cast<u128>(s) * kTurn;
      offsets.push_back(scaled >= start ? scaled - start : scaled + modulus - start);
    }
    for (unsigned l = 1; l <= g; ++l) {
      const u128 end = static_cast<u128>(l) * kTurn;
      int closed = 0, half = 0;
      for (const auto off : offsets) {
        closed += off <= end;
        half += off < end;
      }
      const double len = static_cast<double>(l) / g;
      best = std::max({best, std::fabs(closed / n - len), std::fabs(half / n - len)});
    }
  }
  return best;
}

// Sort-based gap, in raw units.
inline u128 max_gap(std::vector<std::uint64_t> raw) {
  std::sort(raw.begin(), raw.end());
  u128 best = static_cast<u128>(raw.front()) + kTurn - raw.back();
  for (std::size_t i = 1; i < raw.size(); ++i) best = std::max<u128>(best, raw[i] - raw[i - 1]);
  return best;
}

inline double max_gap_value(const std::vector<std::uint64_t>& raw) {
  return static_cast<double>(static_cast<long double>(max_gap(raw)) / 18446744073709551616.0L);
}

inline std::vector<bool> sieve(std::uint64_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) prime[j] = false;
  return prime;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

// sum_k e(m a k^2 / q) with the exponent reduced mod q in integers.
inline std::complex<double> gauss_sum(std::int64_t a, std::int64_t q, std::int64_t terms,
                                      std::int64_t m = 1) {
  long double re = 0.0L, im = 0.0L;
  for (std::int64_t k = 0; k < terms; ++k) {
    const i128 r = (static_cast<i128>(m) * a % q * (k % q) % q * (k % q)) % q;
    const long double phase =
        2.0L * std::numbers::pi_v<long double> * static_cast<long double>((r + q) % q) / q;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// 1/(M+1) + 3 sum_m |S_m| / m with the phases in long double.
inline double erdos_turan(const std::vector<std::uint64_t>& raw, std::int64_t cutoff) {
  long double total = 1.0L / (cutoff + 1);
  for (std::int64_t m = 1; m <= cutoff; ++m) {
    long double re = 0.0L, im = 0.0L;
    for (const auto x : raw) {
      const std::uint64_t t = x * static_cast<std::uint64_t>(m);
      const long double phase = 2.0L * std::numbers::pi_v<long double> * t / 18446744073709551616.0L;
      re += std::cos(phase);
      im += std::sin(phase);
    }
    total += 3.0L * std::hypot(re, im) / raw.size() / m;
  }
  return static_cast<double>(total);
}

// (a k^p / q + sum_i b_i k^i / 2^64) mod 1 in quad precision.
inline quad poly_value_quad(std::int64_t a, std::int64_t q, int p, const std::vector<std::uint64_t>& b,
                            std::int64_t k) {
  quad kp = 1;
  for (int i = 0; i < p; ++i) kp *= static_cast<quad>(k);
  quad v = static_cast<quad>(a) * kp / static_cast<quad>(q);
  quad ki = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    ki *= static_cast<quad>(k);
    v += static_cast<quad>(b[i]) / static_cast<quad>(kTurn) * ki;
  }
  return frac(v);
}

inline double torus_distance(quad a, quad b) {
  const quad d = frac(a - b);
  return static_cast<double>(d < static_cast<quad>(0.5) ? d : 1 - d);
}

// Lebesgue measure estimate of {t in [-R/2, R/2] : sigma t^p mod 1 in [a, a + len)}.
inline double measure_monte_carlo(int p, int sigma, double side, double a, double len,
                                  std::uint64_t samples, std::uint64_t seed, double* std_error) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t(-side / 2, side / 2);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const long double x = t(rng);
    long double y = sigma * std::pow(x, p);
    y -= std::floor(y);
    long double off = y - a;
    off -= std::floor(off);
    hits += off < len;
  }
  const double f = static_cast<double>(hits) / samples;
  if (std_error) *std_error = side * std::sqrt(f * (1 - f) / samples);
  return side * f;
}

inline long double ipow(long double x, int p) {
  long double r = 1.0L;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// sum_i sigma_i (x_i + r k v_i)^p.
inline long double signed_power_sum(const std::vector<double>& x, const std::vector<double>& v,
                                    const std::vector<int>& sigma, long double r, long double k,
                                    int p) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) s += sigma[i] * ipow(x[i] + r * k * v[i], p);
  return s;
}

}  // namespace oracle
