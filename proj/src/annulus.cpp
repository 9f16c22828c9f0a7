#include "obstruct/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "obstruct/errors.hpp"
#include "obstruct/parallel.hpp"
#include "obstruct/polynomial.hpp"
#include "obstruct/simd.hpp"

namespace obstruct {

namespace {

using quad = __float128;

constexpr std::size_t kDensityBlock = 4096;
constexpr std::size_t kPlacementBlock = 256;
constexpr long double kSliceBudget = 2e9L;

long double ipow(long double x, int p) {
  long double out = 1.0L;
  for (int i = 0; i < p; ++i) out *= x;
  return out;
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double frac(double t) { return t - std::floor(t); }

void check_p(int p) {
  if (p < 2) throw InputError("exponent p must be at least 2");
}

// Terms summed by increasing |t| (ties: by value), so the total depends only
// on the multiset of terms.
long double ordered_sum(std::vector<long double>& terms) {
  std::sort(terms.begin(), terms.end(), [](long double a, long double b) {
    const long double fa = std::fabs(a), fb = std::fabs(b);
    return fa != fb ? fa < fb : a < b;
  });
  long double s = 0.0L;
  for (const long double t : terms) s += t;
  return s;
}

double root(double y, int p) {
  switch (p) {
    case 2: return std::sqrt(y);
    case 3: return std::cbrt(y);
    case 4: return std::sqrt(std::sqrt(y));
    default: return std::pow(y, 1.0 / p);
  }
}

// Measure of {s in [0, T] : s^p mod 1 in [a, a + L)}, a in [0, 1), L in (0, 1).
long double positive_measure(int p, double t_max, double a, double len, std::uint64_t budget) {
  if (t_max <= 0.0) return 0.0L;
  const long double tp = ipow(t_max, p);
  if (tp > static_cast<long double>(budget))
    throw BudgetError("one-variable measure needs about " + std::to_string(static_cast<double>(tp)) +
                      " arcs, over the budget; use the Monte Carlo estimator");
  const auto m_max = static_cast<std::int64_t>(std::floor(tp - a));
  long double total = 0.0L;
  for (std::int64_t m = -1; m <= m_max; ++m) {
    const long double lo = static_cast<long double>(m) + a;
    const long double hi = lo + len;
    if (hi <= 0.0L) continue;
    if (lo <= 0.0L) {
      total += std::min(root(static_cast<double>(hi), p), t_max);
      continue;
    }
    const double ra = root(static_cast<double>(lo), p);
    if (ra >= t_max) break;
    const double rb = root(static_cast<double>(hi), p);
    if (rb <= t_max) {
      // rb - ra without cancellation: (rb^p - ra^p) / sum_j rb^j ra^(p-1-j), Horner in ra.
      double denom = 0.0, pb = 1.0;
      for (int j = 0; j < p; ++j) {
        denom = denom * ra + pb;
        pb *= rb;
      }
      total += len / denom;
    } else {
      total += t_max - ra;
    }
  }
  return total;
}

// Measure of {t in [-T, T] : sigma t^p mod 1 in [a, a + L)}.
long double signed_measure(int p, int sigma, double t_max, double a, double len,
                           std::uint64_t budget) {
  if (len >= 1.0) return 2.0L * t_max;
  auto half = [&](int s) {
    // s t^p in I  <=>  t^p in -I when s = -1.
    const double start = s > 0 ? a : frac(-a - len);
    return positive_measure(p, t_max, start, len, budget);
  };
  const int negative_sign = (p % 2 == 0) ? sigma : -sigma;
  return half(sigma) + half(negative_sign);
}

using Pieces = std::vector<std::pair<double, double>>;

Pieces arc_pieces(double start, double len) {
  const double s = frac(start);
  if (len >= 1.0) return {{0.0, 1.0}};
  if (s + len <= 1.0) return {{s, s + len}};
  return {{s, 1.0}, {0.0, s + len - 1.0}};
}

Pieces intersect(const Pieces& a, const Pieces& b) {
  Pieces out;
  for (const auto& [alo, ahi] : a)
    for (const auto& [blo, bhi] : b) {
      const double lo = std::max(alo, blo), hi = std::min(ahi, bhi);
      if (hi > lo) out.emplace_back(lo, hi);
    }
  return out;
}

// Measure of the slice {x_1 in [-T, T] : (x_1, y) in E}.
long double slice_measure(const AnnulusSpec& spec, std::span<const double> y, double t_max) {
  const double hw = spec.half_width();
  const double len = 1.0 - spec.epsilon;
  std::vector<long double> powers(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) powers[i] = ipow(y[i], spec.p);

  if (spec.parity == Parity::even) {
    long double c = 0.0L;
    for (const auto v : powers) c += v;
    return signed_measure(spec.p, 1, t_max, frac(static_cast<double>(-hw - c)), len, kMeasureBudget);
  }
  // x_1^p must lie in every arc E - c (sigma_1 = +1) and c - E (sigma_1 = -1).
  Pieces allowed{{0.0, 1.0}};
  const std::size_t rest = y.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest); ++mask) {
    long double c = 0.0L;
    for (std::size_t i = 0; i < rest; ++i) c += ((mask >> i) & 1) ? -powers[i] : powers[i];
    allowed = intersect(allowed, arc_pieces(static_cast<double>(-hw - c), len));
    allowed = intersect(allowed, arc_pieces(static_cast<double>(c - hw), len));
    if (allowed.empty()) return 0.0L;
  }
  long double total = 0.0L;
  for (const auto& [lo, hi] : allowed)
    total += signed_measure(spec.p, 1, t_max, lo, hi - lo, kMeasureBudget);
  return total;
}

// Midpoint rule over (x_2..x_d) with `cells` cells per axis; returns the fraction.
long double slice_fraction(const AnnulusSpec& spec, double side, std::uint64_t cells) {
  const double t_max = side / 2.0;
  const std::size_t rest = static_cast<std::size_t>(spec.dim - 1);
  const double h = side / static_cast<double>(cells);
  std::uint64_t slices = 1;
  for (std::size_t i = 0; i < rest; ++i) slices *= cells;

  std::vector<long double> per_row(cells, 0.0L);
  const std::uint64_t per_block = slices / cells;
  parallel_for_blocks(cells, [&](std::size_t row) {
    std::vector<double> y(rest);
    long double sum = 0.0L;
    for (std::uint64_t s = 0; s < per_block; ++s) {
      std::uint64_t idx = row * per_block + s;
      for (std::size_t i = 0; i < rest; ++i) {
        y[i] = -t_max + (static_cast<double>(idx % cells) + 0.5) * h;
        idx /= cells;
      }
      sum += slice_measure(spec, y, t_max);
    }
    per_row[row] = sum;
  });
  long double total = 0.0L;
  for (const auto v : per_row) total += v;
  return total * std::pow(static_cast<long double>(h), static_cast<long double>(rest)) /
         std::pow(static_cast<long double>(side), static_cast<long double>(spec.dim));
}

std::uint64_t monte_carlo_hits(const AnnulusSpec& spec, double side, std::uint64_t samples,
                               std::uint64_t seed) {
  const std::size_t dim = static_cast<std::size_t>(spec.dim);
  const std::size_t n_blocks = (samples + kDensityBlock - 1) / kDensityBlock;
  const double hw = spec.half_width();
  std::vector<std::uint64_t> per_block(n_blocks, 0);
  const std::uint64_t n_signs = spec.parity == Parity::even ? 1 : (std::uint64_t{1} << dim);

  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    std::mt19937_64 rng(derive_seed(seed, block));
    std::uniform_real_distribution<double> coord(-side / 2.0, side / 2.0);
    const std::size_t count = std::min<std::uint64_t>(kDensityBlock, samples - block * kDensityBlock);
    std::vector<double> coords(dim * count);
    // Point-major draws, stored coordinate-major.
    for (std::size_t j = 0; j < count; ++j)
      for (std::size_t i = 0; i < dim; ++i) coords[i * count + j] = coord(rng);
    std::vector<std::uint8_t> inside(count, 1);
    std::vector<double> signs(dim), dist(count);
    for (std::uint64_t mask = 0; mask < n_signs; ++mask) {
      for (std::size_t i = 0; i < dim; ++i) signs[i] = ((mask >> i) & 1) ? -1.0 : 1.0;
      simd::signed_power_distance(coords, dim, spec.p, signs, dist);
      for (std::size_t j = 0; j < count; ++j)
        if (!(dist[j] < hw)) inside[j] = 0;
    }
    std::uint64_t hits = 0;
    for (const auto v : inside) hits += v;
    per_block[block] = hits;
  });
  std::uint64_t total = 0;
  for (const auto h : per_block) total += h;
  return total;
}

// --- quad precision helpers for the no-copy check ---------------------------

quad qpow(quad x, int p) {
  quad out = 1;
  for (int i = 0; i < p; ++i) out *= x;
  return out;
}

quad qroot(quad y, int p) {
  quad x = std::pow(static_cast<double>(y), 1.0 / p);
  for (int it = 0; it < 4; ++it) x -= (qpow(x, p) - y) / (p * qpow(x, p - 1));
  return x;
}

quad qabs(quad x) { return x < 0 ? -x : x; }

// F mod 1 in [0, 1).
quad qfrac(quad f) {
  const quad limit = static_cast<quad>(std::ldexp(1.0, 90));
  if (qabs(f) >= limit) throw BudgetError("copy values exceed quad precision");
  const quad two60 = static_cast<quad>(std::ldexp(1.0, 60));
  const auto high = static_cast<std::int64_t>(f / two60);
  f -= static_cast<quad>(high) * two60;
  const auto whole = static_cast<std::int64_t>(f);
  quad r = f - static_cast<quad>(whole);
  if (r < 0) r += 1;
  if (r >= 1) r -= 1;
  return r;
}

quad qdist(quad f) {
  const quad r = qfrac(f);
  return r < static_cast<quad>(0.5) ? r : 1 - r;
}

std::uint64_t qraw(quad unit) {
  const quad scaled = unit * static_cast<quad>(kTwoPow64);
  if (scaled >= static_cast<quad>(kTwoPow64) || scaled < 0) return 0;
  return static_cast<std::uint64_t>(scaled);
}

struct PlacementStats {
  std::uint64_t placements = 0;
  std::uint64_t violations = 0;
  std::uint64_t inconsistencies = 0;
  double worst_margin = 0.0;
  double max_gap = 0.0;
  bool any = false;
  std::optional<Placement> first_violation;
};

}  // namespace

// ---------------------------------------------------------------------------

AnnulusSpec AnnulusSpec::make(int dim, int p, double epsilon) {
  if (dim < 1) throw InputError("dimension must be at least 1");
  check_p(p);
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw InputError("epsilon must lie in [0, 1)");
  AnnulusSpec s;
  s.dim = dim;
  s.p = p;
  s.epsilon = epsilon;
  s.parity = p % 2 == 0 ? Parity::even : Parity::odd;
  return s;
}

bool member(const AnnulusSpec& spec, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(spec.dim)) throw InputError("point has the wrong dimension");
  const long double hw = spec.half_width();
  std::vector<long double> powers(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw InputError("non-finite coordinate");
    powers[i] = ipow(x[i], spec.p);
  }
  auto inside = [hw](long double f) { return std::fabs(f - std::nearbyint(f)) < hw; };
  std::vector<long double> terms(x.size());
  if (spec.parity == Parity::even) {
    terms = powers;
    return inside(ordered_sum(terms));
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size()); ++mask) {
    for (std::size_t i = 0; i < x.size(); ++i) terms[i] = ((mask >> i) & 1) ? -powers[i] : powers[i];
    if (!inside(ordered_sum(terms))) return false;
  }
  return true;
}

double one_variable_measure(int p, int sigma, double side, const TorusInterval& interval,
                            std::uint64_t budget) {
  check_p(p);
  if (sigma != 1 && sigma != -1) throw InputError("sigma must be +1 or -1");
  if (!(side >= 1.0) || !std::isfinite(side)) throw InputError("R must be at least 1");
  return static_cast<double>(
      signed_measure(p, sigma, side / 2.0, interval.start(), interval.length(), budget));
}

DensityReport density(const AnnulusSpec& spec, double side, const DensityOptions& options) {
  if (!(side >= 1.0) || !std::isfinite(side)) throw InputError("R must be at least 1");
  DensityReport r;
  r.side = side;
  r.method = options.method;
  r.seed = options.seed;
  if (spec.parity == Parity::even) {
    r.target = 1.0 - spec.epsilon;
  } else {
    r.target = 1.0 - std::ldexp(spec.epsilon, spec.dim);
    r.target_is_lower_bound = true;
  }

  if (r.method == DensityMethod::exact_slice && spec.dim >= 4) {
    r.method = DensityMethod::monte_carlo;
    r.fell_back = true;
  }

  if (r.method == DensityMethod::exact_slice) {
    if (!(options.slice_step > 0.0)) throw InputError("slice step must be positive");
    if (spec.dim == 1) {
      r.fraction = static_cast<double>(slice_fraction(spec, side, 1));
    } else {
      auto cells = static_cast<std::uint64_t>(std::ceil(side / options.slice_step));
      cells += cells % 2;
      const long double work = std::pow(static_cast<long double>(cells), spec.dim - 1) *
                               (ipow(side / 2.0, spec.p) + 2.0L) * 1.5L;
      if (work > kSliceBudget)
        throw BudgetError("exact-slice density needs about " + std::to_string(static_cast<double>(work)) +
                          " arc evaluations; use --method mc");
      const long double fine = slice_fraction(spec, side, cells);
      const long double coarse = slice_fraction(spec, side, cells / 2);
      r.fraction = static_cast<double>(fine);
      r.quadrature_error = static_cast<double>(std::fabs(fine - coarse));
    }
  } else {
    if (options.samples < 1) throw InputError("need at least one sample");
    r.samples = options.samples;
    const std::uint64_t hits = monte_carlo_hits(spec, side, options.samples, options.seed);
    r.fraction = static_cast<double>(hits) / static_cast<double>(options.samples);
    r.std_error = std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(options.samples));
  }
  r.fraction = std::clamp(r.fraction, 0.0, 1.0);
  r.tolerance = 3.0 * r.std_error + r.quadrature_error + 3.0 / side;
  r.pass = r.target_is_lower_bound ? r.fraction >= r.target - r.tolerance
                                   : std::fabs(r.fraction - r.target) <= r.tolerance;
  return r;
}

// ---------------------------------------------------------------------------

Placement Placement::make(std::vector<double> x, std::vector<double> v, int p, std::int64_t j,
                          double r) {
  if (x.size() != v.size() || x.empty()) throw InputError("x and v must have the same positive dimension");
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("scale r must be positive");
  long double norm = 0.0L;
  for (const double c : v) norm += std::pow(std::fabs(static_cast<long double>(c)), p);
  if (!(norm > 0.0L)) throw InputError("direction must be nonzero");
  norm = std::pow(norm, 1.0L / p);
  for (auto& c : v) c = static_cast<double>(c / norm);
  Placement out;
  out.x = std::move(x);
  out.v = std::move(v);
  out.j = j;
  out.r = r;
  return out;
}

long double annulus_scale(const Rational& leading, std::int64_t j, int p) {
  const long double base = leading.to_long_double() + static_cast<long double>(j);
  if (!(base > 0.0L)) throw InputError("need A + j > 0");
  return std::pow(base, 1.0L / p);
}

ReducedPolynomial reduce_to_polynomial(const AnnulusSpec& spec, const Pattern& pattern,
                                       const Placement& place, const Rational& leading) {
  check_p(spec.p);
  if (pattern.size() == 0) throw InputError("empty pattern");
  const int p = spec.p;
  const std::size_t d = place.v.size();
  if (d != static_cast<std::size_t>(spec.dim) || place.x.size() != d)
    throw InputError("placement dimension does not match the set");
  long double norm = 0.0L;
  for (const double c : place.v) norm += std::pow(std::fabs(static_cast<long double>(c)), p);
  norm = std::pow(norm, 1.0L / p);
  if (std::fabs(norm - 1.0L) > 1e-12L)
    throw InputError("direction is not l^p-unit (norm " + std::to_string(static_cast<double>(norm)) + ")");

  ReducedPolynomial out{PolySeqSpec(p, TorusCoefficient::rational(leading)), {}, 0, 0, 0, {}};
  out.signs.resize(d, 1);
  if (spec.parity == Parity::odd)
    for (std::size_t i = 0; i < d; ++i) out.signs[i] = place.v[i] >= 0.0 ? 1 : -1;

  const long double r = place.r;
  out.b.assign(static_cast<std::size_t>(p), 0.0L);
  for (int l = 0; l < p; ++l) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < d; ++i)
      s += out.signs[i] * ipow(place.x[i], p - l) * ipow(place.v[i], l);
    out.b[static_cast<std::size_t>(l)] = binomial(p, l) * ipow(r, l) * s;
  }
  long double lead = 0.0L;
  for (std::size_t i = 0; i < d; ++i) lead += out.signs[i] * ipow(place.v[i], p);
  out.leading = ipow(r, p) * lead;
  out.leading_target = leading.to_long_double() + static_cast<long double>(place.j);
  out.certificate_residual = static_cast<double>(std::fabs(out.leading - out.leading_target));

  std::vector<TorusCoefficient> lower;
  for (int l = 1; l < p; ++l) lower.push_back(TorusCoefficient::real(out.b[static_cast<std::size_t>(l)]));
  out.poly = PolySeqSpec(p, TorusCoefficient::rational(leading), std::move(lower));
  return out;
}

NoCopyReport no_copy_check(const AnnulusSpec& spec, const Pattern& pattern, const Rational& leading,
                           const NoCopyOptions& options) {
  check_p(spec.p);
  if (pattern.size() == 0) throw InputError("empty pattern");
  if (leading.is_zero()) throw InputError("leading coefficient must be nonzero");
  if (options.verified_epsilon && spec.epsilon < *options.verified_epsilon)
    throw InputError("inconsistent epsilon: pattern verified for " +
                     std::to_string(*options.verified_epsilon) + " but the set uses " +
                     std::to_string(spec.epsilon));
  if (options.j_list.empty()) throw InputError("empty j list");
  for (const auto j : options.j_list) (void)annulus_scale(leading, j, spec.p);

  const int p = spec.p;
  const std::size_t d = static_cast<std::size_t>(spec.dim);
  const quad hw = (1 - static_cast<quad>(spec.epsilon)) / 2;
  const quad a_quad = static_cast<quad>(leading.num) / static_cast<quad>(leading.den);
  const auto a_coeff = TorusCoefficient::rational(leading);
  std::vector<std::uint64_t> lead_raw;
  for (const auto k : pattern.indices) lead_raw.push_back(a_coeff.term_raw(k, p));
  std::vector<double> binom(static_cast<std::size_t>(p) + 1);
  for (int l = 0; l <= p; ++l) binom[static_cast<std::size_t>(l)] = binomial(p, l);

  const std::size_t blocks_per_j = (options.placements + kPlacementBlock - 1) / kPlacementBlock;
  const std::size_t n_blocks = blocks_per_j * options.j_list.size();
  std::vector<PlacementStats> per_block(n_blocks);

  parallel_for_blocks(n_blocks, [&](std::size_t block) {
    const std::size_t ji = block / blocks_per_j;
    const std::size_t local = block % blocks_per_j;
    const std::int64_t j = options.j_list[ji];
    std::mt19937_64 rng(derive_seed(derive_seed(options.seed, ji), local));
    const quad r = qroot(a_quad + static_cast<quad>(j), p);
    const double r_double = static_cast<double>(r);
    std::uniform_real_distribution<double> base(-10.0 * r_double, 10.0 * r_double);
    const std::uint64_t begin = local * kPlacementBlock;
    const std::uint64_t end = std::min<std::uint64_t>(options.placements, begin + kPlacementBlock);

    PlacementStats& st = per_block[block];
    std::vector<quad> v(d), b(static_cast<std::size_t>(p));
    std::vector<int> signs(d, 1);
    std::vector<std::uint64_t> reduced(pattern.size());
    GapFinder finder(pattern.size());
    for (std::uint64_t s = begin; s < end; ++s) {
      std::vector<double> x(d);
      for (auto& c : x) c = base(rng);
      std::vector<double> v_double = sample_lp_direction(rng, spec.dim, p);

      quad norm = 0;
      for (std::size_t i = 0; i < d; ++i) norm += qpow(qabs(static_cast<quad>(v_double[i])), p);
      norm = qroot(norm, p);
      for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<quad>(v_double[i]) / norm;
        signs[i] = (spec.parity == Parity::odd && v_double[i] < 0.0) ? -1 : 1;
      }

      // Direct evaluation of F_sigma on the copy.
      quad best = -1;
      for (const auto k : pattern.indices) {
        quad f = 0;
        const quad rk = r * static_cast<quad>(k);
        for (std::size_t i = 0; i < d; ++i) f += signs[i] * qpow(static_cast<quad>(x[i]) + rk * v[i], p);
        const quad dist = qdist(f);
        if (dist > best) best = dist;
      }
      const double margin = static_cast<double>(best - hw);

      // Reduced polynomial: A k^p + sum_{l<p} b_l k^l mod 1.
      for (int l = 0; l < p; ++l) {
        quad sum = 0;
        for (std::size_t i = 0; i < d; ++i)
          sum += signs[i] * qpow(static_cast<quad>(x[i]), p - l) * qpow(v[i], l);
        b[static_cast<std::size_t>(l)] = static_cast<quad>(binom[static_cast<std::size_t>(l)]) * qpow(r, l) * sum;
      }
      for (std::size_t idx = 0; idx < pattern.size(); ++idx) {
        const quad kq = static_cast<quad>(pattern.indices[idx]);
        quad low = 0;
        quad kl = 1;
        for (int l = 0; l < p; ++l) {
          low += qfrac(b[static_cast<std::size_t>(l)] * kl);
          kl *= kq;
        }
        reduced[idx] = lead_raw[idx] + qraw(qfrac(low));
      }
      const double gap = static_cast<double>(finder.max_gap(reduced)) / kTwoPow64;

      bool violation = false;
      if (margin < 0.0) {
        violation = true;
        if (spec.parity == Parity::odd) {
          // Outside E_sigma failed for the sign rule; try every sign vector.
          for (const auto k : pattern.indices) {
            const quad rk = r * static_cast<quad>(k);
            std::vector<quad> pw(d);
            for (std::size_t i = 0; i < d; ++i) pw[i] = qpow(static_cast<quad>(x[i]) + rk * v[i], p);
            bool inside = true;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d) && inside; ++mask) {
              quad f = 0;
              for (std::size_t i = 0; i < d; ++i) f += ((mask >> i) & 1) ? -pw[i] : pw[i];
              if (!(qdist(f) < hw)) inside = false;
            }
            if (!inside) {
              violation = false;
              break;
            }
          }
        }
      }

      ++st.placements;
      if (violation) {
        ++st.violations;
        if (!st.first_violation) st.first_violation = Placement{x, v_double, j, r_double};
      }
      if (gap < spec.epsilon - 1e-12 && margin < 0.0) ++st.inconsistencies;
      if (!st.any || margin < st.worst_margin) st.worst_margin = margin;
      st.max_gap = std::max(st.max_gap, gap);
      st.any = true;
    }
  });

  NoCopyReport out;
  out.j_list = options.j_list;
  out.seed = options.seed;
  bool any = false;
  for (auto& st : per_block) {
    if (!st.any) continue;
    out.placements += st.placements;
    out.violations += st.violations;
    out.gap_inconsistencies += st.inconsistencies;
    if (!any || st.worst_margin < out.worst_margin) out.worst_margin = st.worst_margin;
    out.max_reduced_gap = std::max(out.max_reduced_gap, st.max_gap);
    if (!out.first_violation && st.first_violation) out.first_violation = st.first_violation;
    any = true;
  }
  out.pass = out.violations == 0 && out.gap_inconsistencies == 0;
  return out;
}

}  // namespace obstruct
