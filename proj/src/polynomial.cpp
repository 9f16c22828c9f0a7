#include "obstruct/polynomial.hpp"

#include <cmath>

#include "obstruct/errors.hpp"

namespace obstruct {

std::uint64_t rational_residue_raw(std::uint64_t r, std::uint64_t q) {
  // round(r 2^64 / q), computed on the nearer side of 0 so that the map
  // r -> q - r becomes exact negation mod 2^64.
  auto nearest = [q](std::uint64_t s) -> std::uint64_t {
    const u128 numerator = (static_cast<u128>(s) << 65) + q;
    return static_cast<std::uint64_t>(numerator / (static_cast<u128>(q) << 1));
  };
  if (r == 0) return 0;
  if (2 * static_cast<u128>(r) > q) return std::uint64_t{0} - nearest(q - r);
  return nearest(r);
}

std::uint64_t wrapping_power(std::int64_t k, int power) {
  std::uint64_t base = static_cast<std::uint64_t>(k);
  std::uint64_t out = 1;
  for (int i = 0; i < power; ++i) out *= base;
  return out;
}

std::uint64_t power_mod(std::int64_t k, int power, std::uint64_t q) {
  if (q == 0) throw InputError("power_mod with zero modulus");
  if (q == 1) return 0;
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t reduced = k % sq;
  if (reduced < 0) reduced += sq;
  u128 base = static_cast<u128>(reduced);
  u128 out = 1;
  for (int e = power; e > 0; e >>= 1) {
    if (e & 1) out = (out * base) % q;
    base = (base * base) % q;
  }
  return static_cast<std::uint64_t>(out % q);
}

// ---------------------------------------------------------------------------

TorusCoefficient TorusCoefficient::dyadic(std::uint64_t raw) {
  TorusCoefficient c;
  c.kind_ = Kind::dyadic;
  c.raw_ = raw;
  return c;
}

TorusCoefficient TorusCoefficient::rational(const Rational& r) {
  if (r.den <= 0) throw InputError("rational coefficient needs a positive denominator");
  TorusCoefficient c;
  c.kind_ = Kind::rational;
  c.rational_ = Rational::make(r.num, r.den);
  return c;
}

TorusCoefficient TorusCoefficient::real(long double value) {
  if (!std::isfinite(value)) throw InputError("real coefficient must be finite");
  TorusCoefficient c;
  c.kind_ = Kind::real;
  c.real_ = value;
  return c;
}

bool TorusCoefficient::is_zero() const noexcept {
  switch (kind_) {
    case Kind::dyadic: return raw_ == 0;
    case Kind::rational: return rational_.num == 0;
    case Kind::real: return real_ == 0.0L;
  }
  return false;
}

long double TorusCoefficient::approx() const noexcept {
  switch (kind_) {
    case Kind::dyadic: return static_cast<long double>(raw_) / static_cast<long double>(kTwoPow64);
    case Kind::rational: return rational_.to_long_double();
    case Kind::real: return real_;
  }
  return 0.0L;
}

TorusCoefficient TorusCoefficient::negated() const {
  switch (kind_) {
    case Kind::dyadic: return dyadic(std::uint64_t{0} - raw_);
    case Kind::rational: return rational(Rational{-rational_.num, rational_.den});
    case Kind::real: return real(-real_);
  }
  return *this;
}

std::uint64_t TorusCoefficient::term_raw(std::int64_t k, int power, std::int64_t multiplier) const {
  switch (kind_) {
    case Kind::dyadic:
      return raw_ * static_cast<std::uint64_t>(multiplier) * wrapping_power(k, power);
    case Kind::rational: {
      const auto q = static_cast<std::uint64_t>(rational_.den);
      const std::uint64_t kp = power_mod(k, power, q);
      const std::uint64_t a = power_mod(rational_.num, 1, q);
      const std::uint64_t m = power_mod(multiplier, 1, q);
      const auto r = static_cast<std::uint64_t>(
          (static_cast<u128>(static_cast<std::uint64_t>((static_cast<u128>(a) * m) % q)) * kp) % q);
      return rational_residue_raw(r, q);
    }
    case Kind::real: {
      const long double x = real_ * static_cast<long double>(multiplier) *
                            std::pow(static_cast<long double>(k), power);
      long double frac = x - std::floor(x);
      const long double scaled = std::nearbyint(std::ldexp(frac, 64));
      if (scaled >= static_cast<long double>(kTwoPow64) || scaled < 0.0L) return 0;
      return static_cast<std::uint64_t>(scaled);
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

TorusPolynomial::TorusPolynomial(std::vector<TorusCoefficient> coefficients)
    : coefficients_(std::move(coefficients)) {}

bool TorusPolynomial::is_exact() const noexcept {
  for (const auto& c : coefficients_)
    if (!c.is_exact()) return false;
  return true;
}

std::uint64_t TorusPolynomial::value_raw(std::int64_t k, std::int64_t multiplier) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const auto& c = coefficients_[i];
    if (c.is_zero()) continue;
    acc += c.term_raw(k, static_cast<int>(i), multiplier);
  }
  return acc;
}

TorusPoint TorusPolynomial::value(std::int64_t k) const {
  const std::uint64_t raw = value_raw(k);
  if (is_exact()) return TorusPoint::from_raw(raw);
  return TorusPoint::from_real(static_cast<double>(raw) / kTwoPow64);
}

TorusPolynomial TorusPolynomial::negated() const {
  std::vector<TorusCoefficient> out;
  out.reserve(coefficients_.size());
  for (const auto& c : coefficients_) out.push_back(c.negated());
  return TorusPolynomial(std::move(out));
}

}  // namespace obstruct
