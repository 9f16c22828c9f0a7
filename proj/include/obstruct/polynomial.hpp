#pragma once

#include <cstdint>
#include <vector>

#include "obstruct/rational.hpp"
#include "obstruct/torus.hpp"

namespace obstruct {

/// Coefficient of a polynomial read mod 1.
///
///  - dyadic:   u / 2^64, multiplied exactly with wrapping arithmetic;
///  - rational: a / q, reduced exactly mod q and rounded once to 2^-64;
///  - real:     long double, reduced with floating-point floor (inexact).
class TorusCoefficient {
 public:
  enum class Kind { dyadic, rational, real };

  TorusCoefficient() = default;

  static TorusCoefficient dyadic(std::uint64_t raw);
  static TorusCoefficient rational(const Rational& r);
  static TorusCoefficient real(long double value);

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ != Kind::real; }
  bool is_zero() const noexcept;

  std::uint64_t raw() const noexcept { return raw_; }
  const Rational& rational_value() const noexcept { return rational_; }
  long double real_value() const noexcept { return real_; }
  /// The coefficient as a real number (dyadic values in [0, 1)).
  long double approx() const noexcept;

  TorusCoefficient negated() const;

  /// (multiplier * c * k^power) mod 1, in units of 2^-64.
  std::uint64_t term_raw(std::int64_t k, int power, std::int64_t multiplier = 1) const;

 private:
  Kind kind_ = Kind::dyadic;
  std::uint64_t raw_ = 0;
  Rational rational_{};
  long double real_ = 0.0L;
};

/// Nearest multiple of 2^-64 to r/q, with r in [0, q). Symmetric under
/// r -> q - r so that negation stays exact.
std::uint64_t rational_residue_raw(std::uint64_t r, std::uint64_t q);

/// k^power mod 2^64 (two's complement for negative k).
std::uint64_t wrapping_power(std::int64_t k, int power);

/// (k^power) mod q for q >= 1.
std::uint64_t power_mod(std::int64_t k, int power, std::uint64_t q);

/// sum_i c_i k^i read mod 1.
class TorusPolynomial {
 public:
  TorusPolynomial() = default;
  /// coefficients[i] multiplies k^i.
  explicit TorusPolynomial(std::vector<TorusCoefficient> coefficients);

  int degree() const noexcept { return static_cast<int>(coefficients_.size()) - 1; }
  bool is_exact() const noexcept;
  const std::vector<TorusCoefficient>& coefficients() const noexcept { return coefficients_; }

  std::uint64_t value_raw(std::int64_t k, std::int64_t multiplier = 1) const;
  TorusPoint value(std::int64_t k) const;
  TorusPolynomial negated() const;

 private:
  std::vector<TorusCoefficient> coefficients_;
};

}  // namespace obstruct
