#include "obstruct/number_theory.hpp"

#include <string>

#include "obstruct/errors.hpp"
#include "obstruct/torus.hpp"

namespace obstruct {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  // The first twelve primes as witnesses are deterministic below 3.3e24.
  constexpr std::uint64_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (const std::uint64_t p : kWitnesses) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (const std::uint64_t a : kWitnesses) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t bertrand_prime(std::uint64_t n, int p) {
  if (n < 2) throw InputError("bertrand_prime needs n >= 2");
  if (p < 1) throw InputError("bertrand_prime needs p >= 1");
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  // n^(2^p) by p squarings.
  std::uint64_t base = n;
  for (int i = 0; i < p; ++i) {
    if (base >= (std::uint64_t{1} << 31)) throw InputError("parameter range: n^(2^p) >= 2^62");
    base *= base;
    if (base >= kLimit) throw InputError("parameter range: n^(2^p) >= 2^62");
  }
  for (std::uint64_t candidate = base + 1; candidate < 2 * base; ++candidate) {
    if (is_prime(candidate)) return candidate;
  }
  throw InvariantError("no prime in (N, 2N) for N = " + std::to_string(base));
}

}  // namespace obstruct
