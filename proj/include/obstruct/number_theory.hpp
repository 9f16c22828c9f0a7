#pragma once

#include <cstdint>

namespace obstruct {

/// Deterministic Miller–Rabin, valid for every 64-bit n.
bool is_prime(std::uint64_t n);

/// Smallest prime strictly above n^(2^p). Requires n >= 2, p >= 1 and
/// n^(2^p) < 2^62 (InputError "parameter range" otherwise).
std::uint64_t bertrand_prime(std::uint64_t n, int p);

}  // namespace obstruct
