#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and an AVX2 variant; the variants are bit-identical to the
// reference (integer kernels trivially, floating-point kernels because both
// perform the same IEEE operations in the same order, without contraction).
namespace obstruct::simd {

enum class Backend { scalar, avx2 };

/// Backend used by the overloads without an explicit backend. Chosen once at
/// first use: AVX2 when the CPU supports it, unless OBSTRUCT_SIMD=scalar.
Backend active_backend();
bool backend_available(Backend backend);
std::string_view backend_name(Backend backend);

/// acc[k] += coeff * powers[k]  (mod 2^64).
void multiply_accumulate(std::span<std::uint64_t> acc, std::span<const std::uint64_t> powers,
                         std::uint64_t coeff, Backend backend);
inline void multiply_accumulate(std::span<std::uint64_t> acc,
                                std::span<const std::uint64_t> powers, std::uint64_t coeff) {
  multiply_accumulate(acc, powers, coeff, active_backend());
}

/// For `count` points stored coordinate-major (coords[i * count + j] is
/// coordinate i of point j):
///   out[j] = dist( sum_i signs[i] * coords[i][j]^p , Z ),
/// with x^p evaluated as ((x * x) * x) ... and the sum taken in coordinate order.
void signed_power_distance(std::span<const double> coords, std::size_t dim, int p,
                           std::span<const double> signs, std::span<double> out, Backend backend);
inline void signed_power_distance(std::span<const double> coords, std::size_t dim, int p,
                                  std::span<const double> signs, std::span<double> out) {
  signed_power_distance(coords, dim, p, signs, out, active_backend());
}

namespace detail {
void multiply_accumulate_scalar(std::uint64_t* acc, const std::uint64_t* powers, std::size_t n,
                                std::uint64_t coeff);
void signed_power_distance_scalar(const double* coords, std::size_t count, std::size_t dim, int p,
                                  const double* signs, double* out);
bool avx2_compiled();
void multiply_accumulate_avx2(std::uint64_t* acc, const std::uint64_t* powers, std::size_t n,
                              std::uint64_t coeff);
void signed_power_distance_avx2(const double* coords, std::size_t count, std::size_t dim, int p,
                                const double* signs, double* out);
}  // namespace detail

}  // namespace obstruct::simd
