#include "obstruct/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define OBSTRUCT_HAVE_AVX2_KERNELS 1
#endif

namespace obstruct::simd::detail {

#ifdef OBSTRUCT_HAVE_AVX2_KERNELS

bool avx2_compiled() { return true; }

namespace {

// Low 64 bits of a 64x64 product from three 32x32 -> 64 multiplies.
__attribute__((target("avx2"))) inline __m256i mul_lo_u64(__m256i a, __m256i b) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i lo_lo = _mm256_mul_epu32(a, b);
  const __m256i hi_lo = _mm256_mul_epu32(a_hi, b);
  const __m256i lo_hi = _mm256_mul_epu32(a, b_hi);
  const __m256i cross = _mm256_slli_epi64(_mm256_add_epi64(hi_lo, lo_hi), 32);
  return _mm256_add_epi64(lo_lo, cross);
}

}  // namespace

__attribute__((target("avx2"))) void multiply_accumulate_avx2(std::uint64_t* acc,
                                                               const std::uint64_t* powers,
                                                               std::size_t n,
                                                               std::uint64_t coeff) {
  const __m256i c = _mm256_set1_epi64x(static_cast<long long>(coeff));
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256i pw = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(powers + k));
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + k));
    a = _mm256_add_epi64(a, mul_lo_u64(pw, c));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + k), a);
  }
  for (; k < n; ++k) acc[k] += coeff * powers[k];
}

__attribute__((target("avx2"))) void signed_power_distance_avx2(const double* coords,
                                                                 std::size_t count,
                                                                 std::size_t dim, int p,
                                                                 const double* signs,
                                                                 double* out) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  std::size_t j = 0;
  for (; j + 4 <= count; j += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < dim; ++i) {
      const __m256d x = _mm256_loadu_pd(coords + i * count + j);
      __m256d power = x;
      for (int t = 1; t < p; ++t) power = _mm256_mul_pd(power, x);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(signs[i]), power));
    }
    const __m256d nearest = _mm256_round_pd(acc, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    _mm256_storeu_pd(out + j, _mm256_andnot_pd(sign_mask, _mm256_sub_pd(acc, nearest)));
  }
  if (j < count) {
    // Tail through the reference loop, one point at a time.
    for (; j < count; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        const double x = coords[i * count + j];
        double power = x;
        for (int t = 1; t < p; ++t) power = power * x;
        acc = acc + signs[i] * power;
      }
      const double r = acc - __builtin_nearbyint(acc);
      out[j] = r < 0 ? -r : r;
    }
  }
}

#else

bool avx2_compiled() { return false; }

void multiply_accumulate_avx2(std::uint64_t* acc, const std::uint64_t* powers, std::size_t n,
                              std::uint64_t coeff) {
  multiply_accumulate_scalar(acc, powers, n, coeff);
}

void signed_power_distance_avx2(const double* coords, std::size_t count, std::size_t dim, int p,
                                const double* signs, double* out) {
  signed_power_distance_scalar(coords, count, dim, p, signs, out);
}

#endif

}  // namespace obstruct::simd::detail
