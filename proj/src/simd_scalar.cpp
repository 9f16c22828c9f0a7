#include <cmath>

#include "obstruct/simd.hpp"

namespace obstruct::simd::detail {

void multiply_accumulate_scalar(std::uint64_t* acc, const std::uint64_t* powers, std::size_t n,
                                std::uint64_t coeff) {
  for (std::size_t k = 0; k < n; ++k) acc[k] += coeff * powers[k];
}

void signed_power_distance_scalar(const double* coords, std::size_t count, std::size_t dim, int p,
                                  const double* signs, double* out) {
  for (std::size_t j = 0; j < count; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = coords[i * count + j];
      double power = x;
      for (int t = 1; t < p; ++t) power = power * x;
      acc = acc + signs[i] * power;
    }
    out[j] = std::fabs(acc - std::nearbyint(acc));
  }
}

}  // namespace obstruct::simd::detail
