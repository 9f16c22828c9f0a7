#include <cstdlib>
#include <cstring>

#include "obstruct/errors.hpp"
#include "obstruct/simd.hpp"

namespace obstruct::simd {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend choose_backend() {
  if (const char* env = std::getenv("OBSTRUCT_SIMD"); env && std::strcmp(env, "scalar") == 0)
    return Backend::scalar;
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

void require(Backend backend) {
  if (!backend_available(backend))
    throw InputError(std::string("SIMD backend not available: ") +
                     std::string(backend_name(backend)));
}

}  // namespace

Backend active_backend() {
  static const Backend chosen = choose_backend();
  return chosen;
}

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2: return detail::avx2_compiled() && cpu_has_avx2();
  }
  return false;
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

void multiply_accumulate(std::span<std::uint64_t> acc, std::span<const std::uint64_t> powers,
                         std::uint64_t coeff, Backend backend) {
  if (acc.size() != powers.size()) throw InputError("multiply_accumulate: length mismatch");
  require(backend);
  if (backend == Backend::avx2)
    detail::multiply_accumulate_avx2(acc.data(), powers.data(), acc.size(), coeff);
  else
    detail::multiply_accumulate_scalar(acc.data(), powers.data(), acc.size(), coeff);
}

void signed_power_distance(std::span<const double> coords, std::size_t dim, int p,
                           std::span<const double> signs, std::span<double> out, Backend backend) {
  if (p < 1) throw InputError("signed_power_distance: exponent must be >= 1");
  if (signs.size() != dim) throw InputError("signed_power_distance: one sign per coordinate");
  if (coords.size() != dim * out.size())
    throw InputError("signed_power_distance: coordinate block has the wrong size");
  require(backend);
  if (backend == Backend::avx2)
    detail::signed_power_distance_avx2(coords.data(), out.size(), dim, p, signs.data(), out.data());
  else
    detail::signed_power_distance_scalar(coords.data(), out.size(), dim, p, signs.data(),
                                         out.data());
}

}  // namespace obstruct::simd
