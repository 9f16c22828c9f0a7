#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "obstruct/errors.hpp"
#include "obstruct/parallel.hpp"
#include "obstruct/simd.hpp"

using namespace obstruct;

namespace {

double reference_distance(const std::vector<double>& coords, std::size_t count, std::size_t dim,
                          int p, const std::vector<double>& signs, std::size_t j) {
  double f = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = coords[i * count + j];
    double xp = x;
    for (int e = 1; e < p; ++e) xp = xp * x;
    f = f + signs[i] * xp;
  }
  const double r = f - std::floor(f);
  return std::min(r, 1.0 - r);
}

}  // namespace

TEST_CASE("multiply-accumulate matches a plain loop on every backend") {
  std::mt19937_64 rng(1);
  for (const auto backend : {simd::Backend::scalar, simd::Backend::avx2}) {
    if (!simd::backend_available(backend)) {
      MESSAGE("backend " << simd::backend_name(backend) << " not available here");
      continue;
    }
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
      std::vector<std::uint64_t> acc(n), powers(n);
      for (auto& a : acc) a = rng();
      for (auto& p : powers) p = rng();
      const std::uint64_t c = rng();
      std::vector<std::uint64_t> want = acc;
      for (std::size_t k = 0; k < n; ++k) want[k] += c * powers[k];
      simd::multiply_accumulate(acc, powers, c, backend);
      CHECK(acc == want);
    }
  }
}

TEST_CASE("signed power distance: avx2 is bit-identical to scalar") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coord(-60.0, 60.0);
  for (int p : {1, 2, 3, 4, 5, 7}) {
    for (std::size_t dim : {1u, 2u, 3u, 5u}) {
      const std::size_t count = 4096 + 3;
      std::vector<double> coords(dim * count);
      for (auto& c : coords) c = coord(rng);
      std::vector<double> signs(dim);
      for (auto& s : signs) s = rng() % 2 ? 1.0 : -1.0;
      std::vector<double> scalar(count), vec(count);
      simd::signed_power_distance(coords, dim, p, signs, scalar, simd::Backend::scalar);
      for (std::size_t j = 0; j < count; j += 97)
        CHECK(scalar[j] == reference_distance(coords, count, dim, p, signs, j));
      if (simd::backend_available(simd::Backend::avx2)) {
        simd::signed_power_distance(coords, dim, p, signs, vec, simd::Backend::avx2);
        CHECK(vec == scalar);
      }
    }
  }
}

TEST_CASE("kernel argument checks") {
  std::vector<std::uint64_t> a(3), b(4);
  CHECK_THROWS_AS(simd::multiply_accumulate(a, b, 1), InputError);
  std::vector<double> coords(6), signs(2), out(4);
  CHECK_THROWS_AS(simd::signed_power_distance(coords, 2, 2, signs, out), InputError);
  CHECK(simd::backend_name(simd::active_backend()).size() > 0);
}

TEST_CASE("block-parallel loops do not depend on the thread count") {
  auto run = [](unsigned threads) {
    set_thread_count(threads);
    std::vector<std::uint64_t> out(257);
    parallel_for_blocks(out.size(), [&](std::size_t b) {
      std::mt19937_64 rng(derive_seed(42, b));
      std::uint64_t acc = 0;
      for (int i = 0; i < 100; ++i) acc ^= rng();
      out[b] = acc;
    });
    set_thread_count(0);
    return out;
  };
  const auto one = run(1);
  CHECK(run(4) == one);
  CHECK(run(7) == one);
}

TEST_CASE("block-parallel loops rethrow the first failure") {
  set_thread_count(3);
  CHECK_THROWS_AS(parallel_for_blocks(100,
                                      [](std::size_t b) {
                                        if (b == 37) throw BudgetError("boom");
                                      }),
                  BudgetError);
  set_thread_count(0);
}

TEST_CASE("derived seeds differ across streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(derive_seed(7, s));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}
