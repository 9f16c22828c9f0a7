#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "obstruct/annulus.hpp"
#include "obstruct/errors.hpp"
#include "obstruct/parallel.hpp"
#include "obstruct/pattern.hpp"
#include "oracles.hpp"

using namespace obstruct;

namespace {

Pattern range_pattern(std::int64_t n) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), std::int64_t{0});
  return Pattern::make(idx, n, Provenance::explicit_set);
}

TorusInterval arc(double start, double length) {
  return TorusInterval::make(TorusPoint::from_real(start), length, Closure::half_open);
}

}  // namespace

TEST_CASE("membership examples") {
  const auto s = AnnulusSpec::make(3, 2, 0.4);
  CHECK(member(s, std::vector<double>{0, 0, 0}));
  CHECK_FALSE(member(AnnulusSpec::make(1, 2, 0.2), std::vector<double>{std::sqrt(0.5)}));
  CHECK(member(AnnulusSpec::make(2, 3, 0.1), std::vector<double>{1, 1}));
  CHECK(member(AnnulusSpec::make(1, 2, 0.2), std::vector<double>{std::sqrt(0.3)}));
  CHECK_FALSE(member(AnnulusSpec::make(2, 3, 0.1), std::vector<double>{1, std::cbrt(0.5)}));
  CHECK(AnnulusSpec::make(2, 5, 0.1).parity == Parity::odd);
  CHECK(AnnulusSpec::make(2, 4, 0.1).parity == Parity::even);
  CHECK_THROWS_AS(AnnulusSpec::make(2, 1, 0.1), InputError);
  CHECK_THROWS_AS(AnnulusSpec::make(2, 2, 1.0), InputError);
  CHECK_THROWS_AS(member(s, std::vector<double>{0, 0}), InputError);
}

TEST_CASE("membership is invariant under permutations and sign flips") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> coord(-6.0, 6.0);
  for (int p : {2, 3, 4, 5}) {
    for (int d : {2, 3, 4}) {
      const auto spec = AnnulusSpec::make(d, p, 0.3);
      for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (auto& c : x) c = coord(rng);
        const bool base = member(spec, x);
        auto y = x;
        std::shuffle(y.begin(), y.end(), rng);
        for (auto& c : y)
          if (rng() % 2) c = -c;
        CHECK(member(spec, y) == base);
      }
    }
  }
}

TEST_CASE("one-variable measure examples") {
  CHECK(one_variable_measure(2, 1, 1.0, arc(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one_variable_measure(2, 1, 2.0, arc(0.0, 0.25)) == doctest::Approx(1.0).epsilon(1e-14));
  const double m = one_variable_measure(2, 1, 20.0, arc(0.3, 0.4));
  CHECK(std::fabs(m - 8.0) <= 3.0);
  double se = 0.0;
  const double mc = oracle::measure_monte_carlo(2, 1, 20.0, 0.3, 0.4, 10'000'000, 1, &se);
  CHECK(std::fabs(m - mc) <= 3.0 * se);

  CHECK_THROWS_AS(one_variable_measure(4, 1, 400.0, arc(0.1, 0.5)), BudgetError);
  CHECK_THROWS_AS(one_variable_measure(2, 0, 4.0, arc(0.1, 0.5)), InputError);
  CHECK_THROWS_AS(one_variable_measure(2, 1, 0.5, arc(0.1, 0.5)), InputError);
}

TEST_CASE("one-variable measure agrees with Monte Carlo for both signs") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p : {2, 3, 4, 5}) {
    for (int sigma : {1, -1}) {
      const double a = u(rng), len = 0.05 + 0.9 * u(rng);
      const double side = 1.0 + 9.0 * u(rng);
      double se = 0.0;
      const double mc = oracle::measure_monte_carlo(p, sigma, side, a, len, 1'000'000, rng(), &se);
      const double exact = one_variable_measure(p, sigma, side, arc(a, len));
      CHECK(std::fabs(exact - mc) <= 4.0 * se + 1e-9);
    }
  }
}

TEST_CASE("one-variable measure stays within a bounded distance of |I| R") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int p : {2, 3, 4}) {
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double a = u(rng), len = 0.01 + 0.98 * u(rng);
      const int sigma = trial % 2 ? -1 : 1;
      for (double side = 1.0; side <= 128.0; side *= 2.0)
        worst = std::max(worst, std::fabs(one_variable_measure(p, sigma, side, arc(a, len)) - len * side));
    }
    MESSAGE("p = " << p << ": max |measure - |I| R| = " << worst);
    CHECK(worst <= 3.0);
  }
}

TEST_CASE("density examples") {
  DensityOptions slice;
  slice.method = DensityMethod::exact_slice;
  const auto d1 = density(AnnulusSpec::make(1, 2, 0.1), 100.0, slice);
  CHECK(std::fabs(d1.fraction - 0.9) <= 0.05);
  CHECK(d1.pass);

  DensityOptions mc;
  mc.samples = 1'000'000;
  mc.seed = 3;
  const auto d2 = density(AnnulusSpec::make(2, 2, 0.1), 200.0, mc);
  CHECK(std::fabs(d2.fraction - 0.9) <= 0.01);
  CHECK(d2.std_error > 0.0);
  CHECK(d2.pass);

  const auto odd = density(AnnulusSpec::make(2, 3, 0.05), 20.0, mc);
  CHECK(odd.target_is_lower_bound);
  CHECK(odd.target == doctest::Approx(0.8));
  CHECK(odd.pass);

  const auto fallback = density(AnnulusSpec::make(4, 2, 0.1), 10.0, slice);
  CHECK(fallback.fell_back);
  CHECK(fallback.method == DensityMethod::monte_carlo);

  CHECK_THROWS_AS(density(AnnulusSpec::make(2, 2, 0.1), 0.5, mc), InputError);
}

TEST_CASE("slice and Monte Carlo densities agree in the plane") {
  DensityOptions slice;
  slice.method = DensityMethod::exact_slice;
  DensityOptions mc;
  mc.samples = 1'000'000;
  mc.seed = 8;
  for (int p : {2, 3}) {
    const auto spec = AnnulusSpec::make(2, p, 0.1);
    const auto a = density(spec, 12.0, slice);
    const auto b = density(spec, 12.0, mc);
    CHECK(std::fabs(a.fraction - b.fraction) <= 4.0 * b.std_error + 2.0 * a.quadrature_error);
  }
}

TEST_CASE("density shrinks as epsilon grows") {
  DensityOptions mc;
  mc.samples = 200'000;
  mc.seed = 5;
  double previous = 1.0;
  for (double eps = 0.0; eps < 0.99; eps += 0.1) {
    const double f = density(AnnulusSpec::make(2, 2, eps), 50.0, mc).fraction;
    CHECK(f <= previous);
    previous = f;
  }
  CHECK(previous < 0.12);
}

TEST_CASE("even density approaches 1 - eps like C / R") {
  DensityOptions slice;
  slice.method = DensityMethod::exact_slice;
  for (int p : {2, 4}) {
    const auto spec = AnnulusSpec::make(1, p, 0.1);
    auto dev = [&](double side) { return std::fabs(density(spec, side, slice).fraction - 0.9); };
    const double c = 2.0 * std::max(10.0 * dev(10.0), 20.0 * dev(20.0));
    CHECK(dev(80.0) <= c / 80.0);
    CHECK(dev(200.0) <= c / 200.0);
  }
}

TEST_CASE("Monte Carlo density does not depend on the thread count") {
  DensityOptions mc;
  mc.samples = 100'000;
  mc.seed = 77;
  const auto spec = AnnulusSpec::make(3, 3, 0.1);
  set_thread_count(1);
  const double one = density(spec, 30.0, mc).fraction;
  set_thread_count(5);
  const double five = density(spec, 30.0, mc).fraction;
  set_thread_count(0);
  CHECK(one == five);
}

TEST_CASE("placements and scales") {
  const auto pl = Placement::make({1, 2}, {3, 4}, 2, 1, 2.0);
  CHECK(pl.v[0] == doctest::Approx(0.6));
  CHECK(pl.v[1] == doctest::Approx(0.8));
  CHECK_THROWS_AS(Placement::make({1}, {0}, 2, 1, 1.0), InputError);
  CHECK_THROWS_AS(Placement::make({1}, {1, 2}, 2, 1, 1.0), InputError);
  CHECK(annulus_scale(Rational::make(1, 4), 3, 2) == doctest::Approx(std::sqrt(3.25)));
  CHECK_THROWS_AS(annulus_scale(Rational::make(-3, 1), 2, 2), InputError);

  std::mt19937_64 rng(3);
  for (double p : {1.5, 2.0, 3.0, 7.0}) {
    double mean = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const auto v = sample_lp_direction(rng, 3, p);
      double norm = 0.0;
      for (const double c : v) norm += std::pow(std::fabs(c), p);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
      mean += v[0];
    }
    CHECK(std::fabs(mean / 2000) < 0.06);
  }
}

TEST_CASE("binomial reduction examples") {
  const auto pattern = range_pattern(4);
  const Rational a = Rational::make(1, 7);
  SUBCASE("origin along an axis") {
    for (int p : {2, 4}) {
      const auto spec = AnnulusSpec::make(2, p, 0.1);
      const double r = static_cast<double>(annulus_scale(a, 2, p));
      const auto red = reduce_to_polynomial(spec, pattern, Placement::make({0, 0}, {1, 0}, p, 2, r), a);
      for (int l = 0; l < p; ++l) CHECK(red.b[static_cast<std::size_t>(l)] == 0.0L);
      CHECK(static_cast<double>(red.leading) == doctest::Approx(2.0 + 1.0 / 7).epsilon(1e-14));
      CHECK(red.certificate_residual < 1e-12);
    }
  }
  SUBCASE("orthogonal axes") {
    const auto red =
        reduce_to_polynomial(AnnulusSpec::make(2, 2, 0.1), pattern, Placement::make({1, 0}, {0, 1}, 2, 3, 2.0), a);
    CHECK(red.b[1] == 0.0L);
    CHECK(red.b[0] == 1.0L);
    CHECK(red.leading == 4.0L);
  }
  SUBCASE("3-4-5 direction") {
    const auto red = reduce_to_polynomial(AnnulusSpec::make(2, 2, 0.1), pattern,
                                          Placement::make({1, 1}, {3, 4}, 2, 24, 5.0), a);
    CHECK(static_cast<double>(red.b[1]) == doctest::Approx(14.0).epsilon(1e-14));
    CHECK(static_cast<double>(red.b[0]) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(static_cast<double>(red.leading) == doctest::Approx(25.0).epsilon(1e-14));
    for (int k = -3; k <= 3; ++k) {
      const double direct = std::pow(1 + 5.0 * k * 0.6, 2) + std::pow(1 + 5.0 * k * 0.8, 2);
      CHECK(direct == doctest::Approx(25.0 * k * k + 14.0 * k + 2.0).epsilon(1e-12));
    }
  }
  SUBCASE("non-unit direction") {
    Placement bad{{0, 0}, {1, 1}, 1, 1.0};
    CHECK_THROWS_AS(reduce_to_polynomial(AnnulusSpec::make(2, 2, 0.1), pattern, bad, a), InputError);
  }
}

TEST_CASE("binomial reduction identity for random placements") {
  std::mt19937_64 rng(99);
  const auto pattern = range_pattern(3);
  const Rational a = Rational::make(1, 1048583);
  for (int p : {2, 3, 4, 5}) {
    for (int trial = 0; trial < 2000; ++trial) {
      const int d = 1 + static_cast<int>(rng() % 4);
      const auto spec = AnnulusSpec::make(d, p, 0.2);
      const std::int64_t j = 1 + static_cast<std::int64_t>(rng() % 5);
      const double r = static_cast<double>(annulus_scale(a, j, p));
      std::uniform_real_distribution<double> coord(-10.0 * r, 10.0 * r);
      std::vector<double> x(static_cast<std::size_t>(d));
      for (auto& c : x) c = coord(rng);
      const auto place = Placement::make(x, sample_lp_direction(rng, d, p), p, j, r);
      const auto red = reduce_to_polynomial(spec, pattern, place, a);
      const long double k = static_cast<long double>(static_cast<std::int64_t>(rng() % 2001) - 1000);
      const long double lead = red.leading * oracle::ipow(k, p);
      long double poly = lead;
      for (int l = 0; l < p; ++l) poly += red.b[static_cast<std::size_t>(l)] * oracle::ipow(k, l);
      const long double direct = oracle::signed_power_sum(place.x, place.v, red.signs, place.r, k, p);
      CHECK(std::fabs(static_cast<double>(direct - poly)) <= 1e-9 * (1.0 + std::fabs(static_cast<double>(lead))));
      CHECK(red.certificate_residual <= 1e-9 * (1.0 + static_cast<double>(red.leading_target)));
    }
  }
}

TEST_CASE("no-copy: a copy along an axis from the origin leaves E") {
  const auto e = elementary_pattern(64);
  const auto rep = verify_hitting_sampled(e.pattern, TorusCoefficient::rational(e.leading), 2, 1.0, 2000, 1);
  const auto spec = AnnulusSpec::make(2, 2, std::min(0.99, rep.worst_gap + 0.01));
  for (std::int64_t j = 1; j <= 5; ++j) {
    const double r = static_cast<double>(annulus_scale(e.leading, j, 2));
    bool outside = false;
    for (const auto k : e.pattern.indices) {
      const std::vector<double> y{r * static_cast<double>(k), 0.0};
      outside = outside || !member(spec, y);
    }
    CHECK(outside);
  }
}

TEST_CASE("no-copy with the full residue set") {
  const std::int64_t q = 101;
  const auto pattern = range_pattern(q);
  const Rational a = Rational::make(1, q);
  const auto cal = calibrate_net(pattern, a, 2, 2'000'000);
  REQUIRE(cal.report.pass);
  MESSAGE("certified epsilon " << cal.epsilon);
  NoCopyOptions opt;
  opt.placements = 2000;
  opt.seed = 4;
  opt.verified_epsilon = cal.epsilon;
  for (int d : {1, 2, 3}) {
    const auto rep = no_copy_check(AnnulusSpec::make(d, 2, cal.epsilon), pattern, a, opt);
    CHECK(rep.placements == 10'000);
    CHECK(rep.violations == 0);
    CHECK(rep.gap_inconsistencies == 0);
    CHECK(rep.worst_margin >= 0.0);
    CHECK(rep.pass);
  }
}

TEST_CASE("no-copy odd exponent") {
  // No net fits for p = 3 here; eps comes from a sampled check with a margin.
  const std::int64_t q = 101;
  const auto pattern = range_pattern(q);
  const Rational a = Rational::make(1, q);
  const auto sampled = verify_hitting_sampled(pattern, TorusCoefficient::rational(a), 3, 1.0, 10'000, 2);
  const double eps = std::min(0.99, sampled.worst_gap + 0.05);
  NoCopyOptions opt;
  opt.placements = 1000;
  opt.seed = 6;
  const auto rep = no_copy_check(AnnulusSpec::make(2, 3, eps), pattern, a, opt);
  CHECK(rep.violations == 0);
  CHECK(rep.pass);
}

TEST_CASE("no-copy with eps = 0 finds copies inside E") {
  const auto pattern = range_pattern(4);
  NoCopyOptions opt;
  opt.placements = 500;
  opt.j_list = {1, 2};
  const auto rep = no_copy_check(AnnulusSpec::make(2, 2, 0.0), pattern, Rational::make(1, 5), opt);
  CHECK(rep.violations > 0);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.first_violation);
  CHECK(rep.first_violation->x.size() == 2);
}

TEST_CASE("no-copy input checks and determinism") {
  const auto pattern = range_pattern(16);
  const Rational a = Rational::make(1, 16);
  NoCopyOptions opt;
  opt.placements = 300;
  opt.seed = 2;
  opt.verified_epsilon = 0.5;
  CHECK_THROWS_WITH_AS(no_copy_check(AnnulusSpec::make(2, 2, 0.4), pattern, a, opt),
                       doctest::Contains("inconsistent epsilon"), InputError);
  opt.j_list = {};
  CHECK_THROWS_AS(no_copy_check(AnnulusSpec::make(2, 2, 0.5), pattern, a, opt), InputError);
  opt.j_list = {-3};
  CHECK_THROWS_AS(no_copy_check(AnnulusSpec::make(2, 2, 0.5), pattern, a, opt), InputError);
  opt.j_list = {1, 2, 3};
  set_thread_count(1);
  const auto one = no_copy_check(AnnulusSpec::make(2, 2, 0.5), pattern, a, opt);
  set_thread_count(3);
  const auto three = no_copy_check(AnnulusSpec::make(2, 2, 0.5), pattern, a, opt);
  set_thread_count(0);
  CHECK(one.worst_margin == three.worst_margin);
  CHECK(one.max_reduced_gap == three.max_reduced_gap);
  CHECK(one.violations == three.violations);
}
