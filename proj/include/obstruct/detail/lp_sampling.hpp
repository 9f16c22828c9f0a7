#pragma once

#include <cmath>
#include <random>
#include <vector>

namespace obstruct {

// Coordinates with density proportional to exp(-|t|^p): |t|^p ~ Gamma(1/p).
template <class Rng>
std::vector<double> sample_lp_direction(Rng& rng, int dim, double p) {
  std::gamma_distribution<double> gamma(1.0 / p, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<double> v(static_cast<std::size_t>(dim));
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& c : v) {
      const double g = std::pow(gamma(rng), 1.0 / p);
      c = coin(rng) ? g : -g;
      norm += std::pow(std::fabs(c), p);
    }
  } while (norm == 0.0);
  norm = std::pow(norm, 1.0 / p);
  for (auto& c : v) c /= norm;
  return v;
}

}  // namespace obstruct
