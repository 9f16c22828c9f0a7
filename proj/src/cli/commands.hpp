#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "obstruct/pattern.hpp"

namespace obstruct::cli {

using nlohmann::json;

struct Outcome {
  json config;
  json result;
  bool pass = false;
};

struct ConstructConfig {
  std::string mode = "thinned";
  std::int64_t n = 32;
  int p = 2;
  std::int64_t q = 0;  // 0: smallest prime above n^(2^p)
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  bool calibrate = false;
  std::uint64_t samples = 10'000;
  std::uint64_t sample_seed = 7;
  unsigned retries = 20;
  std::uint64_t net_cells = 0;  // > 0: also calibrate on a net of at most this many cells
  std::string out;
};

struct VerifyConfig {
  std::string pattern;
  double epsilon = 0.0;
  std::string method = "sampled";
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 7;
  double scale = 1.0;
  std::uint64_t budget = kDefaultNetBudget;
};

struct DensityConfig {
  int d = 2;
  int p = 2;
  double epsilon = 0.1;
  double side = 200.0;
  std::string method = "mc";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double step = 0.1;
};

struct NoCopyConfig {
  std::string pattern;
  int d = 2;
  std::optional<double> epsilon;
  std::vector<std::int64_t> j_list{1, 2, 3, 4, 5};
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 1;
};

struct DiscrepancyConfig {
  std::string points;                 // JSON array of numbers or {num, den}
  std::vector<std::string> coeffs;    // "a/q" for k^1, k^2, ...
  std::int64_t terms = 0;             // N for generated sequences
  std::int64_t cutoff = 0;            // M; 0 means N
  std::size_t cap = 100'000;
  std::uint32_t grid = 1000;          // grid estimator above the cap
};

struct RenderConfig {
  int p = 2;
  double epsilon = 0.3;
  double side = 6.0;
  int pixels = 600;
  std::string out;
};

Outcome cmd_construct(const ConstructConfig& c);
Outcome cmd_verify(const VerifyConfig& c);
Outcome cmd_density(const DensityConfig& c);
Outcome cmd_nocopy(const NoCopyConfig& c);
Outcome cmd_discrepancy(const DiscrepancyConfig& c);
Outcome cmd_render(const RenderConfig& c);

}  // namespace obstruct::cli
