#pragma once

#include <json.hpp>

#include "obstruct/annulus.hpp"
#include "obstruct/lp_geometry.hpp"
#include "obstruct/pattern.hpp"
#include "obstruct/torus.hpp"

// JSON forms of the report types. Rationals are {num, den} pairs; raw torus
// positions are u64 integers in units of 2^-64.
namespace obstruct {

using nlohmann::json;

void to_json(json& j, const Rational& r);
void from_json(const json& j, Rational& r);
void to_json(json& j, const TorusInterval& interval);
void to_json(json& j, const DiscrepancyReport& report);
void to_json(json& j, const NetSpec& nets);
void to_json(json& j, const HittingReport& report);
void to_json(json& j, const DensityReport& report);
void to_json(json& j, const Placement& place);
void to_json(json& j, const NoCopyReport& report);
void to_json(json& j, const CopySamplerReport& report);

/// Pattern file: {n, p, Q, A_num, A_den, indices, provenance, seed,
/// epsilon_verified, epsilon_method}.
struct PatternFile {
  Pattern pattern;
  int degree = 2;
  Rational leading;
  std::optional<double> epsilon_verified;
  std::string epsilon_method;  // "net", "sampled" or empty
};

json pattern_file_json(const PatternFile& file);
PatternFile parse_pattern_file(const json& j);

}  // namespace obstruct
