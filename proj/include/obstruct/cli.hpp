#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "obstruct/annulus.hpp"

namespace obstruct::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs one command line (arguments after the program name).
/// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or budget error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The report without its "run" section (timestamp, wall clock, threads),
/// i.e. the part that must be identical across reruns.
nlohmann::json payload(const nlohmann::json& report);

/// Writes to a temporary file in the same directory, then renames.
void write_atomic(const std::filesystem::path& path, const std::string& content);

struct SvgRender {
  std::string svg;
  int shells_drawn = 0;
  int shells_inside = 0;  // shells with m - (1 - eps)/2 < (R/2)^p
};

/// d = 2 picture of E on [-R/2, R/2]^2: each shell
/// m - (1 - eps)/2 < ||x||_p^p < m + (1 - eps)/2 is a filled ring.
SvgRender render_annulus_svg(const AnnulusSpec& spec, double side, int pixels);

}  // namespace obstruct::cli
