#include "obstruct/report_json.hpp"

#include "obstruct/errors.hpp"

namespace obstruct {

namespace {

std::string_view closure_name(Closure c) { return c == Closure::closed ? "closed" : "half_open"; }

std::string_view method_name(HittingMethod m) { return m == HittingMethod::net ? "net" : "sampled"; }

std::string_view method_name(DensityMethod m) {
  return m == DensityMethod::exact_slice ? "exact_slice" : "monte_carlo";
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<double> raw_to_unit(const std::vector<std::uint64_t>& raw) {
  std::vector<double> out;
  for (const auto r : raw) out.push_back(static_cast<double>(r) / kTwoPow64);
  return out;
}

}  // namespace

void to_json(json& j, const Rational& r) { j = json{{"num", r.num}, {"den", r.den}}; }

void from_json(const json& j, Rational& r) {
  r = Rational::make(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

void to_json(json& j, const TorusInterval& interval) {
  j = json{{"start", interval.start()},
           {"start_raw", interval.start_raw()},
           {"length", interval.length()},
           {"closure", closure_name(interval.closure())}};
}

void to_json(json& j, const DiscrepancyReport& r) {
  j = json{{"n_points", r.n_points},
           {"discrepancy", r.exact_discrepancy},
           {"exact", r.exact},
           {"witness", r.witness},
           {"witness_attained", r.witness_attained},
           {"et_bound", optional_number(r.et_bound)},
           {"et_cutoff", r.et_cutoff}};
}

void to_json(json& j, const NetSpec& n) {
  j = json{{"degree", n.degree},
           {"Q", n.universe},
           {"epsilon", n.epsilon},
           {"resolution_scale", n.resolution_scale},
           {"full_resolution", n.full_resolution()},
           {"meshes", n.meshes},
           {"sizes", n.sizes},
           {"cells", n.cells()},
           {"transfer_slack", n.transfer_slack()},
           {"interval_stride", n.interval_stride},
           {"interval_length", n.interval_length},
           {"interval_count", n.interval_count}};
}

void to_json(json& j, const HittingReport& r) {
  j = json{{"method", method_name(r.method)},
           {"epsilon", r.epsilon},
           {"worst_gap", r.worst_gap},
           {"worst_b", raw_to_unit(r.worst_b)},
           {"worst_b_raw", r.worst_b},
           {"samples_tested", r.samples_tested},
           {"pass_threshold", r.pass_threshold},
           {"pass", r.pass}};
  if (r.method == HittingMethod::net) {
    j["full_resolution"] = r.full_resolution;
    j["transfer_slack"] = r.transfer_slack;
    j["guaranteed_epsilon"] = optional_number(r.guaranteed_epsilon);
  }
}

void to_json(json& j, const DensityReport& r) {
  j = json{{"R", r.side},
           {"fraction", r.fraction},
           {"target", r.target},
           {"target_is_lower_bound", r.target_is_lower_bound},
           {"method", method_name(r.method)},
           {"fell_back", r.fell_back},
           {"samples", r.samples},
           {"seed", r.seed},
           {"std_error", r.std_error},
           {"quadrature_error", r.quadrature_error},
           {"tolerance", r.tolerance},
           {"pass", r.pass}};
}

void to_json(json& j, const Placement& p) {
  j = json{{"x", p.x}, {"v", p.v}, {"j", p.j}, {"r", p.r}};
}

void to_json(json& j, const NoCopyReport& r) {
  j = json{{"placements", r.placements},
           {"violations", r.violations},
           {"worst_margin", r.worst_margin},
           {"gap_inconsistencies", r.gap_inconsistencies},
           {"max_reduced_gap", r.max_reduced_gap},
           {"j_list", r.j_list},
           {"seed", r.seed},
           {"first_violation", r.first_violation ? json(*r.first_violation) : json(nullptr)},
           {"pass", r.pass}};
}

void to_json(json& j, const CopySamplerReport& r) {
  json first = nullptr;
  if (r.first_violation)
    first = json{{"x_units", r.first_violation->x_units},
                 {"axis", r.first_violation->axis},
                 {"sign", r.first_violation->sign},
                 {"j", r.first_violation->j}};
  j = json{{"placements", r.placements},
           {"violations", r.violations},
           {"epsilon", r.epsilon},
           {"j_list", r.j_list},
           {"first_violation", first},
           {"pass", r.pass}};
}

json pattern_file_json(const PatternFile& f) {
  return json{{"n", f.pattern.size()},
              {"p", f.degree},
              {"Q", f.pattern.universe},
              {"A_num", f.leading.num},
              {"A_den", f.leading.den},
              {"indices", f.pattern.indices},
              {"provenance", provenance_name(f.pattern.provenance)},
              {"seed", f.pattern.seed},
              {"epsilon_verified", optional_number(f.epsilon_verified)},
              {"epsilon_method", f.epsilon_method.empty() ? json(nullptr) : json(f.epsilon_method)}};
}

PatternFile parse_pattern_file(const json& j) {
  try {
    PatternFile f;
    f.degree = j.at("p").get<int>();
    f.leading = Rational::make(j.at("A_num").get<std::int64_t>(), j.at("A_den").get<std::int64_t>());
    const auto provenance = parse_provenance(j.at("provenance").get<std::string>());
    const std::uint64_t seed = j.value("seed", std::uint64_t{0});
    f.pattern = Pattern::make(j.at("indices").get<std::vector<std::int64_t>>(),
                              j.at("Q").get<std::int64_t>(), provenance, seed);
    if (j.at("n").get<std::size_t>() != f.pattern.size())
      throw InputError("pattern file: n does not match the number of indices");
    if (j.contains("epsilon_verified") && !j["epsilon_verified"].is_null())
      f.epsilon_verified = j["epsilon_verified"].get<double>();
    if (j.contains("epsilon_method") && !j["epsilon_method"].is_null())
      f.epsilon_method = j["epsilon_method"].get<std::string>();
    return f;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed pattern file: ") + e.what());
  }
}

}  // namespace obstruct
