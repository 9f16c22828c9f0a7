#include "commands.hpp"

#include <cmath>
#include <fstream>

#include "obstruct/annulus.hpp"
#include "obstruct/cli.hpp"
#include "obstruct/errors.hpp"
#include "obstruct/number_theory.hpp"
#include "obstruct/polynomial.hpp"
#include "obstruct/report_json.hpp"

namespace obstruct::cli {

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

PatternFile load_pattern(const std::string& path) {
  if (path.empty()) throw InputError("--pattern is required");
  return parse_pattern_file(read_json_file(path));
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational::make(std::stoll(text), 1);
    return Rational::make(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw InputError("expected a rational 'a/q', got '" + text + "'");
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Outcome cmd_construct(const ConstructConfig& c) {
  Outcome o;
  o.config = json{{"mode", c.mode},       {"n", c.n},
                  {"p", c.p},             {"Q", c.q},
                  {"seed", c.seed},       {"epsilon", optional_number(c.epsilon)},
                  {"calibrate", c.calibrate}, {"samples", c.samples},
                  {"sample_seed", c.sample_seed}, {"retries", c.retries},
                  {"net_cells", c.net_cells}};
  PatternFile file;
  file.degree = c.p;
  o.pass = true;

  if (c.mode == "elementary") {
    if (c.p != 2) throw InputError("the elementary construction is quadratic (p = 2)");
    ElementaryPattern e = elementary_pattern(c.n);
    file.pattern = e.pattern;
    file.leading = e.leading;
    o.result["m"] = e.m;
    o.result["bound"] = 10.0 / std::sqrt(static_cast<double>(c.n));
    const auto leading = TorusCoefficient::rational(e.leading);
    if (c.calibrate) {
      HittingReport r = verify_hitting_sampled(e.pattern, leading, 2, 1.0, c.samples, c.sample_seed);
      r.epsilon = r.pass_threshold = r.worst_gap;
      r.pass = true;
      file.epsilon_verified = r.worst_gap;
      file.epsilon_method = "sampled";
      o.result["sampled"] = r;
      if (c.epsilon && r.worst_gap > *c.epsilon) o.pass = false;
    } else if (c.epsilon) {
      const HittingReport r = verify_hitting_sampled(e.pattern, leading, 2, *c.epsilon, c.samples, c.sample_seed);
      if (r.pass) {
        file.epsilon_verified = *c.epsilon;
        file.epsilon_method = "sampled";
      }
      o.result["sampled"] = r;
      o.pass = r.pass;
    }
  } else if (c.mode == "thinned") {
    const std::int64_t q = c.q > 0 ? c.q
                                   : static_cast<std::int64_t>(bertrand_prime(static_cast<std::uint64_t>(c.n), c.p));
    file.leading = Rational::make(1, q);
    o.result["Q"] = q;
    o.result["Q_is_prime"] = is_prime(static_cast<std::uint64_t>(q));
    if (c.calibrate) {
      SampledCalibration cal =
          calibrate_sampled(c.n, q, c.p, c.seed, c.samples, c.sample_seed, c.retries, c.epsilon);
      json attempts = json::array();
      for (const auto& a : cal.attempts) attempts.push_back({{"seed", a.seed}, {"worst_gap", a.worst_gap}});
      o.result["sampled_calibration"] = {{"epsilon", cal.epsilon}, {"attempts", attempts}, {"report", cal.report}};
      file.pattern = cal.pattern;
      file.epsilon_verified = cal.epsilon;
      file.epsilon_method = "sampled";
      if (c.epsilon && cal.epsilon > *c.epsilon) o.pass = false;
      if (c.net_cells > 0) {
        const NetCalibration net = calibrate_net(file.pattern, file.leading, c.p, c.net_cells);
        o.result["net_calibration"] = {{"epsilon", net.epsilon}, {"nets", net.nets}, {"report", net.report}};
        file.epsilon_verified = net.epsilon;
        file.epsilon_method = "net";
        if (!net.report.pass) o.pass = false;
      }
    } else {
      file.pattern = thin_pattern(c.n, q, c.seed);
      if (c.epsilon) {
        const HittingReport r = verify_hitting_sampled(file.pattern, TorusCoefficient::rational(file.leading),
                                                       c.p, *c.epsilon, c.samples, c.sample_seed);
        if (r.pass) {
          file.epsilon_verified = *c.epsilon;
          file.epsilon_method = "sampled";
        }
        o.result["sampled"] = r;
        o.pass = r.pass;
      }
    }
  } else {
    throw InputError("unknown mode '" + c.mode + "' (thinned | elementary)");
  }

  const json pattern_json = pattern_file_json(file);
  o.result["pattern"] = pattern_json;
  if (!c.out.empty()) write_atomic(c.out, pattern_json.dump(2) + "\n");
  return o;
}

Outcome cmd_verify(const VerifyConfig& c) {
  Outcome o;
  o.config = json{{"pattern", c.pattern}, {"epsilon", c.epsilon}, {"method", c.method},
                  {"samples", c.samples}, {"seed", c.seed},       {"scale", c.scale},
                  {"budget", c.budget}};
  const PatternFile file = load_pattern(c.pattern);
  if (c.method == "net") {
    const NetSpec nets = build_nets(file.degree, file.pattern.effective_universe(), c.epsilon, c.scale, c.budget);
    const HittingReport r = verify_hitting_net(file.pattern, file.leading, file.degree, c.epsilon, nets);
    o.result = {{"nets", nets}, {"hitting", r}};
    o.pass = r.pass;
  } else if (c.method == "sampled") {
    const HittingReport r = verify_hitting_sampled(file.pattern, TorusCoefficient::rational(file.leading),
                                                   file.degree, c.epsilon, c.samples, c.seed);
    o.result = {{"hitting", r}};
    o.pass = r.pass;
  } else {
    throw InputError("unknown method '" + c.method + "' (net | sampled)");
  }
  return o;
}

Outcome cmd_density(const DensityConfig& c) {
  Outcome o;
  o.config = json{{"d", c.d},           {"p", c.p},       {"epsilon", c.epsilon},
                  {"R", c.side},        {"method", c.method}, {"samples", c.samples},
                  {"seed", c.seed},     {"step", c.step}};
  const AnnulusSpec spec = AnnulusSpec::make(c.d, c.p, c.epsilon);
  DensityOptions opt;
  if (c.method == "mc")
    opt.method = DensityMethod::monte_carlo;
  else if (c.method == "slice")
    opt.method = DensityMethod::exact_slice;
  else
    throw InputError("unknown method '" + c.method + "' (mc | slice)");
  opt.samples = c.samples;
  opt.seed = c.seed;
  opt.slice_step = c.step;
  const DensityReport r = density(spec, c.side, opt);
  o.result = {{"density", r}};
  o.pass = r.pass;
  return o;
}

Outcome cmd_nocopy(const NoCopyConfig& c) {
  Outcome o;
  o.config = json{{"pattern", c.pattern}, {"d", c.d},         {"epsilon", optional_number(c.epsilon)},
                  {"j", c.j_list},        {"samples", c.samples}, {"seed", c.seed}};
  const PatternFile file = load_pattern(c.pattern);
  const std::optional<double> eps = c.epsilon ? c.epsilon : file.epsilon_verified;
  if (!eps) throw InputError("pattern has no verified epsilon; pass --epsilon");
  const AnnulusSpec spec = AnnulusSpec::make(c.d, file.degree, *eps);
  NoCopyOptions opt;
  opt.j_list = c.j_list;
  opt.placements = c.samples;
  opt.seed = c.seed;
  opt.verified_epsilon = file.epsilon_verified;
  const NoCopyReport r = no_copy_check(spec, file.pattern, file.leading, opt);
  o.result = {{"epsilon", *eps}, {"nocopy", r}};
  o.pass = r.pass;
  return o;
}

Outcome cmd_discrepancy(const DiscrepancyConfig& c) {
  Outcome o;
  o.config = json{{"points", c.points}, {"coeffs", c.coeffs}, {"N", c.terms},
                  {"M", c.cutoff},      {"cap", c.cap},       {"grid", c.grid}};
  std::vector<TorusPoint> points;
  if (!c.points.empty()) {
    if (!c.coeffs.empty()) throw InputError("give either --points or --coeffs, not both");
    const json data = read_json_file(c.points);
    if (!data.is_array()) throw InputError("points file must hold a JSON array");
    for (const auto& item : data) {
      if (item.is_object())
        points.push_back(TorusPoint::from_rational(item.get<Rational>()));
      else if (item.is_number())
        points.push_back(TorusPoint::from_real(item.get<double>()));
      else
        throw InputError("points must be numbers or {num, den} objects");
    }
  } else {
    if (c.coeffs.empty() || c.terms < 1) throw InputError("need --points, or --coeffs with --N");
    std::vector<TorusCoefficient> coefficients{TorusCoefficient::dyadic(0)};
    for (const auto& text : c.coeffs) coefficients.push_back(TorusCoefficient::rational(parse_rational(text)));
    const TorusPolynomial f(std::move(coefficients));
    for (std::int64_t k = 0; k < c.terms; ++k) points.push_back(f.value(k));
  }
  if (points.empty()) throw InputError("empty point set");
  const auto cutoff = c.cutoff > 0 ? c.cutoff : static_cast<std::int64_t>(points.size());

  DiscrepancyReport r;
  if (points.size() <= c.cap) {
    r = discrepancy_with_bound(points, cutoff, c.cap);
  } else {
    r = grid_discrepancy(points, c.grid);
    r.et_bound = erdos_turan_bound(points, cutoff);
    r.et_cutoff = cutoff;
  }
  o.result = {{"discrepancy", r}};
  o.pass = *r.et_bound >= r.exact_discrepancy;
  return o;
}

Outcome cmd_render(const RenderConfig& c) {
  Outcome o;
  o.config = json{{"p", c.p}, {"epsilon", c.epsilon}, {"R", c.side}, {"pixels", c.pixels}, {"out", c.out}};
  if (c.out.empty()) throw InputError("--out is required");
  const AnnulusSpec spec = AnnulusSpec::make(2, c.p, c.epsilon);
  const SvgRender svg = render_annulus_svg(spec, c.side, c.pixels);
  write_atomic(c.out, svg.svg);
  o.result = {{"shells_drawn", svg.shells_drawn}, {"shells_inside", svg.shells_inside}, {"bytes", svg.svg.size()}};
  o.pass = true;
  return o;
}

}  // namespace obstruct::cli
