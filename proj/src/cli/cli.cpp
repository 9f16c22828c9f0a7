#include "obstruct/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "commands.hpp"
#include "obstruct/errors.hpp"
#include "obstruct/parallel.hpp"
#include "obstruct/simd.hpp"

namespace obstruct::cli {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Restores the previous thread setting when a run ends.
class ThreadScope {
 public:
  explicit ThreadScope(unsigned threads) : active_(threads > 0) {
    if (active_) set_thread_count(threads);
  }
  ~ThreadScope() {
    if (active_) set_thread_count(0);
  }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  bool active_;
};

}  // namespace

nlohmann::json payload(const nlohmann::json& report) {
  nlohmann::json out = report;
  out.erase("run");
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  std::random_device rd;
  const auto tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot write '" + tmp.string() + "'");
    f << content;
    f.flush();
    if (!f) throw InputError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot rename into '" + path.string() + "': " + ec.message());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and verify obstruction patterns and sets", "obstruct"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key = value file");

  unsigned threads = 0;
  std::string report_path;
  app.add_option("--threads", threads, "Worker threads (default: OBSTRUCT_THREADS or all cores)");

  auto with_report = [&](CLI::App* sub) {
    sub->add_option("--report", report_path, "Write the JSON report here instead of stdout");
  };

  ConstructConfig construct;
  std::optional<double> construct_eps;
  auto* sc = app.add_subcommand("construct", "Build a pattern (thinned or elementary)");
  sc->add_option("--mode", construct.mode)->check(CLI::IsMember({"thinned", "elementary"}));
  sc->add_option("--n", construct.n)->required()->check(CLI::PositiveNumber);
  sc->add_option("--p", construct.p)->check(CLI::Range(1, 16));
  sc->add_option("--Q", construct.q, "Universe / denominator of A (default: smallest prime above n^(2^p))");
  sc->add_option("--seed", construct.seed);
  sc->add_option("--epsilon", construct_eps, "Verify (or calibrate towards) this epsilon");
  sc->add_flag("--calibrate", construct.calibrate, "Report the smallest epsilon that passes");
  sc->add_option("--samples", construct.samples)->check(CLI::PositiveNumber);
  sc->add_option("--sample-seed", construct.sample_seed);
  sc->add_option("--retries", construct.retries)->check(CLI::PositiveNumber);
  sc->add_option("--net-cells", construct.net_cells, "Also calibrate on a net of at most this many cells");
  sc->add_option("--out", construct.out, "Pattern file to write");
  with_report(sc);

  VerifyConfig verify;
  auto* sv = app.add_subcommand("verify", "Check the epsilon-hitting property of a pattern");
  sv->add_option("--pattern", verify.pattern)->required();
  sv->add_option("--epsilon", verify.epsilon)->required()->check(CLI::Range(0.0, 1.0));
  sv->add_option("--method", verify.method)->check(CLI::IsMember({"net", "sampled"}));
  sv->add_option("--samples", verify.samples)->check(CLI::PositiveNumber);
  sv->add_option("--seed", verify.seed);
  sv->add_option("--scale", verify.scale, "Net resolution scale in (0, 1]");
  sv->add_option("--budget", verify.budget, "Maximum number of net cells");
  with_report(sv);

  DensityConfig dens;
  auto* sd = app.add_subcommand("density", "Measure the density of the annular set");
  sd->add_option("--d", dens.d)->check(CLI::Range(1, 20));
  sd->add_option("--p", dens.p)->check(CLI::Range(2, 16));
  sd->add_option("--epsilon", dens.epsilon)->check(CLI::Range(0.0, 1.0));
  sd->add_option("--R", dens.side);
  sd->add_option("--method", dens.method)->check(CLI::IsMember({"mc", "slice"}));
  sd->add_option("--samples", dens.samples)->check(CLI::PositiveNumber);
  sd->add_option("--seed", dens.seed);
  sd->add_option("--step", dens.step, "Slice quadrature step");
  with_report(sd);

  NoCopyConfig nocopy;
  std::optional<double> nocopy_eps;
  auto* sn = app.add_subcommand("nocopy", "Check that sampled dilated copies leave the set");
  sn->add_option("--pattern", nocopy.pattern)->required();
  sn->add_option("--d", nocopy.d)->check(CLI::Range(1, 20));
  sn->add_option("--epsilon", nocopy_eps, "Default: the pattern's verified epsilon");
  sn->add_option("--j", nocopy.j_list, "Scale indices")->delimiter(',');
  sn->add_option("--samples", nocopy.samples, "Placements per scale")->check(CLI::PositiveNumber);
  sn->add_option("--seed", nocopy.seed);
  with_report(sn);

  DiscrepancyConfig disc;
  auto* sq = app.add_subcommand("discrepancy", "Exact discrepancy and the Erdos-Turan bound");
  sq->add_option("--points", disc.points, "JSON array of numbers or {num, den}");
  sq->add_option("--coeffs", disc.coeffs, "Rational coefficients of k, k^2, ...")->delimiter(',');
  sq->add_option("--N", disc.terms);
  sq->add_option("--M", disc.cutoff, "Erdos-Turan cutoff (default N)");
  sq->add_option("--cap", disc.cap, "Largest N for the exact computation");
  sq->add_option("--grid", disc.grid, "Grid size of the estimator above the cap");
  with_report(sq);

  RenderConfig render;
  auto* sr = app.add_subcommand("render", "Draw the planar annular set as SVG");
  sr->add_option("--p", render.p)->check(CLI::Range(2, 16));
  sr->add_option("--epsilon", render.epsilon)->check(CLI::Range(0.0, 1.0));
  sr->add_option("--R", render.side);
  sr->add_option("--pixels", render.pixels);
  sr->add_option("--out", render.out)->required();
  with_report(sr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string command;
  try {
    ThreadScope scope(threads);
    if (sc->parsed()) {
      command = "construct";
      construct.epsilon = construct_eps;
      outcome = cmd_construct(construct);
    } else if (sv->parsed()) {
      command = "verify";
      outcome = cmd_verify(verify);
    } else if (sd->parsed()) {
      command = "density";
      outcome = cmd_density(dens);
    } else if (sn->parsed()) {
      command = "nocopy";
      nocopy.epsilon = nocopy_eps;
      outcome = cmd_nocopy(nocopy);
    } else if (sq->parsed()) {
      command = "discrepancy";
      outcome = cmd_discrepancy(disc);
    } else {
      command = "render";
      outcome = cmd_render(render);
    }
  } catch (const BudgetError& e) {
    err << "obstruct: budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "obstruct: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "obstruct: internal check failed: " << e.what() << "\n";
    return 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::json report{{"tool", "obstruct"},
                        {"version", kVersion},
                        {"command", command},
                        {"config", outcome.config},
                        {"result", outcome.result},
                        {"pass", outcome.pass},
                        {"run",
                         {{"timestamp", utc_timestamp()},
                          {"wall_clock_seconds", seconds},
                          {"threads", threads > 0 ? threads : thread_count()},
                          {"simd", simd::backend_name(simd::active_backend())}}}};
  const std::string text = report.dump(2) + "\n";
  try {
    if (report_path.empty()) {
      out << text;
    } else {
      write_atomic(report_path, text);
      out << command << ": " << (outcome.pass ? "PASS" : "FAIL") << " (" << report_path << ")\n";
    }
  } catch (const InputError& e) {
    err << "obstruct: " << e.what() << "\n";
    return 2;
  }
  return outcome.pass ? 0 : 1;
}

}  // namespace obstruct::cli
