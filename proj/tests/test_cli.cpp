#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>
#include <unistd.h>

#include "obstruct/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = obstruct::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Scratch directory, removed on exit.
struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("obstruct_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("cli: elementary construct writes the pattern file") {
  Scratch tmp;
  const auto r = call({"construct", "--mode", "elementary", "--n", "16", "--out", tmp / "p.json"});
  REQUIRE(r.code == 0);
  const json file = read_json(tmp / "p.json");
  CHECK(file["n"] == 16);
  CHECK(file["p"] == 2);
  CHECK(file["A_num"] == 1);
  CHECK(file["A_den"] == 16);
  CHECK(file["provenance"] == "elementary");
  std::vector<std::int64_t> want(16);
  for (int k = 0; k < 16; ++k) want[static_cast<std::size_t>(k)] = k;
  CHECK(file["indices"].get<std::vector<std::int64_t>>() == want);
  CHECK(file["epsilon_verified"].is_null());

  const json report = r.report();
  CHECK(report["tool"] == "obstruct");
  CHECK(report["version"] == "1.0.0");
  CHECK(report["command"] == "construct");
  CHECK(report["pass"] == true);
  CHECK(report["result"]["m"] == 4);
  CHECK(report["result"]["pattern"] == file);
  for (const char* key : {"timestamp", "wall_clock_seconds", "threads", "simd"}) CHECK(report["run"].contains(key));
}

TEST_CASE("cli: thinned construct is deterministic in the seed") {
  auto indices = [](const std::string& seed) {
    const auto r = call({"construct", "--n", "8", "--seed", seed});
    REQUIRE(r.code == 0);
    const json j = r.report();
    CHECK(j["result"]["Q"] == 4099);
    CHECK(j["result"]["Q_is_prime"] == true);
    return j["result"]["pattern"]["indices"].get<std::vector<std::int64_t>>();
  };
  const auto a = indices("3");
  CHECK(a.size() == 8);
  CHECK(indices("3") == a);
  CHECK(indices("4") != a);
}

TEST_CASE("cli: verify exit codes") {
  Scratch tmp;
  REQUIRE(call({"construct", "--mode", "elementary", "--n", "64", "--out", tmp / "e.json"}).code == 0);

  const auto good = call({"verify", "--pattern", tmp / "e.json", "--epsilon", "0.9"});
  CHECK(good.code == 0);
  CHECK(good.report()["result"]["hitting"]["method"] == "sampled");

  // eps = 1/(10 n) is far below any achievable gap
  const auto bad = call({"verify", "--pattern", tmp / "e.json", "--epsilon", "0.0015625"});
  CHECK(bad.code == 1);
  CHECK(bad.report()["pass"] == false);

  const auto net = call({"verify", "--pattern", tmp / "e.json", "--epsilon", "0.9", "--method", "net"});
  REQUIRE((net.code == 0 || net.code == 1));
  CHECK(net.report()["pass"] == (net.code == 0));
  CHECK(net.report()["result"]["hitting"]["method"] == "net");

  const auto over = call({"verify", "--pattern", tmp / "e.json", "--epsilon", "0.5", "--method", "net", "--budget", "10"});
  CHECK(over.code == 2);
  CHECK(over.err.find("budget") != std::string::npos);
  CHECK(over.out.empty());
}

TEST_CASE("cli: usage and input errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"verify", "--epsilon", "0.5"}).code == 2);
  CHECK(call({"verify", "--pattern", "/nonexistent/p.json", "--epsilon", "0.5"}).code == 2);
  CHECK(call({"verify", "--pattern", "/nonexistent/p.json", "--epsilon", "1.5"}).code == 2);
  CHECK(call({"construct", "--mode", "elementary", "--n", "16", "--p", "3"}).code == 2);
  CHECK(call({"discrepancy"}).code == 2);
  CHECK(call({"--version"}).code == 0);

  Scratch tmp;
  std::ofstream(tmp / "broken.json") << "{not json";
  const auto r = call({"verify", "--pattern", tmp / "broken.json", "--epsilon", "0.5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("JSON") != std::string::npos);
}

TEST_CASE("cli: --report writes the file atomically") {
  Scratch tmp;
  const auto r = call({"density", "--d", "1", "--R", "50", "--method", "slice", "--report", tmp / "out.json"});
  CHECK(r.code == 0);
  CHECK(r.out == "density: PASS (" + (tmp / "out.json") + ")\n");
  const json report = read_json(tmp / "out.json");
  CHECK(report["command"] == "density");
  CHECK(report["result"]["density"]["method"] == "exact_slice");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.dir)) ++entries;
  CHECK(entries == 1);

  CHECK(call({"density", "--d", "1", "--R", "50", "--report", "/nonexistent/dir/out.json"}).code == 2);
}

TEST_CASE("cli: options from a config file") {
  Scratch tmp;
  std::ofstream(tmp / "run.ini") << "threads = 2\n[density]\nd = 1\np = 4\nepsilon = 0.2\nR = 40\nmethod = slice\n";
  const auto r = call({"--config", tmp / "run.ini", "density"});
  REQUIRE(r.code == 0);
  const json report = r.report();
  CHECK(report["config"]["d"] == 1);
  CHECK(report["config"]["p"] == 4);
  CHECK(report["config"]["method"] == "slice");
  CHECK(report["config"]["R"] == 40.0);
  CHECK(report["run"]["threads"] == 2);

  // command line wins over the file
  const auto o = call({"--config", tmp / "run.ini", "density", "--p", "2"});
  CHECK(o.report()["config"]["p"] == 2);
}

TEST_CASE("cli: render") {
  Scratch tmp;
  const auto r = call({"render", "--p", "2", "--epsilon", "0.3", "--R", "6", "--pixels", "200", "--out", tmp / "e.svg"});
  REQUIRE(r.code == 0);
  const std::string svg = slurp(tmp / "e.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  const json result = r.report()["result"];
  // (R/2)^2 = 9: shells m = 1..9 meet the square, m <= 8 lie inside it entirely or in part
  CHECK(result["shells_drawn"].get<int>() >= 9);
  CHECK(result["bytes"] == svg.size());
  CHECK(call({"render", "--p", "2"}).code == 2);
}

TEST_CASE("cli: discrepancy") {
  const auto seq = call({"discrepancy", "--coeffs", "1/7", "--N", "7"});
  REQUIRE(seq.code == 0);
  const json d = seq.report()["result"]["discrepancy"];
  CHECK(d["n_points"] == 7);
  CHECK(d["exact"] == true);
  CHECK(d["discrepancy"].get<double>() == doctest::Approx(1.0 / 7).epsilon(1e-12));
  CHECK(d["et_bound"].get<double>() >= d["discrepancy"].get<double>());

  Scratch tmp;
  std::ofstream(tmp / "pts.json") << R"([0, 0.5, {"num": 1, "den": 3}])";
  const auto file = call({"discrepancy", "--points", tmp / "pts.json"});
  REQUIRE(file.code == 0);
  CHECK(file.report()["result"]["discrepancy"]["n_points"] == 3);
  CHECK(call({"discrepancy", "--points", tmp / "pts.json", "--coeffs", "1/2", "--N", "3"}).code == 2);
  CHECK(call({"discrepancy", "--coeffs", "x/2", "--N", "3"}).code == 2);
}

TEST_CASE("cli: nocopy from a calibrated pattern") {
  Scratch tmp;
  REQUIRE(call({"construct", "--n", "6", "--p", "2", "--Q", "31", "--calibrate", "--net-cells", "200000", "--out", tmp / "t.json"}).code <= 1);
  const json file = read_json(tmp / "t.json");
  REQUIRE(file["epsilon_method"] == "net");
  const auto r = call({"nocopy", "--pattern", tmp / "t.json", "--d", "1", "--j", "1,2", "--samples", "300"});
  CHECK(r.report()["result"]["nocopy"]["placements"] == 600);
  CHECK(r.report()["result"]["nocopy"]["j_list"] == json::array({1, 2}));
  if (file["epsilon_verified"].get<double>() < 1.0) {
    CHECK(r.code == 0);
    CHECK(r.report()["result"]["nocopy"]["violations"] == 0);
  }

  REQUIRE(call({"construct", "--mode", "elementary", "--n", "16", "--out", tmp / "plain.json"}).code == 0);
  CHECK(call({"nocopy", "--pattern", tmp / "plain.json"}).code == 2);
}

TEST_CASE("cli: payload does not depend on the thread count") {
  Scratch tmp;
  REQUIRE(call({"construct", "--mode", "elementary", "--n", "64", "--out", tmp / "e.json"}).code == 0);
  const std::vector<std::vector<std::string>> commands{
      {"density", "--d", "2", "--R", "60", "--samples", "200000"},
      {"verify", "--pattern", tmp / "e.json", "--epsilon", "0.5", "--samples", "5000"},
      {"construct", "--n", "10", "--p", "1", "--calibrate", "--samples", "2000"},
  };
  for (const auto& args : commands) {
    std::vector<std::string> one{"--threads", "1"}, four{"--threads", "4"};
    one.insert(one.end(), args.begin(), args.end());
    four.insert(four.end(), args.begin(), args.end());
    const auto a = call(one), b = call(four);
    CHECK(a.code == b.code);
    CHECK(obstruct::cli::payload(a.report()) == obstruct::cli::payload(b.report()));
    CHECK(a.report()["run"]["threads"] == 1);
    CHECK(b.report()["run"]["threads"] == 4);
    CHECK_FALSE(obstruct::cli::payload(a.report()).contains("run"));
  }
}
