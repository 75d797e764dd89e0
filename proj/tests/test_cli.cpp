#include <doctest.h>

#include "spinlab/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace spinlab::cli;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "spinlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spinlab-cli-" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("key = value parsing") {
  const auto raw = parse_config_text("# comment\nseed = 7\n\n  samples=1000   # trailing\nstate = psi+\n");
  CHECK(raw.at("seed").value == "7");
  CHECK(raw.at("seed").line == 2);
  CHECK(raw.at("samples").value == "1000");
  CHECK(raw.at("samples").line == 4);
  CHECK(raw.at("state").value == "psi+");

  const auto line_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("seed = 1\nnonsense\n") == 2);
  CHECK(line_of("seed = 1\n = 3\n") == 2);
  CHECK(line_of("seed =\n") == 1);
  CHECK(line_of("seed = 1\n\nseed = 2\n") == 3);
}

TEST_CASE("JSON configs") {
  const auto raw = parse_config_text(R"({"seed": 5, "m_values": [1, 2, 3], "state": "phi-"})");
  CHECK(raw.at("seed").value == "5");
  CHECK(raw.at("m_values").value == "1,2,3");
  CHECK(raw.at("state").value == "phi-");
  CHECK_THROWS_AS(parse_config_text("{\"seed\": "), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"a": {"b": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"a": ["x"]})"), ConfigError);
}

TEST_CASE("resolution order and validation") {
  const auto defaults = RunConfig::resolve("bell-test", {}, {});
  CHECK(defaults.seed() == 42);
  CHECK(defaults.samples() == 1000000);
  CHECK(defaults.format() == "csv");
  CHECK(RunConfig::resolve("bell-delay", {}, {}).samples() == 1000000);

  const RawConfig file{{"seed", {"7", 1}}, {"samples", {"500", 2}}};
  const RawConfig flags{{"samples", {"900", 0}}};
  const auto cfg = RunConfig::resolve("bell-test", file, flags);
  CHECK(cfg.seed() == 7);
  CHECK(cfg.samples() == 900);

  try {
    RunConfig::resolve("bell-test", {{"bogus", {"1", 4}}}, {});
    FAIL("unknown key accepted");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 4);
    CHECK(e.key() == "bogus");
  }
  CHECK_THROWS_AS(RunConfig::resolve("bell-delay", {{"tau_plus", {"-1", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("bell-delay", {{"delays", {"0:1:-0.1", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("variational", {{"m_values", {"1,-2", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("variational", {{"m_values", {"1.5", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("stern-gerlach", {{"order", {"-1", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("stern-gerlach", {{"transit_time", {"0", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("pauli", {{"nodes", {"100", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("pauli", {{"dt", {"-1e-3", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("bell-test", {{"format", {"xml", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("bell-test", {{"samples", {"many", 1}}}, {}), ConfigError);
  CHECK_THROWS_AS(RunConfig::resolve("nope", {}, {}), ConfigError);
}

TEST_CASE("lists and ranges") {
  const auto cfg = RunConfig::resolve("bell-delay", {{"delays", {"0:1:0.25", 1}}}, {});
  CHECK(cfg.real_list("delays") == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
  CHECK(RunConfig::resolve("bell-delay", {}, {}).real_list("delays").size() == 101);
  const auto v = RunConfig::resolve("variational", {{"divergences", {"renyi,kl", 1}}}, {});
  CHECK(v.text_list("divergences") == std::vector<std::string>{"renyi", "kl"});
}

TEST_CASE("every subcommand has documented keys") {
  for (const auto& sub : subcommands()) {
    CHECK_NOTHROW(RunConfig::resolve(sub, {}, {}));
    for (const auto& p : subcommand_params(sub)) CHECK_FALSE(p.help.empty());
  }
}

TEST_CASE("bell-test run") {
  const auto dir = scratch("bell");
  const auto r = invoke({"bell-test", "--seed", "42", "--out", dir.string(), "--format", "json"});
  REQUIRE(r.code == kOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "bell-test.json"));
  const double s = doc.at("S").get<double>();
  CHECK(s >= 2.80);
  CHECK(s <= 2.86);
  CHECK(doc.at("settings").size() == 4);
  const auto m = manifest(dir);
  CHECK(m.at("subcommand") == "bell-test");
  CHECK(m.at("seed") == 42);
  CHECK(m.at("config").at("samples") == "1000000");
  CHECK(m.at("outputs") == nlohmann::json::array({"bell-test.json"}));
  CHECK(m.contains("wall_clock_seconds"));
  CHECK(m.at("config_hash").get<std::string>().size() == 16);
}

TEST_CASE("bell-delay sweep decreases toward sqrt 2") {
  const auto dir = scratch("delay");
  const auto r = invoke({"bell-delay", "--out", dir.string()});
  REQUIRE(r.code == kOk);
  const auto m = manifest(dir);
  CHECK(m.at("summary").at("S_first").get<double>() == doctest::Approx(2.828).epsilon(0.02));
  CHECK(m.at("summary").at("S_last").get<double>() == doctest::Approx(1.414).epsilon(0.02));
  CHECK(m.at("summary").at("monotone") == true);
  const std::string csv = slurp(dir / "bell-delay.csv");
  CHECK(csv.rfind("delay,S_analytic,S_monte_carlo,S_standard_error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 102);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("identical config and seed give identical bytes") {
  const std::vector<std::vector<std::string>> runs{
      {"variational", "--m_values", "1,2"},
      {"stern-gerlach", "--samples", "20000"},
      {"bell-test", "--samples", "20000"},
      {"bell-delay", "--samples", "2000", "--delays", "0:2:0.5"},
      {"pauli", "--steps", "50", "--snapshot_every", "25", "--scenario", "larmor"},
      {"fluctuations", "--samples", "20000"},
      {"oracle-check"},
  };
  for (const auto& args : runs) {
    const auto a = scratch("det-a"), b = scratch("det-b");
    auto first = args, second = args;
    first.insert(first.end(), {"--out", a.string()});
    second.insert(second.end(), {"--out", b.string()});
    REQUIRE(invoke(first).code == kOk);
    REQUIRE(invoke(second).code == kOk);
    const auto outputs = manifest(a).at("outputs");
    REQUIRE(!outputs.empty());
    for (const auto& name : outputs) {
      const std::string n = name.get<std::string>();
      CHECK_MESSAGE(slurp(a / n) == slurp(b / n), args[0] << ": " << n);
    }
    CHECK(manifest(a).at("config_hash") == manifest(b).at("config_hash"));
  }
}

TEST_CASE("config file, flags and dash aliases") {
  const auto dir = scratch("file");
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "samples = 1000\nseed = 3\na_prime = 0.5\n";
  const auto r = invoke({"bell-test", "--config", cfg.string(), "--a-prime", "0.25", "--out", (dir / "o").string()});
  REQUIRE(r.code == kOk);
  const auto m = manifest(dir / "o");
  CHECK(m.at("config").at("samples") == "1000");
  CHECK(m.at("config").at("a_prime") == "0.25");
  CHECK(m.at("seed") == 3);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("codes");
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "seed = 1\nwhat = 2\n";
  auto r = invoke({"bell-test", "--config", bad.string(), "--out", dir.string()});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(invoke({"bell-test", "--samples", "-5", "--out", dir.string()}).code == kConfigError);
  CHECK(invoke({"bell-test", "--no-such-flag", "1"}).code == kConfigError);
  CHECK(invoke({}).code == kConfigError);
  CHECK(invoke({"bell-test", "--config", (dir / "missing.cfg").string()}).code == kConfigError);
  CHECK(invoke({"variational", "--max_iterations", "2", "--out", dir.string()}).code == kConvergenceError);
  r = invoke({"pauli", "--scenario", "larmor", "--B_z", "1e308", "--mass", "1e-300", "--steps", "3", "--out",
              dir.string()});
  CHECK(r.code == kConvergenceError);
  CHECK(r.err.find("step 1") != std::string::npos);
  CHECK(invoke({"--version"}).code == kOk);
  CHECK(invoke({"bell-test", "--help"}).code == kOk);
}

TEST_CASE("output directory from the environment") {
  const auto dir = scratch("env");
  ::setenv("SPINLAB_OUT_DIR", dir.string().c_str(), 1);
  const auto r = invoke({"oracle-check", "--pairs", "5"});
  ::unsetenv("SPINLAB_OUT_DIR");
  REQUIRE(r.code == kOk);
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "oracle-check.csv"));
  // An explicit flag wins over the environment.
  const auto other = scratch("env-flag");
  ::setenv("SPINLAB_OUT_DIR", dir.string().c_str(), 1);
  REQUIRE(invoke({"oracle-check", "--pairs", "5", "--out", other.string()}).code == kOk);
  ::unsetenv("SPINLAB_OUT_DIR");
  CHECK(fs::exists(other / "manifest.json"));
}

TEST_CASE("JSON outputs parse") {
  for (const std::string sub : {"variational", "stern-gerlach", "fluctuations", "oracle-check", "pauli"}) {
    const auto dir = scratch("json-" + sub);
    std::vector<std::string> args{sub, "--format", "json", "--out", dir.string()};
    if (sub == "stern-gerlach" || sub == "fluctuations") args.insert(args.end(), {"--samples", "20000"});
    if (sub == "pauli") args.insert(args.end(), {"--steps", "20", "--snapshot_every", "10"});
    REQUIRE(invoke(args).code == kOk);
    for (const auto& name : manifest(dir).at("outputs")) {
      CHECK_FALSE(nlohmann::json::parse(slurp(dir / name.get<std::string>()), nullptr, false).is_discarded());
    }
  }
}
