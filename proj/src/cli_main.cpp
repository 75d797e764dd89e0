#include "spinlab/cli.hpp"

#include "spinlab/pauli.hpp"
#include "spinlab/units.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>

#ifndef SPINLAB_VERSION
#define SPINLAB_VERSION "0.0.0"
#endif

namespace spinlab::cli {

namespace {

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

std::string option_names(const std::string& key) {
  std::string names = "--" + key;
  if (const auto d = dashed(key); d != key) names += ",--" + d;
  return names;
}

struct Subcommand {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> flags;
};

}  // namespace

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hidden-variable spin models, Bell tests and a Pauli equation solver.", "spinlab"};
  app.set_version_flag("--version", std::string(SPINLAB_VERSION));
  app.require_subcommand(1);

  std::map<std::string, Subcommand> subs;
  for (const auto& name : subcommands()) {
    auto& s = subs[name];
    s.app = app.add_subcommand(name);
    s.app->add_option("--config", s.config_path, "key = value or JSON config file");
    std::vector<ParamSpec> specs = common_params();
    const auto& own = subcommand_params(name);
    specs.insert(specs.end(), own.begin(), own.end());
    for (const auto& p : specs) {
      std::string help = p.help;
      if (!p.default_value.empty()) help += " [" + p.default_value + "]";
      s.app->add_option(option_names(p.key), s.flags[p.key], help);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << SPINLAB_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Help requested on a subcommand surfaces here too.
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kOk;
    }
    err << "spinlab: " << e.what() << "\n";
    return kConfigError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  auto& s = subs.at(name);
  try {
    RawConfig file;
    if (!s.config_path.empty()) file = parse_config_file(s.config_path);
    RawConfig flags;
    for (const auto& [key, value] : s.flags) {
      const auto* opt = s.app->get_option("--" + key);
      if (opt->count() > 0) flags[key] = {value, 0};
    }
    RunConfig config = RunConfig::resolve(name, file, flags);
    if (!flags.count("out") && !file.count("out"))
      if (const char* env = std::getenv("SPINLAB_OUT_DIR"); env && *env) config.set_out_dir(env);

    const RunResult result = run(config);
    out << result.summary_json << "\n";
    if (!result.passed) {
      err << "spinlab: " << name << " check failed\n";
      return kFailure;
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "spinlab: config error";
    if (e.line() > 0) err << " (line " << e.line() << ")";
    err << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "spinlab: invalid argument: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConvergenceError& e) {
    err << "spinlab: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const NumericalBreakdown& e) {
    err << "spinlab: " << e.what() << "\n";
    return kConvergenceError;
  } catch (const std::exception& e) {
    err << "spinlab: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace spinlab::cli
