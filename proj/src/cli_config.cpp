#include "spinlab/cli.hpp"

#include "spinlab/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace spinlab::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_real(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::int64_t> to_integer(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec == std::errc() && res.ptr == end) return v;
  // Allow 1e6 style for counts.
  const auto r = to_real(s);
  if (r && std::floor(*r) == *r && std::abs(*r) < 9.0e18) return static_cast<std::int64_t>(*r);
  return std::nullopt;
}

const std::string kPiThird = "1.0471975511965976";

ParamSpec real(std::string key, std::string def, std::string help, std::optional<double> min = std::nullopt,
               bool positive = false) {
  return {std::move(key), ParamType::Real, std::move(def), std::move(help), min, positive, {}};
}
ParamSpec integer(std::string key, std::string def, std::string help, std::optional<double> min = std::nullopt) {
  return {std::move(key), ParamType::Integer, std::move(def), std::move(help), min, false, {}};
}
ParamSpec choice(std::string key, std::string def, std::string help, std::vector<std::string> choices) {
  return {std::move(key), ParamType::Text, std::move(def), std::move(help), std::nullopt, false, std::move(choices)};
}

std::vector<ParamSpec> bell_angles() {
  return {
      choice("state", "psi-", "Bell state", {"psi-", "psi+", "phi-", "phi+"}),
      real("a", "0", "Alice setting a (rad)"),
      real("a_prime", "1.5707963267948966", "Alice setting a' (rad)"),
      real("b", "0.7853981633974483", "Bob setting b (rad)"),
      real("b_prime", "2.356194490192345", "Bob setting b' (rad)"),
  };
}

std::map<std::string, std::vector<ParamSpec>> build_tables() {
  std::map<std::string, std::vector<ParamSpec>> t;
  t["variational"] = {
      {"divergences", ParamType::TextList, "tsallis,renyi,kl", "divergences to solve", std::nullopt, false,
       {"tsallis", "renyi", "kl"}},
      {"m_values", ParamType::RealList, "1,2,3", "orders m (integers >= 1)", 1.0, false, {}},
      integer("nodes", "2048", "theta grid nodes", 3),
      real("g_s", "2", "g-factor", std::nullopt, true),
      real("L_s", "0.5", "angular momentum magnitude", std::nullopt, true),
      real("delta_phi", "1", "precession window", std::nullopt, true),
      real("hbar", "1", "reduced Planck constant", std::nullopt, true),
      real("tolerance", "1e-10", "successive-iterate L-inf stop", std::nullopt, true),
      real("relaxation", "0.5", "fixed-point mixing weight in (0,1]", std::nullopt, true),
      integer("max_iterations", "10000", "iteration budget", 1),
      integer("density_stride", "16", "grid stride for the density table", 1),
  };
  t["stern-gerlach"] = {
      real("beta", kPiThird, "second apparatus tilt (rad)"),
      real("beta1", "0", "first apparatus tilt for the two-apparatus check (rad)"),
      integer("order", "3", "cosine power m for the displacement histogram", 0),
      real("eta", "1", "field gradient", std::nullopt, true),
      real("transit_time", "1", "time inside the magnet", std::nullopt, true),
      integer("bins", "100", "histogram bins", 1),
      real("charge", "1", "e", std::nullopt, true),
      real("hbar", "1", "reduced Planck constant", std::nullopt, true),
      real("mass", "1", "m_e", std::nullopt, true),
  };
  t["bell-test"] = bell_angles();
  t["bell-test"].push_back(choice("mode", "monte-carlo", "estimator", {"monte-carlo", "analytic"}));
  t["bell-delay"] = bell_angles();
  for (auto p : std::vector<ParamSpec>{
           real("tau_plus", "1", "mean up dwell", std::nullopt, true),
           real("tau_minus", "1", "mean down dwell", std::nullopt, true),
           choice("dwell", "exponential", "dwell distribution", {"exponential", "fixed"}),
           choice("scope", "z", "degraded branches", {"z", "both"}),
           {"delays", ParamType::RealList, "0:10:0.1", "delays (list or start:stop:step)", 0.0, false, {}},
       })
    t["bell-delay"].push_back(std::move(p));
  t["pauli"] = {
      choice("scenario", "free", "initial state and fields", {"free", "larmor", "harmonic"}),
      choice("scheme", "split", "time stepper", {"split", "cn"}),
      integer("dimension", "1", "1 or 2", 1),
      integer("nodes", "256", "nodes per axis (power of two >= 16)", 16),
      real("extent", "20", "box length", std::nullopt, true),
      real("dt", "1e-3", "time step", std::nullopt, true),
      integer("steps", "1000", "number of steps", 0),
      real("width", "1", "packet width (free, larmor)", std::nullopt, true),
      real("x0", "0", "packet centre"),
      real("k0", "0", "packet wavenumber"),
      real("B_z", "1", "uniform B_z (larmor)"),
      real("A_x", "0", "uniform A_x"),
      real("omega", "1", "well frequency (harmonic)", std::nullopt, true),
      integer("snapshot_every", "100", "steps between snapshots", 1),
      integer("node_stride", "1", "grid stride in snapshots", 1),
      real("charge", "1", "e", std::nullopt, true),
      real("mass", "1", "m", std::nullopt, true),
      real("hbar", "1", "reduced Planck constant", std::nullopt, true),
  };
  t["fluctuations"] = {
      real("mass", "1", "particle mass", std::nullopt, true),
      real("dt", "1", "fluctuation time step", std::nullopt, true),
      real("hbar", "1", "reduced Planck constant", std::nullopt, true),
      real("omega", "1", "rotation frequency", std::nullopt, true),
      integer("radius_nodes", "4097", "u-grid nodes for the variational solve", 3),
  };
  t["oracle-check"] = {
      integer("pairs", "100", "random angle pairs per check", 1),
  };
  return t;
}

const std::map<std::string, std::vector<ParamSpec>>& tables() {
  static const auto t = build_tables();
  return t;
}

std::string default_samples(const std::string& sub) {
  if (sub == "variational" || sub == "pauli" || sub == "oracle-check") return "0";
  return "1000000";
}

}  // namespace

const std::vector<ParamSpec>& common_params() {
  static const std::vector<ParamSpec> p = {
      integer("seed", "42", "random seed", 0),
      integer("samples", "", "Monte Carlo sample count", 0),
      {"out", ParamType::Text, "spinlab-out", "output directory", std::nullopt, false, {}},
      choice("format", "csv", "result format", {"csv", "json"}),
  };
  return p;
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : tables()) v.push_back(k);
    return v;
  }();
  return s;
}

const std::vector<ParamSpec>& subcommand_params(std::string_view subcommand) {
  const auto it = tables().find(std::string(subcommand));
  if (it == tables().end()) throw ConfigError("unknown subcommand '" + std::string(subcommand) + "'");
  return it->second;
}

RawConfig parse_config_text(std::string_view text) {
  RawConfig out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("JSON config must be an object");
    for (const auto& [key, value] : doc.items()) {
      std::string v;
      if (value.is_string()) {
        v = value.get<std::string>();
      } else if (value.is_number() || value.is_boolean()) {
        v = value.dump();
      } else if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
          if (!value[i].is_number()) throw ConfigError("array for '" + key + "' must hold numbers", key);
          v += (i ? "," : "") + value[i].dump();
        }
      } else {
        throw ConfigError("unsupported value for '" + key + "'", key);
      }
      out[key] = {v, 0};
    }
    return out;
  }

  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", {}, line_no);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", {}, line_no);
    if (value.empty()) throw ConfigError("empty value for '" + key + "'", key, line_no);
    if (out.count(key)) throw ConfigError("duplicate key '" + key + "'", key, line_no);
    out[key] = {value, line_no};
  }
  return out;
}

RawConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace {

[[noreturn]] void bad_value(const ParamSpec& spec, const std::string& value, int line, const std::string& why) {
  throw ConfigError("invalid value '" + value + "' for '" + spec.key + "': " + why, spec.key, line);
}

void check_number(const ParamSpec& spec, double v, const std::string& raw, int line) {
  if (spec.positive && !(v > 0)) bad_value(spec, raw, line, "must be positive");
  if (spec.min && v < *spec.min) bad_value(spec, raw, line, "must be >= " + format_number(*spec.min));
}

std::vector<double> parse_real_list(const std::string& raw) {
  std::vector<double> out;
  if (raw.find(':') != std::string::npos) {
    const auto parts = split(raw, ':');
    if (parts.size() != 3) throw std::invalid_argument("range needs start:stop:step");
    const auto a = to_real(parts[0]), b = to_real(parts[1]), h = to_real(parts[2]);
    if (!a || !b || !h || !(*h > 0) || *b < *a) throw std::invalid_argument("bad range");
    const auto count = static_cast<std::int64_t>(std::llround((*b - *a) / *h));
    if (count > 1000000) throw std::invalid_argument("range too long");
    for (std::int64_t i = 0; i <= count; ++i) out.push_back(*a + double(i) * *h);
    return out;
  }
  for (const auto& part : split(raw, ',')) {
    const auto v = to_real(part);
    if (!v) throw std::invalid_argument("'" + part + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

void validate(const ParamSpec& spec, const std::string& raw, int line) {
  switch (spec.type) {
    case ParamType::Real: {
      const auto v = to_real(raw);
      if (!v) bad_value(spec, raw, line, "not a number");
      check_number(spec, *v, raw, line);
      break;
    }
    case ParamType::Integer: {
      const auto v = to_integer(raw);
      if (!v) bad_value(spec, raw, line, "not an integer");
      check_number(spec, double(*v), raw, line);
      break;
    }
    case ParamType::Text:
      if (!spec.choices.empty() && std::find(spec.choices.begin(), spec.choices.end(), raw) == spec.choices.end())
        bad_value(spec, raw, line, "expected one of the documented choices");
      break;
    case ParamType::RealList: {
      std::vector<double> values;
      try {
        values = parse_real_list(raw);
      } catch (const std::invalid_argument& e) {
        bad_value(spec, raw, line, e.what());
      }
      if (values.empty()) bad_value(spec, raw, line, "empty list");
      for (double v : values) check_number(spec, v, raw, line);
      break;
    }
    case ParamType::TextList:
      for (const auto& w : split(raw, ','))
        if (std::find(spec.choices.begin(), spec.choices.end(), w) == spec.choices.end())
          bad_value(spec, raw, line, "unknown entry '" + w + "'");
      break;
  }
}

}  // namespace

RunConfig RunConfig::resolve(const std::string& subcommand, const RawConfig& file, const RawConfig& flags) {
  RunConfig cfg;
  cfg.subcommand_ = subcommand;
  for (const auto& spec : common_params()) cfg.specs_[spec.key] = spec;
  for (const auto& spec : subcommand_params(subcommand)) cfg.specs_[spec.key] = spec;
  cfg.specs_["samples"].default_value = default_samples(subcommand);

  std::map<std::string, int> lines;
  for (const auto& [key, spec] : cfg.specs_) cfg.values_[key] = spec.default_value;
  for (const RawConfig* src : {&file, &flags})
    for (const auto& [key, entry] : *src) {
      if (!cfg.specs_.count(key))
        throw ConfigError("unknown key '" + key + "' for subcommand " + subcommand, key, entry.line);
      cfg.values_[key] = entry.value;
      lines[key] = entry.line;
    }
  for (const auto& [key, spec] : cfg.specs_) validate(spec, cfg.values_[key], lines.count(key) ? lines[key] : 0);

  if (subcommand == "variational") {
    for (double m : cfg.real_list("m_values"))
      if (std::floor(m) != m) throw ConfigError("m_values must be integers", "m_values", lines["m_values"]);
  }
  if (subcommand == "pauli") {
    const auto dim = cfg.integer("dimension");
    if (dim != 1 && dim != 2) throw ConfigError("dimension must be 1 or 2", "dimension", lines["dimension"]);
    const auto n = cfg.integer("nodes");
    if ((n & (n - 1)) != 0) throw ConfigError("nodes must be a power of two", "nodes", lines["nodes"]);
  }
  return cfg;
}

double RunConfig::real(const std::string& key) const { return *to_real(values_.at(key)); }

std::int64_t RunConfig::integer(const std::string& key) const { return *to_integer(values_.at(key)); }

std::uint64_t RunConfig::seed() const {
  const std::string& raw = values_.at("seed");
  std::uint64_t v = 0;
  const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (res.ec == std::errc() && res.ptr == raw.data() + raw.size()) return v;
  return static_cast<std::uint64_t>(integer("seed"));
}

std::uint64_t RunConfig::samples() const { return static_cast<std::uint64_t>(integer("samples")); }

const std::string& RunConfig::text(const std::string& key) const { return values_.at(key); }

std::vector<double> RunConfig::real_list(const std::string& key) const { return parse_real_list(values_.at(key)); }

std::vector<std::string> RunConfig::text_list(const std::string& key) const { return split(values_.at(key), ','); }

}  // namespace spinlab::cli
