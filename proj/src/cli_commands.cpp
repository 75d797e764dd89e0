#include "spinlab/cli.hpp"

#include "spinlab/csv.hpp"
#include "spinlab/entanglement.hpp"
#include "spinlab/fluctuations.hpp"
#include "spinlab/orientation.hpp"
#include "spinlab/pauli.hpp"
#include "spinlab/qm_oracle.hpp"
#include "spinlab/stern_gerlach.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef SPINLAB_VERSION
#define SPINLAB_VERSION "0.0.0"
#endif

namespace spinlab::cli {

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Output {
  std::vector<std::pair<std::string, std::string>> files;  // name, content
  Json summary = Json::object();
  bool passed = true;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

// JSON cannot carry NaN; such values become null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string config_hash(const RunConfig& config) {
  std::string canon = config.subcommand() + "\n";
  for (const auto& [k, v] : config.values())
    if (k != "out") canon += k + "=" + v + "\n";
  std::ostringstream ss;
  ss << std::hex << hash_name(canon);
  return ss.str();
}

bool as_json(const RunConfig& c) { return c.format() == "json"; }

// ---------------------------------------------------------------- variational

Divergence divergence_of(const std::string& name) {
  if (name == "tsallis") return Divergence::Tsallis;
  if (name == "renyi") return Divergence::Renyi;
  return Divergence::KullbackLeibler;
}

Output run_variational(const RunConfig& c) {
  const ThetaGrid<double> grid(c.integer("nodes"));
  VariationalOptions opts;
  opts.tolerance = c.real("tolerance");
  opts.relaxation = c.real("relaxation");
  opts.max_iterations = int(c.integer("max_iterations"));
  const auto stride = c.integer("density_stride");

  std::ostringstream table, density;
  CsvWriter tcsv(table, {"divergence", "m", "iterations", "residual", "linf_to_reference", "total_action",
                         "reference_action"});
  CsvWriter dcsv(density, {"divergence", "m", "theta", "density", "reference"});
  Json rows = Json::array();
  double worst_cos_power = 0.0;

  for (const auto& name : c.text_list("divergences")) {
    const Divergence div = divergence_of(name);
    std::vector<int> orders;
    if (div == Divergence::KullbackLeibler) orders = {0};
    else
      for (double m : c.real_list("m_values")) orders.push_back(int(m));

    for (int m : orders) {
      ActionSpec<double> spec;
      spec.g_s = c.real("g_s");
      spec.L_s = c.real("L_s");
      spec.delta_phi = c.real("delta_phi");
      spec.hbar = c.real("hbar");
      spec.divergence = div;
      spec.order = DivergenceOrder(div == Divergence::KullbackLeibler ? 1 : m);
      const auto sol = variational_solve(spec, grid, opts);

      Eigen::ArrayXd ref;
      if (div == Divergence::KullbackLeibler) {
        const double kappa = spec.g_s * spec.L_s / spec.hbar;
        ref = (kappa * grid.nodes().cos()).exp() / (kPi * std::cyl_bessel_i(0.0, kappa));
      } else {
        ref = grid.nodes().cos().pow(2.0 * m) / normalization_constant(m);
      }
      const double linf = (sol.density.values() - ref).abs().maxCoeff();
      if (div != Divergence::KullbackLeibler) worst_cos_power = std::max(worst_cos_power, linf);
      const auto ref_density = GridDensity<double>::normalized(grid, ref);
      const double a_sol = total_action(sol.density, spec);
      const double a_ref = total_action(ref_density, spec);

      tcsv.row(std::string_view(name), m, sol.iterations, sol.residual, linf, a_sol, a_ref);
      rows.push_back({{"divergence", name}, {"m", m}, {"iterations", sol.iterations}, {"residual", sol.residual},
                      {"linf_to_reference", linf}, {"total_action", a_sol}, {"reference_action", a_ref}});
      for (Eigen::Index i = 0; i < grid.size(); i += stride)
        dcsv.row(std::string_view(name), m, grid.nodes()(i), sol.density.values()(i), ref(i));
    }
  }

  Output out;
  out.summary["max_linf_cos_power"] = worst_cos_power;
  out.summary["solves"] = rows.size();
  if (as_json(c)) {
    out.files.push_back({"variational.json", Json{{"solves", rows}}.dump(2) + "\n"});
  } else {
    out.files.push_back({"variational.csv", table.str()});
    out.files.push_back({"variational_density.csv", density.str()});
  }
  return out;
}

// -------------------------------------------------------------- stern-gerlach

Output run_stern_gerlach(const RunConfig& c) {
  const std::uint64_t n = c.samples();
  if (n < 1) throw ConfigError("samples must be >= 1", "samples");
  const double beta = c.real("beta");
  const double beta1 = c.real("beta1");
  const std::uint64_t seed = c.seed();

  const double p_up = rotated_up_probability(beta);
  const auto tally = measure_many(rotated_outcome_density(beta), n, RandomStream(seed, "stern-gerlach/rotated"));
  const double p_two = two_apparatus_up_probability(beta1, beta);
  const auto tally2 =
      measure_many(TwoPointDensity(p_two), n, RandomStream(seed, "stern-gerlach/two-apparatus"));

  ApparatusConfig app;
  app.gradient = c.real("eta");
  app.transit_time = c.real("transit_time");
  app.units = {c.real("hbar"), c.real("charge"), c.real("mass")};
  const int m = int(c.integer("order"));
  app.order = m;
  const auto hist = displacement_distribution(m, app, n, RandomStream(seed, "stern-gerlach/displacement"),
                                              std::size_t(c.integer("bins")));

  double chi2 = 0.0;
  int dof = 0;
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double expected =
        double(hist.total) * displacement_interval_probability(hist.edges[i], hist.edges[i + 1], m, app);
    if (expected < 5.0) continue;
    const double d = double(hist.counts[i]) - expected;
    chi2 += d * d / expected;
    ++dof;
  }

  const auto se = [n](double p) { return std::sqrt(p * (1 - p) / double(n)); };
  std::ostringstream meas;
  {
    CsvWriter csv(meas, {"quantity", "analytic", "monte_carlo", "standard_error"});
    csv.row(std::string_view("up_fraction_rotated"), p_up, tally.up_fraction(), se(p_up));
    csv.row(std::string_view("up_fraction_two_apparatus"), p_two, tally2.up_fraction(), se(p_two));
  }
  std::ostringstream hcsv;
  write_csv(hist, hcsv);

  Output out;
  out.summary["up_fraction_rotated"] = tally.up_fraction();
  out.summary["up_fraction_rotated_analytic"] = p_up;
  out.summary["up_fraction_two_apparatus"] = tally2.up_fraction();
  out.summary["displacement_mean"] = hist.mean();
  out.summary["displacement_skewness"] = hist.skewness();
  out.summary["displacement_chi2"] = chi2;
  out.summary["displacement_chi2_bins"] = dof;
  if (as_json(c)) {
    Json bins = Json::array();
    for (std::size_t i = 0; i < hist.bins(); ++i)
      bins.push_back({{"bin_left", hist.edges[i]}, {"bin_right", hist.edges[i + 1]}, {"count", hist.counts[i]},
                      {"density", hist.density(i)}});
    Json doc{{"up_fraction_rotated", {{"analytic", p_up}, {"monte_carlo", tally.up_fraction()}}},
             {"up_fraction_two_apparatus", {{"analytic", p_two}, {"monte_carlo", tally2.up_fraction()}}},
             {"histogram", bins}};
    out.files.push_back({"stern-gerlach.json", doc.dump(2) + "\n"});
  } else {
    out.files.push_back({"stern-gerlach.csv", meas.str()});
    out.files.push_back({"stern-gerlach_histogram.csv", hcsv.str()});
  }
  return out;
}

// ------------------------------------------------------------------ bell-test

MeasurementPlan plan_from(const RunConfig& c) {
  MeasurementPlan plan;
  plan.a = c.real("a");
  plan.a_prime = c.real("a_prime");
  plan.b = c.real("b");
  plan.b_prime = c.real("b_prime");
  plan.samples = std::max<std::uint64_t>(c.samples(), 1);
  return plan;
}

Output run_bell_test(const RunConfig& c) {
  const MeasurementPlan plan = plan_from(c);
  const BellPairModel model = BellPairModel::from(parse_bell_state(c.text("state")));
  const bool mc = c.text("mode") == "monte-carlo";
  if (mc && c.samples() < 1) throw ConfigError("samples must be >= 1", "samples");
  const ChshResult r = chsh(plan, model, mc ? EstimationMode::MonteCarlo : EstimationMode::Analytic, c.seed());
  const ChshResult exact = chsh(plan, model, EstimationMode::Analytic);

  Output out;
  out.summary["S"] = r.S;
  out.summary["S_standard_error"] = r.S_standard_error;
  out.summary["S_analytic"] = exact.S;
  if (as_json(c)) {
    static constexpr std::array<const char*, 4> labels{"ab", "ab'", "a'b", "a'b'"};
    Json settings = Json::array();
    const auto s = plan.settings();
    for (std::size_t k = 0; k < 4; ++k)
      settings.push_back({{"setting", labels[k]},
                          {"a", s[k].first},
                          {"b", s[k].second},
                          {"counts", r.counts[k]},
                          {"E", r.E[k]},
                          {"standard_error", r.standard_error[k]},
                          {"E_analytic", exact.E[k]}});
    Json doc{{"state", c.text("state")}, {"mode", c.text("mode")},    {"samples", plan.samples},
             {"settings", settings},     {"S", r.S},                  {"S_standard_error", r.S_standard_error},
             {"S_analytic", exact.S}};
    out.files.push_back({"bell-test.json", doc.dump(2) + "\n"});
  } else {
    std::ostringstream ss;
    write_csv(r, plan, ss);
    out.files.push_back({"bell-test.csv", ss.str()});
  }
  return out;
}

// ----------------------------------------------------------------- bell-delay

Output run_bell_delay(const RunConfig& c) {
  MeasurementPlan plan = plan_from(c);
  if (c.samples() < 1) throw ConfigError("samples must be >= 1", "samples");
  plan.dwell.tau_plus = c.real("tau_plus");
  plan.dwell.tau_minus = c.real("tau_minus");
  plan.dwell.distribution =
      c.text("dwell") == "fixed" ? DwellDistribution::FixedDuration : DwellDistribution::Exponential;
  plan.scope = c.text("scope") == "both" ? DelayScope::BothAxes : DelayScope::ZOnly;
  const BellPairModel model = BellPairModel::from(parse_bell_state(c.text("state")));
  const auto rows = delay_sweep(plan, model, c.real_list("delays"), c.seed());

  // Monte Carlo monotonicity, allowing 0.01 of upward noise between neighbours.
  double max_rise = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    max_rise = std::max(max_rise, rows[i].S_monte_carlo - rows[i - 1].S_monte_carlo);

  Output out;
  out.summary["S_first"] = rows.front().S_monte_carlo;
  out.summary["S_last"] = rows.back().S_monte_carlo;
  out.summary["S_analytic_last"] = number(rows.back().S_analytic);
  out.summary["max_rise"] = max_rise;
  out.summary["monotone"] = max_rise <= 0.01;
  if (as_json(c)) {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"delay", r.delay},
                     {"S_analytic", number(r.S_analytic)},
                     {"S_monte_carlo", r.S_monte_carlo},
                     {"S_standard_error", r.S_standard_error}});
    out.files.push_back({"bell-delay.json", Json{{"state", c.text("state")}, {"scope", c.text("scope")},
                                                 {"sweep", arr}}
                                                .dump(2) +
                                                "\n"});
  } else {
    std::ostringstream ss;
    write_csv(rows, ss);
    out.files.push_back({"bell-delay.csv", ss.str()});
  }
  return out;
}

// ---------------------------------------------------------------------- pauli

Output run_pauli(const RunConfig& c) {
  const SpatialGrid<double> grid(int(c.integer("dimension")), c.integer("nodes"), c.real("extent"));
  FieldConfig<double> fc;
  fc.charge = c.real("charge");
  fc.mass = c.real("mass");
  fc.hbar = c.real("hbar");
  if (c.real("A_x") != 0.0) fc.A_x = Eigen::ArrayXd::Constant(grid.size(), c.real("A_x"));

  const std::string scenario = c.text("scenario");
  double width = c.real("width");
  double weight_plus = 1.0;
  if (scenario == "larmor") {
    fc.B_z = Eigen::ArrayXd::Constant(grid.size(), c.real("B_z"));
    weight_plus = 0.5;
  } else if (scenario == "harmonic") {
    const double w = c.real("omega");
    const auto x = grid.x();
    Eigen::ArrayXd v = 0.5 * fc.mass * w * w * x.square();
    if (grid.dimension() == 2) v += 0.5 * fc.mass * w * w * grid.y().square();
    fc.phi = -v / fc.charge;
    width = std::sqrt(fc.hbar / (2 * fc.mass * w));
  }
  SpinorField<double> field = gaussian_packet(grid, width, c.real("x0"), c.real("k0"), weight_plus);

  const double dt = c.real("dt");
  const auto steps = c.integer("steps");
  const auto every = c.integer("snapshot_every");
  const auto stride = c.integer("node_stride");
  const Scheme scheme = c.text("scheme") == "cn" ? Scheme::CrankNicolson : Scheme::SplitStep;

  std::ostringstream csv_text;
  std::optional<CsvWriter> csv;
  if (grid.dimension() == 1)
    csv.emplace(csv_text, std::initializer_list<std::string_view>{"step", "time", "x", "rho_plus", "rho_minus",
                                                                   "S_plus", "S_minus"});
  else
    csv.emplace(csv_text, std::initializer_list<std::string_view>{"step", "time", "x", "y", "rho_plus",
                                                                   "rho_minus", "S_plus", "S_minus"});
  Json snapshots = Json::array();

  const auto record = [&](std::int64_t n, const SpinorField<double>& f) {
    const auto d = madelung(f, fc.hbar);
    const double t = double(n) * dt;
    Json snap{{"step", n}, {"time", t}};
    Json xs = Json::array(), ys = Json::array(), rp = Json::array(), rm = Json::array(), sp = Json::array(),
         sm = Json::array();
    const Eigen::Index rows = grid.dimension() == 1 ? 1 : grid.nodes();
    for (Eigen::Index iy = 0; iy < rows; iy += (grid.dimension() == 1 ? 1 : stride))
      for (Eigen::Index ix = 0; ix < grid.nodes(); ix += stride) {
        const Eigen::Index k = grid.flat(ix, iy);
        const double x = grid.coordinate(ix);
        if (grid.dimension() == 1)
          csv->row(n, t, x, d.rho_plus(k), d.rho_minus(k), d.S_plus(k), d.S_minus(k));
        else
          csv->row(n, t, x, grid.coordinate(iy), d.rho_plus(k), d.rho_minus(k), d.S_plus(k), d.S_minus(k));
        if (as_json(c)) {
          xs.push_back(x);
          if (grid.dimension() == 2) ys.push_back(grid.coordinate(iy));
          rp.push_back(d.rho_plus(k));
          rm.push_back(d.rho_minus(k));
          sp.push_back(d.S_plus(k));
          sm.push_back(d.S_minus(k));
        }
      }
    if (as_json(c)) {
      snap["x"] = xs;
      if (grid.dimension() == 2) snap["y"] = ys;
      snap["rho_plus"] = rp;
      snap["rho_minus"] = rm;
      snap["S_plus"] = sp;
      snap["S_minus"] = sm;
      snapshots.push_back(std::move(snap));
    }
  };

  const bool spectral_energy = fc.A_x.size() == 0 || fc.uniform_vector_potential();
  const double e0 = spectral_energy ? energy(field, fc) : std::nan("");
  const auto [p0, m0] = spin_populations(field);
  double max_norm_drift = 0.0;
  double phase_prev = relative_phase(field);
  double phase_unwrapped = phase_prev;
  std::vector<double> times{0.0}, phases{phase_unwrapped};

  record(0, field);
  const auto observer = [&](std::int64_t n, const SpinorField<double>& f) {
    max_norm_drift = std::max(max_norm_drift, std::abs(norm(f) - 1.0));
    if (weight_plus > 0.0 && weight_plus < 1.0) {
      const double ph = relative_phase(f);
      double d = ph - phase_prev;
      d -= 2 * kPi * std::round(d / (2 * kPi));
      phase_unwrapped += d;
      phase_prev = ph;
      times.push_back(double(n) * dt);
      phases.push_back(phase_unwrapped);
    }
    if (n % every == 0) record(n, f);
  };
  field = evolve(field, fc, dt, steps, scheme, StepObserver<double>(observer));

  Output out;
  const auto [p1, m1] = spin_populations(field);
  out.summary["final_norm"] = norm(field);
  out.summary["max_norm_drift"] = max_norm_drift;
  out.summary["population_plus"] = p1;
  out.summary["population_minus"] = m1;
  out.summary["population_drift"] = std::max(std::abs(p1 - p0), std::abs(m1 - m0));
  if (spectral_energy) {
    const double e1 = energy(field, fc);
    out.summary["energy_initial"] = e0;
    out.summary["energy_final"] = e1;
  }
  out.summary["mean_x_final"] = mean_position(field);
  if (times.size() > 2) {
    // Least-squares slope of the unwrapped relative phase.
    const Eigen::Map<const Eigen::ArrayXd> t(times.data(), Eigen::Index(times.size()));
    const Eigen::Map<const Eigen::ArrayXd> p(phases.data(), Eigen::Index(phases.size()));
    const double tm = t.mean(), pm = p.mean();
    out.summary["relative_phase_rate"] = ((t - tm) * (p - pm)).sum() / (t - tm).square().sum();
  }
  if (as_json(c))
    out.files.push_back({"pauli.json", Json{{"snapshots", snapshots}}.dump() + "\n"});
  else
    out.files.push_back({"pauli.csv", csv_text.str()});
  return out;
}

// --------------------------------------------------------------- fluctuations

Output run_fluctuations(const RunConfig& c) {
  const std::uint64_t n = c.samples();
  if (n < 10000) throw ConfigError("fluctuations needs samples >= 10000", "samples");
  const std::uint64_t seed = c.seed();
  TranslationParams tp{c.real("mass"), c.real("dt"), c.real("hbar")};
  RotationParams rp{c.real("mass"), c.real("omega"), c.real("hbar")};

  const Eigen::MatrixX3d w = sample_displacements(tp, n, RandomStream(seed, "fluctuations/translation"));
  const double var_w = w.array().square().mean();
  const double dxdp = uncertainty_product(w, tp);
  const double rms = rms_uncertainty_product(w, tp);
  const double ls = expected_angular_momentum(rp, n, RandomStream(seed, "fluctuations/rotation"));
  const double u2 = radius_second_moment(rp);
  RadiusGrid rg;
  rg.nodes = c.integer("radius_nodes");
  const auto sol = variational_radius_solve(rp, rg);

  const double half_hbar = tp.hbar / 2;
  const double se_var = tp.variance() * std::sqrt(2.0 / (3.0 * double(n)));
  struct Row {
    const char* name;
    double estimate, expected, se;
  };
  const std::vector<Row> rows{
      {"displacement_variance", var_w, tp.variance(), se_var},
      {"uncertainty_product", dxdp, half_hbar, half_hbar * std::sqrt(2.0 / (3.0 * double(n)))},
      {"rms_uncertainty_product", rms, half_hbar, half_hbar * std::sqrt(2.0 / (3.0 * double(n)))},
      {"angular_momentum", ls, half_hbar, half_hbar * std::sqrt(2.0 / double(n))},
      {"radius_second_moment", u2, rp.hbar / (2 * rp.mass * rp.omega), 0.0},
      {"variational_second_moment", sol.second_moment(), rp.hbar / (2 * rp.mass * rp.omega), 0.0},
      {"variational_angular_momentum", sol.angular_momentum(rp), half_hbar, 0.0},
  };

  Output out;
  std::ostringstream ss;
  CsvWriter csv(ss, {"quantity", "estimate", "expected", "standard_error"});
  Json arr = Json::array();
  for (const auto& r : rows) {
    csv.row(std::string_view(r.name), r.estimate, r.expected, r.se);
    arr.push_back({{"quantity", r.name}, {"estimate", r.estimate}, {"expected", r.expected},
                   {"standard_error", r.se}});
    out.summary[r.name] = r.estimate;
  }
  if (as_json(c)) out.files.push_back({"fluctuations.json", Json{{"rows", arr}}.dump(2) + "\n"});
  else out.files.push_back({"fluctuations.csv", ss.str()});
  return out;
}

// --------------------------------------------------------------- oracle-check

Output run_oracle_check(const RunConfig& c) {
  const auto pairs = std::uint64_t(c.integer("pairs"));
  const RandomStream base(c.seed(), "oracle-check");
  std::ostringstream ss;
  CsvWriter csv(ss, {"check", "a", "b", "model", "oracle", "abs_diff"});
  Json arr = Json::array();
  double worst = 0.0;
  const auto add = [&](std::string_view name, double a, double b, double model, double oracle_value) {
    const double d = std::abs(model - oracle_value);
    worst = std::max(worst, d);
    csv.row(name, a, b, model, oracle_value, d);
    arr.push_back({{"check", name}, {"a", a}, {"b", b}, {"model", model}, {"oracle", oracle_value}, {"abs_diff", d}});
  };
  using oracle::BellKind;
  const std::array<std::pair<BellState, BellKind>, 4> kinds{{{BellState::PsiMinus, BellKind::PsiMinus},
                                                             {BellState::PsiPlus, BellKind::PsiPlus},
                                                             {BellState::PhiMinus, BellKind::PhiMinus},
                                                             {BellState::PhiPlus, BellKind::PhiPlus}}};
  for (std::uint64_t i = 0; i < pairs; ++i) {
    RandomStream rng = base.for_trial(i);
    const double a = 2 * kPi * rng.uniform();
    const double b = 2 * kPi * rng.uniform();
    add("two_apparatus_up", a, b, two_apparatus_up_probability(a, b), oracle::overlap_prob(a, b));
    add("two_apparatus_down", a, b, two_apparatus_down_probability(a, b), oracle::overlap_prob_down(a, b));
    for (const auto& [state, kind] : kinds) {
      const std::string name = "correlation_" + std::string(to_string(state));
      add(name, a, b, correlation(BellPairModel::from(state), a, b), oracle::bell_correlation(kind, a, b));
    }
  }
  Output out;
  out.summary["max_abs_diff"] = worst;
  out.summary["comparisons"] = arr.size();
  out.passed = worst <= 1e-12;
  if (as_json(c)) out.files.push_back({"oracle-check.json", Json{{"rows", arr}}.dump(2) + "\n"});
  else out.files.push_back({"oracle-check.csv", ss.str()});
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const std::string& sub = config.subcommand();
  Output out;
  if (sub == "variational") out = run_variational(config);
  else if (sub == "stern-gerlach") out = run_stern_gerlach(config);
  else if (sub == "bell-test") out = run_bell_test(config);
  else if (sub == "bell-delay") out = run_bell_delay(config);
  else if (sub == "pauli") out = run_pauli(config);
  else if (sub == "fluctuations") out = run_fluctuations(config);
  else if (sub == "oracle-check") out = run_oracle_check(config);
  else throw ConfigError("unknown subcommand '" + sub + "'");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir(config.out_dir());
  fs::create_directories(dir);
  RunResult result;
  for (const auto& [name, content] : out.files) {
    write_file(dir / name, content);
    result.outputs.push_back(name);
  }

  Json manifest;
  manifest["tool"] = "spinlab";
  manifest["version"] = SPINLAB_VERSION;
  manifest["subcommand"] = sub;
  manifest["seed"] = config.seed();
  Json echo = Json::object();
  for (const auto& [k, v] : config.values()) echo[k] = v;
  manifest["config"] = echo;
  manifest["config_hash"] = config_hash(config);
  manifest["wall_clock_seconds"] = seconds;
  manifest["summary"] = out.summary;
  manifest["passed"] = out.passed;
  manifest["outputs"] = result.outputs;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  result.summary_json = out.summary.dump();
  result.passed = out.passed;
  return result;
}

}  // namespace spinlab::cli
