// irsa: command-line front end for the simulator and the analytical predictors.
//
// Subcommands:
//   threshold   decoding threshold and asymptotic loss fraction of a distribution
//   predict     closed-form waterfall predictions as CSV rows g,fep,plp
//   simulate    Monte Carlo load sweep with optional prediction/floor columns
//   dump-frame  one random frame realization in the debug dump format
//
// Exit codes: 0 success, 2 configuration/validation failure, 3 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsa/degree_dist.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/errors.hpp"
#include "irsa/experiment.hpp"
#include "irsa/frame_sim.hpp"
#include "irsa/rng.hpp"
#include "irsa/scaling_law.hpp"
#include "irsa/version.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

irsa::degree_distribution resolve_distribution(const std::string& text) {
  for (const auto name : irsa::builtin_names())
    if (text == name) return irsa::builtin_distribution(name);
  return irsa::parse_distribution(text);
}

void warn_about(const irsa::degree_distribution& dist) {
  if (dist.renormalized())
    std::cerr << "warning: distribution coefficients were rescaled to sum to 1\n";
  if (dist.has_degree_one_mass())
    std::cerr << "warning: degree-1 mass present; such users are unrecoverable after a collision\n";
}

std::vector<double> parse_load_list(const std::string& text) {
  std::vector<double> loads;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      loads.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw irsa::validation_error("bad load value '" + item + "'");
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return loads;
}

// Scaling parameters for a distribution: the built-in table row when the
// distribution is one of the bundled ones, otherwise user-supplied alpha0 and
// beta0 with the threshold and loss fraction computed by density evolution.
irsa::scaling_params resolve_params(const irsa::degree_distribution& dist,
                                    const std::string& dist_text,
                                    std::optional<double> alpha0, std::optional<double> beta0) {
  if (alpha0.has_value() != beta0.has_value())
    throw irsa::validation_error("--alpha0 and --beta0 must be given together");
  if (!alpha0) {
    for (const auto name : irsa::builtin_names())
      if (dist_text == name) return irsa::builtin_params(name);
    if (const auto name = irsa::match_builtin(dist)) return irsa::builtin_params(*name);
    throw irsa::validation_error(
        "no built-in scaling parameters for '" + dist_text +
        "'; pass --alpha0 and --beta0 (the threshold and loss fraction are then computed)");
  }
  irsa::scaling_params params;
  params.alpha0 = *alpha0;
  params.beta0 = *beta0;
  params.g_star = irsa::bp_threshold(dist, 1e-7).g_star;
  params.gamma = irsa::compute_gamma(dist);
  return params;
}

int run_threshold(const std::string& dist_text, double tol, double bracket_lo, double bracket_hi) {
  const auto dist = resolve_distribution(dist_text);
  warn_about(dist);

  irsa::threshold_options opts;
  opts.tol = tol;
  opts.bracket_lo = bracket_lo;
  opts.bracket_hi = bracket_hi;
  const auto result = irsa::bp_threshold(dist, opts);

  nlohmann::json out;
  out["g_star"] = result.g_star;
  out["gamma"] = irsa::compute_gamma(dist);
  out["mean_degree"] = dist.mean_degree();
  std::cout << out.dump() << '\n';
  return 0;
}

int run_predict(const std::string& dist_text, std::uint32_t num_slots, const std::string& loads,
                std::optional<std::uint64_t> population, std::optional<double> alpha0,
                std::optional<double> beta0) {
  const auto dist = resolve_distribution(dist_text);
  warn_about(dist);
  const auto params = resolve_params(dist, dist_text, alpha0, beta0);

  std::printf("g,fep,plp\n");
  for (double g : parse_load_list(loads)) {
    const auto point = irsa::predict(num_slots, g, params, population);
    std::printf("%.6g,%.6g,%.6g\n", point.load, point.fep, point.plp);
  }
  return 0;
}

struct simulate_flags {
  std::string config_path;
  std::string dist_text;
  std::uint32_t num_slots = 0;
  std::string loads;
  double g_start = 0.0, g_stop = 0.0, g_step = 0.0;
  std::uint64_t max_frames = 0;
  std::uint64_t target_errors = 0;
  std::optional<std::uint64_t> seed;
  std::uint32_t workers = 0;
  std::string activity;
  bool floor = false;
  bool predict = false;
  std::optional<double> alpha0, beta0;
  std::string out_path;
  std::string meta_path;
};

int run_simulate(const simulate_flags& flags) {
  irsa::experiment_config config;
  std::string dist_text;

  if (!flags.config_path.empty()) {
    config = irsa::load_config_file(flags.config_path);
    dist_text = config.dist.to_string();
  }

  // explicit flags override the config file
  if (!flags.dist_text.empty()) {
    config.dist = resolve_distribution(flags.dist_text);
    dist_text = flags.dist_text;
  } else if (flags.config_path.empty()) {
    throw irsa::validation_error("simulate needs --config or --dist");
  }
  if (flags.num_slots > 0) config.num_slots = flags.num_slots;
  if (!flags.loads.empty()) {
    config.load_grid = parse_load_list(flags.loads);
  } else if (flags.g_step > 0.0) {
    config.load_grid.clear();
    for (double g = flags.g_start; g <= flags.g_stop + 1e-12; g += flags.g_step)
      config.load_grid.push_back(g);
  }
  if (flags.max_frames > 0) config.max_frames = flags.max_frames;
  if (flags.target_errors > 0) config.target_errors = flags.target_errors;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.workers > 0) config.workers = flags.workers;
  if (!flags.activity.empty()) config.activity = irsa::activity_selector::parse(flags.activity);
  if (flags.floor) config.emit_floor = true;
  if (flags.predict) config.emit_prediction = true;

  warn_about(config.dist);
  if (config.emit_prediction && !config.prediction_params)
    config.prediction_params = resolve_params(config.dist, dist_text, flags.alpha0, flags.beta0);

  irsa::validate(config);
  const auto rows = irsa::run_sweep(config);

  if (flags.out_path.empty()) {
    irsa::write_csv(std::cout, rows, config.emit_prediction, config.emit_floor);
  } else {
    std::ofstream out(flags.out_path);
    if (!out) throw irsa::validation_error("cannot open output file '" + flags.out_path + "'");
    irsa::write_csv(out, rows, config.emit_prediction, config.emit_floor);
  }

  // reproducibility sidecar: full config, seed and version
  std::string meta_path = flags.meta_path;
  if (meta_path.empty() && !flags.out_path.empty()) meta_path = flags.out_path + ".meta.json";
  if (!meta_path.empty()) {
    std::ofstream meta(meta_path);
    if (!meta) throw irsa::validation_error("cannot open metadata file '" + meta_path + "'");
    meta << irsa::config_metadata_json(config) << '\n';
  }
  return 0;
}

int run_dump_frame(const std::string& dist_text, std::uint32_t num_slots, double load,
                   std::uint64_t seed, const std::string& activity) {
  const auto dist = resolve_distribution(dist_text);
  warn_about(dist);
  const auto selector = irsa::activity_selector::parse(activity);
  irsa::rng r(irsa::seed_stream(seed, 0, 0));
  const auto frame =
      irsa::generate_frame(num_slots, dist, selector.instantiate(num_slots, load), r);
  std::cout << irsa::dump_frame(frame);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irregular repetition slotted ALOHA: simulation and finite-length analysis"};
  app.set_version_flag("--version", std::string(irsa::version));
  app.require_subcommand(1);

  // threshold
  auto* threshold = app.add_subcommand("threshold", "decoding threshold via density evolution");
  std::string th_dist;
  double th_tol = 1e-6, th_lo = 0.01, th_hi = 1.0;
  threshold->add_option("--dist", th_dist, "distribution, built-in name or d:p[,d:p...]")
      ->required();
  threshold->add_option("--tol", th_tol, "bisection tolerance on g*");
  threshold->add_option("--bracket-lo", th_lo, "lower end of the initial bracket");
  threshold->add_option("--bracket-hi", th_hi, "upper end of the initial bracket");

  // predict
  auto* predict = app.add_subcommand("predict", "closed-form waterfall predictions (CSV)");
  std::string pr_dist, pr_loads;
  std::uint32_t pr_slots = 0;
  std::optional<std::uint64_t> pr_population;
  std::optional<double> pr_alpha0, pr_beta0;
  predict->add_option("--dist", pr_dist, "distribution, built-in name or d:p[,d:p...]")
      ->required();
  predict->add_option("--m", pr_slots, "slots per frame")->required()->check(CLI::PositiveNumber);
  predict->add_option("--g", pr_loads, "channel load(s), comma separated")->required();
  predict->add_option("--n", pr_population, "finite user population (default: infinite)");
  predict->add_option("--alpha0", pr_alpha0, "scaling constant for non-built-in distributions");
  predict->add_option("--beta0", pr_beta0,
                      "threshold-shift constant for non-built-in distributions");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo load sweep (CSV)");
  simulate_flags sim;
  simulate->add_option("--config", sim.config_path, "config file (key = value lines)");
  simulate->add_option("--dist", sim.dist_text, "distribution, built-in name or d:p[,d:p...]");
  simulate->add_option("--m", sim.num_slots, "slots per frame");
  simulate->add_option("--g", sim.loads, "explicit load grid, comma separated");
  simulate->add_option("--g-start", sim.g_start, "first load of a regular grid");
  simulate->add_option("--g-stop", sim.g_stop, "last load of a regular grid");
  simulate->add_option("--g-step", sim.g_step, "grid step");
  simulate->add_option("--frames", sim.max_frames, "frame budget per load point");
  simulate->add_option("--target-errors", sim.target_errors,
                       "stop a point after this many error frames");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--workers", sim.workers, "worker threads");
  simulate->add_option("--activity", sim.activity, "poisson | binomial:<n> | fixed");
  simulate->add_flag("--floor", sim.floor, "append error-floor estimate columns");
  simulate->add_flag("--predict", sim.predict, "append waterfall prediction columns");
  simulate->add_option("--alpha0", sim.alpha0, "scaling constant for non-built-in distributions");
  simulate->add_option("--beta0", sim.beta0,
                       "threshold-shift constant for non-built-in distributions");
  simulate->add_option("--out", sim.out_path, "write CSV here instead of stdout");
  simulate->add_option("--meta", sim.meta_path,
                       "metadata JSON path (default: <out>.meta.json when --out is set)");

  // dump-frame
  auto* dump = app.add_subcommand("dump-frame", "print one random frame realization");
  std::string df_dist, df_activity = "poisson";
  std::uint32_t df_slots = 0;
  double df_load = 0.5;
  std::uint64_t df_seed = 1;
  dump->add_option("--dist", df_dist, "distribution, built-in name or d:p[,d:p...]")->required();
  dump->add_option("--m", df_slots, "slots per frame")->required()->check(CLI::PositiveNumber);
  dump->add_option("--g", df_load, "channel load");
  dump->add_option("--seed", df_seed, "seed");
  dump->add_option("--activity", df_activity, "poisson | binomial:<n> | fixed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (threshold->parsed()) return run_threshold(th_dist, th_tol, th_lo, th_hi);
    if (predict->parsed())
      return run_predict(pr_dist, pr_slots, pr_loads, pr_population, pr_alpha0, pr_beta0);
    if (simulate->parsed()) return run_simulate(sim);
    if (dump->parsed()) return run_dump_frame(df_dist, df_slots, df_load, df_seed, df_activity);
  } catch (const irsa::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const irsa::error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
