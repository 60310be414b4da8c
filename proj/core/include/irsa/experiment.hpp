#ifndef IRSA_EXPERIMENT_HPP
#define IRSA_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irsa/degree_dist.hpp"
#include "irsa/frame_sim.hpp"
#include "irsa/scaling_law.hpp"

namespace irsa {

/** Deterministic, collision-resistant stream derivation: distinct
 *  (point, worker) pairs under one master seed get distinct streams. */
std::uint64_t seed_stream(std::uint64_t master_seed, std::uint64_t point_index,
                          std::uint64_t worker_index);

/** Which activity model a sweep instantiates at each load point:
 *  poisson -> poisson(g * m), binomial -> binomial(n, g * m / n),
 *  fixed -> fixed(round(g * m)). */
struct activity_selector {
  activity_model::kind model = activity_model::kind::poisson;
  std::uint64_t population = 0;  // binomial only

  activity_model instantiate(std::uint32_t num_slots, double load) const;

  std::string to_string() const;                       // "poisson" | "binomial:<n>" | "fixed"
  static activity_selector parse(std::string_view text);
};

struct experiment_config {
  degree_distribution dist = make_distribution({{3, 1.0}});
  std::uint32_t num_slots = 0;          // m
  std::vector<double> load_grid;        // strictly increasing, all > 0
  activity_selector activity;
  std::uint64_t max_frames = 1000000;
  std::uint64_t target_errors = 200;    // stop a point once this many error frames seen; 0 disables
  std::uint64_t seed = 1;
  std::uint32_t workers = 1;
  bool emit_floor = false;
  bool emit_prediction = false;
  std::optional<scaling_params> prediction_params;  // required when emit_prediction
};

/** Throws validation_error on inconsistent configs (empty or non-increasing
 *  grid, max degree > m, missing prediction parameters, ...). */
void validate(const experiment_config& config);

/** One load point of a sweep. Counters are exact; estimates carry 95%
 *  normal-approximation confidence half-widths. */
struct sweep_row {
  double load = 0.0;
  std::uint64_t frames_run = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_lost = 0;
  double fer = 0.0;
  double fer_ci = 0.0;
  double plr = 0.0;
  double plr_ci = 0.0;
  std::optional<double> fep_pred, plp_pred;
  std::optional<double> fep_floor, plp_floor;
};

/** Simulate one load point: frames until max_frames or target_errors error
 *  frames, whichever first. FER is the error-frame fraction; PLR is the
 *  ratio of sums, total unresolved packets over total active packets.
 *  Bit-reproducible for identical (config, load, point_index). */
sweep_row run_point(const experiment_config& config, double load, std::uint64_t point_index);

/** run_point across the whole grid, rows ordered by load. */
std::vector<sweep_row> run_sweep(const experiment_config& config);

/** 95% half-width for a binomial proportion (normal approximation). */
double binomial_ci_halfwidth(std::uint64_t successes, std::uint64_t trials);

/** CSV with the fixed column order; optional groups appear only when
 *  requested. Probabilities get 6 significant digits, counters are exact. */
void write_csv(std::ostream& out, std::span<const sweep_row> rows, bool with_prediction,
               bool with_floor);

/** Sidecar metadata: full config, seed and library version as JSON. */
std::string config_metadata_json(const experiment_config& config);

/** Parse the "key = value" config-file format; keys mirror the
 *  experiment_config fields (dist, m, load_grid, activity, max_frames,
 *  target_errors, seed, workers, emit_floor, emit_prediction). */
experiment_config parse_config_text(std::string_view text);
experiment_config load_config_file(const std::string& path);

}  // namespace irsa

#endif
