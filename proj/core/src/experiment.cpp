#include "irsa/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "irsa/error_floor.hpp"
#include "irsa/errors.hpp"
#include "irsa/version.hpp"

namespace irsa {

namespace {

// Frames each worker runs between stopping-rule checks. Fixed so that results
// are a pure function of (config, workers).
constexpr std::uint64_t kBlockFrames = 4096;

struct accumulator {
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_lost = 0;
  // exact integer moments for the ratio-estimator CI
  std::uint64_t sum_sent_sq = 0;
  std::uint64_t sum_lost_sq = 0;
  std::uint64_t sum_lost_sent = 0;

  void merge(const accumulator& o) {
    frames += o.frames;
    frame_errors += o.frame_errors;
    packets_sent += o.packets_sent;
    packets_lost += o.packets_lost;
    sum_sent_sq += o.sum_sent_sq;
    sum_lost_sq += o.sum_lost_sq;
    sum_lost_sent += o.sum_lost_sent;
  }
};

struct point_worker {
  rng engine;
  frame_generator generator;
  peeling_decoder decoder;
  frame_graph frame;

  point_worker(std::uint64_t stream_seed, std::uint32_t num_slots,
               const degree_distribution& dist, const activity_model& model)
      : engine(stream_seed), generator(num_slots, dist, model) {}

  void simulate(std::uint64_t num_frames, accumulator& acc) {
    for (std::uint64_t i = 0; i < num_frames; ++i) {
      generator.generate(engine, frame);
      const auto counts = decoder.decode_counts(frame);
      const std::uint64_t active = frame.num_active();
      const std::uint64_t lost = active - counts.resolved_users;
      ++acc.frames;
      acc.packets_sent += active;
      acc.packets_lost += lost;
      if (lost > 0) ++acc.frame_errors;
      acc.sum_sent_sq += active * active;
      acc.sum_lost_sq += lost * lost;
      acc.sum_lost_sent += lost * active;
    }
  }
};

double ratio_ci_halfwidth(const accumulator& a) {
  if (a.frames == 0 || a.packets_sent == 0) return 0.0;
  const double n = static_cast<double>(a.frames);
  const double mean_sent = static_cast<double>(a.packets_sent) / n;
  const double mean_lost = static_cast<double>(a.packets_lost) / n;
  const double ratio = mean_lost / mean_sent;
  const double var_lost = static_cast<double>(a.sum_lost_sq) / n - mean_lost * mean_lost;
  const double var_sent = static_cast<double>(a.sum_sent_sq) / n - mean_sent * mean_sent;
  const double cov = static_cast<double>(a.sum_lost_sent) / n - mean_lost * mean_sent;
  const double var_ratio =
      (var_lost - 2.0 * ratio * cov + ratio * ratio * var_sent) / (n * mean_sent * mean_sent);
  return 1.96 * std::sqrt(std::max(0.0, var_ratio));
}

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", p);
  return buf;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_u64(std::string_view value, std::string_view key) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw validation_error("bad integer for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

double parse_double(std::string_view value, std::string_view key) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end)
    throw validation_error("bad number for '" + std::string(key) + "': '" + std::string(value) + "'");
  return out;
}

bool parse_bool(std::string_view value, std::string_view key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw validation_error("bad boolean for '" + std::string(key) + "': '" + std::string(value) + "'");
}

}  // namespace

std::uint64_t seed_stream(std::uint64_t master_seed, std::uint64_t point_index,
                          std::uint64_t worker_index) {
  std::uint64_t state = master_seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ (point_index + 0x9e3779b97f4a7c15ULL);
  h = splitmix64(state);
  state = h ^ (worker_index + 0xd1b54a32d192ed03ULL);
  return splitmix64(state);
}

activity_model activity_selector::instantiate(std::uint32_t num_slots, double load) const {
  const double mean = load * static_cast<double>(num_slots);
  switch (model) {
    case activity_model::kind::poisson:
      return activity_model::poisson(mean);
    case activity_model::kind::binomial: {
      if (population == 0) throw invalid_population_error("binomial activity needs a population");
      const double p = mean / static_cast<double>(population);
      if (p > 1.0)
        throw invalid_population_error("population " + std::to_string(population) +
                                       " cannot carry load " + format_probability(load));
      return activity_model::binomial(population, p);
    }
    case activity_model::kind::fixed:
      return activity_model::fixed(static_cast<std::uint64_t>(std::llround(mean)));
  }
  throw validation_error("unreachable activity kind");
}

std::string activity_selector::to_string() const {
  switch (model) {
    case activity_model::kind::poisson:
      return "poisson";
    case activity_model::kind::binomial:
      return "binomial:" + std::to_string(population);
    case activity_model::kind::fixed:
      return "fixed";
  }
  return "?";
}

activity_selector activity_selector::parse(std::string_view text) {
  activity_selector sel;
  if (text == "poisson") {
    sel.model = activity_model::kind::poisson;
    return sel;
  }
  if (text == "fixed") {
    sel.model = activity_model::kind::fixed;
    return sel;
  }
  if (text.rfind("binomial:", 0) == 0) {
    sel.model = activity_model::kind::binomial;
    sel.population = parse_u64(text.substr(9), "activity population");
    if (sel.population == 0) throw invalid_population_error("binomial population must be >= 1");
    return sel;
  }
  throw validation_error("unknown activity model '" + std::string(text) +
                         "' (expected poisson, binomial:<n> or fixed)");
}

void validate(const experiment_config& config) {
  if (config.num_slots < 1) throw validation_error("m must be >= 1");
  if (config.dist.max_degree() > config.num_slots)
    throw validation_error("max degree " + std::to_string(config.dist.max_degree()) +
                           " exceeds slot count " + std::to_string(config.num_slots));
  if (config.load_grid.empty()) throw validation_error("load grid is empty");
  double prev = 0.0;
  for (double g : config.load_grid) {
    if (!(g > prev))
      throw validation_error("load grid must be strictly positive and strictly increasing");
    prev = g;
  }
  if (config.max_frames < 1) throw validation_error("max_frames must be >= 1");
  if (config.workers < 1) throw validation_error("workers must be >= 1");
  if (config.activity.model == activity_model::kind::binomial) {
    // every grid point must be feasible for the population
    config.activity.instantiate(config.num_slots, config.load_grid.back());
  }
  if (config.emit_prediction && !config.prediction_params)
    throw validation_error("emit_prediction requires scaling parameters");
}

sweep_row run_point(const experiment_config& config, double load, std::uint64_t point_index) {
  if (config.num_slots < 1) throw validation_error("m must be >= 1");
  if (!(load > 0.0)) throw validation_error("channel load must be > 0");
  if (config.dist.max_degree() > config.num_slots)
    throw degree_exceeds_slots_error("max degree " + std::to_string(config.dist.max_degree()) +
                                     " exceeds slot count " + std::to_string(config.num_slots));
  if (config.max_frames < 1) throw validation_error("max_frames must be >= 1");

  const std::uint32_t num_workers = std::max<std::uint32_t>(1, config.workers);
  const std::uint64_t error_target =
      config.target_errors == 0 ? std::numeric_limits<std::uint64_t>::max()
                                : config.target_errors;
  const activity_model model = config.activity.instantiate(config.num_slots, load);

  std::vector<std::unique_ptr<point_worker>> workers;
  workers.reserve(num_workers);
  for (std::uint32_t w = 0; w < num_workers; ++w)
    workers.push_back(std::make_unique<point_worker>(seed_stream(config.seed, point_index, w),
                                                     config.num_slots, config.dist, model));

  accumulator total;
  std::uint64_t done = 0;
  std::vector<std::uint64_t> quota(num_workers);
  std::vector<accumulator> round_acc(num_workers);
  std::vector<std::exception_ptr> failures(num_workers);

  while (done < config.max_frames && total.frame_errors < error_target) {
    const std::uint64_t remaining = config.max_frames - done;
    const std::uint64_t base = remaining / num_workers;
    const std::uint64_t extra = remaining % num_workers;
    std::uint64_t scheduled = 0;
    for (std::uint32_t w = 0; w < num_workers; ++w) {
      quota[w] = std::min<std::uint64_t>(kBlockFrames, base + (w < extra ? 1 : 0));
      scheduled += quota[w];
    }

    if (num_workers == 1) {
      round_acc[0] = accumulator{};
      workers[0]->simulate(quota[0], round_acc[0]);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(num_workers);
      for (std::uint32_t w = 0; w < num_workers; ++w) {
        round_acc[w] = accumulator{};
        failures[w] = nullptr;
        threads.emplace_back([&, w] {
          try {
            workers[w]->simulate(quota[w], round_acc[w]);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    }

    // merge in worker order so totals never depend on scheduling
    for (std::uint32_t w = 0; w < num_workers; ++w) total.merge(round_acc[w]);
    done += scheduled;
  }

  sweep_row row;
  row.load = load;
  row.frames_run = total.frames;
  row.frame_errors = total.frame_errors;
  row.packets_sent = total.packets_sent;
  row.packets_lost = total.packets_lost;
  row.fer = total.frames ? static_cast<double>(total.frame_errors) / static_cast<double>(total.frames)
                         : 0.0;
  row.fer_ci = binomial_ci_halfwidth(total.frame_errors, total.frames);
  row.plr = total.packets_sent ? static_cast<double>(total.packets_lost) /
                                     static_cast<double>(total.packets_sent)
                               : 0.0;
  row.plr_ci = ratio_ci_halfwidth(total);

  if (config.emit_prediction) {
    if (!config.prediction_params)
      throw validation_error("emit_prediction requires scaling parameters");
    row.fep_pred = fep_predict(config.num_slots, load, *config.prediction_params);
    row.plp_pred = plp_predict(config.num_slots, load, *config.prediction_params);
  }
  if (config.emit_floor) {
    const floor_estimate_result floor = floor_estimate(config.dist, config.num_slots, load);
    row.fep_floor = floor.fep_floor;
    row.plp_floor = floor.plp_floor;
  }
  return row;
}

std::vector<sweep_row> run_sweep(const experiment_config& config) {
  validate(config);
  std::vector<sweep_row> rows;
  rows.reserve(config.load_grid.size());
  for (std::size_t i = 0; i < config.load_grid.size(); ++i)
    rows.push_back(run_point(config, config.load_grid[i], i));
  return rows;
}

double binomial_ci_halfwidth(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

void write_csv(std::ostream& out, std::span<const sweep_row> rows, bool with_prediction,
               bool with_floor) {
  out << "g,frames_run,frame_errors,packets_sent,packets_lost,fer,fer_ci,plr,plr_ci";
  if (with_prediction) out << ",fep_pred,plp_pred";
  if (with_floor) out << ",fep_floor,plp_floor";
  out << '\n';
  for (const sweep_row& row : rows) {
    out << format_probability(row.load) << ',' << row.frames_run << ',' << row.frame_errors << ','
        << row.packets_sent << ',' << row.packets_lost << ',' << format_probability(row.fer) << ','
        << format_probability(row.fer_ci) << ',' << format_probability(row.plr) << ','
        << format_probability(row.plr_ci);
    if (with_prediction)
      out << ',' << format_probability(row.fep_pred.value_or(0.0)) << ','
          << format_probability(row.plp_pred.value_or(0.0));
    if (with_floor)
      out << ',' << format_probability(row.fep_floor.value_or(0.0)) << ','
          << format_probability(row.plp_floor.value_or(0.0));
    out << '\n';
  }
}

std::string config_metadata_json(const experiment_config& config) {
  nlohmann::json j;
  j["version"] = version;
  nlohmann::json c;
  c["dist"] = config.dist.to_string();
  c["m"] = config.num_slots;
  c["load_grid"] = config.load_grid;
  c["activity"] = config.activity.to_string();
  c["max_frames"] = config.max_frames;
  c["target_errors"] = config.target_errors;
  c["seed"] = config.seed;
  c["workers"] = config.workers;
  c["emit_floor"] = config.emit_floor;
  c["emit_prediction"] = config.emit_prediction;
  if (config.prediction_params) {
    c["prediction_params"] = {{"g_star", config.prediction_params->g_star},
                              {"alpha0", config.prediction_params->alpha0},
                              {"beta0", config.prediction_params->beta0},
                              {"gamma", config.prediction_params->gamma}};
  }
  j["config"] = std::move(c);
  return j.dump(2);
}

experiment_config parse_config_text(std::string_view text) {
  experiment_config config;
  bool have_dist = false, have_m = false, have_grid = false;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);

    if (!line.empty()) {
      const std::size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw validation_error("config line " + std::to_string(line_no) +
                               ": expected 'key = value'");
      const std::string_view key = trim(line.substr(0, eq));
      const std::string_view value = trim(line.substr(eq + 1));
      if (value.empty())
        throw validation_error("config line " + std::to_string(line_no) + ": empty value");

      if (key == "dist") {
        config.dist = parse_distribution(value);
        have_dist = true;
      } else if (key == "m") {
        config.num_slots = static_cast<std::uint32_t>(parse_u64(value, key));
        have_m = true;
      } else if (key == "load_grid") {
        config.load_grid.clear();
        std::size_t p = 0;
        while (p <= value.size()) {
          std::size_t comma = value.find(',', p);
          if (comma == std::string_view::npos) comma = value.size();
          config.load_grid.push_back(parse_double(trim(value.substr(p, comma - p)), key));
          if (comma == value.size()) break;
          p = comma + 1;
        }
        have_grid = true;
      } else if (key == "activity") {
        config.activity = activity_selector::parse(value);
      } else if (key == "max_frames") {
        config.max_frames = parse_u64(value, key);
      } else if (key == "target_errors") {
        config.target_errors = parse_u64(value, key);
      } else if (key == "seed") {
        config.seed = parse_u64(value, key);
      } else if (key == "workers") {
        config.workers = static_cast<std::uint32_t>(parse_u64(value, key));
      } else if (key == "emit_floor") {
        config.emit_floor = parse_bool(value, key);
      } else if (key == "emit_prediction") {
        config.emit_prediction = parse_bool(value, key);
      } else {
        throw validation_error("config line " + std::to_string(line_no) + ": unknown key '" +
                               std::string(key) + "'");
      }
    }

    if (eol == text.size()) break;
    pos = eol + 1;
  }

  if (!have_dist) throw validation_error("config is missing 'dist'");
  if (!have_m) throw validation_error("config is missing 'm'");
  if (!have_grid) throw validation_error("config is missing 'load_grid'");
  return config;
}

experiment_config load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace irsa
