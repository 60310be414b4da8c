#include <doctest.h>

#include <cmath>
#include <vector>

#include "irsa/experiment.hpp"
#include "irsa/scaling_law.hpp"

using namespace irsa;

namespace {

// Loads sit in the waterfall-dominated band: low enough that the prediction
// is below one half, high enough that identical-slot-set floor events are
// negligible against it.
struct agreement_case {
  const char* name;
  std::vector<double> loads;
};

const std::vector<agreement_case> kCases = {
    {"x4", {0.64, 0.67, 0.70, 0.73}},
    {"x5", {0.58, 0.61, 0.64, 0.66}},
    {"lambda1", {0.54, 0.57, 0.60, 0.62}},
};

}  // namespace

TEST_CASE("simulated frame errors track the waterfall prediction at m=200") {
  for (const auto& agreement : kCases) {
    CAPTURE(agreement.name);
    experiment_config config;
    config.dist = builtin_distribution(agreement.name);
    config.num_slots = 200;
    config.load_grid = agreement.loads;
    config.max_frames = 300000;
    config.target_errors = 200;
    config.seed = 20240601;
    config.workers = 2;
    config.emit_prediction = true;
    config.prediction_params = builtin_params(agreement.name);

    const auto rows = run_sweep(config);
    for (const auto& row : rows) {
      CAPTURE(row.load);
      const double prediction = *row.fep_pred;
      REQUIRE(prediction >= 1e-3);
      REQUIRE(prediction <= 0.5);
      const double tolerance = std::max(3.0 * row.fer_ci, 0.25 * prediction);
      CHECK(std::abs(row.fer - prediction) <= tolerance);
    }
  }
}
