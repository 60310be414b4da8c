#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "irsa/degree_dist.hpp"
#include "irsa/error_floor.hpp"
#include "irsa/errors.hpp"
#include "irsa/experiment.hpp"
#include "irsa/frame_sim.hpp"
#include "irsa/rng.hpp"

using namespace irsa;

TEST_CASE("dominant-pair arithmetic for x^3 at m=200, g=0.1") {
  const auto dist = make_distribution({{3, 1.0}});
  const auto floor = floor_estimate(dist, 200, 0.1);

  const double c200_3 = 200.0 * 199.0 * 198.0 / 6.0;  // 1313400
  const double expected_pairs = (20.0 * 20.0 / 2.0) / c200_3;
  CHECK(floor.fep_floor == doctest::Approx(-std::expm1(-expected_pairs)).epsilon(1e-12));
  CHECK(floor.plp_floor == doctest::Approx(2.0 * expected_pairs / 20.0).epsilon(1e-12));
  CHECK(floor.plp_floor == doctest::Approx(1.5227653418608192e-05).epsilon(1e-10));
  CHECK(floor.dominant_term_only);
}

TEST_CASE("floor grows with load and shrinks with frame size") {
  const auto dist = make_distribution({{3, 0.86}, {8, 0.14}});
  double prev_fep = 0.0, prev_plp = 0.0;
  for (double g = 0.05; g <= 0.5; g += 0.05) {
    const auto floor = floor_estimate(dist, 200, g);
    CHECK(floor.fep_floor > prev_fep);
    CHECK(floor.plp_floor > prev_plp);
    prev_fep = floor.fep_floor;
    prev_plp = floor.plp_floor;
  }

  prev_fep = 1.0;
  prev_plp = 1.0;
  for (std::uint32_t m : {50u, 100u, 200u, 400u, 800u}) {
    const auto floor = floor_estimate(dist, m, 0.2);
    CHECK(floor.fep_floor < prev_fep);
    CHECK(floor.plp_floor < prev_plp);
    prev_fep = floor.fep_floor;
    prev_plp = floor.plp_floor;
  }
}

TEST_CASE("scaling in the low-load limit: quadratic for frames, linear for packets") {
  const auto dist = make_distribution({{3, 1.0}});
  const auto a = floor_estimate(dist, 100, 1e-3);
  const auto b = floor_estimate(dist, 100, 2e-3);
  CHECK(b.fep_floor / a.fep_floor == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(b.plp_floor / a.plp_floor == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("floor vanishes as frames grow") {
  const auto dist = make_distribution({{3, 1.0}});
  CHECK(floor_estimate(dist, 100000, 0.5).fep_floor < 1e-5);
  CHECK(floor_estimate(dist, 100000, 0.5).plp_floor < 1e-9);
}

TEST_CASE("every census event is genuinely undecodable") {
  // users sharing an identical slot set can never see a singleton slot
  const auto dist = make_distribution({{3, 1.0}});
  rng r(31415);
  frame_generator gen(15, dist, activity_model::poisson(15.0));
  frame_graph frame;
  peeling_decoder decoder;
  int found = 0;
  for (int trial = 0; trial < 2000 && found < 50; ++trial) {
    gen.generate(r, frame);
    const std::uint32_t users = frame.num_active();
    for (std::uint32_t a = 0; a < users; ++a) {
      for (std::uint32_t b = a + 1; b < users; ++b) {
        const auto sa = frame.slots_of(a);
        const auto sb = frame.slots_of(b);
        if (!std::equal(sa.begin(), sa.end(), sb.begin(), sb.end())) continue;
        ++found;
        const auto outcome = decoder.decode(frame);
        const std::set<std::uint32_t> unresolved(outcome.unresolved.begin(),
                                                 outcome.unresolved.end());
        CHECK(unresolved.count(a) == 1);
        CHECK(unresolved.count(b) == 1);
      }
    }
  }
  CHECK(found >= 20);  // the census event must actually occur at this load
}

TEST_CASE("low-load losses at m=200 sit on the floor estimate") {
  const auto dist = make_distribution({{3, 1.0}});
  const double target = floor_estimate(dist, 200, 0.15).plp_floor;

  experiment_config config;
  config.dist = dist;
  config.num_slots = 200;
  config.load_grid = {0.15};
  config.max_frames = 1000000;
  config.target_errors = config.max_frames + 1;
  config.seed = 77;
  config.workers = 2;
  const auto row = run_point(config, 0.15, 0);
  CHECK(row.plr >= 0.5 * target);
  CHECK(row.plr <= 2.0 * target);
}

TEST_CASE("degrees larger than the frame cannot collide") {
  const auto dist = make_distribution({{2, 0.5}, {40, 0.5}});
  const auto floor = floor_estimate(dist, 20, 0.2);  // degree-40 term is skipped
  const double c20_2 = 190.0;
  const double expected_pairs = (4.0 * 4.0 / 2.0) * (0.25 / c20_2);
  CHECK(floor.fep_floor == doctest::Approx(-std::expm1(-expected_pairs)).epsilon(1e-12));
}

TEST_CASE("input validation") {
  const auto dist = make_distribution({{3, 1.0}});
  CHECK_THROWS_AS(floor_estimate(dist, 0, 0.1), validation_error);
  CHECK_THROWS_AS(floor_estimate(dist, 100, 0.0), validation_error);
}
