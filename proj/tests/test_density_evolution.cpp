#include <doctest.h>

#include <cmath>
#include <vector>

#include "irsa/degree_dist.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/errors.hpp"

using namespace irsa;

namespace {

struct reference_row {
  const char* dist;
  double g_star;
  double gamma;
};

// thresholds and loss fractions the recursion must reproduce
const std::vector<reference_row> kReference = {
    {"3:1", 0.818469, 0.783499},
    {"4:1", 0.772280, 0.906054},
    {"5:1", 0.701780, 0.961253},
    {"4:0.5,8:0.5", 0.661090, 0.982040},
    {"3:0.86,8:0.14", 0.851325, 0.835418},
};

}  // namespace

TEST_CASE("sub-threshold loads drive the erasure probability to zero") {
  const auto dist = make_distribution({{3, 1.0}});
  const auto state = de_fixed_point(dist, 0.5);
  CHECK(state.converged);
  CHECK(state.q < 1e-10);
}

TEST_CASE("super-threshold loads stall at a positive fixed point") {
  const auto dist = make_distribution({{3, 1.0}});
  const auto state = de_fixed_point(dist, 1.0);
  CHECK(state.converged);
  CHECK(state.q > 0.5);
  // self-consistency of the returned pair
  CHECK(state.p == doctest::Approx(-std::expm1(-3.0 * state.q)).epsilon(1e-9));
  // for a regular distribution the node average Lambda(p) is the loss fraction
  CHECK(std::abs(dist.evaluate(state.p) - 0.783499) < 1e-5);
}

TEST_CASE("vanishing load collapses in a few iterations") {
  const auto dist = make_distribution({{3, 1.0}});
  const auto state = de_fixed_point(dist, 1e-6);
  CHECK(state.q < 1e-10);
  CHECK(state.iterations <= 5);
}

TEST_CASE("input validation") {
  const auto dist = make_distribution({{3, 1.0}});
  CHECK_THROWS_AS(de_fixed_point(dist, 0.0), validation_error);
  CHECK_THROWS_AS(de_fixed_point(dist, -1.0), validation_error);
  de_options bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(de_fixed_point(dist, 0.5, bad), validation_error);
  threshold_options opts;
  opts.bracket_lo = 0.0;
  CHECK_THROWS_AS(bp_threshold(dist, opts), validation_error);
}

TEST_CASE("thresholds match the reference values") {
  for (const auto& row : kReference) {
    const auto dist = parse_distribution(row.dist);
    const auto result = bp_threshold(dist, 1e-7);
    CHECK(result.bracket_width <= 1e-7);
    CHECK(std::abs(result.g_star - row.g_star) < 1e-5);
  }
}

TEST_CASE("loss fractions at g=1 match the reference values") {
  for (const auto& row : kReference) {
    const auto dist = parse_distribution(row.dist);
    CHECK(std::abs(compute_gamma(dist) - row.gamma) < 1e-5);
  }
}

TEST_CASE("the iteration is monotone non-increasing from q0 = 1") {
  const std::vector<const char*> dists = {"3:1", "5:1", "3:0.86,8:0.14", "4:0.5,8:0.5"};
  const std::vector<double> loads = {0.2, 0.5, 0.7, 0.85, 1.0, 1.3};
  for (const char* text : dists) {
    const auto dist = parse_distribution(text);
    const auto edge = edge_perspective(dist);
    for (double g : loads) {
      double q = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double p = -std::expm1(-g * dist.mean_degree() * q);
        const double q_next = edge.evaluate(p);
        CHECK(q_next <= q + 1e-15);
        q = q_next;
      }
    }
  }
}

TEST_CASE("the fixed point is monotone in the load") {
  const auto dist = make_distribution({{3, 0.86}, {8, 0.14}});
  double prev = 0.0;
  for (double g = 0.2; g <= 1.4; g += 0.05) {
    const double q = de_fixed_point(dist, g).q;
    CHECK(q >= prev - 1e-12);
    prev = q;
  }
}

TEST_CASE("the threshold separates decodable from stalled loads") {
  for (const auto& row : kReference) {
    const auto dist = parse_distribution(row.dist);
    const double tol = 1e-6;
    const auto result = bp_threshold(dist, tol);
    CHECK(de_fixed_point(dist, result.g_star - 10.0 * tol).q < 1e-10);
    CHECK(de_fixed_point(dist, result.g_star + 10.0 * tol).q > 1e-6);
  }
}

TEST_CASE("asymptotic loss stays inside [0, 1] and vanishes below threshold") {
  const auto dist = make_distribution({{3, 1.0}});
  CHECK(asymptotic_plp(dist, 0.5) < 1e-9);
  for (double g = 0.1; g <= 2.0; g += 0.1) {
    const double plp = asymptotic_plp(dist, g);
    CHECK(plp >= 0.0);
    CHECK(plp <= 1.0);
  }
}

TEST_CASE("a bracket that never changes decodability is rejected") {
  const auto dist = make_distribution({{3, 1.0}});
  threshold_options opts;
  opts.bracket_lo = 0.01;
  opts.bracket_hi = 0.02;  // both sides decode
  CHECK_THROWS_AS(bp_threshold(dist, opts), bracket_failure_error);
}
