#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "irsa/degree_dist.hpp"
#include "irsa/errors.hpp"
#include "irsa/frame_sim.hpp"
#include "irsa/rng.hpp"

using namespace irsa;

namespace {

// Independent reference decoder: rescans all slots each pass and processes the
// singletons in a randomized order. Used to pin down schedule independence.
std::vector<std::uint32_t> decode_random_schedule(const frame_graph& frame, rng& r) {
  const std::uint32_t slots = frame.num_slots();
  const std::uint32_t users = frame.num_active();
  std::vector<char> resolved(users, 0);

  for (;;) {
    std::vector<std::uint32_t> singleton_users;
    for (std::uint32_t s = 0; s < slots; ++s) {
      std::uint32_t live = 0, last = 0;
      for (std::uint32_t u = 0; u < users; ++u) {
        if (resolved[u]) continue;
        const auto su = frame.slots_of(u);
        if (std::find(su.begin(), su.end(), s) != su.end()) {
          ++live;
          last = u;
        }
      }
      if (live == 1) singleton_users.push_back(last);
    }
    if (singleton_users.empty()) break;
    // resolve exactly one, chosen at random, then rescan
    const auto pick = singleton_users[r.below(singleton_users.size())];
    resolved[pick] = 1;
  }

  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < users; ++u)
    if (resolved[u]) out.push_back(u);
  return out;
}

frame_graph make_frame(std::uint32_t m, const std::vector<std::vector<std::uint32_t>>& users) {
  frame_graph frame(m);
  for (const auto& slots : users) frame.add_user(slots);
  return frame;
}

}  // namespace

TEST_CASE("generated frames respect the degree and slot bounds") {
  const auto dist = make_distribution({{2, 1.0}});
  rng r(42);
  const auto frame = generate_frame(5, dist, activity_model::fixed(4), r);
  REQUIRE(frame.num_active() == 4);
  CHECK(frame.num_slots() == 5);
  for (std::uint32_t u = 0; u < 4; ++u) {
    const auto slots = frame.slots_of(u);
    REQUIRE(slots.size() == 2);
    CHECK(slots[0] < slots[1]);  // sorted and distinct
    CHECK(slots[1] < 5);
  }
}

TEST_CASE("zero arrivals give an empty frame that decodes as a success") {
  const auto dist = make_distribution({{3, 1.0}});
  rng r(1);
  const auto frame = generate_frame(10, dist, activity_model::fixed(0), r);
  CHECK(frame.num_active() == 0);
  const auto outcome = sic_decode(frame);
  CHECK(outcome.resolved.empty());
  CHECK(outcome.unresolved.empty());
  CHECK(outcome.iterations == 0);
}

TEST_CASE("a degree that cannot fit in the frame is an error") {
  const auto dist = make_distribution({{3, 1.0}});
  rng r(1);
  CHECK_THROWS_AS(generate_frame(2, dist, activity_model::fixed(1), r),
                  degree_exceeds_slots_error);
}

TEST_CASE("pure poisson/binomial activity draws have the right moments") {
  rng r(555);

  auto moments = [&](const activity_model& model, int n) {
    activity_sampler sampler(model);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(sampler.draw(r));
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / n;
    return std::pair{mean, sumsq / n - mean * mean};
  };

  const int n = 200000;
  {
    const auto [mean, var] = moments(activity_model::poisson(120.0), n);
    CHECK(std::abs(mean - 120.0) < 3.0 * std::sqrt(120.0 / n));
    CHECK(std::abs(var - 120.0) < 0.05 * 120.0);
  }
  {
    const auto [mean, var] = moments(activity_model::poisson(0.5), n);
    CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(0.5 / n));
    CHECK(std::abs(var - 0.5) < 0.05 * 0.5);
  }
  {
    const auto [mean, var] = moments(activity_model::binomial(100, 0.3), n);
    CHECK(std::abs(mean - 30.0) < 3.0 * std::sqrt(21.0 / n));
    CHECK(std::abs(var - 21.0) < 0.05 * 21.0);
  }
  {
    activity_sampler sampler(activity_model::fixed(7));
    for (int i = 0; i < 10; ++i) CHECK(sampler.draw(r) == 7);
  }
}

TEST_CASE("peeling resolves the textbook examples") {
  {  // lone user: its slots are singletons immediately
    const auto outcome = sic_decode(make_frame(2, {{0, 1}}));
    CHECK(outcome.resolved == std::vector<std::uint32_t>{0});
    CHECK(outcome.unresolved.empty());
    CHECK(outcome.iterations == 1);
  }
  {  // identical slot pair: the classic size-2 stopping set
    const auto outcome = sic_decode(make_frame(2, {{0, 1}, {0, 1}}));
    CHECK(outcome.resolved.empty());
    CHECK(outcome.unresolved == std::vector<std::uint32_t>{0, 1});
  }
  {  // chain: outer singletons peel the shared slot free
    const auto outcome = sic_decode(make_frame(3, {{0, 1}, {1, 2}}));
    CHECK(outcome.unresolved.empty());
    CHECK(outcome.iterations == 2);
  }
}

TEST_CASE("frame_graph validates user slot sets") {
  frame_graph frame(4);
  std::vector<std::uint32_t> dup{1, 1};
  CHECK_THROWS_AS(frame.add_user(dup), validation_error);
  std::vector<std::uint32_t> oob{1, 4};
  CHECK_THROWS_AS(frame.add_user(oob), validation_error);
}

TEST_CASE("exact enumeration matches hand-computed probabilities") {
  const std::vector<std::uint32_t> two{2};
  CHECK(exact_fer_small(3, two) == 0.0);
  for (std::uint32_t m = 1; m <= 6; ++m)
    for (std::uint32_t d = 1; d <= m; ++d) {
      const std::vector<std::uint32_t> single{d};
      CHECK(exact_fer_small(m, single) == 0.0);
    }

  const std::vector<std::uint32_t> pair{2, 2};
  CHECK(exact_fer_small(2, pair) == 1.0);
  CHECK(exact_fer_small(3, pair) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(exact_fer_small(4, pair) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(exact_fer_small(5, pair) == doctest::Approx(0.1).epsilon(1e-15));

  const std::vector<std::uint32_t> triple{2, 2, 2};
  CHECK(exact_fer_small(4, triple) == doctest::Approx(120.0 / 216.0).epsilon(1e-15));
  CHECK(exact_fer_small(6, triple) == doctest::Approx(765.0 / 3375.0).epsilon(1e-15));
}

TEST_CASE("exact enumeration is guarded against blow-up") {
  const std::vector<std::uint32_t> degrees{8, 8};
  CHECK_THROWS_AS(exact_fer_small(30, degrees), too_large_to_enumerate_error);
  const std::vector<std::uint32_t> too_big{4};
  CHECK_THROWS_AS(exact_fer_small(3, too_big), degree_exceeds_slots_error);
}

TEST_CASE("monte carlo agrees with the exact enumeration") {
  const auto dist = make_distribution({{2, 1.0}});
  rng r(99);
  peeling_decoder decoder;
  frame_generator gen(4, dist, activity_model::fixed(2));
  frame_graph frame;
  const int n = 20000;
  int errors = 0;
  for (int i = 0; i < n; ++i) {
    gen.generate(r, frame);
    if (decoder.decode_counts(frame).resolved_users < 2) ++errors;
  }
  const double fer = static_cast<double>(errors) / n;
  const double exact = 1.0 / 6.0;
  const double se = std::sqrt(exact * (1.0 - exact) / n);
  CHECK(std::abs(fer - exact) < 3.0 * se);
}

TEST_CASE("resolved set does not depend on the peeling schedule") {
  const auto dist = make_distribution({{2, 0.5}, {3, 0.5}});
  rng gen_rng(4242), schedule_rng(17);
  frame_generator gen(12, dist, activity_model::poisson(9.0));
  frame_graph frame;
  peeling_decoder decoder;
  for (int trial = 0; trial < 1000; ++trial) {
    gen.generate(gen_rng, frame);
    const auto outcome = decoder.decode(frame);
    auto resolved = outcome.resolved;
    std::sort(resolved.begin(), resolved.end());
    for (int schedule = 0; schedule < 3; ++schedule) {
      const auto reference = decode_random_schedule(frame, schedule_rng);
      CHECK(reference == resolved);
    }
  }
}

TEST_CASE("deleting a user never shrinks the resolved set of the others") {
  const auto dist = make_distribution({{3, 1.0}});
  rng r(2718);
  frame_generator gen(15, dist, activity_model::poisson(12.0));
  frame_graph frame;
  peeling_decoder decoder;
  for (int trial = 0; trial < 1000; ++trial) {
    gen.generate(r, frame);
    if (frame.num_active() == 0) continue;
    const auto base = decoder.decode(frame);
    std::set<std::uint32_t> base_resolved(base.resolved.begin(), base.resolved.end());

    const std::uint32_t removed = static_cast<std::uint32_t>(r.below(frame.num_active()));
    frame_graph reduced(frame.num_slots());
    for (std::uint32_t u = 0; u < frame.num_active(); ++u) {
      if (u == removed) continue;
      const auto slots = frame.slots_of(u);
      reduced.add_user({slots.data(), slots.size()});
    }
    const auto after = decoder.decode(reduced);
    std::set<std::uint32_t> after_resolved(after.resolved.begin(), after.resolved.end());

    for (std::uint32_t u : base_resolved) {
      if (u == removed) continue;
      const std::uint32_t remapped = u > removed ? u - 1 : u;
      CHECK(after_resolved.count(remapped) == 1);
    }
  }
}

TEST_CASE("owning a singleton slot guarantees resolution") {
  const auto dist = make_distribution({{2, 0.3}, {3, 0.7}});
  rng r(1414);
  frame_generator gen(20, dist, activity_model::poisson(14.0));
  frame_graph frame;
  peeling_decoder decoder;
  for (int trial = 0; trial < 500; ++trial) {
    gen.generate(r, frame);
    std::vector<int> occupancy(frame.num_slots(), 0);
    for (std::uint32_t u = 0; u < frame.num_active(); ++u)
      for (std::uint32_t s : frame.slots_of(u)) ++occupancy[s];
    const auto outcome = decoder.decode(frame);
    const std::set<std::uint32_t> resolved(outcome.resolved.begin(), outcome.resolved.end());
    for (std::uint32_t u = 0; u < frame.num_active(); ++u) {
      bool has_singleton = false;
      for (std::uint32_t s : frame.slots_of(u))
        if (occupancy[s] == 1) has_singleton = true;
      if (has_singleton) CHECK(resolved.count(u) == 1);
    }
  }
}

TEST_CASE("frame dumps are canonical and reproducible") {
  const auto frame = make_frame(3, {{1, 0}, {1, 2}});
  CHECK(dump_frame(frame) == "m=3\n0\t0,1\n1\t1,2\n");

  const auto dist = make_distribution({{3, 0.86}, {8, 0.14}});
  rng a(12345), b(12345);
  const auto fa = generate_frame(40, dist, activity_model::poisson(20.0), a);
  const auto fb = generate_frame(40, dist, activity_model::poisson(20.0), b);
  CHECK(dump_frame(fa) == dump_frame(fb));
}
