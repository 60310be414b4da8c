#include "irsa/error_floor.hpp"

#include <algorithm>
#include <cmath>

#include "irsa/errors.hpp"

namespace irsa {

namespace {

double binom(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::uint32_t i = 1; i <= k; ++i)
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

floor_estimate_result floor_estimate(const degree_distribution& dist, std::uint32_t num_slots,
                                     double load) {
  if (num_slots < 1) throw validation_error("slot count must be >= 1");
  if (!(load > 0.0)) throw validation_error("channel load must be > 0");

  double collision_mass = 0.0;  // sum_d Lambda_d^2 / C(m, d)
  for (const auto& t : dist.terms()) {
    if (t.degree > num_slots) continue;  // no identical pair possible for this degree
    collision_mass += t.probability * t.probability / binom(num_slots, t.degree);
  }

  const double expected_users = load * static_cast<double>(num_slots);
  const double expected_pairs = 0.5 * expected_users * expected_users * collision_mass;

  floor_estimate_result result;
  result.fep_floor = std::clamp(-std::expm1(-expected_pairs), 0.0, 1.0);
  result.plp_floor = std::clamp(2.0 * expected_pairs / expected_users, 0.0, 1.0);
  return result;
}

}  // namespace irsa
