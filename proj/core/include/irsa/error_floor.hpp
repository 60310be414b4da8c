#ifndef IRSA_ERROR_FLOOR_HPP
#define IRSA_ERROR_FLOOR_HPP

#include <cstdint>

#include "irsa/degree_dist.hpp"

namespace irsa {

/** Low-load error-floor estimate from the dominant unresolvable event. */
struct floor_estimate_result {
  double plp_floor = 0.0;
  double fep_floor = 0.0;
  bool dominant_term_only = true;  // larger stopping sets are not counted
};

/** Dominant-event floor: two active users drawing the same degree d and the
 *  identical d-subset of slots, which no amount of cancellation untangles.
 *  With Poisson pair counting the expected number of such pairs is
 *
 *      E2 = (g m)^2 / 2 * sum_d Lambda_d^2 / C(m, d)
 *
 *  giving fep_floor = 1 - exp(-E2) and plp_floor = 2 E2 / (g m) (each event
 *  costs two packets out of g m expected). A lower-bound-flavored estimate:
 *  larger stopping sets would only add to it. */
floor_estimate_result floor_estimate(const degree_distribution& dist, std::uint32_t num_slots,
                                     double load);

}  // namespace irsa

#endif
