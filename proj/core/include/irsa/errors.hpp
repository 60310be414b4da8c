#ifndef IRSA_ERRORS_HPP
#define IRSA_ERRORS_HPP

#include <stdexcept>

namespace irsa {

/** Base class for all library errors. */
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Malformed user input: bad distribution strings, inconsistent configs. */
struct validation_error : error {
  using error::error;
};

struct empty_distribution_error : validation_error {
  using validation_error::validation_error;
};

struct negative_coefficient_error : validation_error {
  using validation_error::validation_error;
};

struct not_normalized_error : validation_error {
  using validation_error::validation_error;
};

/** A sampled repetition degree cannot fit in the frame's slot count. */
struct degree_exceeds_slots_error : error {
  using error::error;
};

/** Exhaustive enumeration would exceed the feasibility guard. */
struct too_large_to_enumerate_error : error {
  using error::error;
};

/** Threshold bisection predicate does not differ at the bracket endpoints. */
struct bracket_failure_error : error {
  using error::error;
};

/** Finite population size incompatible with the slot count. */
struct invalid_population_error : validation_error {
  using validation_error::validation_error;
};

struct unknown_distribution_error : validation_error {
  using validation_error::validation_error;
};

}  // namespace irsa

#endif
