#ifndef IRSA_DEGREE_DIST_HPP
#define IRSA_DEGREE_DIST_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irsa/rng.hpp"

namespace irsa {

/** Node-perspective repetition-degree distribution.
 *
 *  Stores the nonzero coefficients of Lambda(x) = sum_d Lambda_d x^d sparsely,
 *  sorted by degree. Lambda_d is the probability that an active user transmits
 *  d copies of its packet. Instances are immutable after construction and safe
 *  to share across concurrent workers; RNG state stays with the caller.
 */
class degree_distribution {
 public:
  struct term {
    std::uint32_t degree;
    double probability;
  };

  /** Nonzero terms, ascending by degree. */
  std::span<const term> terms() const { return terms_; }

  std::uint32_t min_degree() const { return terms_.front().degree; }
  std::uint32_t max_degree() const { return terms_.back().degree; }

  /** Lambda_d, zero when the degree carries no mass. */
  double coefficient(std::uint32_t degree) const;

  /** Lambda'(1) = sum_d d * Lambda_d. */
  double mean_degree() const { return mean_degree_; }

  /** Lambda(x). */
  double evaluate(double x) const;

  /** Input coefficients were off by more than floating-point noise
   *  (but within the acceptance tolerance) and got rescaled to sum 1. */
  bool renormalized() const { return renormalized_; }

  /** Degree-1 users can never be recovered once they collide; worth a
   *  diagnostic since designs rarely intend that. */
  bool has_degree_one_mass() const { return terms_.front().degree == 1; }

  /** Draw a degree with probability Lambda_d. */
  std::uint32_t sample_degree(rng& r) const;

  /** Round-trippable "d:p,d:p" form. */
  std::string to_string() const;

  friend degree_distribution make_distribution(const std::map<std::uint32_t, double>& coeffs);

 private:
  degree_distribution() = default;

  std::vector<term> terms_;
  std::vector<double> cumulative_;  // inclusive prefix sums, last forced to 1
  double mean_degree_ = 0.0;
  bool renormalized_ = false;
};

/** Validate and build a distribution from a degree -> probability map.
 *
 *  Zero coefficients are dropped. Inputs whose total differs from 1 by at
 *  most 1e-9 are rescaled (flagged via renormalized()); anything further off
 *  is rejected rather than silently fixed.
 *
 *  Throws empty_distribution_error, negative_coefficient_error,
 *  not_normalized_error, validation_error (degree 0).
 */
degree_distribution make_distribution(const std::map<std::uint32_t, double>& coeffs);

/** Parse the "d:p,d:p" grammar used by CLI flags and config files,
 *  e.g. "3:0.86,8:0.14". */
degree_distribution parse_distribution(std::string_view text);

/** Edge-perspective counterpart lambda(x) = sum_d lambda_d x^(d-1) with
 *  lambda_d = Lambda_d * d / Lambda'(1). */
class edge_distribution {
 public:
  struct term {
    std::uint32_t degree;
    double probability;  // lambda_d
  };

  std::span<const term> terms() const { return terms_; }

  /** Lambda'(1) of the source distribution. */
  double mean_degree() const { return mean_degree_; }

  /** lambda_d, zero when absent. */
  double coefficient(std::uint32_t degree) const;

  /** lambda(x) = sum_d lambda_d x^(d-1). */
  double evaluate(double x) const;

  /** Average of x^d over lambda, i.e. sum_d lambda_d x^d = x * lambda(x). */
  double node_erasure(double x) const { return x * evaluate(x); }

  /** Reconstruct the node-perspective source via Lambda_d = lambda_d * Lambda'(1) / d. */
  degree_distribution node_perspective() const;

  friend edge_distribution edge_perspective(const degree_distribution& dist);

 private:
  edge_distribution() = default;

  std::vector<term> terms_;
  double mean_degree_ = 0.0;
};

edge_distribution edge_perspective(const degree_distribution& dist);

}  // namespace irsa

#endif
