#ifndef IRSA_DENSITY_EVOLUTION_HPP
#define IRSA_DENSITY_EVOLUTION_HPP

#include <cstdint>

#include "irsa/degree_dist.hpp"

namespace irsa {

/** Erasure-probability pair tracked by the asymptotic recursion:
 *  q user->slot, p slot->user. Starting from q0 = 1, q is non-increasing
 *  across iterations. */
struct de_state {
  double q = 1.0;
  double p = 1.0;
  std::uint32_t iterations = 0;
  bool converged = false;
};

struct de_options {
  std::uint32_t max_iters = 100000;
  double tol = 1e-12;
};

/** Iterate p <- 1 - exp(-g * Lambda'(1) * q), q <- lambda(p) from q0 = 1
 *  until |q_new - q_old| < tol or max_iters is hit. Non-convergence is not an
 *  error; the last state is returned with converged == false. */
de_state de_fixed_point(const degree_distribution& dist, double load, de_options opts = {});

/** Asymptotic (m -> infinity) packet loss probability at channel load g:
 *  the unresolved probability p^d averaged over the edge-perspective degree
 *  distribution, sum_d lambda_d * p^d, at the recursion's fixed point. Zero
 *  whenever the fixed point collapses to q = 0. */
double asymptotic_plp(const degree_distribution& dist, double load, de_options opts = {});

struct threshold_result {
  double g_star = 0.0;
  double bracket_width = 0.0;
  std::uint32_t iterations_used = 0;
};

struct threshold_options {
  double tol = 1e-6;
  double bracket_lo = 0.01;
  double bracket_hi = 1.0;
  double vanish_cutoff = 1e-10;  // fixed-point q below this counts as decoded
  de_options de = {};
};

/** Decoding threshold g*: the largest load whose fixed point vanishes.
 *  Bisection on the bracket until its width drops to tol; throws
 *  bracket_failure_error when the decodability predicate does not differ at
 *  the bracket endpoints. */
threshold_result bp_threshold(const degree_distribution& dist, threshold_options opts = {});
threshold_result bp_threshold(const degree_distribution& dist, double tol);

/** Asymptotic loss fraction gamma = asymptotic_plp at g = 1, the constant
 *  that scales frame-error predictions into packet-loss predictions. */
double compute_gamma(const degree_distribution& dist);

}  // namespace irsa

#endif
