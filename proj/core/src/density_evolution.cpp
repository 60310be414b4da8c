#include "irsa/density_evolution.hpp"

#include <cmath>

#include "irsa/errors.hpp"

namespace irsa {

de_state de_fixed_point(const degree_distribution& dist, double load, de_options opts) {
  if (!(load > 0.0)) throw validation_error("channel load must be > 0");
  if (!(opts.tol > 0.0)) throw validation_error("tolerance must be > 0");

  const edge_distribution edge = edge_perspective(dist);
  const double rate = load * dist.mean_degree();

  de_state state;
  for (std::uint32_t it = 0; it < opts.max_iters; ++it) {
    state.p = -std::expm1(-rate * state.q);  // 1 - exp(-g L'(1) q), stable near 0
    const double q_next = edge.evaluate(state.p);
    const double delta = std::abs(q_next - state.q);
    state.q = q_next;
    state.iterations = it + 1;
    if (delta < opts.tol) {
      state.converged = true;
      break;
    }
  }
  return state;
}

double asymptotic_plp(const degree_distribution& dist, double load, de_options opts) {
  const de_state state = de_fixed_point(dist, load, opts);
  const edge_distribution edge = edge_perspective(dist);
  return edge.node_erasure(state.p);
}

threshold_result bp_threshold(const degree_distribution& dist, threshold_options opts) {
  if (!(opts.tol > 0.0)) throw validation_error("tolerance must be > 0");
  if (!(opts.bracket_lo > 0.0 && opts.bracket_hi > opts.bracket_lo))
    throw validation_error("threshold bracket must satisfy 0 < lo < hi");

  auto decodes = [&](double g) {
    return de_fixed_point(dist, g, opts.de).q < opts.vanish_cutoff;
  };

  double lo = opts.bracket_lo;
  double hi = opts.bracket_hi;
  if (!decodes(lo) || decodes(hi))
    throw bracket_failure_error("decodability does not change over the bracket [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");

  threshold_result result;
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    if (decodes(mid))
      lo = mid;
    else
      hi = mid;
    ++result.iterations_used;
  }
  result.g_star = 0.5 * (lo + hi);
  result.bracket_width = hi - lo;
  return result;
}

threshold_result bp_threshold(const degree_distribution& dist, double tol) {
  threshold_options opts;
  opts.tol = tol;
  return bp_threshold(dist, opts);
}

double compute_gamma(const degree_distribution& dist) {
  return asymptotic_plp(dist, 1.0, de_options{});
}

}  // namespace irsa
