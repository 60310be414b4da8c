#ifndef IRSA_SCALING_LAW_HPP
#define IRSA_SCALING_LAW_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "irsa/degree_dist.hpp"

namespace irsa {

/** Constants driving the closed-form waterfall predictors: decoding threshold
 *  g*, variance constant alpha0, threshold-shift constant beta0 (both for the
 *  zero-rate ensemble), and asymptotic loss fraction gamma. */
struct scaling_params {
  double g_star = 0.0;
  double alpha0 = 0.0;
  double beta0 = 0.0;
  double gamma = 0.0;
};

/** One evaluated prediction. */
struct prediction_point {
  std::uint32_t num_slots = 0;
  double load = 0.0;
  double fep = 0.0;
  double plp = 0.0;
};

/** Tail probability of the standard normal, Q(x) = 1 - Phi(x), evaluated via
 *  erfc so the deep tail keeps full accuracy instead of cancelling. */
double q_tail(double x);

/** Waterfall frame-error prediction
 *
 *      Q( sqrt(m) * (g* - beta0 * m^(-2/3) - g) / alpha_g )
 *
 *  with alpha_g = sqrt(alpha0^2 + g) for the infinite-population default.
 *  Passing a finite population n uses alpha_g = sqrt(alpha0^2 + g(1-(1-R)g)),
 *  R = (n-m)/n; n <= m raises invalid_population_error. Clamped to [0, 1]. */
double fep_predict(std::uint32_t num_slots, double load, const scaling_params& params,
                   std::optional<std::uint64_t> population = std::nullopt);

/** Packet-loss prediction gamma * fep_predict(...), clamped to [0, 1]. */
double plp_predict(std::uint32_t num_slots, double load, const scaling_params& params,
                   std::optional<std::uint64_t> population = std::nullopt);

prediction_point predict(std::uint32_t num_slots, double load, const scaling_params& params,
                         std::optional<std::uint64_t> population = std::nullopt);

/** Built-in parameter rows for the bundled distributions:
 *  x3, x4, x5, lambda1 (0.5x^4 + 0.5x^8), lambda2 (0.86x^3 + 0.14x^8).
 *  Unknown names raise unknown_distribution_error. */
scaling_params builtin_params(std::string_view name);

/** Names accepted by builtin_params, in table order. */
std::span<const std::string_view> builtin_names();

/** The degree distribution a built-in name stands for. */
degree_distribution builtin_distribution(std::string_view name);

/** Reverse lookup: the built-in name whose distribution matches coefficient
 *  for coefficient (within 1e-12), if any. */
std::optional<std::string> match_builtin(const degree_distribution& dist);

}  // namespace irsa

#endif
