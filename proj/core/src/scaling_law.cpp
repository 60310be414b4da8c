#include "irsa/scaling_law.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "irsa/errors.hpp"

namespace irsa {

namespace {

struct builtin_row {
  std::string_view name;
  scaling_params params;
};

// g*, alpha0, beta0, gamma per distribution
constexpr std::array<builtin_row, 5> kBuiltins{{
    {"x3", {0.818469, 0.497867, 0.964528, 0.783499}},
    {"x4", {0.772280, 0.409321, 0.827849, 0.906054}},
    {"x5", {0.701780, 0.375892, 0.760593, 0.961253}},
    {"lambda1", {0.661090, 0.404986, 0.849037, 0.982040}},
    {"lambda2", {0.851325, 0.496301, 1.50477, 0.835418}},
}};

constexpr std::array<std::string_view, 5> kBuiltinNames{"x3", "x4", "x5", "lambda1", "lambda2"};

double alpha_for(double load, double alpha0, std::optional<std::uint64_t> population,
                 std::uint32_t num_slots) {
  if (!population) return std::sqrt(alpha0 * alpha0 + load);
  if (*population <= num_slots)
    throw invalid_population_error("population must exceed the slot count");
  const double n = static_cast<double>(*population);
  const double rate = (n - static_cast<double>(num_slots)) / n;
  return std::sqrt(alpha0 * alpha0 + load * (1.0 - (1.0 - rate) * load));
}

}  // namespace

double q_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double fep_predict(std::uint32_t num_slots, double load, const scaling_params& params,
                   std::optional<std::uint64_t> population) {
  if (num_slots < 1) throw validation_error("slot count must be >= 1");
  if (!(load > 0.0)) throw validation_error("channel load must be > 0");

  const double m = static_cast<double>(num_slots);
  const double shift = params.beta0 * std::pow(m, -2.0 / 3.0);
  const double arg = std::sqrt(m) * (params.g_star - shift - load) /
                     alpha_for(load, params.alpha0, population, num_slots);
  return std::clamp(q_tail(arg), 0.0, 1.0);
}

double plp_predict(std::uint32_t num_slots, double load, const scaling_params& params,
                   std::optional<std::uint64_t> population) {
  return std::clamp(params.gamma * fep_predict(num_slots, load, params, population), 0.0, 1.0);
}

prediction_point predict(std::uint32_t num_slots, double load, const scaling_params& params,
                         std::optional<std::uint64_t> population) {
  prediction_point point;
  point.num_slots = num_slots;
  point.load = load;
  point.fep = fep_predict(num_slots, load, params, population);
  point.plp = plp_predict(num_slots, load, params, population);
  return point;
}

scaling_params builtin_params(std::string_view name) {
  for (const auto& row : kBuiltins)
    if (row.name == name) return row.params;
  throw unknown_distribution_error("no built-in parameters for '" + std::string(name) + "'");
}

std::span<const std::string_view> builtin_names() { return kBuiltinNames; }

degree_distribution builtin_distribution(std::string_view name) {
  if (name == "x3") return make_distribution({{3, 1.0}});
  if (name == "x4") return make_distribution({{4, 1.0}});
  if (name == "x5") return make_distribution({{5, 1.0}});
  if (name == "lambda1") return make_distribution({{4, 0.5}, {8, 0.5}});
  if (name == "lambda2") return make_distribution({{3, 0.86}, {8, 0.14}});
  throw unknown_distribution_error("no built-in distribution named '" + std::string(name) + "'");
}

std::optional<std::string> match_builtin(const degree_distribution& dist) {
  for (const auto& name : kBuiltinNames) {
    const degree_distribution candidate = builtin_distribution(name);
    const auto a = dist.terms();
    const auto b = candidate.terms();
    if (a.size() != b.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].degree != b[i].degree || std::abs(a[i].probability - b[i].probability) > 1e-12) {
        same = false;
        break;
      }
    }
    if (same) return std::string(name);
  }
  return std::nullopt;
}

}  // namespace irsa
