#include "irsa/degree_dist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "irsa/errors.hpp"

namespace irsa {

namespace {

constexpr double kAcceptTolerance = 1e-9;

std::string format_probability(double p) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

double degree_distribution::coefficient(std::uint32_t degree) const {
  for (const term& t : terms_) {
    if (t.degree == degree) return t.probability;
  }
  return 0.0;
}

double degree_distribution::evaluate(double x) const {
  double sum = 0.0;
  for (const term& t : terms_) sum += t.probability * std::pow(x, t.degree);
  return sum;
}

std::uint32_t degree_distribution::sample_degree(rng& r) const {
  const double u = r.next_double();
  for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
    if (u < cumulative_[i]) return terms_[i].degree;
  }
  return terms_.back().degree;
}

std::string degree_distribution::to_string() const {
  std::string out;
  for (const term& t : terms_) {
    if (!out.empty()) out += ',';
    out += std::to_string(t.degree);
    out += ':';
    out += format_probability(t.probability);
  }
  return out;
}

degree_distribution make_distribution(const std::map<std::uint32_t, double>& coeffs) {
  if (coeffs.empty()) throw empty_distribution_error("degree distribution has no terms");

  double sum = 0.0;
  for (const auto& [degree, probability] : coeffs) {
    if (degree < 1) throw validation_error("degree must be a positive integer");
    if (probability < 0.0)
      throw negative_coefficient_error("coefficient for degree " + std::to_string(degree) +
                                       " is negative");
    sum += probability;
  }
  if (std::abs(sum - 1.0) > kAcceptTolerance)
    throw not_normalized_error("coefficients sum to " + format_probability(sum) +
                               ", expected 1 within 1e-9");

  degree_distribution dist;
  dist.renormalized_ = sum != 1.0;
  for (const auto& [degree, probability] : coeffs) {
    if (probability == 0.0) continue;  // keep storage sparse
    dist.terms_.push_back({degree, probability / sum});
  }

  double mean = 0.0;
  double cumulative = 0.0;
  for (const auto& t : dist.terms_) {
    mean += static_cast<double>(t.degree) * t.probability;
    cumulative += t.probability;
    dist.cumulative_.push_back(cumulative);
  }
  dist.cumulative_.back() = 1.0;  // absorb rounding so sampling never falls off the end
  dist.mean_degree_ = mean;
  return dist;
}

degree_distribution parse_distribution(std::string_view text) {
  std::map<std::uint32_t, double> coeffs;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);

    // allow surrounding whitespace in hand-written configs
    while (!item.empty() && (item.front() == ' ' || item.front() == '\t')) item.remove_prefix(1);
    while (!item.empty() && (item.back() == ' ' || item.back() == '\t')) item.remove_suffix(1);
    if (item.empty())
      throw validation_error("empty entry in distribution string '" + std::string(text) + "'");

    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw validation_error("expected 'degree:probability', got '" + std::string(item) + "'");

    std::uint32_t degree = 0;
    const char* dbegin = item.data();
    const char* dend = item.data() + colon;
    auto [dptr, dec] = std::from_chars(dbegin, dend, degree);
    if (dec != std::errc() || dptr != dend || degree < 1)
      throw validation_error("bad degree in '" + std::string(item) + "'");

    double probability = 0.0;
    const char* pbegin = item.data() + colon + 1;
    const char* pend = item.data() + item.size();
    auto [pptr, pec] = std::from_chars(pbegin, pend, probability);
    if (pec != std::errc() || pptr != pend)
      throw validation_error("bad probability in '" + std::string(item) + "'");

    if (coeffs.count(degree))
      throw validation_error("degree " + std::to_string(degree) + " listed twice");
    coeffs[degree] = probability;

    if (comma == text.size()) break;
    pos = comma + 1;
  }

  return make_distribution(coeffs);
}

double edge_distribution::coefficient(std::uint32_t degree) const {
  for (const term& t : terms_) {
    if (t.degree == degree) return t.probability;
  }
  return 0.0;
}

double edge_distribution::evaluate(double x) const {
  double sum = 0.0;
  for (const term& t : terms_) sum += t.probability * std::pow(x, t.degree - 1);
  return sum;
}

degree_distribution edge_distribution::node_perspective() const {
  std::map<std::uint32_t, double> coeffs;
  for (const term& t : terms_)
    coeffs[t.degree] = t.probability * mean_degree_ / static_cast<double>(t.degree);
  return make_distribution(coeffs);
}

edge_distribution edge_perspective(const degree_distribution& dist) {
  edge_distribution edge;
  edge.mean_degree_ = dist.mean_degree();
  for (const auto& t : dist.terms())
    edge.terms_.push_back(
        {t.degree, t.probability * static_cast<double>(t.degree) / dist.mean_degree()});
  return edge;
}

}  // namespace irsa
