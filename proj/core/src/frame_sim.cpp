#include "irsa/frame_sim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

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

/** Lexicographically next k-subset of [0, m); false once exhausted. */
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t m) {
  const std::size_t d = c.size();
  for (std::size_t i = d; i-- > 0;) {
    if (c[i] < m - d + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

activity_model activity_model::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean))
    throw validation_error("poisson activity mean must be finite and >= 0");
  activity_model m;
  m.kind_ = kind::poisson;
  m.mean_ = mean;
  return m;
}

activity_model activity_model::binomial(std::uint64_t population, double activation_probability) {
  if (population < 1) throw invalid_population_error("binomial population must be >= 1");
  if (!(activation_probability >= 0.0 && activation_probability <= 1.0))
    throw validation_error("activation probability must lie in [0, 1]");
  activity_model m;
  m.kind_ = kind::binomial;
  m.population_ = population;
  m.activation_probability_ = activation_probability;
  m.mean_ = static_cast<double>(population) * activation_probability;
  return m;
}

activity_model activity_model::fixed(std::uint64_t count) {
  activity_model m;
  m.kind_ = kind::fixed;
  m.fixed_count_ = count;
  m.mean_ = static_cast<double>(count);
  return m;
}

activity_sampler::activity_sampler(const activity_model& model) {
  if (model.model_kind() == activity_model::kind::fixed) {
    fixed_count_ = model.fixed_count();
    return;
  }

  // pmf by recurrence outward from the mode, normalized over a +-12 sigma
  // window (plus slack); the neglected tail mass is below double resolution.
  std::uint64_t lo = 0, hi = 0, mode = 0;
  if (model.model_kind() == activity_model::kind::poisson) {
    const double mean = model.mean();
    if (mean == 0.0) {
      fixed_count_ = 0;
      return;
    }
    const double sigma = std::sqrt(mean);
    mode = static_cast<std::uint64_t>(mean);
    lo = static_cast<std::uint64_t>(std::max(0.0, mean - 12.0 * sigma - 30.0));
    hi = static_cast<std::uint64_t>(mean + 12.0 * sigma + 30.0);
  } else {
    const double n = static_cast<double>(model.population());
    const double p = model.activation_probability();
    if (p == 0.0) {
      fixed_count_ = 0;
      return;
    }
    if (p == 1.0) {
      fixed_count_ = model.population();
      return;
    }
    const double sigma = std::sqrt(n * p * (1.0 - p));
    mode = static_cast<std::uint64_t>(std::min(n, (n + 1.0) * p));
    lo = static_cast<std::uint64_t>(std::max(0.0, n * p - 12.0 * sigma - 30.0));
    hi = static_cast<std::uint64_t>(std::min(n, n * p + 12.0 * sigma + 30.0));
  }
  mode = std::clamp(mode, lo, hi);

  const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
  std::vector<double> pmf(len, 0.0);
  pmf[mode - lo] = 1.0;  // relative to the mode; rescaled below

  auto step_up = [&](std::uint64_t k) {  // pmf(k+1) / pmf(k)
    if (model.model_kind() == activity_model::kind::poisson)
      return model.mean() / static_cast<double>(k + 1);
    const double p = model.activation_probability();
    return static_cast<double>(model.population() - k) / static_cast<double>(k + 1) * p /
           (1.0 - p);
  };

  for (std::uint64_t k = mode; k < hi; ++k) pmf[k - lo + 1] = pmf[k - lo] * step_up(k);
  for (std::uint64_t k = mode; k > lo; --k) pmf[k - lo - 1] = pmf[k - lo] / step_up(k - 1);

  double total = 0.0;
  for (double v : pmf) total += v;

  first_ = lo;
  cdf_.resize(len);
  double acc = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    acc += pmf[i] / total;
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;
}

std::uint64_t activity_sampler::draw(rng& r) const {
  if (cdf_.empty()) return fixed_count_;
  const double u = r.next_double();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t idx = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
  return first_ + idx;
}

void frame_graph::reset(std::uint32_t num_slots) {
  if (num_slots < 1) throw validation_error("frame must have at least one slot");
  num_slots_ = num_slots;
  offsets_.assign(1, 0);
  slot_ids_.clear();
}

std::uint32_t frame_graph::add_user(std::span<const std::uint32_t> slots) {
  if (slots.empty()) throw validation_error("active user must occupy at least one slot");
  const std::size_t begin = slot_ids_.size();
  slot_ids_.insert(slot_ids_.end(), slots.begin(), slots.end());
  std::sort(slot_ids_.begin() + begin, slot_ids_.end());
  for (std::size_t i = begin; i < slot_ids_.size(); ++i) {
    if (slot_ids_[i] >= num_slots_) throw validation_error("slot index out of range");
    if (i > begin && slot_ids_[i] == slot_ids_[i - 1])
      throw validation_error("slot set contains duplicates");
  }
  offsets_.push_back(static_cast<std::uint32_t>(slot_ids_.size()));
  return num_active() - 1;
}

frame_generator::frame_generator(std::uint32_t num_slots, degree_distribution dist,
                                 const activity_model& model)
    : num_slots_(num_slots), dist_(std::move(dist)), sampler_(model) {
  if (num_slots < 1) throw validation_error("frame must have at least one slot");
}

void frame_generator::generate(rng& r, frame_graph& out) {
  out.reset(num_slots_);
  const std::uint64_t active = sampler_.draw(r);
  for (std::uint64_t i = 0; i < active; ++i) {
    const std::uint32_t degree = dist_.sample_degree(r);
    if (degree > num_slots_)
      throw degree_exceeds_slots_error("sampled degree " + std::to_string(degree) +
                                       " exceeds slot count " + std::to_string(num_slots_));
    // Floyd's sampling: degree draws, no replacement
    chosen_.clear();
    for (std::uint32_t j = num_slots_ - degree; j < num_slots_; ++j) {
      const auto t = static_cast<std::uint32_t>(r.below(j + 1));
      if (std::find(chosen_.begin(), chosen_.end(), t) != chosen_.end())
        chosen_.push_back(j);
      else
        chosen_.push_back(t);
    }
    out.add_user(chosen_);
  }
}

frame_graph frame_generator::generate(rng& r) {
  frame_graph frame;
  generate(r, frame);
  return frame;
}

frame_graph generate_frame(std::uint32_t num_slots, const degree_distribution& dist,
                           const activity_model& model, rng& r) {
  frame_generator gen(num_slots, dist, model);
  return gen.generate(r);
}

peeling_decoder::counts peeling_decoder::run(const frame_graph& frame) {
  const std::uint32_t slots = frame.num_slots();
  const std::uint32_t users = frame.num_active();
  occupancy_.assign(slots, 0);
  owner_xor_.assign(slots, 0);
  resolved_.assign(users, 0);
  pending_.clear();
  order_.clear();

  for (std::uint32_t u = 0; u < users; ++u) {
    for (std::uint32_t s : frame.slots_of(u)) {
      ++occupancy_[s];
      owner_xor_[s] ^= u;
    }
  }
  for (std::uint32_t s = 0; s < slots; ++s)
    if (occupancy_[s] == 1) pending_.push_back(s);

  counts c;
  while (!pending_.empty()) {
    const std::uint32_t s = pending_.back();
    pending_.pop_back();
    if (occupancy_[s] != 1) continue;  // stale: emptied since it was queued
    const std::uint32_t u = owner_xor_[s];  // sole unresolved user left here
    resolved_[u] = 1;
    order_.push_back(u);
    ++c.resolved_users;
    ++c.iterations;
    for (std::uint32_t s2 : frame.slots_of(u)) {
      --occupancy_[s2];
      owner_xor_[s2] ^= u;
      if (occupancy_[s2] == 1) pending_.push_back(s2);
    }
  }
  return c;
}

void peeling_decoder::decode(const frame_graph& frame, decode_outcome& out) {
  const counts c = run(frame);
  out.iterations = c.iterations;
  out.resolved.assign(order_.begin(), order_.end());
  out.unresolved.clear();
  for (std::uint32_t u = 0; u < frame.num_active(); ++u)
    if (!resolved_[u]) out.unresolved.push_back(u);
}

decode_outcome peeling_decoder::decode(const frame_graph& frame) {
  decode_outcome out;
  decode(frame, out);
  return out;
}

peeling_decoder::counts peeling_decoder::decode_counts(const frame_graph& frame) {
  return run(frame);
}

decode_outcome sic_decode(const frame_graph& frame) {
  peeling_decoder decoder;
  return decoder.decode(frame);
}

double exact_fer_small(std::uint32_t num_slots, std::span<const std::uint32_t> degrees) {
  if (num_slots < 1) throw validation_error("frame must have at least one slot");
  double assignments = 1.0;
  for (std::uint32_t d : degrees) {
    if (d < 1) throw validation_error("degrees must be >= 1");
    if (d > num_slots)
      throw degree_exceeds_slots_error("degree " + std::to_string(d) + " exceeds slot count " +
                                       std::to_string(num_slots));
    assignments *= binom(num_slots, d);
    if (assignments > 1e7)
      throw too_large_to_enumerate_error("joint assignment count exceeds 1e7");
  }

  std::vector<std::vector<std::uint32_t>> combo(degrees.size());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    combo[i].resize(degrees[i]);
    for (std::uint32_t j = 0; j < degrees[i]; ++j) combo[i][j] = j;
  }

  peeling_decoder decoder;
  frame_graph frame;
  std::uint64_t total = 0;
  std::uint64_t errors = 0;
  for (;;) {
    frame.reset(num_slots);
    for (const auto& slots : combo) frame.add_user(slots);
    const auto c = decoder.decode_counts(frame);
    ++total;
    if (c.resolved_users < degrees.size()) ++errors;

    // odometer over the per-user combinations
    std::size_t i = combo.size();
    while (i > 0 && !next_combination(combo[i - 1], num_slots)) {
      for (std::uint32_t j = 0; j < degrees[i - 1]; ++j) combo[i - 1][j] = j;
      --i;
    }
    if (i == 0) break;
  }
  return static_cast<double>(errors) / static_cast<double>(total);
}

std::string dump_frame(const frame_graph& frame) {
  std::string out = "m=" + std::to_string(frame.num_slots()) + "\n";
  for (std::uint32_t u = 0; u < frame.num_active(); ++u) {
    out += std::to_string(u);
    out += '\t';
    bool sep = false;
    for (std::uint32_t s : frame.slots_of(u)) {
      if (sep) out += ',';
      out += std::to_string(s);
      sep = true;
    }
    out += '\n';
  }
  return out;
}

}  // namespace irsa
