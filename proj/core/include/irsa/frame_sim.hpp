#ifndef IRSA_FRAME_SIM_HPP
#define IRSA_FRAME_SIM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irsa/degree_dist.hpp"
#include "irsa/rng.hpp"

namespace irsa {

/** How many users become active in a frame.
 *
 *  poisson(mean)            large-population limit, mean = g * m
 *  binomial(n, p)           finite population, each user active with prob p
 *  fixed(count)             deterministic count, mainly for oracle tests
 */
class activity_model {
 public:
  enum class kind { poisson, binomial, fixed };

  static activity_model poisson(double mean);
  static activity_model binomial(std::uint64_t population, double activation_probability);
  static activity_model fixed(std::uint64_t count);

  kind model_kind() const { return kind_; }
  double mean() const { return mean_; }
  std::uint64_t population() const { return population_; }
  double activation_probability() const { return activation_probability_; }
  std::uint64_t fixed_count() const { return fixed_count_; }

 private:
  activity_model() = default;

  kind kind_ = kind::poisson;
  double mean_ = 0.0;
  std::uint64_t population_ = 0;
  double activation_probability_ = 0.0;
  std::uint64_t fixed_count_ = 0;
};

/** Draws active-user counts for one activity model.
 *
 *  Tabulates the inverse CDF once (Poisson / binomial pmf accumulated in log
 *  space, so large means do not underflow) and answers each draw with a single
 *  uniform plus a binary search. Read-only after construction; shareable.
 */
class activity_sampler {
 public:
  explicit activity_sampler(const activity_model& model);

  std::uint64_t draw(rng& r) const;

 private:
  std::uint64_t first_ = 0;        // count represented by cdf_[0]
  std::vector<double> cdf_;        // empty for fixed models
  std::uint64_t fixed_count_ = 0;
};

/** User/slot incidence of one frame realization.
 *
 *  Slot sets are stored back to back: user k owns
 *  slot_ids[offsets[k] .. offsets[k+1]). Each set is sorted, duplicate-free
 *  and bounded by num_slots. User ids are the insertion indices 0..n-1.
 */
class frame_graph {
 public:
  frame_graph() = default;
  explicit frame_graph(std::uint32_t num_slots) { reset(num_slots); }

  void reset(std::uint32_t num_slots);

  /** Append one active user. `slots` must be distinct indices < num_slots
   *  (any order; stored sorted). Returns the new user's id. */
  std::uint32_t add_user(std::span<const std::uint32_t> slots);

  std::uint32_t num_slots() const { return num_slots_; }
  std::uint32_t num_active() const { return static_cast<std::uint32_t>(offsets_.size() - 1); }
  std::uint64_t num_edges() const { return slot_ids_.size(); }

  std::uint32_t degree_of(std::uint32_t user) const { return offsets_[user + 1] - offsets_[user]; }

  std::span<const std::uint32_t> slots_of(std::uint32_t user) const {
    return {slot_ids_.data() + offsets_[user], slot_ids_.data() + offsets_[user + 1]};
  }

 private:
  std::uint32_t num_slots_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<std::uint32_t> slot_ids_;
};

/** Result of running interference cancellation on a frame. resolved and
 *  unresolved partition the active user ids; iterations counts peeling rounds
 *  (one user recovered per round). */
struct decode_outcome {
  std::vector<std::uint32_t> resolved;
  std::vector<std::uint32_t> unresolved;
  std::uint32_t iterations = 0;
};

/** Generates random frames: active-user count from the activity model, each
 *  user's degree i.i.d. from the distribution, slot sets uniform without
 *  replacement. Owns scratch buffers, so one instance per worker. */
class frame_generator {
 public:
  frame_generator(std::uint32_t num_slots, degree_distribution dist, const activity_model& model);

  /** Throws degree_exceeds_slots_error if a sampled degree exceeds the slot
   *  count; configs are expected to guarantee max degree <= num_slots. */
  void generate(rng& r, frame_graph& out);

  frame_graph generate(rng& r);

 private:
  std::uint32_t num_slots_;
  degree_distribution dist_;
  activity_sampler sampler_;
  std::vector<std::uint32_t> chosen_;  // Floyd sampling scratch
};

frame_graph generate_frame(std::uint32_t num_slots, const degree_distribution& dist,
                           const activity_model& model, rng& r);

/** Iterative singleton-slot peeling (successive interference cancellation).
 *
 *  Repeatedly takes a slot with exactly one remaining copy, recovers its user
 *  and removes that user's copies everywhere. The resolved set is independent
 *  of the order singleton slots are processed in; what is left is the maximal
 *  stopping set. Owns per-frame scratch, so one instance per worker.
 */
class peeling_decoder {
 public:
  struct counts {
    std::uint32_t resolved_users = 0;
    std::uint32_t iterations = 0;
  };

  decode_outcome decode(const frame_graph& frame);
  void decode(const frame_graph& frame, decode_outcome& out);

  /** Counting-only fast path for Monte Carlo loops. */
  counts decode_counts(const frame_graph& frame);

 private:
  counts run(const frame_graph& frame);

  std::vector<std::uint32_t> occupancy_;   // copies left per slot
  std::vector<std::uint32_t> owner_xor_;   // xor of unresolved user ids per slot
  std::vector<std::uint32_t> pending_;     // candidate singleton slots
  std::vector<std::uint8_t> resolved_;     // per user
  std::vector<std::uint32_t> order_;       // resolution order
};

decode_outcome sic_decode(const frame_graph& frame);

/** Exact frame-error probability for small fixed-degree configurations,
 *  by enumerating every joint slot-set assignment uniformly and decoding each.
 *  A frame errs when at least one user stays unresolved.
 *
 *  Guard: the assignment count (product of C(num_slots, d_i)) must not exceed
 *  1e7, else too_large_to_enumerate_error.
 */
double exact_fer_small(std::uint32_t num_slots, std::span<const std::uint32_t> degrees);

/** Debug dump: header "m=<slots>" then one "user_id<TAB>s0,s1,..." line per
 *  active user. Identical (seed, m, dist, model) inputs give identical dumps. */
std::string dump_frame(const frame_graph& frame);

}  // namespace irsa

#endif
