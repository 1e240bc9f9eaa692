#pragma once

// Grover-inspired reinforcement learning loop for user scheduling.
//
// Every slot the agent scores all 2^T schedules classically (the simulated
// oracle), marks the ones at or above its threshold, amplifies them with
// Grover iterations and measures a schedule. The threshold is what it learns:
// it tracks a ramping quantile of the per-slot reward distribution.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "msched/chanmod.hpp"
#include "msched/qsim.hpp"
#include "msched/ratemod.hpp"
#include "msched/rng.hpp"

namespace msched::qrl {

// Validation slots live far above any training slot index.
inline constexpr std::uint64_t kValidationSlotBase = std::uint64_t{1} << 40;

struct Slot {
  std::uint64_t index = 0;
  chanmod::ChannelRealization channel;
  chanmod::BeamAssignment beams;
  ratemod::LinkGains gains;
};

class Scenario {
 public:
  explicit Scenario(chanmod::ChannelConfig config) : generator_(std::move(config)) {}

  Slot slot(std::uint64_t index) const;
  Slot validation_slot(int v) const { return slot(kValidationSlotBase + static_cast<std::uint64_t>(v)); }
  const chanmod::ChannelConfig& config() const { return generator_.config(); }

 private:
  chanmod::ChannelGenerator generator_;
};

struct TrainConfig {
  double learning_rate = 0.2;               // threshold adaptation rate
  int batch_size = 8;
  int epochs = 500;
  std::optional<int> grover_iters;          // empty: optimal for the marked count
  std::optional<double> oracle_threshold;   // empty: adaptive
  double quantile_start = 0.5;              // ramped linearly over epochs
  double quantile_end = 0.95;
  std::uint64_t seed = 1;
  chanmod::ChannelConfig channel;
  int validation_slots = 32;
  double forgetting = 0.1;
  double guard = 1e-6;
  int exploit_rounds = 0;                   // Grover rounds per exploitation, 0: until no better schedule
  bool log_validation = true;               // per-epoch validation pass

  void validate() const;
  double quantile_at(int epoch) const;
};

// G{S, K, R}: PF snapshot and last policy, amplify factor, last reward. The
// learned threshold rides along since exploitation needs it.
struct AgentParams {
  ratemod::PFState pf;
  ratemod::SchedulingVector last_policy;
  int amplify_factor = 1;
  double reward = 0.0;
  double threshold = 0.0;
  double quantile = 0.5;  // threshold quantile in force
};

struct EpochRecord {
  int epoch = 0;                    // 1-based
  double threshold = 0.0;           // tau in force at the end of the epoch
  std::size_t marked_count = 0;     // marked set size on the last batch slot
  ratemod::SchedulingVector measured_policy;
  double train_reward = 0.0;        // mean reward of measured policies
  double validation_reward = 0.0;   // mean PF objective over validation slots
  double validation_sum_rate = 0.0;
  double validation_sum_rate_std = 0.0;
  int empty_slots = 0;              // batch slots with nothing marked
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
  int overshoot_count = 0;          // slots where a fixed G exceeded k_opt
};

struct TrainResult {
  AgentParams agent;
  TrainLog log;
};

// PF objective of one schedule on one slot.
double evaluate_reward(const ratemod::LinkGains& gains, const ratemod::SchedulingVector& theta,
                       const ratemod::PFState& pf);
double evaluate_reward(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                       const ratemod::SchedulingVector& theta, const ratemod::PFState& pf);

// Rewards of all 2^T schedules, indexed by schedule index.
std::vector<double> candidate_rewards(const ratemod::LinkGains& gains, const ratemod::PFState& pf);

// { index != 0 : rewards[index] >= tau }.
qsim::MarkedSet build_marked_set(std::span<const double> rewards, double tau);
qsim::MarkedSet build_marked_set(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                                 const ratemod::PFState& pf, double tau);

// Linear-interpolation quantile of the sample.
double quantile(std::span<const double> values, double q);

// (1 - eta) * tau_prev + eta * quantile(rewards, q).
double adapt_threshold(std::span<const double> rewards, double q, double eta, double tau_prev);

struct StepOutcome {
  std::uint64_t policy_index = 0;
  std::size_t marked_count = 0;
  int iterations = 0;
  bool overshoot = false;
};

// Mark at tau, amplify, measure once.
StepOutcome mark_amplify_measure(std::span<const double> rewards, int num_users, double tau,
                                 std::optional<int> grover_iters, Rng& rng);

// Exploitation: start from the learned threshold and, for up to `rounds`
// Grover rounds (0: no limit), re-mark only schedules strictly better than the
// best one measured so far. A threshold above everything on this slot falls back to a
// measurement of the uniform state.
std::uint64_t exploit_policy(std::span<const double> rewards, int num_users, double tau,
                             std::optional<int> grover_iters, int rounds, Rng& rng);

// Mark at tau, amplify, and take the most probable basis state (the lowest
// marked index, since marked states share one probability). Nothing marked
// falls back to a measurement of the uniform state.
std::uint64_t most_probable_policy(std::span<const double> rewards, int num_users, double tau,
                                   std::optional<int> grover_iters, Rng& rng);

// Threshold the agent applies on a slot: the fixed one, or its learned tau
// nudged toward this slot's reward quantile by the usual update.
double slot_threshold(const AgentParams& agent, const TrainConfig& config, std::span<const double> rewards);

// The trained agent's exploitation choice on a slot. Randomness is keyed on
// (seed, slot index) only.
ratemod::SchedulingVector act(const AgentParams& agent, const TrainConfig& config, const Slot& slot,
                              const ratemod::PFState& pf);

TrainResult train(const TrainConfig& config);

// Mean PF objective of a fixed schedule over the validation slots.
double validation_reward(const ratemod::SchedulingVector& theta, const TrainConfig& config,
                         const ratemod::PFState& pf);

}  // namespace msched::qrl
