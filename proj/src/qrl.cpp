#include "msched/qrl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "msched/grover.hpp"

namespace msched::qrl {

using ratemod::LinkGains;
using ratemod::PFState;
using ratemod::SchedulingVector;

Slot Scenario::slot(std::uint64_t index) const {
  Slot s;
  s.index = index;
  s.channel = generator_.generate(index);
  s.beams = chanmod::select_beams(s.channel, generator_.dft());
  s.gains = ratemod::link_gains(s.channel, s.beams);
  return s;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("train config: " + what);
  };
  channel.validate();
  require(channel.num_users <= qsim::kMaxQubits,
          "num_users " + std::to_string(channel.num_users) + " exceeds the statevector cap of 24");
  require(learning_rate > 0.0 && learning_rate <= 1.0, "learning_rate must lie in (0, 1]");
  require(batch_size >= 1, "batch_size must be positive");
  require(epochs >= 1, "epochs must be positive");
  require(!grover_iters || *grover_iters >= 1, "grover_iters must be positive");
  require(!oracle_threshold || std::isfinite(*oracle_threshold), "oracle_threshold must be finite");
  require(quantile_start > 0.0 && quantile_start < 1.0, "quantile_start must lie in (0, 1)");
  require(quantile_end > 0.0 && quantile_end < 1.0, "quantile_end must lie in (0, 1)");
  require(validation_slots >= 1, "validation_slots must be positive");
  require(forgetting > 0.0 && forgetting < 1.0, "forgetting must lie in (0, 1)");
  require(guard > 0.0, "guard must be positive");
  require(exploit_rounds >= 0, "exploit_rounds must be non-negative");
}

double TrainConfig::quantile_at(int epoch) const {
  if (epochs <= 1) return quantile_end;
  const double frac = static_cast<double>(epoch) / static_cast<double>(epochs - 1);
  return quantile_start + (quantile_end - quantile_start) * frac;
}

double evaluate_reward(const LinkGains& gains, const SchedulingVector& theta, const PFState& pf) {
  return ratemod::pf_objective(ratemod::instantaneous_rates(gains, theta), pf, theta);
}

double evaluate_reward(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                       const SchedulingVector& theta, const PFState& pf) {
  return evaluate_reward(ratemod::link_gains(channel, beams), theta, pf);
}

std::vector<double> candidate_rewards(const LinkGains& gains, const PFState& pf) {
  const int t = gains.num_users();
  if (t > qsim::kMaxQubits) throw std::invalid_argument("candidate_rewards: too many users");
  if (static_cast<int>(pf.avg_rates.size()) != t) throw std::invalid_argument("candidate_rewards: PF length mismatch");
  const std::uint64_t count = std::uint64_t{1} << t;
  std::vector<double> rewards(count);
  for (std::uint64_t i = 0; i < count; ++i) rewards[i] = ratemod::pf_value_of_index(gains, pf, i);
  return rewards;
}

qsim::MarkedSet build_marked_set(std::span<const double> rewards, double tau) {
  std::vector<std::uint64_t> marked;
  // Index 0 is the empty schedule; it is never marked.
  for (std::uint64_t i = 1; i < rewards.size(); ++i) {
    if (rewards[i] >= tau) marked.push_back(i);
  }
  return qsim::MarkedSet(std::move(marked));
}

qsim::MarkedSet build_marked_set(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                                 const PFState& pf, double tau) {
  return build_marked_set(candidate_rewards(ratemod::link_gains(channel, beams), pf), tau);
}

double quantile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double adapt_threshold(std::span<const double> rewards, double q, double eta, double tau_prev) {
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("threshold quantile must lie in (0, 1)");
  return (1.0 - eta) * tau_prev + eta * quantile(rewards, q);
}

namespace {

int num_qubits_for(std::span<const double> rewards, int num_users) {
  if (rewards.size() != (std::size_t{1} << num_users)) {
    throw std::invalid_argument("reward table size does not match 2^T");
  }
  return num_users;
}

int iterations_for(int n, std::size_t marked, std::optional<int> grover_iters, bool* overshoot) {
  const int k_opt = grover::optimal_iterations(n, marked);
  if (!grover_iters) return k_opt;
  if (overshoot) *overshoot = *grover_iters > k_opt;
  return *grover_iters;
}

}  // namespace

StepOutcome mark_amplify_measure(std::span<const double> rewards, int num_users, double tau,
                                 std::optional<int> grover_iters, Rng& rng) {
  const int n = num_qubits_for(rewards, num_users);
  auto marked = build_marked_set(rewards, tau);
  StepOutcome out;
  out.marked_count = marked.size();
  if (!marked.empty()) {
    out.iterations = iterations_for(n, marked.size(), grover_iters, &out.overshoot);
  }
  const auto sv = grover::grover_search({n, std::move(marked), out.iterations});
  out.policy_index = qsim::measure_sample(sv, rng);
  return out;
}

std::uint64_t exploit_policy(std::span<const double> rewards, int num_users, double tau,
                             std::optional<int> grover_iters, int rounds, Rng& rng) {
  const int n = num_qubits_for(rewards, num_users);
  std::optional<std::uint64_t> best;
  for (int r = 0; rounds == 0 || r < rounds; ++r) {
    std::vector<std::uint64_t> better;
    if (!best) {
      for (std::uint64_t i = 1; i < rewards.size(); ++i) {
        if (rewards[i] >= tau) better.push_back(i);
      }
    } else {
      const double floor_value = rewards[*best];
      for (std::uint64_t i = 1; i < rewards.size(); ++i) {
        if (rewards[i] > floor_value) better.push_back(i);
      }
      // Nothing beats the incumbent: it is optimal on this slot.
      if (better.empty()) break;
    }
    qsim::MarkedSet marked(std::move(better));
    int k = marked.empty() ? 0 : iterations_for(n, marked.size(), grover_iters, nullptr);
    // Past a quarter of the space one iteration can rotate beyond the marked
    // set (3/4 marked gives zero); plain sampling is never worse than m/2^N.
    if (k > 0) {
      const double plain = static_cast<double>(marked.size()) / static_cast<double>(rewards.size());
      if (grover::success_probability(n, marked.size(), k) < plain) k = 0;
    }
    const auto sv = grover::grover_search({n, std::move(marked), k});
    const auto drawn = qsim::measure_sample(sv, rng);
    if (!best || rewards[drawn] > rewards[*best]) best = drawn;
  }
  return *best;
}

double slot_threshold(const AgentParams& agent, const TrainConfig& config, std::span<const double> rewards) {
  if (config.oracle_threshold) return *config.oracle_threshold;
  return adapt_threshold(rewards, agent.quantile, config.learning_rate, agent.threshold);
}

std::uint64_t most_probable_policy(std::span<const double> rewards, int num_users, double tau,
                                   std::optional<int> grover_iters, Rng& rng) {
  const int n = num_qubits_for(rewards, num_users);
  auto marked = build_marked_set(rewards, tau);
  // A uniform state has no argmax worth the name; measure it instead.
  if (marked.empty()) return qsim::measure_sample(qsim::uniform_state(n), rng);
  const int k = iterations_for(n, marked.size(), grover_iters, nullptr);
  return qsim::most_probable(grover::grover_search({n, std::move(marked), k}));
}

SchedulingVector act(const AgentParams& agent, const TrainConfig& config, const Slot& slot, const PFState& pf) {
  const int t = slot.gains.num_users();
  const auto rewards = candidate_rewards(slot.gains, pf);
  auto rng = make_rng(config.seed, Stream::kValidation, slot.index);
  const double tau = slot_threshold(agent, config, rewards);
  const auto idx = exploit_policy(rewards, t, tau, config.grover_iters, config.exploit_rounds, rng);
  return SchedulingVector::from_index(idx, t);
}

namespace {

struct ValidationSummary {
  double reward = 0.0;
  double sum_rate = 0.0;
  double sum_rate_std = 0.0;
};

// The PF state evolves across the validation slots as the chosen schedules
// are served, starting from the agent's snapshot.
ValidationSummary run_validation(const AgentParams& agent, const TrainConfig& config,
                                 const std::vector<Slot>& slots) {
  ValidationSummary s;
  std::vector<double> rates;
  rates.reserve(slots.size());
  PFState pf = agent.pf;
  for (const auto& slot : slots) {
    const int t = slot.gains.num_users();
    const auto rewards = candidate_rewards(slot.gains, pf);
    auto rng = make_rng(config.seed, Stream::kValidation, slot.index);
    const double tau = slot_threshold(agent, config, rewards);
    const auto idx = most_probable_policy(rewards, t, tau, config.grover_iters, rng);
    s.reward += rewards[idx];
    const auto theta = SchedulingVector::from_index(idx, t);
    const auto report = ratemod::instantaneous_rates(slot.gains, theta);
    rates.push_back(report.sum_rate);
    pf = ratemod::pf_update(pf, report, theta);
  }
  const double v = static_cast<double>(slots.size());
  s.reward /= v;
  for (double r : rates) s.sum_rate += r;
  s.sum_rate /= v;
  double var = 0.0;
  for (double r : rates) var += (r - s.sum_rate) * (r - s.sum_rate);
  s.sum_rate_std = std::sqrt(var / v);
  return s;
}

}  // namespace

TrainResult train(const TrainConfig& config) {
  config.validate();
  const Scenario scenario(config.channel);
  const int t = config.channel.num_users;
  const auto batch = static_cast<std::uint64_t>(config.batch_size);

  TrainResult result;
  AgentParams& agent = result.agent;
  TrainLog& log = result.log;
  log.epochs.reserve(static_cast<std::size_t>(config.epochs));

  Slot first = scenario.slot(0);
  agent.pf = ratemod::initial_pf_state(first.gains, config.forgetting, config.guard);
  agent.last_policy = SchedulingVector::zeros(t);
  const bool adaptive = !config.oracle_threshold.has_value();
  if (!adaptive) agent.threshold = *config.oracle_threshold;

  std::vector<Slot> validation;
  if (config.log_validation) {
    validation.reserve(static_cast<std::size_t>(config.validation_slots));
    for (int v = 0; v < config.validation_slots; ++v) validation.push_back(scenario.validation_slot(v));
  }

  auto rng = make_rng(config.seed, Stream::kMeasure);
  bool first_slot = true;
  for (int e = 0; e < config.epochs; ++e) {
    const double q = config.quantile_at(e);
    agent.quantile = q;
    EpochRecord rec;
    rec.epoch = e + 1;
    double reward_sum = 0.0;
    for (std::uint64_t b = 0; b < batch; ++b) {
      const std::uint64_t index = static_cast<std::uint64_t>(e) * batch + b;
      const Slot slot = first_slot ? std::move(first) : scenario.slot(index);
      const auto rewards = candidate_rewards(slot.gains, agent.pf);
      if (adaptive) {
        // The first slot seeds tau directly; afterwards it moves at rate eta.
        agent.threshold = first_slot ? quantile(rewards, q)
                                     : adapt_threshold(rewards, q, config.learning_rate, agent.threshold);
      }
      first_slot = false;

      const auto step = mark_amplify_measure(rewards, t, agent.threshold, config.grover_iters, rng);
      if (step.overshoot) ++log.overshoot_count;
      if (step.marked_count == 0) ++rec.empty_slots;
      if (step.iterations > 0) agent.amplify_factor = step.iterations;

      const auto theta = SchedulingVector::from_index(step.policy_index, t);
      const auto report = ratemod::instantaneous_rates(slot.gains, theta);
      agent.reward = rewards[step.policy_index];
      agent.last_policy = theta;
      agent.pf = ratemod::pf_update(agent.pf, report, theta);

      reward_sum += agent.reward;
      rec.marked_count = step.marked_count;
    }
    rec.threshold = agent.threshold;
    rec.measured_policy = agent.last_policy;
    rec.train_reward = reward_sum / static_cast<double>(batch);
    if (config.log_validation) {
      const auto v = run_validation(agent, config, validation);
      rec.validation_reward = v.reward;
      rec.validation_sum_rate = v.sum_rate;
      rec.validation_sum_rate_std = v.sum_rate_std;
    }
    log.epochs.push_back(std::move(rec));
  }
  return result;
}

double validation_reward(const SchedulingVector& theta, const TrainConfig& config, const PFState& pf) {
  const Scenario scenario(config.channel);
  double total = 0.0;
  for (int v = 0; v < config.validation_slots; ++v) {
    total += evaluate_reward(scenario.validation_slot(v).gains, theta, pf);
  }
  return total / static_cast<double>(config.validation_slots);
}

}  // namespace msched::qrl
