#include "msched/baselines.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace msched::baselines {

using ratemod::SchedulingVector;

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::Exhaustive:
      return "exhaustive";
    case BaselineKind::GreedyPF:
      return "greedy";
    case BaselineKind::Random:
      return "random";
  }
  return "unknown";
}

std::optional<BaselineKind> parse_baseline(std::string_view name) {
  if (name == "exhaustive") return BaselineKind::Exhaustive;
  if (name == "greedy") return BaselineKind::GreedyPF;
  if (name == "random") return BaselineKind::Random;
  return std::nullopt;
}

BestPolicy exhaustive_best(const ratemod::LinkGains& gains, const ratemod::PFState& pf) {
  const int t = gains.num_users();
  if (t > kMaxExhaustiveUsers) {
    throw std::invalid_argument("exhaustive_best: " + std::to_string(t) + " users exceeds the cap of " +
                                std::to_string(kMaxExhaustiveUsers));
  }
  std::uint64_t best = 0;
  double best_value = 0.0;  // value of the empty schedule
  const std::uint64_t count = std::uint64_t{1} << t;
  for (std::uint64_t i = 1; i < count; ++i) {
    const double v = ratemod::pf_value_of_index(gains, pf, i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return {SchedulingVector::from_index(best, t), best_value};
}

BestPolicy exhaustive_best(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                           const ratemod::PFState& pf) {
  return exhaustive_best(ratemod::link_gains(channel, beams), pf);
}

SchedulingVector greedy_pf(const ratemod::LinkGains& gains, const ratemod::PFState& pf) {
  const int t = gains.num_users();
  std::uint64_t current = 0;
  double current_value = 0.0;
  for (;;) {
    int pick = -1;
    double pick_value = current_value;
    for (int u = 0; u < t; ++u) {
      const std::uint64_t bit = std::uint64_t{1} << (t - 1 - u);
      if (current & bit) continue;
      const double v = ratemod::pf_value_of_index(gains, pf, current | bit);
      if (v > pick_value) {
        pick_value = v;
        pick = u;
      }
    }
    if (pick < 0) break;
    current |= std::uint64_t{1} << (t - 1 - pick);
    current_value = pick_value;
  }
  return SchedulingVector::from_index(current, t);
}

SchedulingVector greedy_pf(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                           const ratemod::PFState& pf) {
  return greedy_pf(ratemod::link_gains(channel, beams), pf);
}

SchedulingVector random_policy(int num_users, Rng& rng) {
  if (num_users < 1) throw std::invalid_argument("random_policy: need at least one user");
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_users));
  for (;;) {
    bool any = false;
    for (auto& b : bits) {
      b = coin(rng) ? 1 : 0;
      any = any || b != 0;
    }
    if (any) return SchedulingVector(bits);
  }
}

}  // namespace msched::baselines
