#pragma once

// Classical reference schedulers.

#include <optional>
#include <string_view>

#include "msched/chanmod.hpp"
#include "msched/ratemod.hpp"
#include "msched/rng.hpp"

namespace msched::baselines {

enum class BaselineKind { Exhaustive, GreedyPF, Random };

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view name);

inline constexpr int kMaxExhaustiveUsers = 20;

struct BestPolicy {
  ratemod::SchedulingVector policy;
  double value = 0.0;
};

// Scans all 2^T schedules; the lowest index wins ties.
BestPolicy exhaustive_best(const ratemod::LinkGains& gains, const ratemod::PFState& pf);
BestPolicy exhaustive_best(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                           const ratemod::PFState& pf);

// Adds the single user with the largest strict PF gain until none helps.
ratemod::SchedulingVector greedy_pf(const ratemod::LinkGains& gains, const ratemod::PFState& pf);
ratemod::SchedulingVector greedy_pf(const chanmod::ChannelRealization& channel,
                                    const chanmod::BeamAssignment& beams, const ratemod::PFState& pf);

// Fair coin per user, redrawn until at least one user is scheduled.
ratemod::SchedulingVector random_policy(int num_users, Rng& rng);

}  // namespace msched::baselines
