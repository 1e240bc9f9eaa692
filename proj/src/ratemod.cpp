#include "msched/ratemod.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace msched::ratemod {

SchedulingVector::SchedulingVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("scheduling bits must be 0 or 1");
  }
}

SchedulingVector SchedulingVector::zeros(int num_users) {
  return SchedulingVector(std::vector<std::uint8_t>(static_cast<std::size_t>(num_users), 0));
}

SchedulingVector SchedulingVector::ones(int num_users) {
  return SchedulingVector(std::vector<std::uint8_t>(static_cast<std::size_t>(num_users), 1));
}

SchedulingVector SchedulingVector::from_index(std::uint64_t index, int num_users) {
  if (num_users < 64 && index >> num_users != 0) {
    throw std::out_of_range("schedule index " + std::to_string(index) + " needs more than " +
                            std::to_string(num_users) + " bits");
  }
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_users));
  for (int t = 0; t < num_users; ++t) {
    bits[static_cast<std::size_t>(t)] = static_cast<std::uint8_t>((index >> (num_users - 1 - t)) & 1U);
  }
  return SchedulingVector(std::move(bits));
}

std::uint64_t SchedulingVector::index() const {
  std::uint64_t idx = 0;
  for (auto b : bits_) idx = (idx << 1) | b;
  return idx;
}

int SchedulingVector::count() const {
  int c = 0;
  for (auto b : bits_) c += b;
  return c;
}

void PFState::validate() const {
  if (!(forgetting >= 0.0 && forgetting <= 1.0)) throw std::invalid_argument("PF forgetting factor outside [0, 1]");
  if (!(guard > 0.0)) throw std::invalid_argument("PF guard must be positive");
  for (double s : avg_rates) {
    if (!std::isfinite(s) || s < 0.0) throw std::invalid_argument("PF average rates must be finite and >= 0");
  }
}

LinkGains link_gains(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams) {
  const double power = channel.config->per_user_power();
  LinkGains g;
  // (N^H F)(t, x) = n_t^H f_x
  g.gain = power * (channel.matrix.adjoint() * beams.beams).cwiseAbs2();
  g.noise_var = channel.config->noise_var;
  return g;
}

double user_sinr(const LinkGains& gains, const SchedulingVector& theta, int user) {
  if (!theta.scheduled(user)) {
    throw std::invalid_argument("user_sinr: user " + std::to_string(user) + " is not scheduled");
  }
  double interference = 0.0;
  for (int x = 0; x < gains.num_users(); ++x) {
    if (x != user && theta.scheduled(x)) interference += gains.gain(user, x);
  }
  return gains.gain(user, user) / (interference + gains.noise_var);
}

double user_sinr(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                 const SchedulingVector& theta, int user) {
  return user_sinr(link_gains(channel, beams), theta, user);
}

RateReport instantaneous_rates(const LinkGains& gains, const SchedulingVector& theta) {
  const int t = gains.num_users();
  if (theta.size() != t) throw std::invalid_argument("schedule length does not match user count");
  RateReport r;
  r.per_user_rates.assign(static_cast<std::size_t>(t), 0.0);
  for (int u = 0; u < t; ++u) {
    if (!theta.scheduled(u)) continue;
    const double rate = std::log2(1.0 + user_sinr(gains, theta, u));
    r.per_user_rates[static_cast<std::size_t>(u)] = rate;
    r.sum_rate += rate;
  }
  return r;
}

RateReport instantaneous_rates(const chanmod::ChannelRealization& channel,
                               const chanmod::BeamAssignment& beams, const SchedulingVector& theta) {
  return instantaneous_rates(link_gains(channel, beams), theta);
}

double pf_objective(const RateReport& report, const PFState& pf, const SchedulingVector& theta) {
  const auto t = report.per_user_rates.size();
  if (pf.avg_rates.size() != t || static_cast<std::size_t>(theta.size()) != t) {
    throw std::invalid_argument("pf_objective: length mismatch");
  }
  double value = 0.0;
  for (std::size_t u = 0; u < t; ++u) {
    if (!theta.scheduled(static_cast<int>(u))) continue;
    value += report.per_user_rates[u] / (pf.avg_rates[u] + pf.guard);
  }
  return value;
}

PFState pf_update(const PFState& pf, const RateReport& report, const SchedulingVector& theta) {
  const auto t = report.per_user_rates.size();
  if (pf.avg_rates.size() != t || static_cast<std::size_t>(theta.size()) != t) {
    throw std::invalid_argument("pf_update: length mismatch");
  }
  PFState next = pf;
  for (std::size_t u = 0; u < t; ++u) {
    if (theta.scheduled(static_cast<int>(u))) {
      next.avg_rates[u] = (1.0 - pf.forgetting) * pf.avg_rates[u] + pf.forgetting * report.per_user_rates[u];
    }
  }
  return next;
}

PFState initial_pf_state(const LinkGains& gains, double forgetting, double guard) {
  PFState pf;
  pf.forgetting = forgetting;
  pf.guard = guard;
  pf.avg_rates.resize(static_cast<std::size_t>(gains.num_users()));
  for (int u = 0; u < gains.num_users(); ++u) {
    pf.avg_rates[static_cast<std::size_t>(u)] = std::log2(1.0 + gains.gain(u, u) / gains.noise_var);
  }
  pf.validate();
  return pf;
}

namespace {

template <class Contribution>
double accumulate_rates(const LinkGains& gains, std::uint64_t index, Contribution&& contribution) {
  const int t = gains.num_users();
  double total = 0.0;
  for (int u = 0; u < t; ++u) {
    if (((index >> (t - 1 - u)) & 1U) == 0) continue;
    double interference = 0.0;
    for (int x = 0; x < t; ++x) {
      if (x != u && ((index >> (t - 1 - x)) & 1U) != 0) interference += gains.gain(u, x);
    }
    total += contribution(u, std::log2(1.0 + gains.gain(u, u) / (interference + gains.noise_var)));
  }
  return total;
}

}  // namespace

double pf_value_of_index(const LinkGains& gains, const PFState& pf, std::uint64_t index) {
  return accumulate_rates(gains, index, [&](int u, double rate) {
    return rate / (pf.avg_rates[static_cast<std::size_t>(u)] + pf.guard);
  });
}

double sum_rate_of_index(const LinkGains& gains, std::uint64_t index) {
  return accumulate_rates(gains, index, [](int, double rate) { return rate; });
}

}  // namespace msched::ratemod
