#pragma once

// SINR, per-user Shannon rates and the proportional-fairness objective.

#include <cstdint>
#include <span>
#include <vector>

#include "msched/chanmod.hpp"

namespace msched::ratemod {

// Binary schedule over T users. Bit t maps to qubit t of the search
// register, and qubit 0 is the most significant bit of the basis index.
class SchedulingVector {
 public:
  SchedulingVector() = default;
  explicit SchedulingVector(std::vector<std::uint8_t> bits);

  static SchedulingVector zeros(int num_users);
  static SchedulingVector ones(int num_users);
  static SchedulingVector from_index(std::uint64_t index, int num_users);

  std::uint64_t index() const;
  int size() const { return static_cast<int>(bits_.size()); }
  bool scheduled(int user) const { return bits_[static_cast<std::size_t>(user)] != 0; }
  void set(int user, bool on) { bits_[static_cast<std::size_t>(user)] = on ? 1 : 0; }
  int count() const;
  bool none() const { return count() == 0; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  bool operator==(const SchedulingVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct PFState {
  std::vector<double> avg_rates;  // bps/Hz
  double forgetting = 0.1;
  double guard = 1e-6;

  void validate() const;
};

struct RateReport {
  std::vector<double> per_user_rates;
  double sum_rate = 0.0;
  double pf_value = 0.0;
};

// gain(t, x) = P * |n_t^H f_x|^2. Everything a rate evaluation needs for one
// slot; computing it once makes scanning all 2^T schedules cheap.
struct LinkGains {
  Eigen::MatrixXd gain;  // T x T
  double noise_var = 0.0;

  int num_users() const { return static_cast<int>(gain.rows()); }
};

LinkGains link_gains(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams);

// Desired over co-scheduled interference plus noise. The user must be
// scheduled; throws std::invalid_argument otherwise.
double user_sinr(const chanmod::ChannelRealization& channel, const chanmod::BeamAssignment& beams,
                 const SchedulingVector& theta, int user);
double user_sinr(const LinkGains& gains, const SchedulingVector& theta, int user);

RateReport instantaneous_rates(const chanmod::ChannelRealization& channel,
                               const chanmod::BeamAssignment& beams, const SchedulingVector& theta);
RateReport instantaneous_rates(const LinkGains& gains, const SchedulingVector& theta);

// Sum over users of rate / (avg_rate + guard).
double pf_objective(const RateReport& report, const PFState& pf, const SchedulingVector& theta);

// EWMA update for scheduled users only; returns the new state.
PFState pf_update(const PFState& pf, const RateReport& report, const SchedulingVector& theta);

// Start-of-run state: each user's interference-free rate on its assigned beam.
PFState initial_pf_state(const LinkGains& gains, double forgetting = 0.1, double guard = 1e-6);

// PF objective of schedule `index` on this slot; allocation-free hot path
// used by exhaustive scans.
double pf_value_of_index(const LinkGains& gains, const PFState& pf, std::uint64_t index);
double sum_rate_of_index(const LinkGains& gains, std::uint64_t index);

}  // namespace msched::ratemod
