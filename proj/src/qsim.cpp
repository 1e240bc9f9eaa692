#include "msched/qsim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace msched::qsim {

namespace {

void check_qubit(const StateVector& sv, int qubit) {
  if (qubit < 0 || qubit >= sv.num_qubits()) {
    throw std::out_of_range("qubit " + std::to_string(qubit) + " outside register of " +
                            std::to_string(sv.num_qubits()));
  }
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::out_of_range("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::size_t{1} << num_qubits, amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<amplitude> amps) {
  const auto n = amps.size();
  if (n < 2 || !std::has_single_bit(n) || std::countr_zero(n) > kMaxQubits) {
    throw std::invalid_argument("amplitude count must be 2^N with 1 <= N <= 24");
  }
  StateVector sv;
  sv.num_qubits_ = std::countr_zero(n);
  sv.amps_ = std::move(amps);
  return sv;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

MarkedSet::MarkedSet(std::vector<std::uint64_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

bool MarkedSet::contains(std::uint64_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

StateVector init_zero(int num_qubits) { return StateVector(num_qubits); }

StateVector uniform_state(int num_qubits) {
  StateVector sv(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(sv.dimension()));
  for (auto& amp : sv.amplitudes()) amp = a;
  return sv;
}

void apply_hadamard(StateVector& sv, int qubit) {
  check_qubit(sv, qubit);
  const auto m = sv.mask(qubit);
  auto amps = sv.amplitudes();
  constexpr double r = std::numbers::sqrt2 / 2.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & m) continue;
    const auto a0 = amps[i];
    const auto a1 = amps[i | m];
    amps[i] = r * (a0 + a1);
    amps[i | m] = r * (a0 - a1);
  }
}

void apply_hadamard_all(StateVector& sv) {
  for (int q = 0; q < sv.num_qubits(); ++q) apply_hadamard(sv, q);
}

void apply_x(StateVector& sv, int qubit) {
  check_qubit(sv, qubit);
  const auto m = sv.mask(qubit);
  auto amps = sv.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (!(i & m)) std::swap(amps[i], amps[i | m]);
  }
}

void apply_z(StateVector& sv, int qubit) {
  check_qubit(sv, qubit);
  const auto m = sv.mask(qubit);
  auto amps = sv.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & m) amps[i] = -amps[i];
  }
}

void apply_mcz(StateVector& sv, std::span<const int> controls, int target) {
  check_qubit(sv, target);
  std::uint64_t all = sv.mask(target);
  for (int c : controls) {
    check_qubit(sv, c);
    const auto m = sv.mask(c);
    if (all & m) throw std::invalid_argument("MCZ qubits must be distinct (qubit " + std::to_string(c) + ")");
    all |= m;
  }
  auto amps = sv.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & all) == all) amps[i] = -amps[i];
  }
}

void apply_phase_oracle(StateVector& sv, const MarkedSet& marked) {
  auto amps = sv.amplitudes();
  if (!marked.empty() && marked.indices().back() >= amps.size()) {
    throw std::out_of_range("marked index " + std::to_string(marked.indices().back()) +
                            " outside register of dimension " + std::to_string(amps.size()));
  }
  for (auto i : marked.indices()) amps[i] = -amps[i];
}

void apply_diffusion(StateVector& sv) {
  auto amps = sv.amplitudes();
  amplitude sum{0.0, 0.0};
  for (const auto& a : amps) sum += a;
  const amplitude twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto& a : amps) a = twice_mean - a;
}

void apply_diffusion_gates(StateVector& sv) {
  const int n = sv.num_qubits();
  std::vector<int> controls(static_cast<std::size_t>(n - 1));
  for (int q = 0; q + 1 < n; ++q) controls[static_cast<std::size_t>(q)] = q;
  apply_hadamard_all(sv);
  for (int q = 0; q < n; ++q) apply_x(sv, q);
  apply_mcz(sv, controls, n - 1);
  for (int q = 0; q < n; ++q) apply_x(sv, q);
  apply_hadamard_all(sv);
}

void apply(StateVector& sv, const GateOp& op) {
  switch (op.kind) {
    case GateKind::H:
      apply_hadamard(sv, op.targets.at(0));
      break;
    case GateKind::X:
      apply_x(sv, op.targets.at(0));
      break;
    case GateKind::Z:
      apply_z(sv, op.targets.at(0));
      break;
    case GateKind::MCZ:
      apply_mcz(sv, op.controls, op.targets.at(0));
      break;
    case GateKind::PhaseOracle:
      apply_phase_oracle(sv, op.marked);
      break;
    case GateKind::Diffusion:
      apply_diffusion(sv);
      break;
  }
}

void apply_circuit(StateVector& sv, std::span<const GateOp> ops) {
  for (const auto& op : ops) apply(sv, op);
}

std::uint64_t pattern_index(std::string_view pattern) {
  if (pattern.empty() || pattern.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("pattern length must be in [1, 24]");
  }
  std::uint64_t idx = 0;
  for (char c : pattern) {
    if (c != '0' && c != '1') throw std::invalid_argument("pattern must contain only '0' and '1'");
    idx = (idx << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return idx;
}

std::vector<GateOp> oracle_from_pattern(std::string_view pattern) {
  pattern_index(pattern);  // validates
  const int n = static_cast<int>(pattern.size());
  std::vector<GateOp> flips;
  for (int q = 0; q < n; ++q) {
    if (pattern[static_cast<std::size_t>(q)] == '0') flips.push_back(GateOp::x(q));
  }
  std::vector<int> controls;
  for (int q = 0; q + 1 < n; ++q) controls.push_back(q);

  std::vector<GateOp> ops = flips;
  ops.push_back(GateOp::mcz(std::move(controls), n - 1));
  ops.insert(ops.end(), flips.begin(), flips.end());
  return ops;
}

std::vector<double> probabilities(const StateVector& sv) {
  std::vector<double> p(sv.dimension());
  auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(amps[i]);
  return p;
}

std::uint64_t measure_sample(const StateVector& sv, Rng& rng) {
  auto amps = sv.amplitudes();
  double total = 0.0;
  for (const auto& a : amps) total += std::norm(a);
  std::uniform_real_distribution<double> u(0.0, total);
  const double r = u(rng);
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p == 0.0) continue;
    acc += p;
    last_nonzero = i;
    if (r < acc) return i;
  }
  // Rounding can leave r just above the running sum.
  return last_nonzero;
}

std::uint64_t most_probable(const StateVector& sv) {
  auto amps = sv.amplitudes();
  std::uint64_t best = 0;
  double best_p = -1.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    if (p > best_p) {
      best_p = p;
      best = i;
    }
  }
  return best;
}

void write_amplitudes(std::ostream& os, const StateVector& sv) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision(17);
  os << "index,real,imag,probability\n";
  auto amps = sv.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    os << i << ',' << amps[i].real() << ',' << amps[i].imag() << ',' << std::norm(amps[i]) << '\n';
  }
  os.flags(old_flags);
  os.precision(old_prec);
}

}  // namespace msched::qsim
