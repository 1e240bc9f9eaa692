#pragma once

// Dense statevector simulator for the Grover gate set.
//
// Qubit q (0-based) is q_{q+1} of the circuit diagram and carries scheduling
// bit q. Qubit 0 is the most significant bit of a basis index, so for N = 3
// the basis state |q1 q2 q3> = |110> has index 6.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "msched/rng.hpp"

namespace msched::qsim {

using amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 24;

class StateVector {
 public:
  // |0...0> on `num_qubits` qubits. Throws std::out_of_range outside [1, 24].
  explicit StateVector(int num_qubits);

  // Takes ownership of raw amplitudes; the length must be a power of two in
  // range. Normalization is the caller's business.
  static StateVector from_amplitudes(std::vector<amplitude> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<const amplitude> amplitudes() const { return amps_; }
  std::span<amplitude> amplitudes() { return amps_; }
  const amplitude& operator[](std::size_t i) const { return amps_[i]; }
  amplitude& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;

  // Bit mask of qubit q inside a basis index.
  std::uint64_t mask(int qubit) const { return std::uint64_t{1} << (num_qubits_ - 1 - qubit); }

 private:
  StateVector() = default;

  int num_qubits_ = 0;
  std::vector<amplitude> amps_;
};

// Sorted, duplicate-free basis indices.
class MarkedSet {
 public:
  MarkedSet() = default;
  explicit MarkedSet(std::vector<std::uint64_t> indices);

  std::span<const std::uint64_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::uint64_t index) const;

 private:
  std::vector<std::uint64_t> indices_;
};

enum class GateKind { H, X, Z, MCZ, PhaseOracle, Diffusion };

struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> targets;   // H/X/Z: one qubit. MCZ: one target.
  std::vector<int> controls;  // MCZ only
  MarkedSet marked;           // PhaseOracle only

  static GateOp h(int q) { return {GateKind::H, {q}, {}, {}}; }
  static GateOp x(int q) { return {GateKind::X, {q}, {}, {}}; }
  static GateOp z(int q) { return {GateKind::Z, {q}, {}, {}}; }
  static GateOp mcz(std::vector<int> controls, int target) {
    return {GateKind::MCZ, {target}, std::move(controls), {}};
  }
  static GateOp oracle(MarkedSet m) { return {GateKind::PhaseOracle, {}, {}, std::move(m)}; }
  static GateOp diffusion() { return {GateKind::Diffusion, {}, {}, {}}; }
};

StateVector init_zero(int num_qubits);

// Uniform superposition H^N |0>.
StateVector uniform_state(int num_qubits);

void apply_hadamard(StateVector& sv, int qubit);
void apply_hadamard_all(StateVector& sv);
void apply_x(StateVector& sv, int qubit);
void apply_z(StateVector& sv, int qubit);

// Negates basis states whose control and target bits are all 1.
// Throws std::invalid_argument on repeated qubits.
void apply_mcz(StateVector& sv, std::span<const int> controls, int target);

// Negates exactly the marked amplitudes.
void apply_phase_oracle(StateVector& sv, const MarkedSet& marked);

// Inversion about the mean, (2|U><U| - I).
void apply_diffusion(StateVector& sv);

// The H-X-MCZ-X-H gate realization of the diffusion layer. It implements
// I - 2|U><U|, i.e. apply_diffusion up to a global phase of -1.
void apply_diffusion_gates(StateVector& sv);

void apply(StateVector& sv, const GateOp& op);
void apply_circuit(StateVector& sv, std::span<const GateOp> ops);

// X on every qubit whose pattern bit is '0', an MCZ over all qubits, then the
// same X layer. Marks exactly the basis state spelled by the pattern
// (character i is qubit i). Throws on characters other than '0'/'1'.
std::vector<GateOp> oracle_from_pattern(std::string_view pattern);

std::uint64_t pattern_index(std::string_view pattern);

std::vector<double> probabilities(const StateVector& sv);

// Draws a basis index with probability |amp|^2. Does not touch `sv`.
std::uint64_t measure_sample(const StateVector& sv, Rng& rng);

// Basis index of the largest probability; lowest index on ties.
std::uint64_t most_probable(const StateVector& sv);

// One row per basis state: index, real, imaginary, probability.
void write_amplitudes(std::ostream& os, const StateVector& sv);

}  // namespace msched::qsim
