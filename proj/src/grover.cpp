#include "msched/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msched::grover {

qsim::StateVector grover_search(const GroverPlan& plan) {
  if (plan.iterations < 0) throw std::invalid_argument("grover_search: negative iteration count");
  auto sv = qsim::init_zero(plan.num_qubits);
  qsim::apply_hadamard_all(sv);
  if (plan.marked.empty()) return sv;
  for (int k = 0; k < plan.iterations; ++k) {
    qsim::apply_phase_oracle(sv, plan.marked);
    qsim::apply_diffusion(sv);
  }
  return sv;
}

double success_probability(int num_qubits, std::uint64_t num_marked, int iterations) {
  const double dim = std::ldexp(1.0, num_qubits);
  if (static_cast<double>(num_marked) > dim) throw std::invalid_argument("more marked states than basis states");
  const double theta = std::asin(std::sqrt(static_cast<double>(num_marked) / dim));
  const double s = std::sin((2.0 * iterations + 1.0) * theta);
  return s * s;
}

int optimal_iterations(int num_qubits, std::uint64_t num_marked) {
  const double dim = std::ldexp(1.0, num_qubits);
  const auto m = static_cast<double>(num_marked);
  if (m > dim) throw std::invalid_argument("more marked states than basis states");
  if (num_marked == 0 || m == dim) return 0;
  const int k = static_cast<int>(std::floor(std::numbers::pi / 4.0 * std::sqrt(dim / m)));
  return std::max(k, 1);
}

}  // namespace msched::grover
