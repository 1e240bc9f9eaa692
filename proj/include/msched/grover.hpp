#pragma once

#include <cstdint>

#include "msched/qsim.hpp"

namespace msched::grover {

struct GroverPlan {
  int num_qubits = 1;
  qsim::MarkedSet marked;
  int iterations = 0;
};

// (Diffusion . Oracle)^k applied to H^N |0>.
qsim::StateVector grover_search(const GroverPlan& plan);

// sin^2((2k + 1) * asin(sqrt(m / 2^N))).
double success_probability(int num_qubits, std::uint64_t num_marked, int iterations);

// floor(pi/4 * sqrt(2^N / m)), at least 1 when 0 < m < 2^N. Returns 0 for the
// degenerate m = 0 and m = 2^N cases, where there is nothing to amplify.
int optimal_iterations(int num_qubits, std::uint64_t num_marked);

}  // namespace msched::grover
