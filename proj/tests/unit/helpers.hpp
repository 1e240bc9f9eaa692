#pragma once

#include <memory>

#include "msched/chanmod.hpp"
#include "msched/ratemod.hpp"

namespace msched::fixtures {

// Realization around a hand-built matrix; only noise and power are read.
inline chanmod::ChannelRealization make_channel(const chanmod::CMatrix& m, double noise_var = 0.01,
                                                double total_power = 1.0) {
  auto cfg = std::make_shared<chanmod::ChannelConfig>();
  cfg->num_antennas = static_cast<int>(m.rows());
  cfg->num_users = static_cast<int>(m.cols());
  cfg->array_rows = 1;
  cfg->array_cols = cfg->num_antennas;
  cfg->noise_var = noise_var;
  cfg->total_power = total_power;
  cfg->user_angles.assign(static_cast<std::size_t>(m.cols()), 0.0);
  return {m, cfg};
}

inline chanmod::BeamAssignment make_beams(const chanmod::CMatrix& dft, std::vector<int> idx) {
  chanmod::BeamAssignment b;
  b.beams.resize(dft.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t t = 0; t < idx.size(); ++t) b.beams.col(static_cast<Eigen::Index>(t)) = dft.col(idx[t]);
  b.beam_index = std::move(idx);
  return b;
}

}  // namespace msched::fixtures
