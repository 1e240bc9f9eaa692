#include "msched/chanmod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "msched/rng.hpp"

namespace msched::chanmod {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("channel config: " + what);
}

}  // namespace

void ChannelConfig::validate() const {
  require(num_antennas >= 1, "num_antennas must be positive");
  require(num_users >= 1, "num_users must be positive");
  require(num_users <= num_antennas, "num_users (" + std::to_string(num_users) +
                                         ") exceeds num_antennas (" + std::to_string(num_antennas) + ")");
  require(array_rows >= 1 && array_cols >= 1, "array dimensions must be positive");
  require(array_rows * array_cols == num_antennas, "array_rows * array_cols must equal num_antennas");
  require(std::isfinite(rician_k) && rician_k >= 0.0, "rician_k must be nonnegative");
  require(corr_coeff >= 0.0 && corr_coeff < 1.0, "corr_coeff must lie in [0, 1)");
  require(std::isfinite(noise_var) && noise_var > 0.0, "noise_var must be positive");
  require(std::isfinite(total_power) && total_power > 0.0, "total_power must be positive");
  require(static_cast<int>(user_angles.size()) == num_users, "need one angle per user");
  for (double a : user_angles) {
    require(std::abs(a) < std::numbers::pi / 2, "user angles must lie in (-pi/2, pi/2)");
  }
}

std::pair<int, int> default_geometry(int num_antennas) {
  int rows = static_cast<int>(std::sqrt(static_cast<double>(num_antennas)));
  while (rows > 1 && num_antennas % rows != 0) --rows;
  rows = std::max(rows, 1);
  return {rows, num_antennas / rows};
}

std::vector<double> default_user_angles(int num_users, std::uint64_t seed) {
  auto rng = make_rng(seed, Stream::kAngles);
  std::uniform_real_distribution<double> dist(-std::numbers::pi / 3, std::numbers::pi / 3);
  std::vector<double> angles(static_cast<std::size_t>(num_users));
  for (auto& a : angles) a = dist(rng);
  return angles;
}

double snr_db_to_noise_var(double snr_db, double total_power) {
  return total_power * std::pow(10.0, -snr_db / 10.0);
}

double noise_var_to_snr_db(double noise_var, double total_power) {
  return 10.0 * std::log10(total_power / noise_var);
}

ChannelConfig make_config(int num_antennas, int num_users, double snr_db, std::uint64_t seed,
                          double rician_k, double corr_coeff, double total_power) {
  ChannelConfig cfg;
  cfg.num_antennas = num_antennas;
  cfg.num_users = num_users;
  std::tie(cfg.array_rows, cfg.array_cols) = default_geometry(num_antennas);
  cfg.rician_k = rician_k;
  cfg.corr_coeff = corr_coeff;
  cfg.total_power = total_power;
  cfg.noise_var = snr_db_to_noise_var(snr_db, total_power);
  cfg.seed = seed;
  cfg.user_angles = default_user_angles(num_users, seed);
  return cfg;
}

CVector steering_vector(double angle, int num_antennas) {
  CVector v(num_antennas);
  const double phase_step = std::numbers::pi * std::sin(angle);
  const double scale = 1.0 / std::sqrt(static_cast<double>(num_antennas));
  for (int m = 0; m < num_antennas; ++m) {
    v[m] = std::polar(scale, phase_step * m);
  }
  return v;
}

CMatrix corr_matrix(int dim, double rho) {
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      m(i, j) = std::pow(rho, std::abs(i - j));
    }
  }
  return m;
}

CMatrix dft_matrix(int dim) {
  CMatrix omega(dim, dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int m = 0; m < dim; ++m) {
    for (int k = 0; k < dim; ++k) {
      // Reduce m*k mod A first so the phase stays small and exact for large A.
      const auto mk = static_cast<long long>(m) * k % dim;
      omega(m, k) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>(mk) / dim);
    }
  }
  return omega;
}

CMatrix psd_sqrt(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("correlation matrix eigendecomposition failed");
  }
  Eigen::VectorXd ev = solver.eigenvalues();
  const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -tol) throw std::invalid_argument("correlation matrix is not positive semidefinite");
    ev[i] = std::sqrt(std::max(ev[i], 0.0));
  }
  const CMatrix& vecs = solver.eigenvectors();
  return vecs * ev.asDiagonal() * vecs.adjoint();
}

ChannelGenerator::ChannelGenerator(ChannelConfig config)
    : config_(std::make_shared<const ChannelConfig>(std::move(config))) {
  config_->validate();
  const int a = config_->num_antennas;
  const int t = config_->num_users;
  const double k = config_->rician_k;
  corr_root_ = psd_sqrt(corr_matrix(a, config_->corr_coeff));
  const double los_scale = std::sqrt(k / (k + 1.0)) * std::sqrt(static_cast<double>(a));
  nlos_scale_ = std::sqrt(1.0 / (k + 1.0));
  los_.resize(a, t);
  for (int u = 0; u < t; ++u) {
    los_.col(u) = los_scale * steering_vector(config_->user_angles[static_cast<std::size_t>(u)], a);
  }
  dft_ = dft_matrix(a);
}

ChannelRealization ChannelGenerator::generate(std::uint64_t slot) const {
  const int a = config_->num_antennas;
  const int t = config_->num_users;
  auto rng = make_rng(config_->seed, Stream::kChannel, slot);
  // CN(0, 1): real and imaginary parts each carry variance 1/2.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix g(a, t);
  for (int u = 0; u < t; ++u) {
    for (int m = 0; m < a; ++m) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(m, u) = cplx(re, im);
    }
  }
  ChannelRealization out;
  out.config = config_;
  if (config_->rician_k == 0.0) {
    out.matrix = nlos_scale_ * (corr_root_ * g);
  } else {
    out.matrix = los_ + nlos_scale_ * (corr_root_ * g);
  }
  return out;
}

ChannelRealization generate_channel(const ChannelConfig& config, std::uint64_t slot) {
  return ChannelGenerator(config).generate(slot);
}

std::vector<double> beam_energy(const ChannelRealization& channel, int user, const CMatrix& dft) {
  const CVector proj = dft.adjoint() * channel.matrix.col(user);
  std::vector<double> energy(static_cast<std::size_t>(proj.size()));
  for (Eigen::Index j = 0; j < proj.size(); ++j) energy[static_cast<std::size_t>(j)] = std::norm(proj[j]);
  return energy;
}

std::vector<double> beam_energy(const ChannelRealization& channel, int user) {
  return beam_energy(channel, user, dft_matrix(channel.num_antennas()));
}

BeamAssignment select_beams(const ChannelRealization& channel, const CMatrix& dft) {
  const int a = channel.num_antennas();
  const int t = channel.num_users();
  if (t > a) throw std::invalid_argument("select_beams: more users than beams");

  const Eigen::MatrixXd energy = (dft.adjoint() * channel.matrix).cwiseAbs2();  // A x T

  // Beam order per user: descending energy, lower index first on ties.
  std::vector<std::vector<int>> ranked(static_cast<std::size_t>(t));
  std::vector<double> best(static_cast<std::size_t>(t));
  for (int u = 0; u < t; ++u) {
    auto& order = ranked[static_cast<std::size_t>(u)];
    order.resize(static_cast<std::size_t>(a));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return energy(x, u) > energy(y, u); });
    best[static_cast<std::size_t>(u)] = energy(order.front(), u);
  }

  std::vector<int> users(static_cast<std::size_t>(t));
  std::iota(users.begin(), users.end(), 0);
  std::stable_sort(users.begin(), users.end(), [&](int x, int y) {
    return best[static_cast<std::size_t>(x)] > best[static_cast<std::size_t>(y)];
  });

  BeamAssignment out;
  out.beam_index.assign(static_cast<std::size_t>(t), -1);
  out.beams.resize(a, t);
  std::vector<bool> taken(static_cast<std::size_t>(a), false);
  for (int u : users) {
    for (int j : ranked[static_cast<std::size_t>(u)]) {
      if (!taken[static_cast<std::size_t>(j)]) {
        taken[static_cast<std::size_t>(j)] = true;
        out.beam_index[static_cast<std::size_t>(u)] = j;
        out.beams.col(u) = dft.col(j);
        break;
      }
    }
  }
  return out;
}

BeamAssignment select_beams(const ChannelRealization& channel) {
  return select_beams(channel, dft_matrix(channel.num_antennas()));
}

}  // namespace msched::chanmod
