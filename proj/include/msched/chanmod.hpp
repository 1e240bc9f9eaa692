#pragma once

// Correlated Rician downlink channels and DFT beam-domain beam selection.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace msched::chanmod {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

struct ChannelConfig {
  int num_antennas = 16;
  int num_users = 6;
  int array_rows = 4;
  int array_cols = 4;
  double rician_k = 3.0;      // linear
  double corr_coeff = 0.5;    // exponential correlation, [0, 1)
  double noise_var = 0.01;    // W
  double total_power = 1.0;   // W
  std::vector<double> user_angles;  // LoS angles of departure, radians
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on any violated constraint.
  void validate() const;

  // Transmit power per user, P_total / T. The amplitude is its square root.
  double per_user_power() const { return total_power / num_users; }
};

// Picks the most square X x Y factorization with X <= Y.
std::pair<int, int> default_geometry(int num_antennas);

// T angles uniform in (-pi/3, pi/3), drawn from the (seed, angle) stream.
std::vector<double> default_user_angles(int num_users, std::uint64_t seed);

// Fully populated config with defaults for geometry and angles.
// SNR maps to noise as sigma^2 = P_total * 10^(-snr_db / 10).
ChannelConfig make_config(int num_antennas, int num_users, double snr_db, std::uint64_t seed,
                          double rician_k = 3.0, double corr_coeff = 0.5, double total_power = 1.0);

double snr_db_to_noise_var(double snr_db, double total_power = 1.0);
double noise_var_to_snr_db(double noise_var, double total_power = 1.0);

struct ChannelRealization {
  CMatrix matrix;  // A x T, column t is n_t
  std::shared_ptr<const ChannelConfig> config;

  int num_antennas() const { return static_cast<int>(matrix.rows()); }
  int num_users() const { return static_cast<int>(matrix.cols()); }
};

struct BeamAssignment {
  std::vector<int> beam_index;  // j_t per user
  CMatrix beams;                // A x T, column t is the DFT column j_t
};

// ULA response exp(i*pi*m*sin(angle)) / sqrt(A).
CVector steering_vector(double angle, int num_antennas);

// Exponential model M[i, j] = rho^|i - j|.
CMatrix corr_matrix(int dim, double rho);

// Unitary DFT, entry (m, k) = exp(-i*2*pi*m*k/A) / sqrt(A).
CMatrix dft_matrix(int dim);

// Hermitian PSD square root via eigendecomposition. Throws if an eigenvalue
// is meaningfully negative.
CMatrix psd_sqrt(const CMatrix& m);

// Caches everything that is fixed for a config (correlation root, LoS
// vectors, DFT) so per-slot draws only cost the random part.
class ChannelGenerator {
 public:
  explicit ChannelGenerator(ChannelConfig config);

  // Deterministic in (config.seed, slot).
  ChannelRealization generate(std::uint64_t slot) const;

  const ChannelConfig& config() const { return *config_; }
  const CMatrix& dft() const { return dft_; }

 private:
  std::shared_ptr<const ChannelConfig> config_;
  CMatrix corr_root_;
  CMatrix los_;  // A x T, already scaled by K-tilde
  double nlos_scale_;
  CMatrix dft_;
};

ChannelRealization generate_channel(const ChannelConfig& config, std::uint64_t slot);

// |Omega[:, j]^H n_t|^2 for every beam j.
std::vector<double> beam_energy(const ChannelRealization& channel, int user);
std::vector<double> beam_energy(const ChannelRealization& channel, int user, const CMatrix& dft);

// Greedy distinct assignment: users in descending order of best-beam energy,
// each taking its strongest free beam. Ties go to the lower beam index, then
// the lower user index.
BeamAssignment select_beams(const ChannelRealization& channel);
BeamAssignment select_beams(const ChannelRealization& channel, const CMatrix& dft);

}  // namespace msched::chanmod
