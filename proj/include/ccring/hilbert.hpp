#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ccring/config.hpp"

namespace ccring {

using Complex = std::complex<double>;
using SparseOp = Eigen::SparseMatrix<Complex>;
using StateVector = Eigen::VectorXcd;

// Atomic level ordering, shared by every module.
inline constexpr int kLevelA = 0;  // |a>, logical 0
inline constexpr int kLevelG = 1;  // |g>, logical 1
inline constexpr int kLevelE = 2;  // |e>, eliminated upper level

inline constexpr std::int64_t kDefaultCapacity = 10'000'000;

// Truncated tensor basis: N three-level atoms followed by N bosonic modes with
// at most n_max quanta each. Index layout is row-major with atom 1 slowest,
// then mode 1 slowest among the modes.
struct SpaceDescriptor {
  int n_sites = 0;
  int n_max = 0;
  std::int64_t atom_dim = 0;   // 3^N
  std::int64_t mode_dim = 0;   // (n_max+1)^N
  std::int64_t total_dim = 0;  // atom_dim * mode_dim

  std::int64_t basis_index(std::span<const int> atom_levels,
                           std::span<const int> photons) const;
  void decode(std::int64_t index, std::span<int> atom_levels,
              std::span<int> photons) const;
  int atom_level(std::int64_t index, int j) const;   // j = 1..N
  int photon_count(std::int64_t index, int j) const;  // j = 1..N
};

SpaceDescriptor build_space(int n_sites, int n_max,
                            std::int64_t capacity = kDefaultCapacity);

// Unitary map from local cavity operators to ring normal modes,
// entry (j, k) = exp(-i 2 pi j k / N) / sqrt(N) for j, k = 1..N.
Eigen::MatrixXcd fourier_mode_map(int n_sites);

// One oscillating group of the Hamiltonian: contributes
// exp(i freq t) * op + Hermitian conjugate.
struct HamiltonianTerm {
  SparseOp op;
  double freq = 0.0;
};

// H(t) = static_part + sum_r exp(i freq_r t) T_r + H.c., kept in factored form
// so propagation never rebuilds a matrix. Terms with bit-identical frequencies
// are merged at build time.
struct HamiltonianGenerator {
  std::int64_t dim = 0;
  SparseOp static_part;  // hermitian, applied as stored
  std::vector<HamiltonianTerm> terms;
  double max_frequency = 0.0;  // fastest phase in the generator, for dt checks

  // y = H(t) x. y is overwritten; no allocation.
  void apply(double t, const StateVector& x, StateVector& y) const;
  SparseOp materialize(double t) const;
};

// Ring-frame Hamiltonian: static photon hopping plus oscillating atom-cavity
// and drive couplings, truncated at n_max photons per mode.
HamiltonianGenerator build_full_hamiltonian(const SystemConfig& cfg,
                                            const SpaceDescriptor& space);

// Normal-mode frame: no static part; atom-mode couplings carry the mode
// phases and shifted frequencies. Agrees with the ring frame on states with
// all modes in vacuum.
HamiltonianGenerator build_mode_hamiltonian(const SystemConfig& cfg,
                                            const SpaceDescriptor& space);

// Reduced diagonal Hamiltonian on the 2^N qubit space {a,g}^N (atom 1
// slowest, a=0, g=1). Photonic shift terms drop out for vacuum modes.
SparseOp build_effective_hamiltonian(const SystemConfig& cfg);

// Index into the 2^N qubit space for a pattern of kLevelA / kLevelG.
std::int64_t qubit_basis_index(std::span<const int> levels);

// Total excitation number: sum of atomic |e><e| projectors and photon numbers.
SparseOp excitation_number_operator(const SpaceDescriptor& space);

// max |H - H^dagger| entry; zero for an exactly hermitian operator.
double hermiticity_error(const SparseOp& op);

StateVector basis_state(const SpaceDescriptor& space,
                        std::span<const int> atom_levels,
                        std::span<const int> photons);

// Basis state with the given atomic pattern and all modes in vacuum.
StateVector vacuum_state(const SpaceDescriptor& space,
                         std::span<const int> atom_levels);

// Per-basis-state weights for observable accumulation during propagation.
Eigen::VectorXd excited_population_weights(const SpaceDescriptor& space);
Eigen::VectorXd photon_number_weights(const SpaceDescriptor& space);

}  // namespace ccring
