#include "ccring/hilbert.hpp"

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ccring/couplings.hpp"
#include "ccring/errors.hpp"
#include "ccring/numerics.hpp"

namespace ccring {

namespace {

std::int64_t atom_stride(const SpaceDescriptor& s, int j) {
  std::int64_t stride = s.mode_dim;
  for (int i = 0; i < s.n_sites - j; ++i) stride *= 3;
  return stride;
}

std::int64_t mode_stride(const SpaceDescriptor& s, int j) {
  std::int64_t stride = 1;
  for (int i = 0; i < s.n_sites - j; ++i) stride *= s.n_max + 1;
  return stride;
}

}  // namespace

std::int64_t SpaceDescriptor::basis_index(std::span<const int> atom_levels,
                                          std::span<const int> photons) const {
  std::int64_t idx = 0;
  for (int j = 1; j <= n_sites; ++j) idx = idx * 3 + atom_levels[j - 1];
  for (int j = 1; j <= n_sites; ++j) idx = idx * (n_max + 1) + photons[j - 1];
  return idx;
}

void SpaceDescriptor::decode(std::int64_t index, std::span<int> atom_levels,
                             std::span<int> photons) const {
  for (int j = n_sites; j >= 1; --j) {
    photons[j - 1] = static_cast<int>(index % (n_max + 1));
    index /= n_max + 1;
  }
  for (int j = n_sites; j >= 1; --j) {
    atom_levels[j - 1] = static_cast<int>(index % 3);
    index /= 3;
  }
}

int SpaceDescriptor::atom_level(std::int64_t index, int j) const {
  return static_cast<int>((index / atom_stride(*this, j)) % 3);
}

int SpaceDescriptor::photon_count(std::int64_t index, int j) const {
  return static_cast<int>((index / mode_stride(*this, j)) % (n_max + 1));
}

SpaceDescriptor build_space(int n_sites, int n_max, std::int64_t capacity) {
  if (n_sites < 2) throw precondition_error("build_space: n_sites must be >= 2");
  if (n_max < 0) throw precondition_error("build_space: n_max must be >= 0");
  SpaceDescriptor s;
  s.n_sites = n_sites;
  s.n_max = n_max;
  s.atom_dim = 1;
  s.mode_dim = 1;
  for (int j = 0; j < n_sites; ++j) {
    s.atom_dim *= 3;
    s.mode_dim *= n_max + 1;
    if (s.atom_dim > capacity || s.mode_dim > capacity ||
        s.atom_dim > capacity / s.mode_dim) {
      throw capacity_error("build_space: dimension 3^" +
                           std::to_string(n_sites) + " * " +
                           std::to_string(n_max + 1) + "^" +
                           std::to_string(n_sites) + " exceeds cap " +
                           std::to_string(capacity));
    }
  }
  s.total_dim = s.atom_dim * s.mode_dim;
  return s;
}

Eigen::MatrixXcd fourier_mode_map(int n_sites) {
  if (n_sites < 2) {
    throw precondition_error("fourier_mode_map: n_sites must be >= 2");
  }
  const double root_n = std::sqrt(static_cast<double>(n_sites));
  Eigen::MatrixXcd f(n_sites, n_sites);
  for (int j = 1; j <= n_sites; ++j) {
    for (int k = 1; k <= n_sites; ++k) {
      f(j - 1, k - 1) =
          std::polar(1.0 / root_n, -kTwoPi * j * k / n_sites);
    }
  }
  return f;
}

void HamiltonianGenerator::apply(double t, const StateVector& x,
                                 StateVector& y) const {
  y.setZero();
  for (int col = 0; col < static_part.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(static_part, col); it; ++it) {
      y[it.row()] += it.value() * x[col];
    }
  }
  for (const auto& term : terms) {
    const Complex c = std::polar(1.0, term.freq * t);
    for (int col = 0; col < term.op.outerSize(); ++col) {
      for (SparseOp::InnerIterator it(term.op, col); it; ++it) {
        const Complex v = c * it.value();
        y[it.row()] += v * x[col];
        y[col] += std::conj(v) * x[it.row()];
      }
    }
  }
}

SparseOp HamiltonianGenerator::materialize(double t) const {
  SparseOp h = static_part;
  if (h.rows() == 0) {
    h = SparseOp(dim, dim);
  }
  for (const auto& term : terms) {
    const Complex c = std::polar(1.0, term.freq * t);
    h = h + SparseOp(c * term.op) + SparseOp(std::conj(c) * term.op.adjoint());
  }
  h.makeCompressed();
  return h;
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Collect raising transitions |to><from|_j, optionally annihilating one
// photon in mode l. Enumeration is over columns in ascending order so builds
// are deterministic.
void add_atom_mode_triplets(const SpaceDescriptor& s, int atom_j, int to,
                            int from, int mode_l, Complex amp,
                            std::vector<Triplet>& out) {
  const std::int64_t astride = atom_stride(s, atom_j);
  const std::int64_t mstride = mode_l > 0 ? mode_stride(s, mode_l) : 0;
  for (std::int64_t col = 0; col < s.total_dim; ++col) {
    if (s.atom_level(col, atom_j) != from) continue;
    std::int64_t row = col + (to - from) * astride;
    Complex value = amp;
    if (mode_l > 0) {
      const int nph = s.photon_count(col, mode_l);
      if (nph < 1) continue;
      row -= mstride;
      value *= std::sqrt(static_cast<double>(nph));
    }
    out.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
  }
}

// a_dst^dag a_src with amplitude amp (one direction of a hopping link).
void add_hop_triplets(const SpaceDescriptor& s, int dst, int src, double amp,
                      std::vector<Triplet>& out) {
  const std::int64_t dst_stride = mode_stride(s, dst);
  const std::int64_t src_stride = mode_stride(s, src);
  for (std::int64_t col = 0; col < s.total_dim; ++col) {
    const int n_src = s.photon_count(col, src);
    const int n_dst = s.photon_count(col, dst);
    if (n_src < 1 || n_dst >= s.n_max) continue;
    const std::int64_t row = col + dst_stride - src_stride;
    const double value =
        amp * std::sqrt(static_cast<double>(n_src) * (n_dst + 1));
    out.emplace_back(static_cast<int>(row), static_cast<int>(col), value);
  }
}

double generator_max_frequency(const SystemConfig& cfg) {
  double f = 0.0;
  for (double d : cfg.delta_cav) f = std::max(f, std::abs(d));
  for (double d : cfg.delta_ctrl) f = std::max(f, std::abs(d));
  for (double d : cfg.delta_tgt) f = std::max(f, std::abs(d));
  return f + 2.0 * cfg.hop;
}

HamiltonianGenerator assemble(const SpaceDescriptor& space,
                              std::vector<Triplet> static_triplets,
                              std::map<double, std::vector<Triplet>> groups,
                              double max_frequency) {
  HamiltonianGenerator gen;
  gen.dim = space.total_dim;
  gen.max_frequency = max_frequency;
  gen.static_part = SparseOp(space.total_dim, space.total_dim);
  gen.static_part.setFromTriplets(static_triplets.begin(),
                                  static_triplets.end());
  gen.static_part.makeCompressed();
  for (auto& [freq, triplets] : groups) {
    HamiltonianTerm term;
    term.freq = freq;
    term.op = SparseOp(space.total_dim, space.total_dim);
    term.op.setFromTriplets(triplets.begin(), triplets.end());
    term.op.makeCompressed();
    gen.terms.push_back(std::move(term));
  }
  return gen;
}

}  // namespace

HamiltonianGenerator build_full_hamiltonian(const SystemConfig& cfg,
                                            const SpaceDescriptor& space) {
  const int n_sites = cfg.n_sites;

  // Ring hopping, written with the wrap-around link a_{N+1} = a_1. For N = 2
  // the sum visits the single link twice, doubling it; kept as written.
  std::vector<Triplet> hop;
  for (int j = 1; j <= n_sites; ++j) {
    const int jp = j == n_sites ? 1 : j + 1;
    add_hop_triplets(space, j, jp, cfg.hop, hop);
    add_hop_triplets(space, jp, j, cfg.hop, hop);
  }

  std::map<double, std::vector<Triplet>> groups;
  for (int j = 1; j <= n_sites; ++j) {
    add_atom_mode_triplets(space, j, kLevelE, kLevelG, j, cfg.g_j(j),
                           groups[cfg.delta_cav_j(j)]);
  }
  for (int m = 1; m <= n_sites - 1; ++m) {
    add_atom_mode_triplets(space, 1, kLevelE, kLevelG, 0, cfg.rabi_ctrl_m(m),
                           groups[cfg.delta_ctrl_m(m)]);
  }
  for (int n = 2; n <= n_sites; ++n) {
    add_atom_mode_triplets(space, n, kLevelE, kLevelG, 0, cfg.rabi_tgt_n(n),
                           groups[cfg.delta_tgt_n(n)]);
  }
  return assemble(space, std::move(hop), std::move(groups),
                  generator_max_frequency(cfg));
}

HamiltonianGenerator build_mode_hamiltonian(const SystemConfig& cfg,
                                            const SpaceDescriptor& space) {
  const int n_sites = cfg.n_sites;
  const double root_n = std::sqrt(static_cast<double>(n_sites));
  const auto omega = [&] {
    std::vector<double> w(n_sites);
    for (int k = 1; k <= n_sites; ++k) {
      w[k - 1] = 2.0 * cfg.hop * std::cos(kTwoPi * k / n_sites);
    }
    return w;
  }();

  std::map<double, std::vector<Triplet>> groups;
  for (int j = 1; j <= n_sites; ++j) {
    for (int k = 1; k <= n_sites; ++k) {
      const Complex amp =
          std::polar(cfg.g_j(j) / root_n, -kTwoPi * j * k / n_sites);
      const double freq = cfg.delta_cav_j(j) - omega[k - 1];
      add_atom_mode_triplets(space, j, kLevelE, kLevelG, k, amp, groups[freq]);
    }
  }
  for (int m = 1; m <= n_sites - 1; ++m) {
    add_atom_mode_triplets(space, 1, kLevelE, kLevelG, 0, cfg.rabi_ctrl_m(m),
                           groups[cfg.delta_ctrl_m(m)]);
  }
  for (int n = 2; n <= n_sites; ++n) {
    add_atom_mode_triplets(space, n, kLevelE, kLevelG, 0, cfg.rabi_tgt_n(n),
                           groups[cfg.delta_tgt_n(n)]);
  }
  return assemble(space, {}, std::move(groups), generator_max_frequency(cfg));
}

std::int64_t qubit_basis_index(std::span<const int> levels) {
  if (levels.size() > 62) {
    throw capacity_error("qubit_basis_index: too many atoms for a flat index");
  }
  std::int64_t idx = 0;
  for (int level : levels) {
    if (level != kLevelA && level != kLevelG) {
      throw precondition_error("qubit_basis_index: levels must be a or g");
    }
    idx = idx * 2 + (level == kLevelG ? 1 : 0);
  }
  return idx;
}

SparseOp build_effective_hamiltonian(const SystemConfig& cfg) {
  const int n_sites = cfg.n_sites;
  if (n_sites > 23) {
    throw capacity_error("qubit diagonal of 2^" + std::to_string(n_sites) +
                         " states exceeds capacity");
  }
  const EffectiveCouplings coup = reduced_couplings(cfg);
  const std::int64_t dim = std::int64_t{1} << n_sites;

  std::vector<Triplet> diag;
  diag.reserve(dim);
  for (std::int64_t s = 0; s < dim; ++s) {
    const bool ctrl_g = ((s >> (n_sites - 1)) & 1) != 0;
    double energy = 0.0;
    for (int j = 2; j <= n_sites; ++j) {
      const bool tgt_g = ((s >> (n_sites - j)) & 1) != 0;
      if (ctrl_g) energy += coup.zeta_prime[j - 2];
      if (tgt_g) energy += coup.xi_prime[j - 2];
      if (ctrl_g && tgt_g) energy += coup.lambda_prime[j - 2];
    }
    if (energy != 0.0) {
      diag.emplace_back(static_cast<int>(s), static_cast<int>(s), energy);
    }
  }
  SparseOp h(dim, dim);
  h.setFromTriplets(diag.begin(), diag.end());
  h.makeCompressed();
  return h;
}

SparseOp excitation_number_operator(const SpaceDescriptor& space) {
  std::vector<Triplet> diag;
  diag.reserve(space.total_dim);
  for (std::int64_t i = 0; i < space.total_dim; ++i) {
    double count = 0.0;
    for (int j = 1; j <= space.n_sites; ++j) {
      if (space.atom_level(i, j) == kLevelE) count += 1.0;
      count += space.photon_count(i, j);
    }
    if (count != 0.0) {
      diag.emplace_back(static_cast<int>(i), static_cast<int>(i), count);
    }
  }
  SparseOp op(space.total_dim, space.total_dim);
  op.setFromTriplets(diag.begin(), diag.end());
  op.makeCompressed();
  return op;
}

double hermiticity_error(const SparseOp& op) {
  SparseOp adj = op.adjoint();
  SparseOp diff = op - adj;
  double worst = 0.0;
  for (int col = 0; col < diff.outerSize(); ++col) {
    for (SparseOp::InnerIterator it(diff, col); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

StateVector basis_state(const SpaceDescriptor& space,
                        std::span<const int> atom_levels,
                        std::span<const int> photons) {
  StateVector psi = StateVector::Zero(space.total_dim);
  psi[space.basis_index(atom_levels, photons)] = 1.0;
  return psi;
}

StateVector vacuum_state(const SpaceDescriptor& space,
                         std::span<const int> atom_levels) {
  const std::vector<int> photons(space.n_sites, 0);
  return basis_state(space, atom_levels, photons);
}

Eigen::VectorXd excited_population_weights(const SpaceDescriptor& space) {
  Eigen::VectorXd w(space.total_dim);
  for (std::int64_t i = 0; i < space.total_dim; ++i) {
    int count = 0;
    for (int j = 1; j <= space.n_sites; ++j) {
      if (space.atom_level(i, j) == kLevelE) ++count;
    }
    w[i] = count;
  }
  return w;
}

Eigen::VectorXd photon_number_weights(const SpaceDescriptor& space) {
  Eigen::VectorXd w(space.total_dim);
  for (std::int64_t i = 0; i < space.total_dim; ++i) {
    int count = 0;
    for (int j = 1; j <= space.n_sites; ++j) {
      count += space.photon_count(i, j);
    }
    w[i] = count;
  }
  return w;
}

}  // namespace ccring
