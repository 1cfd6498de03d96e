#include "backflow/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "backflow/error.hpp"

namespace backflow {
namespace {

void check_trace(const HermitianMatrix& m) {
  const double tr = m.trace();
  if (std::abs(tr - 1.0) > DensityMatrix::kTraceTolerance) {
    throw DomainError("DensityMatrix: trace is " + std::to_string(tr) + ", expected 1");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, CounterRng& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.data()) z = rng.complex_normal();
  return g;
}

// Orthonormalizes the columns in place (modified Gram-Schmidt, two passes).
void orthonormalize_columns(ComplexMatrix& v) {
  const std::size_t rows = v.rows();
  for (std::size_t c = 0; c < v.cols(); ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex overlap{};
        for (std::size_t r = 0; r < rows; ++r) overlap += std::conj(v(r, prev)) * v(r, c);
        for (std::size_t r = 0; r < rows; ++r) v(r, c) -= overlap * v(r, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < rows; ++r) norm += std::norm(v(r, c));
    norm = std::sqrt(norm);
    if (norm < 1e-300) throw ConvergenceError("orthonormalize_columns: rank-deficient draw");
    for (std::size_t r = 0; r < rows; ++r) v(r, c) /= norm;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(const HermitianMatrix& m) : m_(m) {
  check_trace(m_);
  const SpectralDecomposition spectrum = eigh(m_);
  const double smallest = spectrum.eigenvalues.front();
  if (smallest < -kNegativityTolerance) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(smallest));
  }
  if (smallest < 0.0) {
    std::vector<double> clipped = spectrum.eigenvalues;
    double total = 0.0;
    for (double& v : clipped) {
      v = std::max(v, 0.0);
      total += v;
    }
    for (double& v : clipped) v /= total;
    m_ = reconstruct(spectrum, std::span<const double>(clipped));
  }
}

DensityMatrix DensityMatrix::trusted(const HermitianMatrix& m) {
  check_trace(m);
  return DensityMatrix(m, Trusted{});
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho
  double p = 0.0;
  for (const auto& z : matrix().data()) p += std::norm(z);
  return p;
}

DensityMatrix mixture(const DensityMatrix& a, const DensityMatrix& b, double weight_a) {
  if (a.dim() != b.dim()) throw DimensionError("mixture: dimension mismatch");
  if (!(weight_a >= 0.0 && weight_a <= 1.0)) throw DomainError("mixture: weight outside [0,1]");
  return DensityMatrix::trusted(weight_a * a.matrix() + (1.0 - weight_a) * b.matrix());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(std::size_t d_s, std::size_t d_e, DensityMatrix state)
    : d_s_(d_s), d_e_(d_e), state_(std::move(state)) {
  if (d_s_ == 0 || d_e_ == 0 || d_s_ * d_e_ != state_.dim()) {
    throw DimensionError("BipartiteState: " + std::to_string(d_s_) + " x " + std::to_string(d_e_) +
                         " does not match state dimension " + std::to_string(state_.dim()));
  }
}

BipartiteState BipartiteState::product(const DensityMatrix& system,
                                       const DensityMatrix& environment) {
  return BipartiteState(system.dim(), environment.dim(), tensor(system, environment));
}

DensityMatrix BipartiteState::marginal(Subsystem keep) const {
  return DensityMatrix::trusted(partial_trace(state_.matrix(), d_s_, d_e_, keep));
}

DensityMatrix BipartiteState::product_of_marginals() const {
  return tensor(marginal(Subsystem::System), marginal(Subsystem::Environment));
}

// ---------------------------------------------------------------------------
// CounterRng

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t x = splitmix64(seed_ + counter_ * 0x9E3779B97F4A7C15ULL);
  ++counter_;
  return x;
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex CounterRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

// ---------------------------------------------------------------------------
// QuantumChannel

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, Unchecked)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("QuantumChannel: no Kraus operators");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  for (const auto& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionError("QuantumChannel: Kraus operators of different shapes");
    }
  }
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : QuantumChannel(std::move(kraus), Unchecked{}) {
  const double err = trace_preservation_error();
  if (err > kTracePreservationTolerance) {
    throw DomainError("QuantumChannel: not trace preserving (error " + std::to_string(err) + ")");
  }
}

QuantumChannel QuantumChannel::unchecked(std::vector<ComplexMatrix> kraus) {
  return QuantumChannel(std::move(kraus), Unchecked{});
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
  return QuantumChannel({ComplexMatrix::identity(dim)});
}

double QuantumChannel::trace_preservation_error() const {
  ComplexMatrix sum = ComplexMatrix::zeros(dim_in_, dim_in_);
  for (const auto& k : kraus_) sum += matmul_adjoint_left(k, k);
  return max_abs_diff(sum, ComplexMatrix::identity(dim_in_));
}

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& m) const {
  if (m.rows() != dim_in_ || m.cols() != dim_in_) {
    throw DimensionError("QuantumChannel::apply: input is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", channel expects " +
                         std::to_string(dim_in_));
  }
  ComplexMatrix out = ComplexMatrix::zeros(dim_out_, dim_out_);
  for (const auto& k : kraus_) out += matmul_adjoint_right(matmul(k, m), k);
  return out;
}

// ---------------------------------------------------------------------------
// Constructors

DensityMatrix pure_state(std::span<const Complex> amplitudes) {
  double norm2 = 0.0;
  for (const auto& a : amplitudes) norm2 += std::norm(a);
  if (amplitudes.empty() || norm2 == 0.0) throw DomainError("pure_state: zero vector");
  const std::size_t d = amplitudes.size();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / norm2;
  return DensityMatrix::trusted(m);
}

DensityMatrix qubit_from_bloch(const std::array<double, 3>& r) {
  const double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  if (len > 1.0 + 1e-12) {
    throw DomainError("qubit_from_bloch: Bloch vector length " + std::to_string(len) + " > 1");
  }
  const ComplexMatrix m{{0.5 * (1.0 + r[2]), 0.5 * Complex(r[0], -r[1])},
                        {0.5 * Complex(r[0], r[1]), 0.5 * (1.0 - r[2])}};
  // pure states sit exactly on the boundary; the tiny overshoot allowed
  // above is within the negativity tolerance
  return DensityMatrix(m);
}

DensityMatrix thermal_oscillator(double beta_omega, std::size_t n_trunc) {
  if (!(beta_omega > 0.0)) throw DomainError("thermal_oscillator: beta_omega must be positive");
  if (n_trunc < 2) throw DomainError("thermal_oscillator: n_trunc must be at least 2");
  std::vector<double> p(n_trunc);
  double total = 0.0;
  for (std::size_t n = 0; n < n_trunc; ++n) {
    p[n] = std::exp(-beta_omega * static_cast<double>(n));
    total += p[n];
  }
  for (double& v : p) v /= total;
  return DensityMatrix::trusted(HermitianMatrix(ComplexMatrix::diagonal(std::span<const double>(p))));
}

DensityMatrix random_density(std::size_t dim, CounterRng& rng) {
  if (dim == 0) throw DimensionError("random_density: dim must be positive");
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  ComplexMatrix gg = matmul_adjoint_right(g, g);
  gg *= 1.0 / gg.trace().real();
  return DensityMatrix::trusted(gg);
}

DensityMatrix random_density(std::size_t dim, RngSeed seed) {
  CounterRng rng(seed);
  return random_density(dim, rng);
}

QuantumChannel random_cptp(std::size_t dim, std::size_t env_dim, CounterRng& rng) {
  if (dim == 0 || env_dim == 0) throw DimensionError("random_cptp: dimensions must be positive");
  ComplexMatrix v = gaussian_matrix(dim * env_dim, dim, rng);
  orthonormalize_columns(v);
  std::vector<ComplexMatrix> kraus(env_dim, ComplexMatrix(dim, dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < env_dim; ++k)
      for (std::size_t j = 0; j < dim; ++j) kraus[k](i, j) = v(i * env_dim + k, j);
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_cptp(std::size_t dim, std::size_t env_dim, RngSeed seed) {
  CounterRng rng(seed);
  return random_cptp(dim, env_dim, rng);
}

ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng) {
  ComplexMatrix v = gaussian_matrix(dim, dim, rng);
  orthonormalize_columns(v);
  return v;
}

DensityMatrix apply_channel(const QuantumChannel& phi, const DensityMatrix& rho) {
  return DensityMatrix::trusted(phi.apply(rho.matrix()));
}

}  // namespace backflow
