#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "backflow/linalg.hpp"
#include "backflow/matrix.hpp"

namespace backflow {

// Unit-trace positive semidefinite Hermitian matrix.
//
// Validation: |Tr - 1| <= 1e-10 and smallest eigenvalue >= -1e-10.
// Eigenvalues in [-1e-10, 0) are treated as roundoff: they are clipped to
// zero and the trace renormalized. Anything more negative is an error.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kNegativityTolerance = 1e-10;

  explicit DensityMatrix(const HermitianMatrix& m);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  // Skips the spectral check and only verifies the trace. For outputs of
  // trace-preserving positive maps applied to valid states.
  static DensityMatrix trusted(const HermitianMatrix& m);
  static DensityMatrix trusted(const ComplexMatrix& m) {
    return trusted(HermitianMatrix::symmetrized(m));
  }

  std::size_t dim() const { return m_.dim(); }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(HermitianMatrix m, Trusted) : m_(std::move(m)) {}

  HermitianMatrix m_;
};

// mu * a + (1 - mu) * b
DensityMatrix mixture(const DensityMatrix& a, const DensityMatrix& b, double weight_a);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

class BipartiteState {
 public:
  BipartiteState(std::size_t d_s, std::size_t d_e, DensityMatrix state);

  static BipartiteState product(const DensityMatrix& system, const DensityMatrix& environment);

  std::size_t d_s() const { return d_s_; }
  std::size_t d_e() const { return d_e_; }
  const DensityMatrix& state() const { return state_; }

  DensityMatrix marginal(Subsystem keep) const;
  // rho_S (x) rho_E built from this state's own marginals.
  DensityMatrix product_of_marginals() const;

 private:
  std::size_t d_s_;
  std::size_t d_e_;
  DensityMatrix state_;
};

// Seed of the counter-based generator below.
struct RngSeed {
  std::uint64_t value = 0;
};

// Counter-based generator: draw k is splitmix64(seed + k * 0x9E3779B97F4A7C15).
// Uniforms take the top 53 bits; normals use Box-Muller on two uniforms
// (both outputs are used). Results depend only on the seed and the number
// of draws so far, never on global state.
class CounterRng {
 public:
  explicit CounterRng(RngSeed seed) : seed_(seed.value) {}

  std::uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  // Standard normal.
  double normal();
  // Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Completely positive map in Kraus form, rho -> sum_k K rho K^dagger.
// Construction checks trace preservation: max |sum K^dagger K - I| <= 1e-10.
class QuantumChannel {
 public:
  static constexpr double kTracePreservationTolerance = 1e-10;

  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  // No trace-preservation check. Only for negative controls in self-tests.
  static QuantumChannel unchecked(std::vector<ComplexMatrix> kraus);

  static QuantumChannel identity(std::size_t dim);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus_operators() const { return kraus_; }

  // sum_k K m K^dagger on an arbitrary operator.
  ComplexMatrix apply(const ComplexMatrix& m) const;
  double trace_preservation_error() const;

 private:
  struct Unchecked {};
  QuantumChannel(std::vector<ComplexMatrix> kraus, Unchecked);

  std::vector<ComplexMatrix> kraus_;
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
};

// |psi><psi| / <psi|psi>
DensityMatrix pure_state(std::span<const Complex> amplitudes);

// (I + r . sigma) / 2, |r| <= 1 + 1e-12.
DensityMatrix qubit_from_bloch(const std::array<double, 3>& r);

// Diagonal with p_n proportional to exp(-beta_omega * n), n < n_trunc,
// normalized over the truncated space.
DensityMatrix thermal_oscillator(double beta_omega, std::size_t n_trunc);

// Hilbert-Schmidt ensemble: G G^dagger / Tr(G G^dagger), G complex Gaussian.
DensityMatrix random_density(std::size_t dim, CounterRng& rng);
DensityMatrix random_density(std::size_t dim, RngSeed seed);

// Random Haar-like isometry V: dim -> dim * env_dim (Gram-Schmidt QR of a
// complex Gaussian matrix), cut into env_dim Kraus operators of size dim x dim.
QuantumChannel random_cptp(std::size_t dim, std::size_t env_dim, CounterRng& rng);
QuantumChannel random_cptp(std::size_t dim, std::size_t env_dim, RngSeed seed);

// Random unitary (env_dim = 1 isometry).
ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng);

DensityMatrix apply_channel(const QuantumChannel& phi, const DensityMatrix& rho);

}  // namespace backflow
