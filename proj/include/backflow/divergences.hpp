#pragma once

#include <cmath>

#include "backflow/states.hpp"

namespace backflow {

// Mixing weight mu of the telescopic relative entropy, 0 < mu < 1.
class TelescopicParameter {
 public:
  explicit TelescopicParameter(double mu);

  // e^{-3/2}, the minimizer of kappa().
  static TelescopicParameter optimal();
  // e^{-1/2}, the minimizer of kappa_alt().
  static TelescopicParameter optimal_alt();

  double value() const { return mu_; }
  // log(1/mu)
  double log_inverse() const { return -std::log(mu_); }

  friend bool operator==(TelescopicParameter, TelescopicParameter) = default;

 private:
  double mu_;
};

// Support of sigma counts eigenvalues above this.
inline constexpr double kSupportThreshold = 1e-12;
// Tr(P_sigma^perp rho) above this makes S(rho, sigma) infinite.
inline constexpr double kSupportViolation = 1e-10;

// States agreeing entrywise to this are treated as identical by every
// divergence below (value exactly 0).
inline constexpr double kCoincidenceTolerance = 1e-14;

// Entrywise agreement within kCoincidenceTolerance. Below this the
// eigensolver noise (~1e-16) dominates, and the fourth roots in the bounds
// would turn it into ~1e-4.
bool states_coincide(const DensityMatrix& a, const DensityMatrix& b);

// 1/2 Tr|rho - sigma|
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Umegaki relative entropy Tr(rho log rho - rho log sigma), natural log.
// +infinity when the support of rho is not contained in that of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);
double relative_entropy(const SpectralDecomposition& rho, const SpectralDecomposition& sigma);

// S(rho, mu rho + (1-mu) sigma) / log(1/mu), in [0, 1].
double telescopic_re(const DensityMatrix& rho, const DensityMatrix& sigma, TelescopicParameter mu);
// Same, reusing a precomputed spectrum of rho.
double telescopic_re(const DensityMatrix& rho, const SpectralDecomposition& rho_spectrum,
                     const DensityMatrix& sigma, TelescopicParameter mu);

// Mean of the two orderings of telescopic_re.
double symmetrized_tre(const DensityMatrix& rho, const DensityMatrix& sigma, TelescopicParameter mu);

// Quantum Jensen-Shannon divergence, normalized to [0, 1]: the symmetrized
// TRE at mu = 1/2 (equivalently base-2 logarithms).
double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma);
double qjsd(const DensityMatrix& rho, const SpectralDecomposition& rho_spectrum,
            const DensityMatrix& sigma, const SpectralDecomposition& sigma_spectrum);
// sqrt(qjsd), a metric on states.
double sqrt_qjsd(const DensityMatrix& rho, const DensityMatrix& sigma);

// TRE extended to non-negative scalars:
//   a log(a / (mu a + (1-mu) b)) / log(1/mu), and 0 for a = 0.
double scalar_tre(double a, double b, TelescopicParameter mu);

// 2 (1-mu)^2 / log(1/mu), the generalized Pinsker coefficient.
double pinsker_coefficient(TelescopicParameter mu);

// 1 / (2 mu^2 log^3(1/mu))^{1/4}, prefactor of the fourth-root bound.
double kappa(TelescopicParameter mu);
// 1 / sqrt(2 mu^2 log(1/mu)), prefactor of the alternate bound.
double kappa_alt(TelescopicParameter mu);

}  // namespace backflow
