#include "backflow/divergences.hpp"

#include <limits>
#include <numbers>
#include <string>

#include "backflow/error.hpp"
#include "backflow/kernels.hpp"

namespace backflow {
namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()));
  }
}

bool coincide(const DensityMatrix& a, const DensityMatrix& b) { return states_coincide(a, b); }

}  // namespace

bool states_coincide(const DensityMatrix& a, const DensityMatrix& b) {
  return a.dim() == b.dim() && max_abs_diff(a.matrix(), b.matrix()) <= kCoincidenceTolerance;
}

TelescopicParameter::TelescopicParameter(double mu) : mu_(mu) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw DomainError("TelescopicParameter: mu = " + std::to_string(mu) + " outside (0,1)");
  }
}

TelescopicParameter TelescopicParameter::optimal() { return TelescopicParameter(std::exp(-1.5)); }

TelescopicParameter TelescopicParameter::optimal_alt() {
  return TelescopicParameter(std::exp(-0.5));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "trace_distance");
  if (coincide(rho, sigma)) return 0.0;
  return 0.5 * trace_norm(rho.hermitian() - sigma.hermitian());
}

double relative_entropy(const SpectralDecomposition& rho, const SpectralDecomposition& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionError("relative_entropy: dimension mismatch");
  const std::size_t d = rho.dim();

  // 0 log 0 = 0; roundoff-negative eigenvalues carry no weight
  std::vector<double> weights(d);
  double entropy_term = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double lambda = rho.eigenvalues[i];
    weights[i] = lambda > 0.0 ? lambda : 0.0;
    if (lambda > 0.0) entropy_term += lambda * std::log(lambda);
  }

  // overlap[i][j] = <u_i|v_j>; column weight w_j = <v_j|rho|v_j>
  const ComplexMatrix overlap = matmul_adjoint_left(rho.eigenvectors, sigma.eigenvectors);
  std::vector<double> column_weight(d);
  kernels::active_kernels().abs2_weighted_colsum(overlap.data().data(), weights.data(),
                                                 column_weight.data(), d, d);

  double outside_support = 0.0;
  double cross_term = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double tau = sigma.eigenvalues[j];
    if (tau <= kSupportThreshold) {
      outside_support += column_weight[j];
    } else {
      cross_term += column_weight[j] * std::log(tau);
    }
  }
  if (outside_support > kSupportViolation) return std::numeric_limits<double>::infinity();
  return entropy_term - cross_term;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  if (coincide(rho, sigma)) return 0.0;
  return relative_entropy(eigh(rho.hermitian()), eigh(sigma.hermitian()));
}

double telescopic_re(const DensityMatrix& rho, const SpectralDecomposition& rho_spectrum,
                     const DensityMatrix& sigma, TelescopicParameter mu) {
  require_same_dim(rho, sigma, "telescopic_re");
  if (coincide(rho, sigma)) return 0.0;
  const DensityMatrix mixed = mixture(rho, sigma, mu.value());
  const double s = relative_entropy(rho_spectrum, eigh(mixed.hermitian()));
  if (!std::isfinite(s)) {
    // supp(rho) lies inside supp(mu rho + (1-mu) sigma); reaching this is a bug
    throw ConvergenceError("telescopic_re: mixture lost the support of rho");
  }
  return s / mu.log_inverse();
}

double telescopic_re(const DensityMatrix& rho, const DensityMatrix& sigma, TelescopicParameter mu) {
  require_same_dim(rho, sigma, "telescopic_re");
  if (coincide(rho, sigma)) return 0.0;
  return telescopic_re(rho, eigh(rho.hermitian()), sigma, mu);
}

double symmetrized_tre(const DensityMatrix& rho, const DensityMatrix& sigma,
                       TelescopicParameter mu) {
  return 0.5 * (telescopic_re(rho, sigma, mu) + telescopic_re(sigma, rho, mu));
}

double qjsd(const DensityMatrix& rho, const SpectralDecomposition& rho_spectrum,
            const DensityMatrix& sigma, const SpectralDecomposition& sigma_spectrum) {
  require_same_dim(rho, sigma, "qjsd");
  if (coincide(rho, sigma)) return 0.0;
  const SpectralDecomposition midpoint = eigh(mixture(rho, sigma, 0.5).hermitian());
  const double s_rho = relative_entropy(rho_spectrum, midpoint);
  const double s_sigma = relative_entropy(sigma_spectrum, midpoint);
  return 0.5 * (s_rho + s_sigma) / std::numbers::ln2;
}

double qjsd(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "qjsd");
  if (coincide(rho, sigma)) return 0.0;
  return qjsd(rho, eigh(rho.hermitian()), sigma, eigh(sigma.hermitian()));
}

double sqrt_qjsd(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return std::sqrt(std::max(0.0, qjsd(rho, sigma)));
}

double scalar_tre(double a, double b, TelescopicParameter mu) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("scalar_tre: arguments must be non-negative");
  if (a == 0.0) return 0.0;
  const double m = mu.value();
  return a * std::log(a / (m * a + (1.0 - m) * b)) / mu.log_inverse();
}

double pinsker_coefficient(TelescopicParameter mu) {
  const double one_minus = 1.0 - mu.value();
  return 2.0 * one_minus * one_minus / mu.log_inverse();
}

double kappa(TelescopicParameter mu) {
  const double l = mu.log_inverse();
  return 1.0 / std::pow(2.0 * mu.value() * mu.value() * l * l * l, 0.25);
}

double kappa_alt(TelescopicParameter mu) {
  return 1.0 / std::sqrt(2.0 * mu.value() * mu.value() * mu.log_inverse());
}

}  // namespace backflow
