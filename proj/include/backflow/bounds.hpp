#pragma once

#include <span>
#include <string>
#include <vector>

#include "backflow/divergences.hpp"
#include "backflow/models.hpp"

namespace backflow {

// Slack below this counts as a violated bound.
inline constexpr double kSlackTolerance = 1e-9;

// One distinguishability quantifier together with the way its backflow
// bound combines the three right-hand-side contributions:
//   TraceDistance:  D_env + D_corr(rho) + D_corr(sigma)
//   Telescopic:     kappa(mu) * (S_env^1/4 + S_corr(rho)^1/4 + S_corr(sigma)^1/4)
//   TelescopicAlt:  kappa_alt(mu) * (S_corr(rho)^1/4 + S_corr(sigma)^1/4 + S_env^1/2)
//   SqrtQjsd:       sqrt(J)_env + sqrt(J)_corr(rho) + sqrt(J)_corr(sigma)
struct Quantifier {
  enum class Kind { TraceDistance, Telescopic, TelescopicAlt, SqrtQjsd };

  Kind kind = Kind::TraceDistance;
  double mu = 0.0;  // Telescopic kinds only

  static Quantifier trace_distance() { return {Kind::TraceDistance, 0.0}; }
  static Quantifier telescopic(TelescopicParameter mu) { return {Kind::Telescopic, mu.value()}; }
  static Quantifier telescopic_alt(TelescopicParameter mu) {
    return {Kind::TelescopicAlt, mu.value()};
  }
  static Quantifier sqrt_qjsd() { return {Kind::SqrtQjsd, 0.0}; }

  bool is_telescopic() const { return kind == Kind::Telescopic || kind == Kind::TelescopicAlt; }
  TelescopicParameter parameter() const { return TelescopicParameter(mu); }
  // "td", "tre(0.22313)", "tre_alt(0.606531)", "sqrt_qjsd"
  std::string label() const;

  // The divergence this quantifier measures between two states.
  double divergence(const DensityMatrix& a, const DensityMatrix& b) const;

  friend bool operator==(const Quantifier&, const Quantifier&) = default;
};

// Argument order of the environment contribution for the telescopic
// quantifiers: S(rho_E, sigma_E) as in the main-text bound, or
// S(sigma_E, rho_E) as produced by the step-by-step derivation.
enum class EnvironmentOrder { RhoFirst, SigmaFirst, AsPrinted };

struct TimeSlice {
  double time = 0.0;
  BipartiteState rho;
  BipartiteState sigma;
  DensityMatrix rho_s;
  DensityMatrix sigma_s;
  DensityMatrix rho_e;
  DensityMatrix sigma_e;

  DensityMatrix rho_product() const { return tensor(rho_s, rho_e); }
  DensityMatrix sigma_product() const { return tensor(sigma_s, sigma_e); }
};

// Both initial products rho_S(0) (x) E(0), sigma_S(0) (x) E(0) evolved under
// the same unitary on a uniform grid t_k = T k / (n - 1).
struct Trajectory {
  std::vector<TimeSlice> slices;

  std::size_t size() const { return slices.size(); }
  const TimeSlice& operator[](std::size_t k) const { return slices[k]; }
  double time(std::size_t k) const { return slices[k].time; }
};

Trajectory evolve_pair(const ScenarioSpec& scenario);

struct TrajectoryDiagnostics {
  double marginal_mismatch = 0.0;  // max |marginal - partial trace of global|
  double purity_drift = 0.0;       // max |Tr rho(t)^2 - Tr rho(0)^2| over both states
  double initial_env_mismatch = 0.0;
  double initial_product_error = 0.0;
};

TrajectoryDiagnostics diagnose(const Trajectory& trajectory);

// Largest total population of the top `levels` environment basis states
// (Fock truncation edge) seen in either environmental marginal.
double max_truncation_leakage(const Trajectory& trajectory, std::size_t levels = 2);

// quantifier(t) - quantifier(s) on the system marginals. Requires s <= t.
double lhs_revival(const Trajectory& trajectory, const Quantifier& quantifier, std::size_t s,
                   std::size_t t);

struct RhsTerms {
  double env = 0.0;         // quantifier divergence between environment marginals
  double corr_rho = 0.0;    // quantifier divergence rho(s) vs rho_S(s) (x) rho_E(s)
  double corr_sigma = 0.0;  // same for sigma
  double total = 0.0;       // combined with roots and prefactor
};

RhsTerms rhs_bound(const Trajectory& trajectory, const Quantifier& quantifier, std::size_t s,
                   EnvironmentOrder order = EnvironmentOrder::AsPrinted);

// Roots and prefactor applied to the three raw contributions.
double combine_rhs(const Quantifier& quantifier, double env, double corr_rho, double corr_sigma);

// Per-time system values and RHS terms of one quantifier along a trajectory.
struct QuantifierSeries {
  Quantifier quantifier;
  std::vector<double> system;
  std::vector<RhsTerms> rhs;
};

std::vector<QuantifierSeries> evaluate_series(const Trajectory& trajectory,
                                              std::span<const Quantifier> quantifiers,
                                              EnvironmentOrder order = EnvironmentOrder::AsPrinted);

struct BoundRecord {
  std::size_t s_index = 0;
  std::size_t t_index = 0;
  Quantifier quantifier;
  double lhs = 0.0;
  double rhs_env = 0.0;
  double rhs_corr_rho = 0.0;
  double rhs_corr_sigma = 0.0;
  double rhs_total = 0.0;
  double slack = 0.0;  // rhs_total - lhs
};

// Records for every s <= t on the grid and every quantifier, ordered by
// (s, t, quantifier). Violations are kept in the output.
std::vector<BoundRecord> check_bounds(const Trajectory& trajectory,
                                      std::span<const Quantifier> quantifiers,
                                      EnvironmentOrder order = EnvironmentOrder::AsPrinted);

// Same records from precomputed series.
std::vector<BoundRecord> bound_records(std::span<const QuantifierSeries> series);

struct BoundSummary {
  Quantifier quantifier;
  std::size_t records = 0;
  std::size_t violations = 0;  // slack < -kSlackTolerance
  double worst_slack = 0.0;
  double max_lhs = 0.0;
};

std::vector<BoundSummary> summarize(std::span<const BoundRecord> records);

// The quantifiers whose bounds are theorems: trace distance, TRE at
// e^{-3/2}, 0.1, 0.5, e^{-1/2}, 0.9, the alternate TRE bound at e^{-1/2},
// and the square-root QJSD.
std::vector<Quantifier> theorem_quantifiers();

// Every intermediate quantity of the step-by-step derivation of the
// fourth-root TRE bound at (s, t), in order. Each entry must not exceed
// the next one.
struct ChainLink {
  std::string name;
  double value = 0.0;
};

// A scalar inequality used inside one step: lhs <= rhs.
struct SideCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ChainCheck {
  std::vector<ChainLink> chain;
  std::vector<SideCheck> side_checks;

  // min over adjacent links (next - current) and side checks (rhs - lhs).
  double worst_slack() const;
};

ChainCheck intermediate_chain_check(const Trajectory& trajectory, std::size_t s, std::size_t t,
                                    TelescopicParameter mu);

}  // namespace backflow
