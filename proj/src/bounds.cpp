#include "backflow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numbers>
#include <optional>

#include "backflow/error.hpp"
#include "backflow/parallel.hpp"

namespace backflow {
namespace {

double fourth_root(double x) { return std::pow(std::max(x, 0.0), 0.25); }
double safe_sqrt(double x) { return std::sqrt(std::max(x, 0.0)); }

// Spectra of the states of one time slice, computed on first use.
class SliceSpectra {
 public:
  explicit SliceSpectra(const TimeSlice& slice)
      : slice_(slice), rho_product_(slice.rho_product()), sigma_product_(slice.sigma_product()) {}

  const TimeSlice& slice() const { return slice_; }
  const DensityMatrix& rho_product() const { return rho_product_; }
  const DensityMatrix& sigma_product() const { return sigma_product_; }

  const SpectralDecomposition& of(const DensityMatrix& state) {
    for (auto& [ptr, spectrum] : cache_) {
      if (ptr == &state) return spectrum;
    }
    cache_.emplace_back(&state, eigh(state.hermitian()));
    return cache_.back().second;
  }

 private:
  const TimeSlice& slice_;
  DensityMatrix rho_product_;
  DensityMatrix sigma_product_;
  // deque: references handed out stay valid as entries are added
  std::deque<std::pair<const DensityMatrix*, SpectralDecomposition>> cache_;
};

double cached_divergence(SliceSpectra& spectra, const Quantifier& q, const DensityMatrix& a,
                         const DensityMatrix& b) {
  switch (q.kind) {
    case Quantifier::Kind::TraceDistance:
      return trace_distance(a, b);
    case Quantifier::Kind::Telescopic:
    case Quantifier::Kind::TelescopicAlt:
      return telescopic_re(a, spectra.of(a), b, q.parameter());
    case Quantifier::Kind::SqrtQjsd:
      if (states_coincide(a, b)) return 0.0;
      return safe_sqrt(qjsd(a, spectra.of(a), b, spectra.of(b)));
  }
  return 0.0;
}

bool env_sigma_first(const Quantifier& q, EnvironmentOrder order) {
  if (order == EnvironmentOrder::AsPrinted) return q.kind == Quantifier::Kind::TelescopicAlt;
  return order == EnvironmentOrder::SigmaFirst;
}

RhsTerms rhs_from(SliceSpectra& spectra, const Quantifier& q, EnvironmentOrder order) {
  const TimeSlice& slice = spectra.slice();
  RhsTerms terms;
  terms.env = env_sigma_first(q, order)
                  ? cached_divergence(spectra, q, slice.sigma_e, slice.rho_e)
                  : cached_divergence(spectra, q, slice.rho_e, slice.sigma_e);
  terms.corr_rho = cached_divergence(spectra, q, slice.rho.state(), spectra.rho_product());
  terms.corr_sigma = cached_divergence(spectra, q, slice.sigma.state(), spectra.sigma_product());
  terms.total = combine_rhs(q, terms.env, terms.corr_rho, terms.corr_sigma);
  return terms;
}

void require_index(const Trajectory& trajectory, std::size_t index, const char* what) {
  if (index >= trajectory.size()) {
    throw DomainError(std::string(what) + ": time index " + std::to_string(index) +
                      " outside trajectory of " + std::to_string(trajectory.size()) + " points");
  }
}

}  // namespace

std::string Quantifier::label() const {
  char buffer[64];
  switch (kind) {
    case Kind::TraceDistance:
      return "td";
    case Kind::Telescopic:
      std::snprintf(buffer, sizeof buffer, "tre(%.6g)", mu);
      return buffer;
    case Kind::TelescopicAlt:
      std::snprintf(buffer, sizeof buffer, "tre_alt(%.6g)", mu);
      return buffer;
    case Kind::SqrtQjsd:
      return "sqrt_qjsd";
  }
  return "unknown";
}

double Quantifier::divergence(const DensityMatrix& a, const DensityMatrix& b) const {
  switch (kind) {
    case Kind::TraceDistance:
      return backflow::trace_distance(a, b);
    case Kind::Telescopic:
    case Kind::TelescopicAlt:
      return telescopic_re(a, b, parameter());
    case Kind::SqrtQjsd:
      return backflow::sqrt_qjsd(a, b);
  }
  return 0.0;
}

Trajectory evolve_pair(const ScenarioSpec& scenario) {
  scenario.validate();
  const Propagator propagator(build_hamiltonian(scenario.model));
  const std::size_t d_s = scenario.model.system_dim();
  const std::size_t d_e = scenario.model.environment_dim();
  const ComplexMatrix rho0 = kron(scenario.rho_s0.matrix(), scenario.env0.matrix());
  const ComplexMatrix sigma0 = kron(scenario.sigma_s0.matrix(), scenario.env0.matrix());
  const std::size_t n = scenario.grid_points;

  std::vector<std::optional<TimeSlice>> slices(n);
  parallel_for(n, [&](std::size_t k) {
    const double t = scenario.horizon * static_cast<double>(k) / static_cast<double>(n - 1);
    const ComplexMatrix u = propagator.unitary(t);
    auto evolve = [&](const ComplexMatrix& state) {
      return BipartiteState(d_s, d_e,
                            DensityMatrix::trusted(matmul_adjoint_right(matmul(u, state), u)));
    };
    BipartiteState rho = evolve(rho0);
    BipartiteState sigma = evolve(sigma0);
    DensityMatrix rho_s = rho.marginal(Subsystem::System);
    DensityMatrix sigma_s = sigma.marginal(Subsystem::System);
    DensityMatrix rho_e = rho.marginal(Subsystem::Environment);
    DensityMatrix sigma_e = sigma.marginal(Subsystem::Environment);
    slices[k].emplace(TimeSlice{t, std::move(rho), std::move(sigma), std::move(rho_s),
                                std::move(sigma_s), std::move(rho_e), std::move(sigma_e)});
  });

  Trajectory trajectory;
  trajectory.slices.reserve(n);
  for (auto& slice : slices) trajectory.slices.push_back(std::move(*slice));
  return trajectory;
}

TrajectoryDiagnostics diagnose(const Trajectory& trajectory) {
  TrajectoryDiagnostics diag;
  if (trajectory.size() == 0) return diag;
  const TimeSlice& first = trajectory[0];
  const double purity_rho0 = first.rho.state().purity();
  const double purity_sigma0 = first.sigma.state().purity();
  for (const TimeSlice& slice : trajectory.slices) {
    const std::size_t d_s = slice.rho.d_s();
    const std::size_t d_e = slice.rho.d_e();
    auto check = [&](const BipartiteState& global, const DensityMatrix& s, const DensityMatrix& e) {
      const auto ps = partial_trace(global.state().matrix(), d_s, d_e, Subsystem::System);
      const auto pe = partial_trace(global.state().matrix(), d_s, d_e, Subsystem::Environment);
      diag.marginal_mismatch = std::max(
          {diag.marginal_mismatch, max_abs_diff(ps, s.matrix()), max_abs_diff(pe, e.matrix())});
    };
    check(slice.rho, slice.rho_s, slice.rho_e);
    check(slice.sigma, slice.sigma_s, slice.sigma_e);
    diag.purity_drift = std::max({diag.purity_drift,
                                  std::abs(slice.rho.state().purity() - purity_rho0),
                                  std::abs(slice.sigma.state().purity() - purity_sigma0)});
  }
  diag.initial_env_mismatch = max_abs_diff(first.rho_e.matrix(), first.sigma_e.matrix());
  diag.initial_product_error =
      std::max(max_abs_diff(first.rho.state().matrix(), first.rho_product().matrix()),
               max_abs_diff(first.sigma.state().matrix(), first.sigma_product().matrix()));
  return diag;
}

double max_truncation_leakage(const Trajectory& trajectory, std::size_t levels) {
  double worst = 0.0;
  for (const TimeSlice& slice : trajectory.slices) {
    for (const DensityMatrix* env : {&slice.rho_e, &slice.sigma_e}) {
      const std::size_t d = env->dim();
      double top = 0.0;
      for (std::size_t n = d - std::min(levels, d); n < d; ++n) top += (*env)(n, n).real();
      worst = std::max(worst, top);
    }
  }
  return worst;
}

double lhs_revival(const Trajectory& trajectory, const Quantifier& quantifier, std::size_t s,
                   std::size_t t) {
  require_index(trajectory, t, "lhs_revival");
  if (s > t) throw DomainError("lhs_revival: requires s <= t");
  const auto value = [&](std::size_t k) {
    return quantifier.divergence(trajectory[k].rho_s, trajectory[k].sigma_s);
  };
  return value(t) - value(s);
}

double combine_rhs(const Quantifier& quantifier, double env, double corr_rho, double corr_sigma) {
  switch (quantifier.kind) {
    case Quantifier::Kind::TraceDistance:
    case Quantifier::Kind::SqrtQjsd:
      return env + corr_rho + corr_sigma;
    case Quantifier::Kind::Telescopic:
      return kappa(quantifier.parameter()) *
             (fourth_root(env) + fourth_root(corr_rho) + fourth_root(corr_sigma));
    case Quantifier::Kind::TelescopicAlt:
      return kappa_alt(quantifier.parameter()) *
             (fourth_root(corr_rho) + fourth_root(corr_sigma) + safe_sqrt(env));
  }
  return 0.0;
}

RhsTerms rhs_bound(const Trajectory& trajectory, const Quantifier& quantifier, std::size_t s,
                   EnvironmentOrder order) {
  require_index(trajectory, s, "rhs_bound");
  SliceSpectra spectra(trajectory[s]);
  return rhs_from(spectra, quantifier, order);
}

std::vector<QuantifierSeries> evaluate_series(const Trajectory& trajectory,
                                              std::span<const Quantifier> quantifiers,
                                              EnvironmentOrder order) {
  const std::size_t n = trajectory.size();
  std::vector<QuantifierSeries> series;
  for (const Quantifier& q : quantifiers) {
    series.push_back({q, std::vector<double>(n), std::vector<RhsTerms>(n)});
  }
  parallel_for(n, [&](std::size_t k) {
    SliceSpectra spectra(trajectory[k]);
    for (QuantifierSeries& entry : series) {
      entry.system[k] = cached_divergence(spectra, entry.quantifier, trajectory[k].rho_s,
                                          trajectory[k].sigma_s);
      entry.rhs[k] = rhs_from(spectra, entry.quantifier, order);
    }
  });
  return series;
}

std::vector<BoundRecord> bound_records(std::span<const QuantifierSeries> series) {
  std::vector<BoundRecord> records;
  if (series.empty()) return records;
  const std::size_t n = series.front().system.size();
  records.reserve(n * (n + 1) / 2 * series.size());
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s; t < n; ++t) {
      for (const QuantifierSeries& entry : series) {
        BoundRecord r;
        r.s_index = s;
        r.t_index = t;
        r.quantifier = entry.quantifier;
        r.lhs = entry.system[t] - entry.system[s];
        r.rhs_env = entry.rhs[s].env;
        r.rhs_corr_rho = entry.rhs[s].corr_rho;
        r.rhs_corr_sigma = entry.rhs[s].corr_sigma;
        r.rhs_total = entry.rhs[s].total;
        r.slack = r.rhs_total - r.lhs;
        records.push_back(r);
      }
    }
  }
  return records;
}

std::vector<BoundRecord> check_bounds(const Trajectory& trajectory,
                                      std::span<const Quantifier> quantifiers,
                                      EnvironmentOrder order) {
  const auto series = evaluate_series(trajectory, quantifiers, order);
  return bound_records(series);
}

std::vector<BoundSummary> summarize(std::span<const BoundRecord> records) {
  std::vector<BoundSummary> out;
  for (const BoundRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const BoundSummary& s) { return s.quantifier == r.quantifier; });
    if (it == out.end()) {
      out.push_back({r.quantifier, 0, 0, r.slack, r.lhs});
      it = out.end() - 1;
    }
    ++it->records;
    if (r.slack < -kSlackTolerance) ++it->violations;
    it->worst_slack = std::min(it->worst_slack, r.slack);
    it->max_lhs = std::max(it->max_lhs, r.lhs);
  }
  return out;
}

std::vector<Quantifier> theorem_quantifiers() {
  std::vector<Quantifier> qs{Quantifier::trace_distance(),
                             Quantifier::telescopic(TelescopicParameter::optimal())};
  for (double mu : {0.1, 0.5, std::exp(-0.5), 0.9}) {
    qs.push_back(Quantifier::telescopic(TelescopicParameter(mu)));
  }
  qs.push_back(Quantifier::telescopic_alt(TelescopicParameter::optimal_alt()));
  qs.push_back(Quantifier::sqrt_qjsd());
  return qs;
}

double ChainCheck::worst_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    worst = std::min(worst, chain[k + 1].value - chain[k].value);
  }
  for (const SideCheck& c : side_checks) worst = std::min(worst, c.rhs - c.lhs);
  return worst;
}

ChainCheck intermediate_chain_check(const Trajectory& trajectory, std::size_t s, std::size_t t,
                                    TelescopicParameter mu) {
  require_index(trajectory, t, "intermediate_chain_check");
  if (s > t) throw DomainError("intermediate_chain_check: requires s <= t");
  const TimeSlice& at_s = trajectory[s];
  const TimeSlice& at_t = trajectory[t];
  const double log_inv = mu.log_inverse();
  const double c = (1.0 - mu.value()) / mu.value();
  const auto tre = [&](const DensityMatrix& a, const DensityMatrix& b) {
    return telescopic_re(a, b, mu);
  };

  const DensityMatrix& rho = at_s.rho.state();
  const DensityMatrix& sigma = at_s.sigma.state();
  const DensityMatrix rho_product = at_s.rho_product();      // rho_S (x) rho_E
  const DensityMatrix sigma_product = at_s.sigma_product();  // sigma_S (x) sigma_E
  const DensityMatrix sigma_s_rho_e = tensor(at_s.sigma_s, at_s.rho_e);

  const double system_s = tre(at_s.rho_s, at_s.sigma_s);
  const double global_s = tre(rho, sigma);
  const double mixed_first = tre(rho_product, sigma);
  const double mixed_second = tre(rho_product, sigma_s_rho_e);

  const double d_rho_corr = trace_distance(rho, rho_product);
  const double d_sigma_mixed = trace_distance(sigma, sigma_s_rho_e);
  const double d_sigma_corr = trace_distance(sigma, sigma_product);
  const double d_env = trace_distance(at_s.sigma_e, at_s.rho_e);

  const double s_rho_corr = tre(rho, rho_product);
  const double s_sigma_corr = tre(sigma, sigma_product);
  const double s_env = tre(at_s.sigma_e, at_s.rho_e);

  // D log(1 + c/D) -> 0 as D -> 0
  const double first_log_term =
      d_rho_corr > 0.0 ? d_rho_corr * std::log1p(c / d_rho_corr) / log_inv : 0.0;
  const double second_log_term = std::log1p(c * d_sigma_mixed) / log_inv;
  const double root_scale = std::sqrt(c) / log_inv;

  ChainCheck check;
  check.chain = {
      {"revival", tre(at_t.rho_s, at_t.sigma_s) - system_s},
      {"global_at_t", tre(at_t.rho.state(), at_t.sigma.state()) - system_s},
      {"global_at_s", global_s - system_s},
      {"split_abs", std::abs(global_s - mixed_first) + std::abs(mixed_first - mixed_second)},
      {"log_bounds", first_log_term + second_log_term},
      {"sqrt_bounds", root_scale * (std::sqrt(d_rho_corr) + std::sqrt(d_sigma_mixed))},
      {"triangle_split",
       root_scale * (std::sqrt(d_rho_corr) + std::sqrt(d_sigma_corr) + std::sqrt(d_env))},
      {"pinsker", kappa(mu) * (fourth_root(s_rho_corr) + fourth_root(s_sigma_corr) +
                               fourth_root(s_env))},
  };

  // Building blocks of the individual steps.
  const double pinsker_scale = log_inv / (2.0 * (1.0 - mu.value()) * (1.0 - mu.value()));
  check.side_checks = {
      {"tensor_invariance_upper", mixed_second, system_s + 1e-12},
      {"tensor_invariance_lower", system_s, mixed_second + 1e-12},
      {"trace_distance_triangle", d_sigma_mixed, d_sigma_corr + d_env},
      {"sqrt_subadditive", std::sqrt(d_sigma_corr + d_env), std::sqrt(d_sigma_corr) + std::sqrt(d_env)},
      {"log_vs_sqrt", std::log1p(c * d_sigma_mixed), std::sqrt(c * d_sigma_mixed)},
      {"pinsker_rho_corr", std::sqrt(d_rho_corr), fourth_root(pinsker_scale * s_rho_corr)},
      {"pinsker_sigma_corr", std::sqrt(d_sigma_corr), fourth_root(pinsker_scale * s_sigma_corr)},
      {"pinsker_env", std::sqrt(d_env), fourth_root(pinsker_scale * s_env)},
  };
  if (d_rho_corr > 0.0) {
    const double x = c / d_rho_corr;
    check.side_checks.push_back({"topsoe", std::log1p(x), x / std::sqrt(1.0 + x)});
  }
  return check;
}

}  // namespace backflow
