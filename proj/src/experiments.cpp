#include "backflow/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "backflow/error.hpp"

namespace backflow {
namespace {

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out << ',';
    out << names[i];
  }
  out << '\n';
}

const char* const kTrajectoryPrefixes[] = {"td", "tre", "sqrt_qjsd"};

}  // namespace

std::vector<std::string> trajectory_header() {
  std::vector<std::string> header{"time"};
  for (const char* q : kTrajectoryPrefixes) {
    for (const char* part : {"_system", "_env", "_corr_rho", "_corr_sigma"}) {
      header.push_back(std::string(q) + part);
    }
  }
  return header;
}

void run_trajectory(const ExperimentConfig& cfg, std::ostream& out) {
  const Trajectory trajectory = evolve_pair(cfg.scenario());
  const std::vector<Quantifier> quantifiers{Quantifier::trace_distance(),
                                            Quantifier::telescopic(TelescopicParameter::optimal()),
                                            Quantifier::sqrt_qjsd()};
  const auto series = evaluate_series(trajectory, quantifiers, EnvironmentOrder::RhoFirst);

  write_header(out, trajectory_header());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    std::vector<double> row{trajectory.time(k)};
    for (const QuantifierSeries& entry : series) {
      row.insert(row.end(), {entry.system[k], entry.rhs[k].env, entry.rhs[k].corr_rho,
                             entry.rhs[k].corr_sigma});
    }
    write_row(out, row);
  }
}

std::vector<Quantifier> configured_quantifiers(const ExperimentConfig& cfg) {
  std::vector<Quantifier> qs{Quantifier::trace_distance()};
  for (double mu : cfg.mu_list) qs.push_back(Quantifier::telescopic(TelescopicParameter(mu)));
  for (double mu : cfg.mu_list) qs.push_back(Quantifier::telescopic_alt(TelescopicParameter(mu)));
  qs.push_back(Quantifier::sqrt_qjsd());
  return qs;
}

std::size_t reference_index(const ExperimentConfig& cfg, const Trajectory& trajectory) {
  const std::size_t last = trajectory.size() - 1;
  if (!cfg.t_ref) return last;
  const double horizon = trajectory.time(last);
  const double t = *cfg.t_ref;
  const double slop = 1e-12 * horizon;
  if (t < -slop || t > horizon + slop) {
    throw ConfigError("t_ref = " + format_number(t) + " lies outside [0, " + format_number(horizon) +
                      "]");
  }
  const double position = std::clamp(t / horizon, 0.0, 1.0) * static_cast<double>(last);
  return static_cast<std::size_t>(std::llround(position));
}

void run_bound_slice(const ExperimentConfig& cfg, std::ostream& out) {
  const auto quantifiers = configured_quantifiers(cfg);
  const Trajectory trajectory = evolve_pair(cfg.scenario());
  const std::size_t t = reference_index(cfg, trajectory);
  const auto series = evaluate_series(trajectory, quantifiers, EnvironmentOrder::AsPrinted);

  std::vector<std::string> header{"s"};
  for (const Quantifier& q : quantifiers) {
    for (const char* part :
         {"_lhs", "_rhs_total", "_slack", "_rhs_env", "_rhs_corr_rho", "_rhs_corr_sigma"}) {
      header.push_back(q.label() + part);
    }
  }
  write_header(out, header);
  for (std::size_t s = 0; s <= t; ++s) {
    std::vector<double> row{trajectory.time(s)};
    for (const QuantifierSeries& entry : series) {
      const RhsTerms& rhs = entry.rhs[s];
      const double lhs = entry.system[t] - entry.system[s];
      row.insert(row.end(), {lhs, rhs.total, rhs.total - lhs, rhs.env, rhs.corr_rho, rhs.corr_sigma});
    }
    write_row(out, row);
  }
}

void run_bound_surface(const ExperimentConfig& cfg, std::ostream& out) {
  const auto quantifiers = configured_quantifiers(cfg);
  const Trajectory trajectory = evolve_pair(cfg.scenario());
  const auto series = evaluate_series(trajectory, quantifiers, EnvironmentOrder::AsPrinted);
  const auto records = bound_records(series);

  out << "s,t,quantifier,lhs,rhs_total,slack\n";
  for (const BoundRecord& r : records) {
    out << format_number(trajectory.time(r.s_index)) << ',' << format_number(trajectory.time(r.t_index))
        << ',' << r.quantifier.label() << ',' << format_number(r.lhs) << ','
        << format_number(r.rhs_total) << ',' << format_number(r.slack) << '\n';
  }
}

}  // namespace backflow
