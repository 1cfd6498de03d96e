#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "backflow/bounds.hpp"
#include "backflow/config.hpp"

namespace backflow {

// CSV writers. Every number goes through format_number; rows are written in
// grid order, so identical configurations give byte-identical files.

// time, then for td, tre (mu = e^{-3/2}) and sqrt_qjsd:
//   <q>_system, <q>_env, <q>_corr_rho, <q>_corr_sigma
// Raw divergences, environment term with rho_E first.
void run_trajectory(const ExperimentConfig& cfg, std::ostream& out);
std::vector<std::string> trajectory_header();

// Fixed t (t_ref snapped to the nearest grid point, default T), s from 0 to t:
//   s, then per quantifier label:
//   <label>_lhs, <label>_rhs_total, <label>_slack,
//   <label>_rhs_env, <label>_rhs_corr_rho, <label>_rhs_corr_sigma
void run_bound_slice(const ExperimentConfig& cfg, std::ostream& out);

// Every s <= t on the grid, one row per quantifier:
//   s,t,quantifier,lhs,rhs_total,slack
void run_bound_surface(const ExperimentConfig& cfg, std::ostream& out);

// td, tre(mu) and tre_alt(mu) for each mu in cfg.mu_list, sqrt_qjsd.
std::vector<Quantifier> configured_quantifiers(const ExperimentConfig& cfg);

// Grid index nearest to t_ref (default: last). ConfigError outside [0, T].
std::size_t reference_index(const ExperimentConfig& cfg, const Trajectory& trajectory);

}  // namespace backflow
