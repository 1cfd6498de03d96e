#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "backflow/states.hpp"

namespace backflow {

// Outcome of one property over a batch of cases. slack is rhs - lhs of the
// inequality (or -|difference| for an identity); the property passes when
// every case has slack >= -tolerance.
struct PropertyResult {
  std::string name;
  bool passed = false;
  std::size_t count = 0;
  double worst_slack = 0.0;
  double tolerance = 0.0;
  std::string error;  // set when a case threw
};

struct VerifyOptions {
  RngSeed seed{1};
  std::size_t draws = 500;
  std::size_t grid = 200;
  // Negative control: scale every random Kraus operator by 1.1, breaking
  // trace preservation, so the contractivity properties must fail.
  bool corrupt_channels = false;
};

// Random-ensemble properties of the divergences (dims 2 to 4).
std::vector<PropertyResult> divergence_properties(const VerifyOptions& options);

// Constructors and random channels.
std::vector<PropertyResult> state_channel_properties(const VerifyOptions& options);

// Theorem sweeps, derivation chain and trajectory invariants on both default
// scenarios. Adds reported-only figures to `statistics`.
std::vector<PropertyResult> backflow_properties(
    const VerifyOptions& options, std::vector<std::pair<std::string, double>>& statistics);

struct VerifyReport {
  VerifyOptions options;
  std::vector<PropertyResult> properties;
  std::vector<std::pair<std::string, double>> statistics;

  bool all_passed() const;
  std::string to_json() const;
};

VerifyReport run_verify_suites(const VerifyOptions& options);

// Seed of a named property, so each property draws its own stream whatever
// runs before it.
RngSeed derive_seed(RngSeed base, std::string_view name);

}  // namespace backflow
