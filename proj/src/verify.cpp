#include "backflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "backflow/bounds.hpp"
#include "backflow/divergences.hpp"
#include "backflow/error.hpp"
#include "backflow/models.hpp"
#include "json.hpp"

namespace backflow {
namespace {

constexpr double kEnsembleTolerance = 1e-10;
constexpr double kTheoremTolerance = 1e-9;

// Collects slacks of one property. An exception in a case marks the
// property failed with the message kept.
class Property {
 public:
  Property(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
    result_.worst_slack = std::numeric_limits<double>::infinity();
  }

  void add(double slack) {
    ++result_.count;
    if (std::isnan(slack)) {
      nan_seen_ = true;
      return;
    }
    result_.worst_slack = std::min(result_.worst_slack, slack);
  }
  void add_equal(double a, double b) { add(-std::abs(a - b)); }

  template <class Body>
  PropertyResult run(Body&& body) {
    try {
      body(*this);
    } catch (const std::exception& e) {
      result_.error = e.what();
    }
    result_.passed = result_.error.empty() && !nan_seen_ && result_.count > 0 &&
                     result_.worst_slack >= -result_.tolerance;
    if (nan_seen_ && result_.error.empty()) result_.error = "NaN slack";
    return result_;
  }

 private:
  PropertyResult result_;
  bool nan_seen_ = false;
};

std::vector<TelescopicParameter> ensemble_mus() {
  return {TelescopicParameter(0.1), TelescopicParameter::optimal(), TelescopicParameter(0.5),
          TelescopicParameter::optimal_alt(), TelescopicParameter(0.9)};
}

std::size_t random_dim(CounterRng& rng) { return 2 + static_cast<std::size_t>(rng.next_u64() % 3); }

QuantumChannel draw_channel(std::size_t dim, CounterRng& rng, bool corrupt) {
  const std::size_t env_dim = 1 + static_cast<std::size_t>(rng.next_u64() % 3);
  QuantumChannel channel = random_cptp(dim, env_dim, rng);
  if (!corrupt) return channel;
  std::vector<ComplexMatrix> kraus = channel.kraus_operators();
  for (ComplexMatrix& k : kraus) k *= 1.1;
  return QuantumChannel::unchecked(std::move(kraus));
}

// Half the trace norm of the difference, without requiring valid states.
double raw_trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * trace_norm(HermitianMatrix::symmetrized(a - b));
}

}  // namespace

RngSeed derive_seed(RngSeed base, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  CounterRng mix(RngSeed{base.value ^ h});
  return RngSeed{mix.next_u64()};
}

std::vector<PropertyResult> divergence_properties(const VerifyOptions& options) {
  const std::size_t n = options.draws;
  const auto mus = ensemble_mus();
  std::vector<PropertyResult> out;
  auto property = [&](const std::string& name, double tolerance, auto&& body) {
    CounterRng rng(derive_seed(options.seed, name));
    out.push_back(Property(name, tolerance).run([&](Property& p) { body(p, rng); }));
  };

  property("data_processing_td", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      p.add(trace_distance(rho, sigma) -
            raw_trace_distance(phi.apply(rho.matrix()), phi.apply(sigma.matrix())));
    }
  });

  property("data_processing_tre", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      const DensityMatrix rho_out = apply_channel(phi, rho);
      const DensityMatrix sigma_out = apply_channel(phi, sigma);
      for (const auto& mu : mus) {
        p.add(telescopic_re(rho, sigma, mu) - telescopic_re(rho_out, sigma_out, mu));
      }
    }
  });

  property("data_processing_qjsd", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      p.add(qjsd(rho, sigma) - qjsd(apply_channel(phi, rho), apply_channel(phi, sigma)));
    }
  });

  property("pinsker_sandwich", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const double td = trace_distance(rho, sigma);
      for (const auto& mu : mus) {
        const double tre = telescopic_re(rho, sigma, mu);
        p.add(tre - pinsker_coefficient(mu) * td * td);
        p.add(td - tre);
      }
    }
  });

  // S(rho,sigma) - S(rho,tau) <= 1 - S(1, D(sigma,tau)) = log(1 + c D(sigma,tau)) / L
  property("triangle_like_second_argument", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const DensityMatrix tau = random_density(d, rng);
      const double td = trace_distance(sigma, tau);
      for (const auto& mu : mus) {
        const double lhs = telescopic_re(rho, sigma, mu) - telescopic_re(rho, tau, mu);
        const double c = (1.0 - mu.value()) / mu.value();
        p.add(1.0 - scalar_tre(1.0, td, mu) - lhs);
        p.add(std::log1p(c * td) / mu.log_inverse() - lhs);
      }
    }
  });

  // S(rho,sigma) - S(eta,sigma) <= D - S(D, 1) = D log(1 + c/D) / L, D = D(rho,eta)
  property("triangle_like_first_argument", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix eta = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const double td = trace_distance(rho, eta);
      for (const auto& mu : mus) {
        const double lhs = telescopic_re(rho, sigma, mu) - telescopic_re(eta, sigma, mu);
        const double c = (1.0 - mu.value()) / mu.value();
        p.add(td - scalar_tre(td, 1.0, mu) - lhs);
        p.add(td * std::log1p(c / td) / mu.log_inverse() - lhs);
      }
    }
  });

  property("sqrt_qjsd_triangle", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix a = random_density(d, rng);
      const DensityMatrix b = random_density(d, rng);
      const DensityMatrix c = random_density(d, rng);
      p.add(sqrt_qjsd(a, b) + sqrt_qjsd(b, c) - sqrt_qjsd(a, c));
    }
  });

  property("boundedness", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      // Half the draws use a pure sigma to reach the edge of the range.
      const DensityMatrix sigma = k % 2 == 0 ? random_density(d, rng) : [&] {
        std::vector<Complex> v(d);
        for (auto& z : v) z = rng.complex_normal();
        return pure_state(v);
      }();
      auto bounded = [&](double v) { p.add(std::min(v + 1e-12 - kEnsembleTolerance, 1.0 - v)); };
      bounded(trace_distance(rho, sigma));
      bounded(qjsd(rho, sigma));
      for (const auto& mu : mus) bounded(telescopic_re(rho, sigma, mu));
    }
  });

  property("tensor_invariance", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const DensityMatrix tau = random_density(2 + rng.next_u64() % 2, rng);
      const DensityMatrix rho_tau = tensor(rho, tau);
      const DensityMatrix sigma_tau = tensor(sigma, tau);
      p.add_equal(trace_distance(rho, sigma), trace_distance(rho_tau, sigma_tau));
      for (const auto& mu : mus) {
        p.add_equal(telescopic_re(rho, sigma, mu), telescopic_re(rho_tau, sigma_tau, mu));
      }
    }
  });

  property("unitary_invariance", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      const ComplexMatrix u = random_unitary(d, rng);
      auto rotate = [&](const DensityMatrix& x) {
        return DensityMatrix::trusted(matmul_adjoint_right(matmul(u, x.matrix()), u));
      };
      const DensityMatrix rho_u = rotate(rho);
      const DensityMatrix sigma_u = rotate(sigma);
      p.add_equal(trace_distance(rho, sigma), trace_distance(rho_u, sigma_u));
      p.add_equal(qjsd(rho, sigma), qjsd(rho_u, sigma_u));
      for (const auto& mu : mus) {
        p.add_equal(telescopic_re(rho, sigma, mu), telescopic_re(rho_u, sigma_u, mu));
      }
    }
  });

  property("joint_convexity", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho1 = random_density(d, rng);
      const DensityMatrix rho2 = random_density(d, rng);
      const DensityMatrix sigma1 = random_density(d, rng);
      const DensityMatrix sigma2 = random_density(d, rng);
      const double w = rng.uniform();
      const DensityMatrix rho = mixture(rho1, rho2, w);
      const DensityMatrix sigma = mixture(sigma1, sigma2, w);
      p.add(w * trace_distance(rho1, sigma1) + (1 - w) * trace_distance(rho2, sigma2) -
            trace_distance(rho, sigma));
      for (const auto& mu : mus) {
        p.add(w * telescopic_re(rho1, sigma1, mu) + (1 - w) * telescopic_re(rho2, sigma2, mu) -
              telescopic_re(rho, sigma, mu));
      }
    }
  });

  property("qjsd_equals_symmetrized_tre", 1e-12, [&](Property& p, CounterRng& rng) {
    const TelescopicParameter half(0.5);
    for (std::size_t k = 0; k < std::max<std::size_t>(n, 1000); ++k) {
      const std::size_t d = random_dim(rng);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      p.add_equal(qjsd(rho, sigma), symmetrized_tre(rho, sigma, half));
    }
  });

  property("topsoe_scalar", 0.0, [&](Property& p, CounterRng&) {
    for (int i = 0; i <= 10000; ++i) {
      const double x = 0.01 * i;
      p.add(x / std::sqrt(1.0 + x) - std::log1p(x));
    }
  });

  return out;
}

std::vector<PropertyResult> state_channel_properties(const VerifyOptions& options) {
  const std::size_t n = options.draws;
  std::vector<PropertyResult> out;
  auto property = [&](const std::string& name, double tolerance, auto&& body) {
    CounterRng rng(derive_seed(options.seed, name));
    out.push_back(Property(name, tolerance).run([&](Property& p) { body(p, rng); }));
  };

  property("channel_trace_preservation", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      p.add(-phi.trace_preservation_error());
      const DensityMatrix rho = random_density(d, rng);
      p.add(-std::abs(phi.apply(rho.matrix()).trace() - Complex(1.0)));
    }
  });

  // Channel outputs pass the full state check (trace and spectrum).
  property("channel_output_is_state", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      const DensityMatrix out_state(phi.apply(random_density(d, rng).matrix()));
      p.add(eigvalsh(out_state.hermitian()).front());
    }
  });

  property("trace_distance_contraction", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t d = random_dim(rng);
      const QuantumChannel phi = draw_channel(d, rng, options.corrupt_channels);
      const DensityMatrix rho = random_density(d, rng);
      const DensityMatrix sigma = random_density(d, rng);
      p.add(trace_distance(rho, sigma) -
            raw_trace_distance(phi.apply(rho.matrix()), phi.apply(sigma.matrix())));
    }
  });

  property("random_density_is_state", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
    for (std::size_t k = 0; k < n; ++k) {
      const DensityMatrix rho = random_density(1 + rng.next_u64() % 6, rng);
      p.add(-std::abs(rho.hermitian().trace() - 1.0));
      p.add(eigvalsh(rho.hermitian()).front());
    }
  });

  property("thermal_truncation_tail", kEnsembleTolerance, [&](Property& p, CounterRng&) {
    for (double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      for (std::size_t levels = 2; levels <= 40; levels += 2) {
        const double q = std::exp(-beta);
        double kept = 0.0;
        for (std::size_t m = 0; m < levels; ++m) kept += (1.0 - q) * std::pow(q, static_cast<double>(m));
        p.add(std::pow(q, static_cast<double>(levels)) / (1.0 - q) - (1.0 - kept));
        const DensityMatrix thermal = thermal_oscillator(beta, levels);
        const double norm = 1.0 - std::pow(q, static_cast<double>(levels));
        for (std::size_t m = 0; m < levels; ++m) {
          p.add_equal(thermal(m, m).real(), (1.0 - q) * std::pow(q, static_cast<double>(m)) / norm);
        }
      }
    }
  });

  return out;
}

std::vector<PropertyResult> backflow_properties(
    const VerifyOptions& options, std::vector<std::pair<std::string, double>>& statistics) {
  std::vector<PropertyResult> out;
  const auto quantifiers = theorem_quantifiers();

  for (ModelKind kind : {ModelKind::JaynesCummings, ModelKind::TwoQubitExchange}) {
    const std::string tag = kind == ModelKind::JaynesCummings ? "jc" : "two_qubit";
    auto property = [&](const std::string& name, double tolerance, auto&& body) {
      const std::string full = name + "_" + tag;
      CounterRng rng(derive_seed(options.seed, full));
      out.push_back(Property(full, tolerance).run([&](Property& p) { body(p, rng); }));
    };

    ScenarioOverrides overrides;
    overrides.grid_points = options.grid;
    const ScenarioSpec scenario = default_scenario(kind, overrides);
    const Trajectory trajectory = evolve_pair(scenario);
    const std::size_t n = trajectory.size();

    const TrajectoryDiagnostics diag = diagnose(trajectory);
    property("trajectory_marginals", 1e-12, [&](Property& p, CounterRng&) {
      p.add(-diag.marginal_mismatch);
      p.add(-diag.initial_env_mismatch);
      p.add(-diag.initial_product_error);
    });
    property("purity_conservation", 1e-9, [&](Property& p, CounterRng&) { p.add(-diag.purity_drift); });

    const auto series = evaluate_series(trajectory, quantifiers, EnvironmentOrder::AsPrinted);
    const auto records = bound_records(series);
    for (const BoundSummary& summary : summarize(records)) {
      property("theorem_" + summary.quantifier.label(), kTheoremTolerance,
               [&](Property& p, CounterRng&) {
                 for (const BoundRecord& r : records) {
                   if (r.quantifier == summary.quantifier) p.add(r.slack);
                 }
               });
      statistics.emplace_back("max_revival_" + summary.quantifier.label() + "_" + tag,
                              summary.max_lhs);
    }

    // The other argument order of the environment term.
    property("theorem_env_order_swapped", kTheoremTolerance, [&](Property& p, CounterRng&) {
      std::vector<Quantifier> rho_first;
      std::vector<Quantifier> sigma_first;
      for (const Quantifier& q : quantifiers) {
        if (q.kind == Quantifier::Kind::Telescopic) sigma_first.push_back(q);
        if (q.kind == Quantifier::Kind::TelescopicAlt) rho_first.push_back(q);
      }
      for (const auto& r : check_bounds(trajectory, sigma_first, EnvironmentOrder::SigmaFirst)) {
        p.add(r.slack);
      }
      for (const auto& r : check_bounds(trajectory, rho_first, EnvironmentOrder::RhoFirst)) {
        p.add(r.slack);
      }
    });

    property("initial_rhs_zero", 1e-12, [&](Property& p, CounterRng&) {
      for (const QuantifierSeries& entry : series) {
        p.add(-std::abs(entry.rhs[0].total));
        p.add(-std::abs(entry.rhs[0].env));
        p.add(-std::abs(entry.rhs[0].corr_rho));
        p.add(-std::abs(entry.rhs[0].corr_sigma));
      }
    });

    property("no_revival_from_initial_time", kEnsembleTolerance, [&](Property& p, CounterRng&) {
      for (const QuantifierSeries& entry : series) {
        for (std::size_t t = 0; t < n; ++t) p.add(entry.system[0] - entry.system[t]);
      }
    });

    property("derivation_chain", kTheoremTolerance, [&](Property& p, CounterRng& rng) {
      for (int k = 0; k < 100; ++k) {
        std::size_t s = rng.next_u64() % n;
        std::size_t t = rng.next_u64() % n;
        if (s > t) std::swap(s, t);
        p.add(intermediate_chain_check(trajectory, s, t, TelescopicParameter::optimal()).worst_slack());
      }
    });

    // Correlation terms do not change when both globals and their products
    // are extended by the same ancilla state.
    property("correlation_terms_tensor_invariant", kEnsembleTolerance, [&](Property& p, CounterRng& rng) {
      const Quantifier tre = Quantifier::telescopic(TelescopicParameter::optimal());
      for (int k = 0; k < 5; ++k) {
        const TimeSlice& slice = trajectory[1 + rng.next_u64() % (n - 1)];
        const DensityMatrix ancilla = random_density(2, rng);
        for (const auto& [global, product] :
             {std::pair{slice.rho.state(), slice.rho_product()},
              std::pair{slice.sigma.state(), slice.sigma_product()}}) {
          const DensityMatrix global_ext = tensor(global, ancilla);
          const DensityMatrix product_ext = tensor(product, ancilla);
          p.add_equal(trace_distance(global, product), trace_distance(global_ext, product_ext));
          p.add_equal(tre.divergence(global, product), tre.divergence(global_ext, product_ext));
        }
      }
    });

    if (kind == ModelKind::JaynesCummings) {
      property("excitation_conservation", 1e-12, [&](Property& p, CounterRng&) {
        const ModelSpec& model = scenario.model;
        const ComplexMatrix h = build_hamiltonian(model);
        const ComplexMatrix ex = excitation_operator(model);
        const ComplexMatrix commutator = matmul(h, ex) - matmul(ex, h);
        const std::size_t d_e = model.environment_dim();
        for (std::size_t i = 0; i < commutator.rows(); ++i) {
          for (std::size_t j = 0; j < commutator.cols(); ++j) {
            if (i % d_e == d_e - 1 || j % d_e == d_e - 1) continue;
            p.add(-std::abs(commutator(i, j)));
          }
        }
      });
      property("truncation_leakage", 1e-8, [&](Property& p, CounterRng&) {
        p.add(-max_truncation_leakage(trajectory));
      });
    } else {
      // Equal local frequencies commute with the exchange term, so every
      // curve is unchanged.
      property("resonance_invariance", kEnsembleTolerance, [&](Property& p, CounterRng&) {
        ScenarioOverrides shifted = overrides;
        ModelSpec model = scenario.model;
        model.omega_s = model.omega_e = 0.7;
        shifted.model = model;
        const Trajectory other = evolve_pair(default_scenario(kind, shifted));
        const std::vector<Quantifier> curves{Quantifier::trace_distance(),
                                             Quantifier::telescopic(TelescopicParameter::optimal()),
                                             Quantifier::sqrt_qjsd()};
        const auto a = evaluate_series(trajectory, curves, EnvironmentOrder::RhoFirst);
        const auto b = evaluate_series(other, curves, EnvironmentOrder::RhoFirst);
        for (std::size_t q = 0; q < a.size(); ++q) {
          for (std::size_t k = 0; k < n; ++k) {
            p.add_equal(a[q].system[k], b[q].system[k]);
            p.add_equal(a[q].rhs[k].env, b[q].rhs[k].env);
            p.add_equal(a[q].rhs[k].corr_rho, b[q].rhs[k].corr_rho);
            p.add_equal(a[q].rhs[k].corr_sigma, b[q].rhs[k].corr_sigma);
          }
        }
      });
    }

    // Reported only: where the fourth-root bound is the tighter one.
    const auto find = [&](const Quantifier& q) -> const QuantifierSeries& {
      return *std::find_if(series.begin(), series.end(),
                           [&](const QuantifierSeries& s) { return s.quantifier == q; });
    };
    const auto& main = find(Quantifier::telescopic(TelescopicParameter::optimal()));
    const auto& alt = find(Quantifier::telescopic_alt(TelescopicParameter::optimal_alt()));
    std::size_t tighter = 0;
    for (std::size_t s = 0; s < n; ++s) tighter += main.rhs[s].total <= alt.rhs[s].total;
    statistics.emplace_back("fraction_fourth_root_bound_tighter_" + tag,
                            static_cast<double>(tighter) / static_cast<double>(n));
  }
  return out;
}

bool VerifyReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

std::string VerifyReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["seed"] = options.seed.value;
  doc["draws"] = options.draws;
  doc["grid"] = options.grid;
  doc["self_test"] = options.corrupt_channels;
  doc["passed"] = all_passed();
  auto& list = doc["properties"] = nlohmann::ordered_json::array();
  for (const PropertyResult& p : properties) {
    nlohmann::ordered_json entry;
    entry["name"] = p.name;
    entry["passed"] = p.passed;
    entry["count"] = p.count;
    entry["worst_slack"] = std::isfinite(p.worst_slack) ? nlohmann::ordered_json(p.worst_slack)
                                                        : nlohmann::ordered_json(nullptr);
    entry["tolerance"] = p.tolerance;
    if (!p.error.empty()) entry["error"] = p.error;
    list.push_back(std::move(entry));
  }
  auto& stats = doc["statistics"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : statistics) stats[name] = value;
  return doc.dump(2) + "\n";
}

VerifyReport run_verify_suites(const VerifyOptions& options) {
  VerifyReport report;
  report.options = options;
  auto append = [&](std::vector<PropertyResult> more) {
    for (auto& p : more) report.properties.push_back(std::move(p));
  };
  append(state_channel_properties(options));
  append(divergence_properties(options));
  append(backflow_properties(options, report.statistics));
  return report;
}

}  // namespace backflow
