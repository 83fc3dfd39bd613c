#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circal/dataset.hpp"
#include "circal/rng.hpp"

namespace circal {

// Deterministic transforms behind the samplers, exposed for testing.
// Beta(2,1) inverse CDF: F(x) = x^2 on [0,1].
double beta21_from_uniform(double u);
// Wrapped Cauchy draw from one uniform: wrap mu + (-ln rho) tan(pi(u - 1/2));
// rho = 1 collapses to mu, rho = 0 gives the uniform angle 2*pi*u.
Angle wrapped_cauchy_from_uniform(double u, double mu, double rho);

double sample_beta21(Rng& rng);
Angle sample_wrapped_cauchy(Rng& rng, double mu, double rho);

struct ScenarioSpec {
    int id = 1;       // scenario 1, 2, or 3
    int n = 1000;     // units per replication
    int replications = 1;
    std::uint64_t seed = 0;
    double true_tau = 1.0;       // nominal truth; override for derived values
    double true_xi = 1.0 / 6.0;
    double level = 0.95;         // coverage level
    int threads = 1;             // replication workers
};

void validate_spec(const ScenarioSpec& spec);

// One simulated sample plus the potential outcomes behind it.
struct GeneratedData {
    CausalDataset data;
    std::vector<Angle> outcome1; // Theta(1) for every unit
    std::vector<Angle> outcome0; // Theta(0) for every unit
};

// Covariates (1, X1, X2, X3) with Beta(2,1) marginals, treatment from
// logit P(A=1|X) = 1 + X1 + X2 + X3, wrapped Cauchy potential outcomes per
// scenario, observed outcome by consistency. Deterministic in
// (spec.seed, rep_index).
GeneratedData generate_dataset(const ScenarioSpec& spec, std::uint64_t rep_index);

// Wrapped Cauchy parameters (mu, rho) per arm for covariate sum s.
struct ScenarioArms {
    double mu1, rho1, mu0, rho0;
};
ScenarioArms scenario_arms(int id, double s);

// Per-cell summary: one estimand under one scheme.
struct SimCell {
    double bias = 0.0; // mean(estimate - truth), tau via wrapped differences
    double mse = 0.0;  // mean squared (wrapped) error
    std::optional<double> se;       // SD of estimates, (R-1) denominator; absent at R=1
    std::optional<double> coverage; // fraction of Wald intervals covering truth
    std::optional<double> mean_se;  // mean sandwich SE across replications
};

struct SimSummary {
    ScenarioSpec spec;
    int replications_used = 0; // replications that produced point estimates
    int n_failed = 0;          // replications with any error (point or sandwich)
    bool failure_flag = false; // set when more than 1% of replications failed
    SimCell tau_ht, tau_hajek, xi_ht, xi_hajek;
};

// Replicated estimation: per replication fit the propensity, compute both
// schemes' effects and sandwich SEs, record coverage against
// (true_tau, true_xi); aggregate BIAS/SE/MSE/CR in replication-index order
// (bit-reproducible for any thread count). A replication whose point
// estimation fails (separation, undefined direction, ...) is dropped
// entirely; one whose sandwich fails keeps its point estimates in
// BIAS/SE/MSE but is excluded from that scheme's CR and mean SE. Either
// way it counts toward n_failed; > 1% sets failure_flag.
SimSummary run_study(const ScenarioSpec& spec);

// CSV table with columns scenario,n,estimand,scheme,BIAS,SE,MSE,CR,n_failed
// (one row per estimand x scheme; SE/CR empty when absent).
std::string summary_csv(const SimSummary& summary);

struct TrueEffects {
    double tau = 0.0;
    double xi = 0.0;
};

// Monte Carlo oracle for the marginal true effects implied by a scenario's
// generator: draws potential outcomes directly and compares the two arms'
// first trigonometric moments. Independent of the estimation path.
TrueEffects derive_true_effects(int scenario, std::uint64_t draws, std::uint64_t seed);

} // namespace circal
