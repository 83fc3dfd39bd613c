#include "circal/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <utility>

#include "circal/errors.hpp"
#include "circal/estimators.hpp"
#include "circal/format.hpp"
#include "circal/propensity.hpp"
#include "circal/variance.hpp"

namespace circal {

double beta21_from_uniform(double u) {
    if (!(u >= 0.0) || !(u <= 1.0)) {
        throw DomainError("beta21_from_uniform: u must lie in [0,1], got " +
                          std::to_string(u));
    }
    return std::sqrt(u);
}

Angle wrapped_cauchy_from_uniform(double u, double mu, double rho) {
    if (!std::isfinite(mu)) {
        throw DomainError("wrapped_cauchy: mu must be finite");
    }
    if (!(rho >= 0.0) || !(rho <= 1.0)) {
        throw DomainError("wrapped_cauchy: rho must lie in [0,1], got " +
                          std::to_string(rho));
    }
    if (!(u >= 0.0) || !(u < 1.0)) {
        throw DomainError("wrapped_cauchy: u must lie in [0,1), got " + std::to_string(u));
    }
    if (rho >= 1.0) return canonical_angle(mu); // point mass
    if (rho <= 0.0) return canonical_angle(two_pi * u); // uniform limit
    const double gamma = -std::log(rho);
    return canonical_angle(mu + gamma * std::tan(pi * (u - 0.5)));
}

double sample_beta21(Rng& rng) {
    return beta21_from_uniform(rng.uniform());
}

Angle sample_wrapped_cauchy(Rng& rng, double mu, double rho) {
    return wrapped_cauchy_from_uniform(rng.uniform(), mu, rho);
}

void validate_spec(const ScenarioSpec& spec) {
    if (spec.id < 1 || spec.id > 3) {
        throw DomainError("scenario id must be 1, 2, or 3, got " + std::to_string(spec.id));
    }
    if (spec.n < 50) {
        throw DomainError("scenario n must be at least 50, got " + std::to_string(spec.n));
    }
    if (spec.replications < 1) {
        throw DomainError("replications must be at least 1, got " +
                          std::to_string(spec.replications));
    }
    if (!(spec.level > 0.0) || !(spec.level < 1.0)) {
        throw DomainError("coverage level must be inside (0,1)");
    }
    if (spec.threads < 1) {
        throw DomainError("threads must be at least 1");
    }
    if (!std::isfinite(spec.true_tau) || !std::isfinite(spec.true_xi)) {
        throw DomainError("true effects must be finite");
    }
}

ScenarioArms scenario_arms(int id, double s) {
    switch (id) {
    case 1:
        return {s, 5.0 / 6.0, s / 2.0, 2.0 / 3.0};
    case 2:
        return {1.0, s / 3.0, 0.0, s / 4.0};
    case 3:
        return {s, s / 3.0, s / 2.0, s / 4.0};
    default:
        throw DomainError("scenario id must be 1, 2, or 3, got " + std::to_string(id));
    }
}

GeneratedData generate_dataset(const ScenarioSpec& spec, std::uint64_t rep_index) {
    validate_spec(spec);
    Rng rng(derive_seed(spec.seed, rep_index));
    const Eigen::Index n = spec.n;

    GeneratedData gen;
    gen.data.design.resize(n, 4);
    gen.data.treatment.resize(n);
    gen.data.outcome.reserve(n);
    gen.outcome1.reserve(n);
    gen.outcome0.reserve(n);

    // Fixed per-unit draw order: X1, X2, X3, A, Theta(1), Theta(0).
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x1 = sample_beta21(rng);
        const double x2 = sample_beta21(rng);
        const double x3 = sample_beta21(rng);
        const double s = x1 + x2 + x3;
        gen.data.design(i, 0) = 1.0;
        gen.data.design(i, 1) = x1;
        gen.data.design(i, 2) = x2;
        gen.data.design(i, 3) = x3;

        const int a = rng.bernoulli(logistic(1.0 + s));
        gen.data.treatment[i] = a;

        const ScenarioArms arms = scenario_arms(spec.id, s);
        const Angle theta1 = sample_wrapped_cauchy(rng, arms.mu1, arms.rho1);
        const Angle theta0 = sample_wrapped_cauchy(rng, arms.mu0, arms.rho0);
        gen.outcome1.push_back(theta1);
        gen.outcome0.push_back(theta0);
        gen.data.outcome.push_back(a == 1 ? theta1 : theta0);
    }
    return gen;
}

namespace {

struct RepResult {
    // Point estimation (fit + weighted moments) either succeeds for both
    // schemes or fails for both; the sandwich can fail per scheme, which
    // drops the replication from that scheme's coverage and mean-SE cells
    // while its point estimates still enter BIAS/SE/MSE.
    bool point_ok = false;
    bool var_ok[2] = {false, false};
    // index 0 = HT, 1 = Hajek
    double tau[2] = {0, 0};
    double xi[2] = {0, 0};
    double se_tau[2] = {0, 0};
    double se_xi[2] = {0, 0};

    bool any_failure() const { return !point_ok || !var_ok[0] || !var_ok[1]; }
};

RepResult run_replication(const ScenarioSpec& spec, std::uint64_t rep_index) {
    RepResult r;
    const WeightScheme schemes[2] = {WeightScheme::horvitz_thompson,
                                     WeightScheme::hajek};
    GeneratedData gen;
    PropensityFit fit;
    OmegaEstimate omegas[2];
    EffectEstimate effects[2];
    try {
        gen = generate_dataset(spec, rep_index);
        fit = fit_logistic(gen.data.design, gen.data.treatment);
        for (int si = 0; si < 2; ++si) {
            omegas[si] = estimate_omega(gen.data, fit.fitted, schemes[si]);
            effects[si] = estimate_effects(omegas[si]);
            r.tau[si] = effects[si].tau;
            r.xi[si] = effects[si].xi;
        }
        r.point_ok = true;
    } catch (const Error&) {
        return r; // counted by the caller
    }
    for (int si = 0; si < 2; ++si) {
        try {
            const SandwichPieces pieces = empirical_pieces(gen.data, fit, omegas[si]);
            const EffectEstimate with_se =
                with_covariance(effects[si], pieces, omegas[si]);
            r.se_tau[si] = with_se.se_tau;
            r.se_xi[si] = with_se.se_xi;
            r.var_ok[si] = true;
        } catch (const Error&) {
            r.var_ok[si] = false;
        }
    }
    return r;
}

// Aggregates one estimand/scheme cell in replication-index order.
// `deviations` covers every replication with point estimates; coverage and
// mean SE run over the (possibly smaller) subset whose sandwich succeeded.
SimCell aggregate_cell(const std::vector<double>& deviations,
                       const std::vector<double>& interval_deviations,
                       const std::vector<double>& interval_ses, double z) {
    const std::size_t r = deviations.size();
    SimCell cell;
    double mean = 0.0;
    double mean_sq = 0.0;
    for (const double d : deviations) {
        mean += d;
        mean_sq += d * d;
    }
    mean /= static_cast<double>(r);
    mean_sq /= static_cast<double>(r);
    cell.bias = mean;
    cell.mse = mean_sq;
    if (r >= 2) {
        double ss = 0.0;
        for (const double d : deviations) ss += (d - mean) * (d - mean);
        cell.se = std::sqrt(ss / static_cast<double>(r - 1));
    }
    const std::size_t ri = interval_deviations.size();
    if (ri >= 1) {
        double covered = 0.0;
        double se_sum = 0.0;
        for (std::size_t i = 0; i < ri; ++i) {
            if (std::abs(interval_deviations[i]) <= z * interval_ses[i]) covered += 1.0;
            se_sum += interval_ses[i];
        }
        cell.coverage = covered / static_cast<double>(ri);
        cell.mean_se = se_sum / static_cast<double>(ri);
    }
    return cell;
}

} // namespace

SimSummary run_study(const ScenarioSpec& spec) {
    validate_spec(spec);
    const int reps = spec.replications;
    std::vector<RepResult> results(reps);

    const int workers = std::min(spec.threads, reps);
    if (workers <= 1) {
        for (int rep = 0; rep < reps; ++rep) {
            results[rep] = run_replication(spec, static_cast<std::uint64_t>(rep));
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            const int lo = static_cast<int>(static_cast<long>(reps) * t / workers);
            const int hi = static_cast<int>(static_cast<long>(reps) * (t + 1) / workers);
            pool.emplace_back([&spec, &results, lo, hi] {
                for (int rep = lo; rep < hi; ++rep) {
                    results[rep] = run_replication(spec, static_cast<std::uint64_t>(rep));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SimSummary summary;
    summary.spec = spec;
    for (const RepResult& r : results) {
        if (r.point_ok) ++summary.replications_used;
        if (r.any_failure()) ++summary.n_failed;
    }
    if (summary.replications_used == 0) {
        throw NumericalError("run_study: every replication failed");
    }
    summary.failure_flag =
        summary.n_failed > 0.01 * static_cast<double>(reps);

    const double z = normal_quantile((1.0 + spec.level) / 2.0);
    // Deviations from truth in replication-index order; tau deviations are
    // wrapped so bias and MSE live on the circle.
    std::vector<double> dev_tau[2], dev_xi[2];
    std::vector<double> int_dev_tau[2], int_dev_xi[2], ses_tau[2], ses_xi[2];
    for (int si = 0; si < 2; ++si) {
        dev_tau[si].reserve(summary.replications_used);
        dev_xi[si].reserve(summary.replications_used);
    }
    const Angle tau_truth = canonical_angle(spec.true_tau);
    for (const RepResult& r : results) {
        if (!r.point_ok) continue;
        for (int si = 0; si < 2; ++si) {
            const double dt =
                angular_difference(canonical_angle(r.tau[si]), tau_truth);
            const double dx = r.xi[si] - spec.true_xi;
            dev_tau[si].push_back(dt);
            dev_xi[si].push_back(dx);
            if (r.var_ok[si]) {
                int_dev_tau[si].push_back(dt);
                int_dev_xi[si].push_back(dx);
                ses_tau[si].push_back(r.se_tau[si]);
                ses_xi[si].push_back(r.se_xi[si]);
            }
        }
    }
    summary.tau_ht = aggregate_cell(dev_tau[0], int_dev_tau[0], ses_tau[0], z);
    summary.tau_hajek = aggregate_cell(dev_tau[1], int_dev_tau[1], ses_tau[1], z);
    summary.xi_ht = aggregate_cell(dev_xi[0], int_dev_xi[0], ses_xi[0], z);
    summary.xi_hajek = aggregate_cell(dev_xi[1], int_dev_xi[1], ses_xi[1], z);
    if (spec.replications == 1) {
        // a single replication has no spread to report
        summary.tau_ht.coverage.reset();
        summary.tau_hajek.coverage.reset();
        summary.xi_ht.coverage.reset();
        summary.xi_hajek.coverage.reset();
    }
    return summary;
}

std::string summary_csv(const SimSummary& summary) {
    auto opt = [](const std::optional<double>& v) {
        return v ? to_full_precision(*v) : std::string();
    };
    std::string out = "scenario,n,estimand,scheme,BIAS,SE,MSE,CR,n_failed\n";
    const struct {
        const char* estimand;
        const char* scheme;
        const SimCell* cell;
    } rows[] = {
        {"tau", "HT", &summary.tau_ht},
        {"tau", "Hajek", &summary.tau_hajek},
        {"xi", "HT", &summary.xi_ht},
        {"xi", "Hajek", &summary.xi_hajek},
    };
    for (const auto& row : rows) {
        out += std::to_string(summary.spec.id) + "," + std::to_string(summary.spec.n) +
               "," + row.estimand + "," + row.scheme + "," +
               to_full_precision(row.cell->bias) + "," + opt(row.cell->se) + "," +
               to_full_precision(row.cell->mse) + "," + opt(row.cell->coverage) + "," +
               std::to_string(summary.n_failed) + "\n";
    }
    return out;
}

TrueEffects derive_true_effects(int scenario, std::uint64_t draws, std::uint64_t seed) {
    if (scenario < 1 || scenario > 3) {
        throw DomainError("scenario id must be 1, 2, or 3, got " + std::to_string(scenario));
    }
    if (draws < 1000) {
        throw DomainError("derive_true_effects: need at least 1000 draws");
    }
    Rng rng(mix64(seed));
    ResultantVector arm1, arm0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const double s =
            sample_beta21(rng) + sample_beta21(rng) + sample_beta21(rng);
        const ScenarioArms arms = scenario_arms(scenario, s);
        const Angle t1 = sample_wrapped_cauchy(rng, arms.mu1, arms.rho1);
        const Angle t0 = sample_wrapped_cauchy(rng, arms.mu0, arms.rho0);
        arm1.alpha += std::cos(t1.radians());
        arm1.beta += std::sin(t1.radians());
        arm0.alpha += std::cos(t0.radians());
        arm0.beta += std::sin(t0.radians());
    }
    const double dn = static_cast<double>(draws);
    arm1.alpha /= dn;
    arm1.beta /= dn;
    arm0.alpha /= dn;
    arm0.beta /= dn;
    TrueEffects truth;
    truth.tau = angular_difference(arm1.direction(), arm0.direction());
    truth.xi = arm1.length() - arm0.length();
    return truth;
}

} // namespace circal
