// Acceptance gate: ten end-to-end criteria, one pass/fail line each, with
// measured values. Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <circal/analysis.hpp>
#include <circal/angles.hpp>
#include <circal/csv.hpp>
#include <circal/errors.hpp>
#include <circal/estimators.hpp>
#include <circal/propensity.hpp>
#include <circal/rng.hpp>
#include <circal/simulation.hpp>
#include <circal/variance.hpp>

using namespace circal;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v, int digits = 4) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += "FAILED: " + what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

struct Truth {
    double tau, xi;
};

// Frozen marginal truths per scenario; scenario 2 is exact by symmetry.
const std::map<int, Truth> frozen_truths = {
    {1, {1.003283944890, 0.113614424762}},
    {2, {1.0, 1.0 / 6.0}},
    {3, {1.044772834939, 0.128040687304}},
};

ScenarioSpec study_spec(int id, int n, int reps, std::uint64_t seed) {
    ScenarioSpec spec;
    spec.id = id;
    spec.n = n;
    spec.replications = reps;
    spec.seed = seed;
    spec.threads = 4;
    const Truth t = frozen_truths.at(id);
    spec.true_tau = t.tau;
    spec.true_xi = t.xi;
    return spec;
}

// Cross-check the frozen truths against the generator-level oracle once.
bool truths_verified(Criterion& c) {
    bool all_ok = true;
    for (const auto& [id, t] : frozen_truths) {
        const TrueEffects derived = derive_true_effects(id, 2000000, 314159);
        const bool ok =
            std::fabs(derived.tau - t.tau) <= 0.002 && std::fabs(derived.xi - t.xi) <= 0.002;
        c.require(ok, "frozen truth for scenario " + std::to_string(id) +
                          " disagrees with the generator oracle (tau " + num(derived.tau, 6) +
                          " vs " + num(t.tau, 6) + ", xi " + num(derived.xi, 6) + " vs " +
                          num(t.xi, 6) + ")");
        all_ok = all_ok && ok;
    }
    return all_ok;
}

// ---------------------------------------------------------------------------
// 1: HT and Hajek tau are algebraically identical on arbitrary fittable data.

Criterion criterion_equivalence() {
    Criterion c;
    const auto t0 = Clock::now();
    Rng rng(20260819);
    int done = 0, attempts = 0;
    double max_diff = 0.0;
    while (done < 1000 && attempts < 20000) {
        ++attempts;
        const int n = 20 + static_cast<int>(rng.uniform() * 481); // 20..500
        const int p = 1 + static_cast<int>(rng.uniform() * 3);    // 1..3 covariates
        Eigen::MatrixXd design(n, 1 + p);
        Eigen::VectorXi treatment(n);
        std::vector<Angle> outcome;
        outcome.reserve(static_cast<size_t>(n));
        Eigen::VectorXd eta(1 + p);
        for (int j = 0; j <= p; ++j) eta(j) = 2.0 * rng.uniform() - 1.0;
        for (int i = 0; i < n; ++i) {
            design(i, 0) = 1.0;
            for (int j = 1; j <= p; ++j) design(i, j) = 2.0 * rng.uniform() - 1.0;
            treatment(i) = rng.bernoulli(logistic(design.row(i).dot(eta)));
            outcome.push_back(canonical_angle(two_pi * rng.uniform()));
        }
        try {
            const CausalDataset data = make_dataset(design, treatment, outcome);
            const PropensityFit fit = fit_logistic(data.design, data.treatment);
            const OmegaEstimate ht =
                estimate_omega(data, fit.fitted, WeightScheme::horvitz_thompson);
            const OmegaEstimate hj = estimate_omega(data, fit.fitted, WeightScheme::hajek);
            const double diff =
                std::fabs(angular_difference(canonical_angle(estimate_effects(ht).tau),
                                             canonical_angle(estimate_effects(hj).tau)));
            max_diff = std::max(max_diff, diff);
            ++done;
        } catch (const Error&) {
            continue; // legitimate fit or estimation failure: draw a new dataset
        }
    }
    const double elapsed = seconds_since(t0);
    c.require(done == 1000, "only " + std::to_string(done) + " of 1000 datasets fittable");
    c.require(max_diff <= 1e-12, "max tau difference " + num(max_diff, 3));
    c.require(elapsed < 10.0, "time budget exceeded: " + num(elapsed, 3) + "s >= 10s");
    c.note("max |tau_HT - tau_Hajek| = " + num(max_diff, 3) + " over 1000 fits (" +
           std::to_string(attempts - done) + " regenerated)");
    return c;
}

// ---------------------------------------------------------------------------
// 2: with known propensities, HT moments match brute-force counterfactual
// means. The pairing SE is exact because A is independent of each potential
// outcome given X.

Criterion criterion_known_propensity() {
    Criterion c;
    const auto t0 = Clock::now();
    const int n = 100000;
    const GeneratedData gen = generate_dataset(study_spec(2, n, 1, 20260819), 0);

    Eigen::VectorXd known_pi(n);
    for (int i = 0; i < n; ++i) {
        const double s =
            gen.data.design(i, 1) + gen.data.design(i, 2) + gen.data.design(i, 3);
        known_pi(i) = logistic(1.0 + s);
    }
    const OmegaEstimate ht =
        estimate_omega(gen.data, known_pi, WeightScheme::horvitz_thompson);

    // Brute-force counterfactual means over all n potential outcomes, with
    // the exact standard error of (HT estimate - counterfactual mean).
    const auto check_moment = [&](double estimate, bool arm1, bool use_cos,
                                  const char* label) {
        double cf_mean = 0.0, var = 0.0;
        for (int i = 0; i < n; ++i) {
            const double th =
                (arm1 ? gen.outcome1[static_cast<size_t>(i)]
                      : gen.outcome0[static_cast<size_t>(i)])
                    .radians();
            const double g = use_cos ? std::cos(th) : std::sin(th);
            cf_mean += g;
            const double p = known_pi(i);
            var += g * g * (arm1 ? (1.0 - p) / p : p / (1.0 - p));
        }
        cf_mean /= n;
        const double se = std::sqrt(var) / n;
        const double gap = std::fabs(estimate - cf_mean);
        c.require(gap <= 3.0 * se, std::string(label) + ": |" + num(estimate, 6) + " - " +
                                       num(cf_mean, 6) + "| = " + num(gap, 3) + " > 3*SE = " +
                                       num(3.0 * se, 3));
    };
    check_moment(ht.alpha1, true, true, "alpha1");
    check_moment(ht.beta1, true, false, "beta1");
    check_moment(ht.alpha0, false, true, "alpha0");
    check_moment(ht.beta0, false, false, "beta0");

    const double elapsed = seconds_since(t0);
    c.require(elapsed < 30.0, "time budget exceeded: " + num(elapsed, 3) + "s >= 30s");
    c.note("all four HT moments within 3 SE of the n=100000 counterfactual means");
    return c;
}

// ---------------------------------------------------------------------------
// 3: scenario 1 at n=1000, 300 replications: bias, spread, and coverage.

Criterion criterion_table_cell() {
    Criterion c;
    const auto t0 = Clock::now();
    if (!truths_verified(c)) return c;

    const SimSummary s = run_study(study_spec(1, 1000, 300, 4242));
    const double tau_bias = s.tau_hajek.bias;
    const double tau_sd = s.tau_hajek.se.value();
    const double tau_cr = s.tau_hajek.coverage.value();
    const double xi_bias = s.xi_hajek.bias;
    const double xi_cr = s.xi_hajek.coverage.value();

    c.require(std::fabs(tau_bias) <= 0.03, "|tau bias| = " + num(std::fabs(tau_bias), 3));
    c.require(tau_sd >= 0.20 && tau_sd <= 0.30,
              "tau SD = " + num(tau_sd, 4) + " outside [0.20, 0.30]");
    c.require(tau_cr >= 0.91 && tau_cr <= 0.98,
              "tau CR = " + num(tau_cr, 4) + " outside [0.91, 0.98]");
    c.require(std::fabs(xi_bias) <= 0.02, "|xi bias| (Hajek) = " + num(std::fabs(xi_bias), 3));
    c.require(xi_cr >= 0.91 && xi_cr <= 0.99,
              "xi CR (Hajek) = " + num(xi_cr, 4) + " outside [0.91, 0.99]");

    const double elapsed = seconds_since(t0);
    c.require(elapsed < 300.0, "time budget exceeded: " + num(elapsed, 3) + "s >= 300s");
    c.note("tau bias " + num(tau_bias, 3) + ", SD " + num(tau_sd, 4) + ", CR " +
           num(tau_cr, 4) + "; xi bias " + num(xi_bias, 3) + ", CR " + num(xi_cr, 4) +
           " (Hajek cells, seed 4242)");
    return c;
}

// ---------------------------------------------------------------------------
// 4: at n=250 the Hajek xi estimate is no more variable than HT, and HT is
// no more biased for xi, in every scenario.

Criterion criterion_small_n_ordering() {
    Criterion c;
    for (int id : {1, 2, 3}) {
        const SimSummary s = run_study(study_spec(id, 250, 600, 2));
        const double sd_ht = s.xi_ht.se.value();
        const double sd_hj = s.xi_hajek.se.value();
        const double b_ht = std::fabs(s.xi_ht.bias);
        const double b_hj = std::fabs(s.xi_hajek.bias);
        c.require(sd_hj <= sd_ht, "scenario " + std::to_string(id) + ": xi SD Hajek " +
                                      num(sd_hj, 4) + " > HT " + num(sd_ht, 4));
        c.require(b_ht <= b_hj + 0.01, "scenario " + std::to_string(id) +
                                           ": |xi bias| HT " + num(b_ht, 4) +
                                           " > Hajek " + num(b_hj, 4) + " + 0.01");
        c.note("s" + std::to_string(id) + ": SD " + num(sd_hj, 3) + "/" + num(sd_ht, 3) +
               ", |bias| " + num(b_ht, 3) + "/" + num(b_hj, 3));
    }
    c.note("600 replications per scenario, seed 2");
    return c;
}

// ---------------------------------------------------------------------------
// 5: the sandwich SE tracks the true sampling spread at n=1000.

Criterion criterion_se_calibration() {
    Criterion c;
    const SimSummary s = run_study(study_spec(2, 1000, 500, 4242));
    const struct {
        const char* label;
        const SimCell* cell;
    } cells[] = {
        {"tau HT", &s.tau_ht},
        {"tau Hajek", &s.tau_hajek},
        {"xi HT", &s.xi_ht},
        {"xi Hajek", &s.xi_hajek},
    };
    for (const auto& [label, cell] : cells) {
        const double ratio = cell->mean_se.value() / cell->se.value();
        c.require(ratio >= 0.85 && ratio <= 1.15,
                  std::string(label) + ": mean(SE)/SD = " + num(ratio, 4));
        c.note(std::string(label) + " " + num(ratio, 3));
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6: the delta-method Jacobian agrees with central finite differences.

Criterion criterion_jacobian() {
    Criterion c;
    Rng rng(987654);
    double max_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double rho1 = 0.2 + 0.75 * rng.uniform();
        const double rho0 = 0.2 + 0.75 * rng.uniform();
        const double mu1 = rng.uniform() * two_pi;
        const double mu0 = rng.uniform() * two_pi;
        OmegaEstimate om;
        om.alpha1 = rho1 * std::cos(mu1);
        om.beta1 = rho1 * std::sin(mu1);
        om.alpha0 = rho0 * std::cos(mu0);
        om.beta0 = rho0 * std::sin(mu0);
        om.n = 100;
        const auto J = jacobian(om);
        const double h = 1e-6;
        double base[4] = {om.alpha1, om.beta1, om.alpha0, om.beta0};
        for (int j = 0; j < 4; ++j) {
            OmegaEstimate lo = om, hi = om;
            double* lo_f[4] = {&lo.alpha1, &lo.beta1, &lo.alpha0, &lo.beta0};
            double* hi_f[4] = {&hi.alpha1, &hi.beta1, &hi.alpha0, &hi.beta0};
            *lo_f[j] = base[j] - h;
            *hi_f[j] = base[j] + h;
            const EffectEstimate e_lo = estimate_effects(lo);
            const EffectEstimate e_hi = estimate_effects(hi);
            const double dtau = angular_difference(canonical_angle(e_hi.tau),
                                                   canonical_angle(e_lo.tau)) /
                                (2.0 * h);
            const double dxi = (e_hi.xi - e_lo.xi) / (2.0 * h);
            max_rel = std::max(max_rel,
                               std::fabs(dtau - J(0, j)) / std::max(1.0, std::fabs(J(0, j))));
            max_rel = std::max(max_rel,
                               std::fabs(dxi - J(1, j)) / std::max(1.0, std::fabs(J(1, j))));
        }
    }
    c.require(max_rel <= 1e-6, "max relative FD error " + num(max_rel, 3));
    c.note("max relative FD error = " + num(max_rel, 3) +
           " over 100 random omega, rho in [0.2, 0.95]");
    return c;
}

// ---------------------------------------------------------------------------
// 7: the logistic solver leaves a vanishing score, matches a grid oracle,
// and solves the intercept-only case exactly.

Criterion criterion_logistic() {
    Criterion c;
    Rng rng(5150);
    double max_score = 0.0;
    int done = 0, attempts = 0;
    while (done < 50 && attempts < 2000) {
        ++attempts;
        const int n = 30 + static_cast<int>(rng.uniform() * 91);
        const int p = 1 + static_cast<int>(rng.uniform() * 3);
        Eigen::MatrixXd design(n, 1 + p);
        Eigen::VectorXi treatment(n);
        Eigen::VectorXd eta(1 + p);
        for (int j = 0; j <= p; ++j) eta(j) = 2.0 * rng.uniform() - 1.0;
        for (int i = 0; i < n; ++i) {
            design(i, 0) = 1.0;
            for (int j = 1; j <= p; ++j) design(i, j) = 2.0 * rng.uniform() - 1.0;
            treatment(i) = rng.bernoulli(logistic(design.row(i).dot(eta)));
        }
        try {
            const PropensityFit fit = fit_logistic(design, treatment);
            // independent recomputation of the score at the reported optimum
            Eigen::VectorXd score = Eigen::VectorXd::Zero(1 + p);
            for (int i = 0; i < n; ++i)
                score += (treatment(i) - fit.fitted(i)) * design.row(i).transpose();
            max_score = std::max(max_score, score.lpNorm<Eigen::Infinity>());
            ++done;
        } catch (const Error&) {
            continue;
        }
    }
    c.require(done == 50, "only " + std::to_string(done) + " of 50 datasets fittable");
    c.require(max_score <= 1e-9, "max recomputed score norm " + num(max_score, 3));

    // Grid-refinement oracle on a fixed 8-point, 2-parameter problem.
    {
        const double xs[8] = {-1.5, -1.0, -0.5, -0.2, 0.3, 0.8, 1.2, 2.0};
        const int as[8] = {0, 0, 1, 0, 1, 0, 1, 1};
        const auto loglik = [&](double b0, double b1) {
            double ll = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double z = b0 + b1 * xs[i];
                // stable log-likelihood accumulation
                if (as[i] == 1)
                    ll += (z > 0.0) ? -std::log1p(std::exp(-z)) : z - std::log1p(std::exp(z));
                else
                    ll += (z > 0.0) ? -z - std::log1p(std::exp(-z)) : -std::log1p(std::exp(z));
            }
            return ll;
        };
        double c0 = 0.0, c1 = 0.0, span = 10.0;
        for (int round = 0; round < 12; ++round) {
            double best = -1e300, b0 = c0, b1 = c1;
            for (int i = -20; i <= 20; ++i) {
                for (int j = -20; j <= 20; ++j) {
                    const double t0 = c0 + span * i / 20.0;
                    const double t1 = c1 + span * j / 20.0;
                    const double ll = loglik(t0, t1);
                    if (ll > best) {
                        best = ll;
                        b0 = t0;
                        b1 = t1;
                    }
                }
            }
            c0 = b0;
            c1 = b1;
            span *= 0.15;
        }
        Eigen::MatrixXd design(8, 2);
        Eigen::VectorXi treatment(8);
        for (int i = 0; i < 8; ++i) {
            design(i, 0) = 1.0;
            design(i, 1) = xs[i];
            treatment(i) = as[i];
        }
        const PropensityFit fit = fit_logistic(design, treatment);
        const double gap = std::max(std::fabs(fit.eta(0) - c0), std::fabs(fit.eta(1) - c1));
        c.require(gap <= 1e-5, "grid oracle gap " + num(gap, 3));
        c.note("grid oracle gap = " + num(gap, 3));
    }

    // Intercept-only, 3 treated and 1 control: eta = ln 3 in closed form.
    {
        Eigen::MatrixXd design = Eigen::MatrixXd::Ones(4, 1);
        Eigen::VectorXi treatment(4);
        treatment << 1, 1, 1, 0;
        const PropensityFit fit = fit_logistic(design, treatment);
        const double gap = std::fabs(fit.eta(0) - std::log(3.0));
        c.require(gap <= 1e-10, "intercept-only gap from ln 3: " + num(gap, 3));
        c.note("intercept-only |eta - ln 3| = " + num(gap, 3));
    }
    c.note("max recomputed score norm = " + num(max_score, 3) + " over 50 fits");
    return c;
}

// ---------------------------------------------------------------------------
// 8: the wrapped Cauchy sampler reproduces its first trigonometric moment.

Criterion criterion_sampler() {
    Criterion c;
    Rng rng(271828);
    const struct {
        double mu, rho;
    } cases[] = {{1.0, 0.5}, {0.0, 0.25}, {2.0, 5.0 / 6.0}};
    for (const auto& cs : cases) {
        const std::size_t n = 1000000;
        double sum_c = 0.0, sum_s = 0.0, ss_c = 0.0, ss_s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double th = sample_wrapped_cauchy(rng, cs.mu, cs.rho).radians();
            const double cv = std::cos(th), sv = std::sin(th);
            sum_c += cv;
            sum_s += sv;
            ss_c += cv * cv;
            ss_s += sv * sv;
        }
        const double mc = sum_c / n, ms = sum_s / n;
        const double se_c = std::sqrt((ss_c / n - mc * mc) / n);
        const double se_s = std::sqrt((ss_s / n - ms * ms) / n);
        const double target_c = cs.rho * std::cos(cs.mu);
        const double target_s = cs.rho * std::sin(cs.mu);
        c.require(std::fabs(mc - target_c) <= 3.0 * se_c,
                  "mu=" + num(cs.mu, 3) + " rho=" + num(cs.rho, 3) + ": cos moment " +
                      num(mc, 5) + " vs " + num(target_c, 5));
        c.require(std::fabs(ms - target_s) <= 3.0 * se_s,
                  "mu=" + num(cs.mu, 3) + " rho=" + num(cs.rho, 3) + ": sin moment " +
                      num(ms, 5) + " vs " + num(target_s, 5));
    }
    c.note("three (mu, rho) settings, 1e6 draws each, all within 3 SE");
    return c;
}

// ---------------------------------------------------------------------------
// 9: radian-to-minute conversion for clock outcomes.

Criterion criterion_units() {
    Criterion c;
    const double minutes = radians_to_minutes(-0.243);
    c.require(std::fabs(minutes - (-55.691)) <= 0.01,
              "radians_to_minutes(-0.243) = " + num(minutes, 6));
    c.note("radians_to_minutes(-0.243) = " + num(minutes, 6) + " min");
    return c;
}

// ---------------------------------------------------------------------------
// 10: the external study data behind the worked example is not available for
// redistribution, so the pipeline checks run on the bundled synthetic
// shift-work dataset: ingestion accounting, report round-trip, determinism.

Criterion criterion_pipeline() {
    Criterion c;
    AnalysisConfig cfg;
    cfg.input_path = std::string(TEST_DATA_DIR) + "/shiftwork.csv";
    cfg.treatment_column = "shift";
    cfg.treated_value = "night";
    cfg.outcome_column = "sleep_onset";
    cfg.outcome_kind = OutcomeKind::clock24;
    cfg.confounders.push_back({"age", ColumnKind::numeric});
    cfg.confounders.push_back({"coffee", ColumnKind::categorical});

    const AnalysisReport rep = run_analysis(cfg);
    c.require(rep.n_total == 48, "n_total = " + std::to_string(rep.n_total));
    c.require(rep.n_used == 43, "n_used = " + std::to_string(rep.n_used));
    c.require(rep.drops.missing_treatment == 1 && rep.drops.missing_outcome == 2 &&
                  rep.drops.missing_confounder == 2,
              "drop accounting " + std::to_string(rep.drops.missing_treatment) + "/" +
                  std::to_string(rep.drops.missing_outcome) + "/" +
                  std::to_string(rep.drops.missing_confounder));
    c.require(rep.n_used + rep.drops.total() == rep.n_total, "rows not fully accounted for");
    c.require(rep.n_treated == 19 && rep.n_control == 24,
              "arms " + std::to_string(rep.n_treated) + "/" + std::to_string(rep.n_control));

    // round-trip: the CSV report reparses to exactly the in-memory numbers
    const std::string csv = emit_report(rep, ReportFormat::csv);
    const CsvTable parsed = parse_csv(csv);
    bool round_trip = parsed.rows.size() == 6;
    const double f = 1440.0 / two_pi;
    const double expect[6][2] = {
        {rep.schemes[0].effects.tau, rep.schemes[0].effects.se_tau},
        {rep.schemes[0].effects.tau * f, rep.schemes[0].effects.se_tau * f},
        {rep.schemes[0].effects.xi, rep.schemes[0].effects.se_xi},
        {rep.schemes[1].effects.tau, rep.schemes[1].effects.se_tau},
        {rep.schemes[1].effects.tau * f, rep.schemes[1].effects.se_tau * f},
        {rep.schemes[1].effects.xi, rep.schemes[1].effects.se_xi},
    };
    for (size_t r = 0; round_trip && r < parsed.rows.size(); ++r) {
        round_trip = std::stod(parsed.rows[r][3]) == expect[r][0] &&
                     std::stod(parsed.rows[r][4]) == expect[r][1];
    }
    c.require(round_trip, "csv report did not round-trip at full precision");

    // determinism: a second run reproduces every artifact byte for byte
    const AnalysisReport again = run_analysis(cfg);
    c.require(emit_report(again, ReportFormat::csv) == csv &&
                  emit_report(again, ReportFormat::text) == emit_report(rep, ReportFormat::text) &&
                  emit_vectors_csv(again) == emit_vectors_csv(rep) &&
                  emit_unit_weights_csv(again) == emit_unit_weights_csv(rep),
              "repeated runs differ");

    c.note("bundled synthetic dataset substitutes for the non-redistributable "
           "study data: 48 rows -> 43 used (drops 1/2/2), arms 19/24, "
           "round-trip and determinism verified");
    return c;
}

} // namespace

int main() {
    struct Entry {
        const char* title;
        Criterion (*fn)();
    };
    const Entry entries[] = {
        {"estimator equivalence", criterion_equivalence},
        {"known-propensity oracle", criterion_known_propensity},
        {"scenario 1 summary cell", criterion_table_cell},
        {"small-n xi ordering", criterion_small_n_ordering},
        {"sandwich SE calibration", criterion_se_calibration},
        {"delta-method Jacobian", criterion_jacobian},
        {"logistic solver", criterion_logistic},
        {"wrapped Cauchy sampler", criterion_sampler},
        {"unit conversion", criterion_units},
        {"analysis pipeline", criterion_pipeline},
    };

    int failures = 0;
    int index = 0;
    for (const Entry& e : entries) {
        ++index;
        const auto t0 = Clock::now();
        Criterion c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail = std::string("unexpected exception: ") + ex.what();
        }
        const double elapsed = seconds_since(t0);
        if (!c.pass) ++failures;
        std::printf("[%2d/10] %s  (%.1fs) %s: %s\n", index, c.pass ? "PASS" : "FAIL", elapsed,
                    e.title, c.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
