#include "circal/analysis.hpp"
#include "circal/errors.hpp"
#include "circal/format.hpp"
#include "circal/simulation.hpp"
#include "circal/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw circal::DataError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw circal::DataError("write failure on '" + path + "'");
}

struct AnalyzeOptions {
    std::string config_path;
    std::string input;
    std::string treatment;
    std::string treated_value;
    std::string outcome;
    std::string outcome_kind;
    std::vector<std::string> confounders;
    double level = -1.0; // <0: not given
    std::string scheme;
    std::string format;
    std::string report_path;
    std::string vectors_path;
    std::string units_path;
};

// "name", "name:numeric", or "name:categorical".
circal::ConfounderSpec parse_confounder_flag(const std::string& raw) {
    circal::ConfounderSpec spec;
    const size_t sep = raw.rfind(':');
    if (sep != std::string::npos) {
        const std::string suffix = raw.substr(sep + 1);
        if (suffix == "numeric" || suffix == "categorical") {
            spec.column = raw.substr(0, sep);
            spec.kind = circal::parse_column_kind(suffix);
            return spec;
        }
        throw circal::ConfigError("config: confounder '" + raw +
                                  "': suffix after ':' must be numeric or categorical");
    }
    spec.column = raw;
    return spec;
}

int run_analyze(const AnalyzeOptions& opt) {
    circal::AnalysisConfig cfg;
    if (!opt.config_path.empty()) cfg = circal::parse_config(opt.config_path);

    if (!opt.input.empty()) cfg.input_path = opt.input;
    if (!opt.treatment.empty()) cfg.treatment_column = opt.treatment;
    if (!opt.treated_value.empty()) cfg.treated_value = opt.treated_value;
    if (!opt.outcome.empty()) cfg.outcome_column = opt.outcome;
    if (!opt.outcome_kind.empty()) cfg.outcome_kind = circal::parse_outcome_kind(opt.outcome_kind);
    if (!opt.confounders.empty()) {
        cfg.confounders.clear();
        for (const auto& raw : opt.confounders)
            cfg.confounders.push_back(parse_confounder_flag(raw));
    }
    if (opt.level >= 0.0) cfg.level = opt.level;
    if (!opt.scheme.empty()) cfg.schemes = circal::parse_scheme_choice(opt.scheme);
    if (!opt.format.empty()) cfg.format = circal::parse_report_format(opt.format);
    if (!opt.report_path.empty()) cfg.report_path = opt.report_path;
    if (!opt.vectors_path.empty()) cfg.vectors_path = opt.vectors_path;
    if (!opt.units_path.empty()) cfg.units_path = opt.units_path;
    circal::validate_config(cfg);

    const circal::AnalysisReport report = circal::run_analysis(cfg);
    write_output(cfg.report_path, circal::emit_report(report, cfg.format));
    if (!cfg.vectors_path.empty())
        write_output(cfg.vectors_path, circal::emit_vectors_csv(report));
    if (!cfg.units_path.empty())
        write_output(cfg.units_path, circal::emit_unit_weights_csv(report));
    return 0;
}

struct SimulateOptions {
    int scenario = 0;
    int n = 1000;
    int reps = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    double level = 0.95;
    double true_tau = std::numeric_limits<double>::quiet_NaN();
    double true_xi = std::numeric_limits<double>::quiet_NaN();
    bool derive_truth = false;
    std::uint64_t truth_draws = 2'000'000;
    std::string out_path;
};

int run_simulate(const SimulateOptions& opt) {
    circal::ScenarioSpec spec;
    spec.id = opt.scenario;
    spec.n = opt.n;
    spec.replications = opt.reps;
    spec.seed = opt.seed;
    spec.threads = opt.threads;
    spec.level = opt.level;

    if (opt.derive_truth) {
        const circal::TrueEffects truth =
            circal::derive_true_effects(spec.id, opt.truth_draws, spec.seed);
        spec.true_tau = truth.tau;
        spec.true_xi = truth.xi;
        std::cerr << "derived truths: tau = " << circal::to_full_precision(truth.tau)
                  << ", xi = " << circal::to_full_precision(truth.xi) << " ("
                  << opt.truth_draws << " draws)\n";
    }
    // Explicit values win over derived ones.
    if (!std::isnan(opt.true_tau)) spec.true_tau = opt.true_tau;
    if (!std::isnan(opt.true_xi)) spec.true_xi = opt.true_xi;

    const circal::SimSummary summary = circal::run_study(spec);
    write_output(opt.out_path, circal::summary_csv(summary));
    if (summary.failure_flag)
        std::cerr << "warning: " << summary.n_failed << " of " << spec.replications
                  << " replications failed\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Causal effect estimation for circular outcomes"};
    app.require_subcommand(1);

    AnalyzeOptions an;
    CLI::App* analyze = app.add_subcommand("analyze", "Estimate effects from a CSV file");
    analyze->add_option("--config", an.config_path, "JSON config file");
    analyze->add_option("--input", an.input, "Input CSV path");
    analyze->add_option("--treatment", an.treatment, "Treatment column name");
    analyze->add_option("--treated-value", an.treated_value,
                        "Field value marking a treated unit");
    analyze->add_option("--outcome", an.outcome, "Outcome column name");
    analyze->add_option("--outcome-kind", an.outcome_kind,
                        "Outcome units: radians, degrees, clock24");
    analyze->add_option("--confounder", an.confounders,
                        "Confounder column, optionally name:numeric or name:categorical "
                        "(repeatable; replaces the config file's list)");
    analyze->add_option("--level", an.level, "Confidence level in (0, 1)");
    analyze->add_option("--scheme", an.scheme, "Weight scheme: ht, hajek, both");
    analyze->add_option("--format", an.format, "Report format: text, csv, json");
    analyze->add_option("--out", an.report_path, "Report path (default: stdout)");
    analyze->add_option("--vectors", an.vectors_path, "Write per-arm resultant vectors CSV");
    analyze->add_option("--unit-weights", an.units_path, "Write per-unit weights CSV");

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Replicated scenario study");
    simulate->add_option("--scenario", sim.scenario, "Scenario id: 1, 2, or 3")->required();
    simulate->add_option("--n", sim.n, "Units per replication");
    simulate->add_option("--reps", sim.reps, "Number of replications");
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--threads", sim.threads, "Worker threads");
    simulate->add_option("--level", sim.level, "Coverage level in (0, 1)");
    simulate->add_option("--true-tau", sim.true_tau, "Override the true tau used for bias/coverage");
    simulate->add_option("--true-xi", sim.true_xi, "Override the true xi used for bias/coverage");
    simulate->add_flag("--derive-truth", sim.derive_truth,
                       "Derive true effects from the generator by Monte Carlo first");
    simulate->add_option("--truth-draws", sim.truth_draws, "Draws for --derive-truth");
    simulate->add_option("--out", sim.out_path, "Summary CSV path (default: stdout)");

    CLI::App* version = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems map to exit code 2
    }

    try {
        if (analyze->parsed()) return run_analyze(an);
        if (simulate->parsed()) return run_simulate(sim);
        if (version->parsed()) {
            std::cout << "circal " << circal::version_string << "\n";
            return 0;
        }
    } catch (const circal::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const circal::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const circal::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
