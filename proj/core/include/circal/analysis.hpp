#pragma once

#include "circal/csv.hpp"
#include "circal/dataset.hpp"
#include "circal/estimators.hpp"
#include "circal/propensity.hpp"
#include "circal/variance.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace circal {

enum class OutcomeKind { radians, degrees, clock24 };
enum class ColumnKind { numeric, categorical };
enum class SchemeChoice { ht, hajek, both };
enum class ReportFormat { text, csv, json };

OutcomeKind parse_outcome_kind(std::string_view s);
ColumnKind parse_column_kind(std::string_view s);
SchemeChoice parse_scheme_choice(std::string_view s);
ReportFormat parse_report_format(std::string_view s);

struct ConfounderSpec {
    std::string column;
    ColumnKind kind = ColumnKind::numeric;
};

struct AnalysisConfig {
    std::string input_path;
    std::string treatment_column;
    std::string treated_value;
    std::string outcome_column;
    OutcomeKind outcome_kind = OutcomeKind::radians;
    std::vector<ConfounderSpec> confounders;
    double level = 0.95;
    SchemeChoice schemes = SchemeChoice::both;
    ReportFormat format = ReportFormat::text;
    std::string report_path;  // empty: stdout
    std::string vectors_path; // empty: not written
    std::string units_path;   // empty: not written
};

// Parses a JSON config file. Unknown keys anywhere are rejected so typos
// cannot silently change an analysis.
AnalysisConfig parse_config(const std::string& path);
AnalysisConfig parse_config_text(std::string_view json_text);

// Required fields present, level in (0,1), column roles disjoint.
// Throws ConfigError. Called by parse_config; exposed for configs
// assembled from command-line flags.
void validate_config(const AnalysisConfig& config);

// "HH:MM" with 1-2 digit hour in [0,23] and 2-digit minute in [0,59],
// mapped onto the circle: 2*pi*(60*HH+MM)/1440.
double time_to_radians(std::string_view field);
double degrees_to_radians(double degrees);
double radians_to_minutes(double radians);

struct DropCounts {
    size_t missing_treatment = 0;
    size_t missing_outcome = 0;
    size_t missing_confounder = 0;

    size_t total() const { return missing_treatment + missing_outcome + missing_confounder; }
};

struct LoadedData {
    CausalDataset data;
    size_t n_total = 0; // data records in the file
    DropCounts drops;
    std::vector<std::string> design_columns; // includes "intercept"
    std::vector<std::string> log_lines;
};

// Complete-case ingestion: an empty field is a missing value and drops the
// row, attributed to the first missing column in the order treatment,
// outcome, confounders. A non-empty field that fails to parse is an error.
LoadedData load_dataset(const CsvTable& table, const AnalysisConfig& config);

struct SchemeResult {
    WeightScheme scheme = WeightScheme::horvitz_thompson;
    OmegaEstimate omega;
    EffectEstimate effects; // sandwich covariance attached
    WaldIntervals intervals;
    double mu1 = 0.0, rho1 = 0.0;
    double mu0 = 0.0, rho0 = 0.0;
};

struct UnitRecord {
    int arm = 0;
    double angle = 0.0;  // canonical radians
    double weight = 0.0; // Horvitz-Thompson weight for the unit's own arm
};

struct AnalysisReport {
    std::string input_path;
    size_t n_total = 0;
    size_t n_used = 0;
    DropCounts drops;
    size_t n_treated = 0;
    size_t n_control = 0;
    std::vector<std::string> design_columns;
    std::vector<std::string> log_lines;
    double level = 0.95;
    bool clock_units = false; // outcome came from clock times; add minute-scale rows
    std::vector<SchemeResult> schemes;
    std::vector<UnitRecord> units;
};

// Full pipeline: read, ingest, fit the propensity model, estimate, attach
// sandwich intervals. Errors are prefixed with the failing stage (load,
// propensity, estimation, variance).
AnalysisReport run_analysis(const AnalysisConfig& config);

std::string emit_report(const AnalysisReport& report, ReportFormat format);

// scheme,arm,alpha,beta,mu,rho
std::string emit_vectors_csv(const AnalysisReport& report);

// arm,angle,weight
std::string emit_unit_weights_csv(const AnalysisReport& report);

} // namespace circal
