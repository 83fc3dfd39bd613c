#include "circal/analysis.hpp"

#include "circal/angles.hpp"
#include "circal/errors.hpp"
#include "circal/format.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <utility>

namespace circal {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& what) {
    throw ConfigError("config: " + what);
}

void check_keys(const json& obj, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto a : allowed)
            if (it.key() == a) {
                known = true;
                break;
            }
        if (!known)
            config_fail("unknown key '" + it.key() + "' in " + std::string(where));
    }
}

std::string require_string(const json& obj, std::string_view where, const char* key) {
    if (!obj.contains(key))
        config_fail(std::string(where) + " is missing '" + key + "'");
    const json& v = obj.at(key);
    if (!v.is_string())
        config_fail("'" + std::string(key) + "' in " + std::string(where) + " must be a string");
    std::string s = v.get<std::string>();
    if (s.empty())
        config_fail("'" + std::string(key) + "' in " + std::string(where) + " must not be empty");
    return s;
}

double parse_double_field(std::string_view s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw DataError("not a number: '" + std::string(s) + "'");
    if (!std::isfinite(v))
        throw DataError("non-finite number: '" + std::string(s) + "'");
    return v;
}

} // namespace

OutcomeKind parse_outcome_kind(std::string_view s) {
    if (s == "radians") return OutcomeKind::radians;
    if (s == "degrees") return OutcomeKind::degrees;
    if (s == "clock24") return OutcomeKind::clock24;
    config_fail("outcome kind must be one of radians, degrees, clock24 (got '" +
                std::string(s) + "')");
}

ColumnKind parse_column_kind(std::string_view s) {
    if (s == "numeric") return ColumnKind::numeric;
    if (s == "categorical") return ColumnKind::categorical;
    config_fail("column kind must be numeric or categorical (got '" + std::string(s) + "')");
}

SchemeChoice parse_scheme_choice(std::string_view s) {
    if (s == "ht") return SchemeChoice::ht;
    if (s == "hajek") return SchemeChoice::hajek;
    if (s == "both") return SchemeChoice::both;
    config_fail("scheme must be one of ht, hajek, both (got '" + std::string(s) + "')");
}

ReportFormat parse_report_format(std::string_view s) {
    if (s == "text") return ReportFormat::text;
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    config_fail("report format must be one of text, csv, json (got '" + std::string(s) + "')");
}

AnalysisConfig parse_config_text(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        config_fail(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_fail("top level must be an object");
    check_keys(j, "top level",
               {"input", "treatment", "outcome", "confounders", "level", "schemes", "report",
                "vectors_path", "unit_weights_path"});

    AnalysisConfig cfg;
    cfg.input_path = require_string(j, "top level", "input");

    if (!j.contains("treatment")) config_fail("top level is missing 'treatment'");
    const json& jt = j.at("treatment");
    if (!jt.is_object()) config_fail("'treatment' must be an object");
    check_keys(jt, "'treatment'", {"column", "treated_value"});
    cfg.treatment_column = require_string(jt, "'treatment'", "column");
    cfg.treated_value = require_string(jt, "'treatment'", "treated_value");

    if (!j.contains("outcome")) config_fail("top level is missing 'outcome'");
    const json& jo = j.at("outcome");
    if (!jo.is_object()) config_fail("'outcome' must be an object");
    check_keys(jo, "'outcome'", {"column", "kind"});
    cfg.outcome_column = require_string(jo, "'outcome'", "column");
    if (jo.contains("kind"))
        cfg.outcome_kind = parse_outcome_kind(require_string(jo, "'outcome'", "kind"));

    if (j.contains("confounders")) {
        const json& jc = j.at("confounders");
        if (!jc.is_array()) config_fail("'confounders' must be an array");
        for (const json& item : jc) {
            ConfounderSpec spec;
            if (item.is_string()) {
                spec.column = item.get<std::string>();
                if (spec.column.empty()) config_fail("confounder names must not be empty");
            } else if (item.is_object()) {
                check_keys(item, "confounder entry", {"column", "kind"});
                spec.column = require_string(item, "confounder entry", "column");
                if (item.contains("kind"))
                    spec.kind = parse_column_kind(require_string(item, "confounder entry", "kind"));
            } else {
                config_fail("confounder entries must be strings or objects");
            }
            cfg.confounders.push_back(std::move(spec));
        }
    }

    if (j.contains("level")) {
        const json& jl = j.at("level");
        if (!jl.is_number()) config_fail("'level' must be a number");
        cfg.level = jl.get<double>();
        if (!(cfg.level > 0.0 && cfg.level < 1.0)) config_fail("'level' must lie in (0, 1)");
    }

    if (j.contains("schemes"))
        cfg.schemes = parse_scheme_choice(require_string(j, "top level", "schemes"));

    if (j.contains("report")) {
        const json& jr = j.at("report");
        if (!jr.is_object()) config_fail("'report' must be an object");
        check_keys(jr, "'report'", {"format", "path"});
        if (jr.contains("format"))
            cfg.format = parse_report_format(require_string(jr, "'report'", "format"));
        if (jr.contains("path")) cfg.report_path = require_string(jr, "'report'", "path");
    }

    if (j.contains("vectors_path")) cfg.vectors_path = require_string(j, "top level", "vectors_path");
    if (j.contains("unit_weights_path"))
        cfg.units_path = require_string(j, "top level", "unit_weights_path");

    validate_config(cfg);
    return cfg;
}

void validate_config(const AnalysisConfig& cfg) {
    if (cfg.input_path.empty()) config_fail("input path is required");
    if (cfg.treatment_column.empty()) config_fail("treatment column is required");
    if (cfg.treated_value.empty()) config_fail("treated value is required");
    if (cfg.outcome_column.empty()) config_fail("outcome column is required");
    if (!(cfg.level > 0.0 && cfg.level < 1.0)) config_fail("'level' must lie in (0, 1)");

    // Column roles must not overlap: a column can serve only one purpose.
    if (cfg.treatment_column == cfg.outcome_column)
        config_fail("treatment and outcome must be different columns");
    for (size_t k = 0; k < cfg.confounders.size(); ++k) {
        const std::string& name = cfg.confounders[k].column;
        if (name.empty()) config_fail("confounder names must not be empty");
        if (name == cfg.treatment_column)
            config_fail("confounder '" + name + "' duplicates the treatment column");
        if (name == cfg.outcome_column)
            config_fail("confounder '" + name + "' duplicates the outcome column");
        for (size_t m = 0; m < k; ++m)
            if (cfg.confounders[m].column == name)
                config_fail("confounder '" + name + "' is listed twice");
    }
}

AnalysisConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ConfigError("config: read failure on '" + path + "'");
    return parse_config_text(buf.str());
}

double time_to_radians(std::string_view field) {
    const auto bad = [&]() -> DataError {
        return DataError("invalid clock time '" + std::string(field) + "' (expected HH:MM)");
    };
    const size_t colon = field.find(':');
    if (colon == std::string_view::npos || colon < 1 || colon > 2 ||
        field.size() != colon + 3)
        throw bad();
    const auto digits = [](std::string_view s, int& out) {
        out = 0;
        for (const char c : s) {
            if (c < '0' || c > '9') return false;
            out = out * 10 + (c - '0');
        }
        return !s.empty();
    };
    int hh = 0, mm = 0;
    if (!digits(field.substr(0, colon), hh) || !digits(field.substr(colon + 1), mm)) throw bad();
    if (hh > 23 || mm > 59) throw bad();
    return two_pi * static_cast<double>(60 * hh + mm) / 1440.0;
}

double degrees_to_radians(double degrees) { return degrees * (pi / 180.0); }

double radians_to_minutes(double radians) { return radians * 1440.0 / two_pi; }

LoadedData load_dataset(const CsvTable& table, const AnalysisConfig& config) {
    LoadedData out;
    out.n_total = table.rows.size();

    const auto column_of = [&](const std::string& name) -> size_t {
        const long j = table.column(name);
        if (j < 0) throw DataError("column '" + name + "' not found in input");
        return static_cast<size_t>(j);
    };
    const size_t col_a = column_of(config.treatment_column);
    const size_t col_y = column_of(config.outcome_column);
    std::vector<size_t> col_x;
    col_x.reserve(config.confounders.size());
    for (const auto& spec : config.confounders) col_x.push_back(column_of(spec.column));

    size_t n_categorical = 0;
    for (const auto& spec : config.confounders)
        if (spec.kind == ColumnKind::categorical) ++n_categorical;

    struct ParsedRow {
        size_t record = 0; // 1-based data record number
        int a = 0;
        double theta = 0.0; // radians, not yet canonical
        std::vector<double> numeric;
        std::vector<std::string> category;
    };
    std::vector<ParsedRow> kept;
    std::vector<std::set<std::string>> levels(n_categorical);

    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const size_t record = i + 1;

        // Complete-case filter, attributed to the first missing column.
        if (row[col_a].empty()) {
            ++out.drops.missing_treatment;
            out.log_lines.push_back("data row " + std::to_string(record) + ": missing " +
                                    config.treatment_column);
            continue;
        }
        if (row[col_y].empty()) {
            ++out.drops.missing_outcome;
            out.log_lines.push_back("data row " + std::to_string(record) + ": missing " +
                                    config.outcome_column);
            continue;
        }
        bool incomplete = false;
        for (size_t k = 0; k < col_x.size(); ++k) {
            if (row[col_x[k]].empty()) {
                ++out.drops.missing_confounder;
                out.log_lines.push_back("data row " + std::to_string(record) + ": missing " +
                                        config.confounders[k].column);
                incomplete = true;
                break;
            }
        }
        if (incomplete) continue;

        ParsedRow parsed;
        parsed.record = record;
        parsed.a = (row[col_a] == config.treated_value) ? 1 : 0;
        try {
            switch (config.outcome_kind) {
            case OutcomeKind::radians:
                parsed.theta = parse_double_field(row[col_y]);
                break;
            case OutcomeKind::degrees:
                parsed.theta = degrees_to_radians(parse_double_field(row[col_y]));
                break;
            case OutcomeKind::clock24:
                parsed.theta = time_to_radians(row[col_y]);
                break;
            }
            size_t cat_slot = 0;
            for (size_t k = 0; k < col_x.size(); ++k) {
                if (config.confounders[k].kind == ColumnKind::numeric) {
                    parsed.numeric.push_back(parse_double_field(row[col_x[k]]));
                } else {
                    parsed.category.push_back(std::string(row[col_x[k]]));
                    levels[cat_slot].insert(parsed.category.back());
                    ++cat_slot;
                }
            }
        } catch (Error& e) {
            e.prepend_stage("data row " + std::to_string(record));
            throw;
        }
        kept.push_back(std::move(parsed));
    }

    if (kept.empty()) throw DataError("no usable rows after complete-case filtering");

    // Design layout: intercept, then confounders in config order. Each
    // categorical contributes one indicator per level except the
    // lexicographically smallest, which is the reference.
    out.design_columns.push_back("intercept");
    std::vector<std::vector<std::string>> dummy_levels(n_categorical);
    {
        size_t cat_slot = 0;
        for (const auto& spec : config.confounders) {
            if (spec.kind == ColumnKind::numeric) {
                out.design_columns.push_back(spec.column);
                continue;
            }
            const auto& lv = levels[cat_slot];
            if (lv.size() == 1) {
                out.log_lines.push_back("confounder " + spec.column + ": single level '" +
                                        *lv.begin() + "', no design columns added");
            }
            bool first = true;
            for (const auto& level : lv) {
                if (first) { // reference level
                    first = false;
                    continue;
                }
                dummy_levels[cat_slot].push_back(level);
                out.design_columns.push_back(spec.column + "=" + level);
            }
            ++cat_slot;
        }
    }

    const Eigen::Index n = static_cast<Eigen::Index>(kept.size());
    const Eigen::Index p = static_cast<Eigen::Index>(out.design_columns.size());
    Eigen::MatrixXd design(n, p);
    Eigen::VectorXi treatment(n);
    std::vector<Angle> outcome;
    outcome.reserve(kept.size());

    for (Eigen::Index i = 0; i < n; ++i) {
        const ParsedRow& row = kept[static_cast<size_t>(i)];
        design(i, 0) = 1.0;
        Eigen::Index col = 1;
        size_t num_slot = 0, cat_slot = 0;
        for (const auto& spec : config.confounders) {
            if (spec.kind == ColumnKind::numeric) {
                design(i, col++) = row.numeric[num_slot++];
            } else {
                for (const auto& level : dummy_levels[cat_slot])
                    design(i, col++) = (row.category[cat_slot] == level) ? 1.0 : 0.0;
                ++cat_slot;
            }
        }
        treatment(i) = row.a;
        outcome.push_back(canonical_angle(row.theta));
    }

    out.data = make_dataset(std::move(design), std::move(treatment), std::move(outcome));
    return out;
}

AnalysisReport run_analysis(const AnalysisConfig& config) {
    AnalysisReport rep;
    rep.input_path = config.input_path;
    rep.level = config.level;
    rep.clock_units = (config.outcome_kind == OutcomeKind::clock24);

    LoadedData loaded = [&] {
        try {
            const CsvTable table = read_csv(config.input_path);
            return load_dataset(table, config);
        } catch (Error& e) {
            e.prepend_stage("load");
            throw;
        }
    }();
    const CausalDataset& data = loaded.data;
    rep.n_total = loaded.n_total;
    rep.n_used = data.n();
    rep.drops = loaded.drops;
    rep.design_columns = std::move(loaded.design_columns);
    rep.log_lines = std::move(loaded.log_lines);
    for (Eigen::Index i = 0; i < data.treatment.size(); ++i) {
        if (data.treatment(i) == 1)
            ++rep.n_treated;
        else
            ++rep.n_control;
    }

    const PropensityFit fit = [&] {
        try {
            return fit_logistic(data.design, data.treatment);
        } catch (Error& e) {
            e.prepend_stage("propensity");
            throw;
        }
    }();

    std::vector<WeightScheme> wanted;
    switch (config.schemes) {
    case SchemeChoice::ht: wanted = {WeightScheme::horvitz_thompson}; break;
    case SchemeChoice::hajek: wanted = {WeightScheme::hajek}; break;
    case SchemeChoice::both:
        wanted = {WeightScheme::horvitz_thompson, WeightScheme::hajek};
        break;
    }

    for (const WeightScheme scheme : wanted) {
        SchemeResult sr;
        sr.scheme = scheme;
        try {
            sr.omega = estimate_omega(data, fit.fitted, scheme);
            sr.effects = estimate_effects(sr.omega);
            const ResultantVector arm1{sr.omega.alpha1, sr.omega.beta1};
            const ResultantVector arm0{sr.omega.alpha0, sr.omega.beta0};
            sr.mu1 = arm1.direction().radians();
            sr.rho1 = arm1.length();
            sr.mu0 = arm0.direction().radians();
            sr.rho0 = arm0.length();
        } catch (Error& e) {
            e.prepend_stage("estimation");
            throw;
        }
        try {
            const SandwichPieces pieces = empirical_pieces(data, fit, sr.omega);
            sr.effects = with_covariance(sr.effects, pieces, sr.omega);
            sr.intervals = wald_interval(sr.effects, config.level);
        } catch (Error& e) {
            e.prepend_stage("variance");
            throw;
        }
        rep.schemes.push_back(std::move(sr));
    }

    // Per-unit export always carries Horvitz-Thompson weights; the Hajek
    // weights are recoverable by renormalizing within each arm.
    const ArmWeights raw = ht_weights(data.treatment, fit.fitted);
    rep.units.reserve(data.n());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(data.n()); ++i) {
        UnitRecord u;
        u.arm = data.treatment(i);
        u.angle = data.outcome[static_cast<size_t>(i)].radians();
        u.weight = (u.arm == 1) ? raw.treated(i) : raw.control(i);
        rep.units.push_back(u);
    }
    return rep;
}

namespace {

std::string percent_label(double level) { return to_full_precision(level * 100.0) + "%"; }

void text_effect_line(std::ostringstream& os, const char* label, double est, double se,
                      double lo, double hi, const char* unit, double level) {
    os << "  " << label << to_fixed(est, 3);
    if (*unit) os << " " << unit;
    os << "   se " << to_fixed(se, 3) << "   " << percent_label(level) << " CI ["
       << to_fixed(lo, 3) << ", " << to_fixed(hi, 3) << "]\n";
}

std::string emit_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "Circular treatment effect analysis\n";
    os << "input: " << r.input_path << "\n";
    os << "rows: " << r.n_total << " total, " << r.n_used << " used";
    if (r.drops.total() > 0) {
        os << " (dropped: " << r.drops.missing_treatment << " missing treatment, "
           << r.drops.missing_outcome << " missing outcome, " << r.drops.missing_confounder
           << " missing confounder)";
    }
    os << "\n";
    os << "arms: " << r.n_treated << " treated, " << r.n_control << " control\n";
    os << "design:";
    for (const auto& c : r.design_columns) os << " " << c;
    os << "\n";
    for (const auto& line : r.log_lines) os << "note: " << line << "\n";
    for (const auto& sr : r.schemes) {
        os << "\n[" << scheme_name(sr.scheme) << "]\n";
        os << "  treated arm: mu = " << to_fixed(sr.mu1, 3) << " rad, rho = "
           << to_fixed(sr.rho1, 3) << "\n";
        os << "  control arm: mu = " << to_fixed(sr.mu0, 3) << " rad, rho = "
           << to_fixed(sr.rho0, 3) << "\n";
        text_effect_line(os, "ADTE (tau): ", sr.effects.tau, sr.effects.se_tau,
                         sr.intervals.tau_low, sr.intervals.tau_high, "rad", r.level);
        if (r.clock_units) {
            const double f = 1440.0 / two_pi;
            text_effect_line(os, "          = ", sr.effects.tau * f, sr.effects.se_tau * f,
                             sr.intervals.tau_low * f, sr.intervals.tau_high * f, "min",
                             r.level);
        }
        text_effect_line(os, "ALTE (xi):  ", sr.effects.xi, sr.effects.se_xi,
                         sr.intervals.xi_low, sr.intervals.xi_high, "", r.level);
    }
    return os.str();
}

std::string emit_csv(const AnalysisReport& r) {
    std::ostringstream os;
    os << "scheme,estimand,units,estimate,se,ci_low,ci_high\n";
    const auto line = [&os](const std::string& scheme, const char* estimand, const char* units,
                            double est, double se, double lo, double hi) {
        os << scheme << "," << estimand << "," << units << "," << to_full_precision(est) << ","
           << to_full_precision(se) << "," << to_full_precision(lo) << ","
           << to_full_precision(hi) << "\n";
    };
    for (const auto& sr : r.schemes) {
        const std::string scheme = scheme_name(sr.scheme);
        line(scheme, "tau", "radians", sr.effects.tau, sr.effects.se_tau, sr.intervals.tau_low,
             sr.intervals.tau_high);
        if (r.clock_units) {
            const double f = 1440.0 / two_pi;
            line(scheme, "tau", "minutes", sr.effects.tau * f, sr.effects.se_tau * f,
                 sr.intervals.tau_low * f, sr.intervals.tau_high * f);
        }
        line(scheme, "xi", "none", sr.effects.xi, sr.effects.se_xi, sr.intervals.xi_low,
             sr.intervals.xi_high);
    }
    return os.str();
}

std::string emit_json(const AnalysisReport& r) {
    json j;
    j["input"] = {{"path", r.input_path},
                  {"rows", r.n_total},
                  {"used", r.n_used},
                  {"dropped",
                   {{"missing_treatment", r.drops.missing_treatment},
                    {"missing_outcome", r.drops.missing_outcome},
                    {"missing_confounder", r.drops.missing_confounder}}},
                  {"treated", r.n_treated},
                  {"control", r.n_control},
                  {"design_columns", r.design_columns},
                  {"log", r.log_lines}};
    j["level"] = r.level;
    j["clock_units"] = r.clock_units;
    j["schemes"] = json::array();
    for (const auto& sr : r.schemes) {
        json s;
        s["scheme"] = scheme_name(sr.scheme);
        s["arm1"] = {{"alpha", sr.omega.alpha1},
                     {"beta", sr.omega.beta1},
                     {"mu", sr.mu1},
                     {"rho", sr.rho1}};
        s["arm0"] = {{"alpha", sr.omega.alpha0},
                     {"beta", sr.omega.beta0},
                     {"mu", sr.mu0},
                     {"rho", sr.rho0}};
        s["tau"] = {{"estimate", sr.effects.tau},
                    {"se", sr.effects.se_tau},
                    {"ci", {sr.intervals.tau_low, sr.intervals.tau_high}}};
        s["xi"] = {{"estimate", sr.effects.xi},
                   {"se", sr.effects.se_xi},
                   {"ci", {sr.intervals.xi_low, sr.intervals.xi_high}}};
        if (r.clock_units) {
            const double f = 1440.0 / two_pi;
            s["tau_minutes"] = {{"estimate", sr.effects.tau * f},
                                {"se", sr.effects.se_tau * f},
                                {"ci", {sr.intervals.tau_low * f, sr.intervals.tau_high * f}}};
        }
        j["schemes"].push_back(std::move(s));
    }
    return j.dump(2) + "\n";
}

} // namespace

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
    switch (format) {
    case ReportFormat::text: return emit_text(report);
    case ReportFormat::csv: return emit_csv(report);
    case ReportFormat::json: return emit_json(report);
    }
    throw ConfigError("emit_report: unknown format");
}

std::string emit_vectors_csv(const AnalysisReport& report) {
    std::ostringstream os;
    os << "scheme,arm,alpha,beta,mu,rho\n";
    for (const auto& sr : report.schemes) {
        os << scheme_name(sr.scheme) << ",1," << to_full_precision(sr.omega.alpha1) << ","
           << to_full_precision(sr.omega.beta1) << "," << to_full_precision(sr.mu1) << ","
           << to_full_precision(sr.rho1) << "\n";
        os << scheme_name(sr.scheme) << ",0," << to_full_precision(sr.omega.alpha0) << ","
           << to_full_precision(sr.omega.beta0) << "," << to_full_precision(sr.mu0) << ","
           << to_full_precision(sr.rho0) << "\n";
    }
    return os.str();
}

std::string emit_unit_weights_csv(const AnalysisReport& report) {
    std::ostringstream os;
    os << "arm,angle,weight\n";
    for (const auto& u : report.units)
        os << u.arm << "," << to_full_precision(u.angle) << "," << to_full_precision(u.weight)
           << "\n";
    return os.str();
}

} // namespace circal
