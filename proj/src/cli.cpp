#include "pvlcoe/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "pvlcoe/scenario_io.hpp"
#include "pvlcoe/sensitivity.hpp"
#include "pvlcoe/table.hpp"

namespace pvlcoe::cli {

namespace {

/// Mistakes in the invocation itself (bad flag value, unknown override
/// key). Distinct from evaluation errors so scripts can tell them apart.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

constexpr const char* rate_units = "fraction or percent, e.g. 0.05 or 5%";

double parse_rate_flag(const std::string& text, const char* flag) {
    try {
        return parse_fraction(text);
    } catch (const ValidationError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

struct OutputOptions {
    std::string format = "human";
    std::string path;
};

void add_output_options(CLI::App* command, OutputOptions& options) {
    command
        ->add_option("--format", options.format,
                     "output format: human, csv or json (default from PVLCOE_FORMAT)")
        ->check(CLI::IsMember({"human", "csv", "json"}))
        ->envname("PVLCOE_FORMAT");
    command->add_option("-o,--output", options.path, "write the result to this file");
}

void deliver(const OutputOptions& options, const std::string& text, std::ostream& out) {
    if (options.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(options.path, std::ios::binary);
    if (!file) throw ModelError("cannot open output file " + options.path);
    file << text;
}

struct ScenarioOptions {
    std::string path;
    std::vector<std::string> overrides;
};

void add_scenario_options(CLI::App* command, ScenarioOptions& options) {
    command->add_option("scenario", options.path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    command->add_option("--set", options.overrides,
                        "override a scenario field, e.g. --set financing.spread=7.5% "
                        "(repeatable; rates accept percent notation)");
}

const std::set<std::string>& override_allowlist() {
    static const std::set<std::string> paths = {
        "name", "description", "model",
        "plant.pci", "plant.initial_kwh", "plant.efficiency", "plant.insolation",
        "plant.sdr", "plant.lifetime_n", "plant.ao", "plant.tr", "plant.rv",
        "plant.degradation_exponent",
        "curve.kind", "curve.rate",
        "financing.spread", "financing.discount_mode", "financing.rate_mode",
        "financing.financed_fraction", "financing.loan_shape", "financing.denominator",
        "module_replacement.c_bom", "module_replacement.module_life",
        "module_replacement.energy_fraction_remaining", "module_replacement.horizon",
        "sweep.parameter",
    };
    return paths;
}

void apply_override(nlohmann::ordered_json& document, const std::string& assignment) {
    const auto equals = assignment.find('=');
    if (equals == std::string::npos || equals == 0) {
        throw UsageError("--set expects key=value, got \"" + assignment + "\"");
    }
    const std::string key = assignment.substr(0, equals);
    const std::string raw = assignment.substr(equals + 1);
    if (!override_allowlist().contains(key)) {
        throw UsageError("--set: \"" + key + "\" is not an overridable scenario field");
    }

    nlohmann::ordered_json value = nlohmann::ordered_json::parse(raw, nullptr, false);
    if (value.is_discarded() || value.is_object() || value.is_array()) {
        value = raw;  // bare words and percent strings stay strings
    }

    const auto dot = key.find('.');
    if (dot == std::string::npos) {
        document[key] = std::move(value);
    } else {
        document[key.substr(0, dot)][key.substr(dot + 1)] = std::move(value);
    }
}

Scenario load_with_overrides(const ScenarioOptions& options) {
    std::ifstream stream(options.path);
    if (!stream) throw ModelError("cannot open scenario file " + options.path);
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    nlohmann::ordered_json document = parse_scenario_document(buffer.str());
    if (!document.is_object()) throw ValidationError("scenario document must be a JSON object");
    for (const auto& assignment : options.overrides) {
        apply_override(document, assignment);
    }
    return scenario_from_json(document);
}

const char* to_cstr(DiscountMode mode) {
    return mode == DiscountMode::legacy_equal_rates ? "legacy_equal_rates" : "corrected_riskfree";
}
const char* to_cstr(RateMode mode) {
    return mode == RateMode::flat_at_horizon ? "flat_at_horizon" : "per_year_term_structure";
}
const char* to_cstr(DenominatorMode mode) {
    return mode == DenominatorMode::discounted_legacy ? "discounted_legacy" : "physical_corrected";
}
const char* to_cstr(LoanShape shape) {
    return shape == LoanShape::level_payment ? "level_payment" : "balloon";
}

std::string format_human(const Table& table) {
    std::vector<std::size_t> widths(table.columns.size());
    auto text_of = [](const Cell& cell) -> std::string {
        if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
        if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
        return std::get<std::string>(cell);
    };
    for (std::size_t c = 0; c < table.columns.size(); ++c) widths[c] = table.columns[c].size();
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], text_of(row[c]).size());
        }
    }
    std::string out;
    auto append_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += cells[c];
            if (c + 1 < cells.size()) out.append(widths[c] - cells[c].size() + 2, ' ');
        }
        out += '\n';
    };
    append_row(table.columns);
    for (const auto& row : table.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (const auto& cell : row) cells.push_back(text_of(cell));
        append_row(cells);
    }
    return out;
}

std::string render_table(const Table& table, const std::string& format) {
    return format == "human" ? format_human(table) : emit_table(table, format);
}

std::string scenario_echo(const Scenario& scenario) {
    return scenario_to_json(scenario).dump(2) + "\n";
}

/// The echoed effective scenario rides along with the result for human and
/// json formats; csv stays pure tabular data and the echo goes to stderr.
void echo_scenario(const Scenario& scenario, const OutputOptions& options, std::string& text,
                   std::ostream& err) {
    if (options.format == "human") {
        text += "scenario (effective):\n" + scenario_echo(scenario);
    } else if (options.format == "csv") {
        err << "scenario (effective): " << scenario_to_json(scenario).dump() << '\n';
    }
}

int cmd_compute(const Scenario& scenario, const OutputOptions& options, std::ostream& out,
                std::ostream& err) {
    std::string text;
    if (scenario.model == ModelKind::lcic) {
        const double value = evaluate_scenario(scenario);
        if (options.format == "json") {
            nlohmann::ordered_json payload;
            payload["scenario"] = scenario_to_json(scenario);
            payload["result"]["lcic"] = value;
            text = payload.dump(2) + "\n";
        } else if (options.format == "csv") {
            Table table{{"field", "value"}, {{std::string("lcic"), value}}};
            text = emit_csv(table);
        } else {
            text = "model = lcic\nlcic [currency] = " + format_double(value) + "\n";
            echo_scenario(scenario, options, text, err);
        }
        if (options.format == "csv") echo_scenario(scenario, options, text, err);
        deliver(options, text, out);
        return exit_ok;
    }

    const LcoeResult result = evaluate_scenario_result(scenario);
    if (options.format == "json") {
        nlohmann::ordered_json payload;
        payload["scenario"] = scenario_to_json(scenario);
        nlohmann::ordered_json& r = payload["result"];
        r["lcoe"] = result.lcoe;
        r["numerator"] = result.numerator;
        r["denominator_kwh"] = result.denominator_kwh;
        r["components"]["capital"] = result.components.capital;
        r["components"]["tax_shield"] = result.components.tax_shield;
        r["components"]["loan_payments"] = result.components.loan_payments;
        r["components"]["outlays"] = result.components.outlays;
        r["components"]["residual_credit"] = result.components.residual_credit;
        r["modes"]["discount_mode"] = to_cstr(result.discount_mode);
        r["modes"]["rate_mode"] = to_cstr(result.rate_mode);
        r["modes"]["denominator"] = to_cstr(result.denominator_mode);
        r["modes"]["loan_shape"] = to_cstr(result.loan_shape);
        r["modes"]["financed_fraction"] = result.financed_fraction;
        text = payload.dump(2) + "\n";
    } else if (options.format == "csv") {
        Table table{{"field", "value"}, {}};
        table.rows.push_back({std::string("lcoe"), result.lcoe});
        table.rows.push_back({std::string("numerator"), result.numerator});
        table.rows.push_back({std::string("denominator_kwh"), result.denominator_kwh});
        table.rows.push_back({std::string("capital"), result.components.capital});
        table.rows.push_back({std::string("tax_shield"), result.components.tax_shield});
        table.rows.push_back({std::string("loan_payments"), result.components.loan_payments});
        table.rows.push_back({std::string("outlays"), result.components.outlays});
        table.rows.push_back({std::string("residual_credit"), result.components.residual_credit});
        text = emit_csv(table);
        echo_scenario(scenario, options, text, err);
    } else {
        std::ostringstream human;
        human << "scenario: " << (scenario.name.empty() ? "(unnamed)" : scenario.name)
              << "  (model " << (scenario.model == ModelKind::eq1 ? "eq1" : "eq3") << ")\n"
              << "lcoe [currency/kWh]    = " << format_double(result.lcoe) << "\n"
              << "numerator [currency]   = " << format_double(result.numerator) << "\n"
              << "denominator [kWh]      = " << format_double(result.denominator_kwh) << "\n"
              << "components:\n"
              << "  capital          = " << format_double(result.components.capital) << "\n"
              << "  tax_shield       = " << format_double(result.components.tax_shield) << "\n"
              << "  loan_payments    = " << format_double(result.components.loan_payments) << "\n"
              << "  outlays          = " << format_double(result.components.outlays) << "\n"
              << "  residual_credit  = " << format_double(result.components.residual_credit) << "\n"
              << "modes: discount=" << to_cstr(result.discount_mode)
              << " rate=" << to_cstr(result.rate_mode)
              << " denominator=" << to_cstr(result.denominator_mode)
              << " loan=" << to_cstr(result.loan_shape)
              << " financed_fraction=" << format_double(result.financed_fraction) << "\n";
        text = human.str();
        echo_scenario(scenario, options, text, err);
    }
    deliver(options, text, out);
    return exit_ok;
}

std::string spread_label(double spread) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%g", spread * 100.0);
    return buffer;
}

int cmd_curve(const YieldCurve& curve, double from, double to, double step,
              const std::vector<double>& spreads, double sdr, const OutputOptions& options,
              std::ostream& out) {
    Table table;
    table.columns = {"maturity_years", "yield"};
    for (double spread : spreads) {
        table.columns.push_back("cost_factor_spread" + spread_label(spread));
    }
    for (double t : SweepSpec::make_grid(from, to, step)) {
        std::vector<Cell> row;
        row.emplace_back(t);
        const double yield = model_yield(curve, t);
        row.emplace_back(yield);
        if (!spreads.empty()) {
            const double rounded = std::round(t);
            if (std::abs(t - rounded) > 1e-9 || rounded < 1.0) {
                throw UsageError("cost-factor columns need whole-year maturities >= 1");
            }
            for (double spread : spreads) {
                row.emplace_back(cost_factor(yield + spread, yield, static_cast<int>(rounded), sdr));
            }
        }
        table.rows.push_back(std::move(row));
    }
    deliver(options, render_table(table, options.format), out);
    return exit_ok;
}

int cmd_sweep(const Scenario& scenario, const SweepSpec& spec, const OutputOptions& options,
              std::ostream& out, std::ostream& err) {
    const SweepResult result = sweep(spec, scenario);
    Table table;
    table.columns = {std::string(to_string(result.parameter)), "cost", "relative_cost", "status"};
    for (const auto& row : result.rows) {
        if (row.ok) {
            table.rows.push_back({row.value, row.cost, row.relative_cost, std::string("ok")});
        } else {
            table.rows.push_back({row.value, std::string(), std::string(),
                                  std::string("error: ") + row.error});
        }
    }
    std::string text = render_table(table, options.format);
    echo_scenario(scenario, options, text, err);
    deliver(options, text, out);
    return exit_ok;
}

int cmd_sensitivity(const Scenario& scenario, const std::vector<Parameter>& parameters,
                    double rel_step, const OutputOptions& options, std::ostream& out,
                    std::ostream& err) {
    const SensitivityReport report = elasticity_report(scenario, parameters, rel_step);
    Table table;
    table.columns = {"parameter", "elasticity"};
    for (const auto& entry : report.entries) {
        table.rows.push_back({std::string(to_string(entry.parameter)), entry.value});
    }
    std::string text = render_table(table, options.format);
    echo_scenario(scenario, options, text, err);
    deliver(options, text, out);
    return exit_ok;
}

int cmd_mc(const Scenario& scenario, McVariant variant, int samples, std::uint64_t seed,
           const OutputOptions& options, std::ostream& out, std::ostream& err) {
    if (scenario.distributions.empty()) {
        throw ModelError("scenario has no distributions block to sample from");
    }
    const SensitivityReport report =
        monte_carlo_rank_sensitivity(scenario.distributions, scenario, variant, samples, seed);

    if (options.format == "json") {
        nlohmann::ordered_json payload;
        payload["scenario"] = scenario_to_json(scenario);
        nlohmann::ordered_json& r = payload["report"];
        r["mode"] = "rank_correlation";
        r["samples"] = report.sample_count;
        r["seed"] = report.seed;
        r["variant"] = variant == McVariant::legacy ? "legacy" : "corrected";
        r["baseline"] = report.baseline;
        r["entries"] = nlohmann::ordered_json::array();
        for (const auto& entry : report.entries) {
            nlohmann::ordered_json e;
            e["parameter"] = std::string(to_string(entry.parameter));
            e["rank_correlation"] = entry.value;
            e["degenerate"] = entry.degenerate;
            r["entries"].push_back(std::move(e));
        }
        deliver(options, payload.dump(2) + "\n", out);
        return exit_ok;
    }

    Table table;
    table.columns = {"parameter", "rank_correlation", "degenerate"};
    for (const auto& entry : report.entries) {
        table.rows.push_back({std::string(to_string(entry.parameter)), entry.value,
                              std::string(entry.degenerate ? "true" : "false")});
    }
    std::string text;
    if (options.format == "human") {
        std::ostringstream head;
        head << "mode = rank_correlation\n"
             << "samples = " << report.sample_count << "\n"
             << "seed = " << report.seed << "\n"
             << "variant = " << (variant == McVariant::legacy ? "legacy" : "corrected") << "\n"
             << "baseline = " << report.baseline << "\n";
        text = head.str() + format_human(table);
    } else {
        text = emit_table(table, options.format);
    }
    echo_scenario(scenario, options, text, err);
    deliver(options, text, out);
    return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pvlcoe: levelized-cost-of-energy models for photovoltaics.\n"
                 "Rates are annual fractions; every rate flag also accepts percent\n"
                 "notation (\"5%\" means 0.05)."};
    app.require_subcommand(1);

    // compute
    ScenarioOptions compute_scenario;
    OutputOptions compute_output;
    CLI::App* compute = app.add_subcommand("compute", "evaluate a scenario and print the cost breakdown");
    add_scenario_options(compute, compute_scenario);
    add_output_options(compute, compute_output);

    // cost-factor
    std::string cf_r, cf_dr, cf_sdr = "0";
    int cf_n = 0;
    OutputOptions cf_output;
    CLI::App* cost_factor_cmd =
        app.add_subcommand("cost-factor", "zero-coupon cost factor from flags alone");
    cost_factor_cmd->add_option("--r", cf_r, std::string("borrowing rate, ") + rate_units)->required();
    cost_factor_cmd->add_option("--dr", cf_dr, std::string("discount rate, ") + rate_units)->required();
    cost_factor_cmd->add_option("--sdr", cf_sdr, std::string("system degradation rate, ") + rate_units);
    cost_factor_cmd->add_option("--n", cf_n, "lifetime in years")->required();
    add_output_options(cost_factor_cmd, cf_output);

    // curve
    std::string curve_kind = "parametric", curve_rate = "0", curve_sdr = "0.6%";
    double curve_from = 1.0, curve_to = 30.0, curve_step = 1.0;
    std::vector<std::string> curve_spreads;
    OutputOptions curve_output;
    CLI::App* curve_cmd = app.add_subcommand("curve", "tabulate the yield curve over a maturity grid");
    curve_cmd->add_option("--kind", curve_kind, "curve kind: parametric or flat")
        ->check(CLI::IsMember({"parametric", "flat"}));
    curve_cmd->add_option("--rate", curve_rate, std::string("flat curve rate, ") + rate_units);
    curve_cmd->add_option("--from", curve_from, "first maturity in years");
    curve_cmd->add_option("--to", curve_to, "last maturity in years");
    curve_cmd->add_option("--step", curve_step, "maturity step in years");
    curve_cmd->add_option("--cost-factor-at-spread", curve_spreads,
                          std::string("append a cost-factor column at this credit spread, ") +
                              rate_units + " (repeatable)");
    curve_cmd->add_option("--sdr", curve_sdr,
                          std::string("degradation rate for cost-factor columns, ") + rate_units);
    add_output_options(curve_cmd, curve_output);

    // sweep
    ScenarioOptions sweep_scenario;
    OutputOptions sweep_output;
    std::string sweep_param, sweep_grid, sweep_from, sweep_to, sweep_step;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate a scenario across a parameter grid");
    add_scenario_options(sweep_cmd, sweep_scenario);
    sweep_cmd->add_option("--param", sweep_param,
                          "parameter to sweep (lifetime_n, sdr, dr, spread, efficiency, "
                          "insolation, pci); defaults to the scenario's sweep block");
    sweep_cmd->add_option("--grid", sweep_grid,
                          std::string("comma-separated grid values, each ") + rate_units);
    sweep_cmd->add_option("--from", sweep_from, "grid start (with --to/--step)");
    sweep_cmd->add_option("--to", sweep_to, "grid stop");
    sweep_cmd->add_option("--step", sweep_step, "grid step");
    add_output_options(sweep_cmd, sweep_output);

    // nmin
    std::string nmin_spread, nmin_sdr = "0.6%", nmin_kind = "parametric", nmin_rate = "0";
    int nmin_nmax = 60;
    OutputOptions nmin_output;
    CLI::App* nmin_cmd =
        app.add_subcommand("nmin", "lifetime minimizing the cost factor for a credit spread");
    nmin_cmd->add_option("--spread", nmin_spread, std::string("credit spread, ") + rate_units)
        ->required();
    nmin_cmd->add_option("--sdr", nmin_sdr, std::string("system degradation rate, ") + rate_units);
    nmin_cmd->add_option("--n-max", nmin_nmax, "largest lifetime to scan (years)");
    nmin_cmd->add_option("--kind", nmin_kind, "curve kind: parametric or flat")
        ->check(CLI::IsMember({"parametric", "flat"}));
    nmin_cmd->add_option("--rate", nmin_rate, std::string("flat curve rate, ") + rate_units);
    add_output_options(nmin_cmd, nmin_output);

    // sensitivity
    ScenarioOptions sens_scenario;
    OutputOptions sens_output;
    std::vector<std::string> sens_params;
    double sens_rel_step = 1e-4;
    CLI::App* sens_cmd =
        app.add_subcommand("sensitivity", "finite-difference elasticities of a scenario");
    add_scenario_options(sens_cmd, sens_scenario);
    sens_cmd->add_option("--param", sens_params,
                         "parameter to include (repeatable; defaults to every "
                         "continuously perturbable parameter)");
    sens_cmd->add_option("--rel-step", sens_rel_step, "relative step, in (0, 0.1]");
    add_output_options(sens_cmd, sens_output);

    // mc
    ScenarioOptions mc_scenario;
    OutputOptions mc_output;
    int mc_samples = 10000;
    std::uint64_t mc_seed = 0;
    std::string mc_variant = "corrected";
    CLI::App* mc_cmd = app.add_subcommand(
        "mc", "Monte Carlo rank-correlation sensitivities from the scenario's distributions");
    add_scenario_options(mc_cmd, mc_scenario);
    mc_cmd->add_option("--samples", mc_samples, "sample count (>= 100)");
    mc_cmd->add_option("--seed", mc_seed, "RNG seed; required for reproducibility")->required();
    mc_cmd->add_option("--variant", mc_variant,
                       "discounting variant: legacy (DR = borrowing rate, discounted output) "
                       "or corrected (risk-free DR, physical output)")
        ->check(CLI::IsMember({"legacy", "corrected"}));
    add_output_options(mc_cmd, mc_output);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("pvlcoe");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        while (!target->get_subcommands().empty()) target = target->get_subcommands().front();
        out << target->help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (compute->parsed()) {
            return cmd_compute(load_with_overrides(compute_scenario), compute_output, out, err);
        }
        if (cost_factor_cmd->parsed()) {
            const double value =
                cost_factor(parse_rate_flag(cf_r, "--r"), parse_rate_flag(cf_dr, "--dr"), cf_n,
                            parse_rate_flag(cf_sdr, "--sdr"));
            std::string text;
            if (cf_output.format == "json") {
                nlohmann::ordered_json payload;
                payload["cost_factor"] = value;
                text = payload.dump(2) + "\n";
            } else if (cf_output.format == "csv") {
                text = emit_csv(Table{{"cost_factor"}, {{value}}});
            } else {
                text = "cost_factor = " + format_double(value) + "\n";
            }
            deliver(cf_output, text, out);
            return exit_ok;
        }
        if (curve_cmd->parsed()) {
            if (curve_kind != "flat" && curve_cmd->count("--rate") > 0) {
                throw UsageError("--rate only applies to --kind flat");
            }
            const YieldCurve curve = curve_kind == "flat"
                                         ? YieldCurve::flat(parse_rate_flag(curve_rate, "--rate"))
                                         : YieldCurve::parametric();
            std::vector<double> spreads;
            for (const auto& s : curve_spreads) {
                spreads.push_back(parse_rate_flag(s, "--cost-factor-at-spread"));
            }
            return cmd_curve(curve, curve_from, curve_to, curve_step, spreads,
                             parse_rate_flag(curve_sdr, "--sdr"), curve_output, out);
        }
        if (sweep_cmd->parsed()) {
            const Scenario scenario = load_with_overrides(sweep_scenario);
            SweepSpec spec;
            if (!sweep_param.empty()) {
                const auto parameter = parse_parameter(sweep_param);
                if (!parameter) throw UsageError("--param: unknown parameter \"" + sweep_param + "\"");
                spec.parameter = *parameter;
                if (!sweep_grid.empty()) {
                    std::stringstream values(sweep_grid);
                    std::string item;
                    while (std::getline(values, item, ',')) {
                        spec.grid.push_back(parse_rate_flag(item, "--grid"));
                    }
                } else if (!sweep_from.empty() && !sweep_to.empty() && !sweep_step.empty()) {
                    spec.grid = SweepSpec::make_grid(parse_rate_flag(sweep_from, "--from"),
                                                     parse_rate_flag(sweep_to, "--to"),
                                                     parse_rate_flag(sweep_step, "--step"));
                } else {
                    throw UsageError("--param needs --grid or --from/--to/--step");
                }
            } else if (!sweep_grid.empty() || !sweep_from.empty() || !sweep_to.empty() ||
                       !sweep_step.empty()) {
                throw UsageError("--grid/--from/--to/--step require --param");
            } else if (scenario.sweep) {
                spec = *scenario.sweep;
            } else {
                throw UsageError("scenario has no sweep block; pass --param and a grid");
            }
            return cmd_sweep(scenario, spec, sweep_output, out, err);
        }
        if (nmin_cmd->parsed()) {
            if (nmin_kind != "flat" && nmin_cmd->count("--rate") > 0) {
                throw UsageError("--rate only applies to --kind flat");
            }
            const YieldCurve curve = nmin_kind == "flat"
                                         ? YieldCurve::flat(parse_rate_flag(nmin_rate, "--rate"))
                                         : YieldCurve::parametric();
            const NminResult result = find_nmin(curve, parse_rate_flag(nmin_spread, "--spread"),
                                                parse_rate_flag(nmin_sdr, "--sdr"), nmin_nmax);
            std::string text;
            if (nmin_output.format == "json") {
                nlohmann::ordered_json payload;
                payload["n_min"] = result.n_min;
                payload["cost_factor"] = result.cost;
                text = payload.dump(2) + "\n";
            } else if (nmin_output.format == "csv") {
                text = emit_csv(Table{{"n_min", "cost_factor"},
                                      {{static_cast<std::int64_t>(result.n_min), result.cost}}});
            } else {
                text = "n_min = " + std::to_string(result.n_min) +
                       "\ncost_factor = " + format_double(result.cost) + "\n";
            }
            deliver(nmin_output, text, out);
            return exit_ok;
        }
        if (sens_cmd->parsed()) {
            const Scenario scenario = load_with_overrides(sens_scenario);
            std::vector<Parameter> parameters;
            if (sens_params.empty()) {
                if (scenario.model == ModelKind::lcic) {
                    parameters = {Parameter::dr};
                } else {
                    parameters = {Parameter::sdr, Parameter::dr, Parameter::spread,
                                  Parameter::efficiency, Parameter::insolation, Parameter::pci};
                }
            } else {
                for (const auto& name : sens_params) {
                    const auto parameter = parse_parameter(name);
                    if (!parameter) throw UsageError("--param: unknown parameter \"" + name + "\"");
                    parameters.push_back(*parameter);
                }
            }
            return cmd_sensitivity(scenario, parameters, sens_rel_step, sens_output, out, err);
        }
        if (mc_cmd->parsed()) {
            const Scenario scenario = load_with_overrides(mc_scenario);
            const McVariant variant =
                mc_variant == "legacy" ? McVariant::legacy : McVariant::corrected;
            return cmd_mc(scenario, variant, mc_samples, mc_seed, mc_output, out, err);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_evaluation;
    }
    err << "usage error: no subcommand given\n";
    return exit_usage;
}

}  // namespace pvlcoe::cli
