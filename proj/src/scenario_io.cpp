#include "pvlcoe/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace pvlcoe {

using nlohmann::ordered_json;

namespace {

double parse_double_strict(std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ValidationError("\"" + std::string(text) + "\" is not a number");
    }
    return value;
}

std::string path_of(const std::string& context, const std::string& key) {
    return context.empty() ? key : context + "." + key;
}

void reject_unknown_keys(const ordered_json& object, const std::string& context,
                         std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* candidate : allowed) {
            if (key == candidate) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ValidationError("unknown key \"" + path_of(context, key) + "\"");
        }
    }
}

const ordered_json* find(const ordered_json& object, const std::string& key) {
    const auto it = object.find(key);
    return it == object.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const ordered_json& value, const std::string& where) {
    if (!value.is_number()) {
        throw ValidationError("\"" + where + "\" must be a number");
    }
    return value.get<double>();
}

/// Rate-like fields additionally accept the percent notation "5%".
double as_fraction(const ordered_json& value, const std::string& where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) {
        try {
            return parse_fraction(value.get<std::string>());
        } catch (const ValidationError& e) {
            throw ValidationError("\"" + where + "\": " + e.what());
        }
    }
    throw ValidationError("\"" + where + "\" must be a number or a percent string");
}

int as_int(const ordered_json& value, const std::string& where) {
    double d = 0.0;
    if (value.is_number_unsigned()) {
        const auto u = value.get<std::uint64_t>();
        d = static_cast<double>(u);
    } else if (value.is_number_integer()) {
        d = static_cast<double>(value.get<std::int64_t>());
    } else if (value.is_number()) {
        d = value.get<double>();
    } else {
        throw ValidationError("\"" + where + "\" must be an integer");
    }
    if (std::round(d) != d || std::abs(d) > 2.0e9) {
        throw ValidationError("\"" + where + "\" must be an integer in range");
    }
    return static_cast<int>(d);
}

std::string as_string(const ordered_json& value, const std::string& where) {
    if (!value.is_string()) {
        throw ValidationError("\"" + where + "\" must be a string");
    }
    return value.get<std::string>();
}

Parameter as_parameter(const ordered_json& value, const std::string& where) {
    const std::string name = as_string(value, where);
    const auto parameter = parse_parameter(name);
    if (!parameter) {
        throw ValidationError("\"" + where + "\": unknown parameter \"" + name + "\"");
    }
    return *parameter;
}

PlantSpec load_plant(const ordered_json& object) {
    reject_unknown_keys(object, "plant",
                        {"pci", "initial_kwh", "efficiency", "insolation", "sdr",
                         "lifetime_n", "ao", "tr", "rv", "degradation_exponent"});
    PlantSpec plant;
    const auto* pci = find(object, "pci");
    const auto* kwh = find(object, "initial_kwh");
    if (!pci) throw ValidationError("\"plant.pci\" is required");
    if (!kwh) throw ValidationError("\"plant.initial_kwh\" is required");
    plant.pci = as_number(*pci, "plant.pci");
    plant.initial_kwh = as_number(*kwh, "plant.initial_kwh");
    if (const auto* v = find(object, "efficiency")) plant.efficiency = as_fraction(*v, "plant.efficiency");
    if (const auto* v = find(object, "insolation")) plant.insolation = as_number(*v, "plant.insolation");
    if (const auto* v = find(object, "sdr")) plant.sdr = as_fraction(*v, "plant.sdr");
    if (const auto* v = find(object, "lifetime_n")) plant.lifetime_n = as_int(*v, "plant.lifetime_n");
    if (const auto* v = find(object, "ao")) plant.ao = as_number(*v, "plant.ao");
    if (const auto* v = find(object, "tr")) plant.tr = as_fraction(*v, "plant.tr");
    if (const auto* v = find(object, "rv")) plant.rv = as_number(*v, "plant.rv");
    if (const auto* v = find(object, "degradation_exponent")) {
        const std::string tag = as_string(*v, "plant.degradation_exponent");
        if (tag == "n_minus_one") plant.degradation_exponent = DegradationExponent::n_minus_one;
        else if (tag == "n") plant.degradation_exponent = DegradationExponent::n;
        else throw ValidationError("\"plant.degradation_exponent\" must be \"n_minus_one\" or \"n\"");
    }
    try {
        plant.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("plant: ") + e.what());
    }
    return plant;
}

YieldCurve load_curve(const ordered_json& object) {
    reject_unknown_keys(object, "curve", {"kind", "coefficients", "rate", "points"});
    const auto* kind = find(object, "kind");
    if (!kind) throw ValidationError("\"curve.kind\" is required");
    const std::string tag = as_string(*kind, "curve.kind");
    if (tag == "parametric") {
        YieldCurve::Coefficients coefficients = YieldCurve::default_treasury_fit();
        if (const auto* v = find(object, "coefficients")) {
            if (!v->is_array() || v->size() != 4) {
                throw ValidationError("\"curve.coefficients\" must be an array [a, b, c, d]");
            }
            coefficients = {as_number((*v)[0], "curve.coefficients[0]"),
                            as_number((*v)[1], "curve.coefficients[1]"),
                            as_number((*v)[2], "curve.coefficients[2]"),
                            as_number((*v)[3], "curve.coefficients[3]")};
        }
        if (find(object, "rate") || find(object, "points")) {
            throw ValidationError("parametric curve takes no \"rate\" or \"points\"");
        }
        return YieldCurve::parametric(coefficients);
    }
    if (tag == "flat") {
        const auto* rate = find(object, "rate");
        if (!rate) throw ValidationError("\"curve.rate\" is required for a flat curve");
        if (find(object, "coefficients") || find(object, "points")) {
            throw ValidationError("flat curve takes no \"coefficients\" or \"points\"");
        }
        return YieldCurve::flat(as_fraction(*rate, "curve.rate"));
    }
    if (tag == "tabulated") {
        const auto* points = find(object, "points");
        if (!points || !points->is_array() || points->empty()) {
            throw ValidationError("\"curve.points\" must be a non-empty array of [years, rate] pairs");
        }
        if (find(object, "coefficients") || find(object, "rate")) {
            throw ValidationError("tabulated curve takes no \"coefficients\" or \"rate\"");
        }
        std::vector<std::pair<double, double>> table;
        for (std::size_t i = 0; i < points->size(); ++i) {
            const auto& entry = (*points)[i];
            const std::string where = "curve.points[" + std::to_string(i) + "]";
            if (!entry.is_array() || entry.size() != 2) {
                throw ValidationError("\"" + where + "\" must be a [years, rate] pair");
            }
            table.emplace_back(as_number(entry[0], where + "[0]"),
                               as_fraction(entry[1], where + "[1]"));
        }
        return YieldCurve::tabulated(std::move(table));
    }
    throw ValidationError("\"curve.kind\" must be \"parametric\", \"flat\" or \"tabulated\"");
}

void load_financing(const ordered_json& object, Scenario& scenario) {
    reject_unknown_keys(object, "financing",
                        {"spread", "discount_mode", "rate_mode", "financed_fraction",
                         "loan_shape", "denominator"});
    if (const auto* v = find(object, "spread")) {
        scenario.financing.spread = as_fraction(*v, "financing.spread");
    }
    if (const auto* v = find(object, "discount_mode")) {
        const std::string tag = as_string(*v, "financing.discount_mode");
        if (tag == "legacy_equal_rates") scenario.financing.discount_mode = DiscountMode::legacy_equal_rates;
        else if (tag == "corrected_riskfree") scenario.financing.discount_mode = DiscountMode::corrected_riskfree;
        else throw ValidationError("\"financing.discount_mode\" must be \"legacy_equal_rates\" or \"corrected_riskfree\"");
    }
    if (const auto* v = find(object, "rate_mode")) {
        const std::string tag = as_string(*v, "financing.rate_mode");
        if (tag == "flat_at_horizon") scenario.financing.rate_mode = RateMode::flat_at_horizon;
        else if (tag == "per_year_term_structure") scenario.financing.rate_mode = RateMode::per_year_term_structure;
        else throw ValidationError("\"financing.rate_mode\" must be \"flat_at_horizon\" or \"per_year_term_structure\"");
    }
    if (const auto* v = find(object, "financed_fraction")) {
        scenario.financed_fraction = as_fraction(*v, "financing.financed_fraction");
        if (!(scenario.financed_fraction >= 0.0 && scenario.financed_fraction <= 1.0)) {
            throw ValidationError("\"financing.financed_fraction\" must lie in [0, 1]");
        }
    }
    if (const auto* v = find(object, "loan_shape")) {
        const std::string tag = as_string(*v, "financing.loan_shape");
        if (tag == "level_payment") scenario.loan_shape = LoanShape::level_payment;
        else if (tag == "balloon") scenario.loan_shape = LoanShape::balloon;
        else throw ValidationError("\"financing.loan_shape\" must be \"level_payment\" or \"balloon\"");
    }
    if (const auto* v = find(object, "denominator")) {
        const std::string tag = as_string(*v, "financing.denominator");
        if (tag == "discounted_legacy") scenario.denominator = DenominatorMode::discounted_legacy;
        else if (tag == "physical_corrected") scenario.denominator = DenominatorMode::physical_corrected;
        else throw ValidationError("\"financing.denominator\" must be \"discounted_legacy\" or \"physical_corrected\"");
    }
}

ModuleReplacementSpec load_module_replacement(const ordered_json& object) {
    reject_unknown_keys(object, "module_replacement",
                        {"c_bom", "module_life", "energy_fraction_remaining", "horizon"});
    ModuleReplacementSpec spec;
    const auto* c_bom = find(object, "c_bom");
    const auto* life = find(object, "module_life");
    const auto* horizon = find(object, "horizon");
    if (!c_bom) throw ValidationError("\"module_replacement.c_bom\" is required");
    if (!life) throw ValidationError("\"module_replacement.module_life\" is required");
    if (!horizon) throw ValidationError("\"module_replacement.horizon\" is required");
    spec.c_bom = as_number(*c_bom, "module_replacement.c_bom");
    spec.module_life = as_int(*life, "module_replacement.module_life");
    spec.horizon = as_int(*horizon, "module_replacement.horizon");
    if (const auto* v = find(object, "energy_fraction_remaining")) {
        spec.energy_fraction_remaining = as_fraction(*v, "module_replacement.energy_fraction_remaining");
    }
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(std::string("module_replacement: ") + e.what());
    }
    return spec;
}

SweepSpec load_sweep(const ordered_json& object) {
    reject_unknown_keys(object, "sweep", {"parameter", "grid", "range", "normalization"});
    SweepSpec spec;
    const auto* parameter = find(object, "parameter");
    if (!parameter) throw ValidationError("\"sweep.parameter\" is required");
    spec.parameter = as_parameter(*parameter, "sweep.parameter");

    const auto* grid = find(object, "grid");
    const auto* range = find(object, "range");
    if ((grid == nullptr) == (range == nullptr)) {
        throw ValidationError("sweep needs exactly one of \"grid\" or \"range\"");
    }
    if (grid) {
        if (!grid->is_array() || grid->empty()) {
            throw ValidationError("\"sweep.grid\" must be a non-empty array");
        }
        for (std::size_t i = 0; i < grid->size(); ++i) {
            spec.grid.push_back(as_fraction((*grid)[i], "sweep.grid[" + std::to_string(i) + "]"));
        }
    } else {
        reject_unknown_keys(*range, "sweep.range", {"start", "stop", "step"});
        const auto* start = find(*range, "start");
        const auto* stop = find(*range, "stop");
        const auto* step = find(*range, "step");
        if (!start || !stop || !step) {
            throw ValidationError("\"sweep.range\" needs start, stop and step");
        }
        spec.grid = SweepSpec::make_grid(as_fraction(*start, "sweep.range.start"),
                                         as_fraction(*stop, "sweep.range.stop"),
                                         as_fraction(*step, "sweep.range.step"));
    }
    if (const auto* normalization = find(object, "normalization")) {
        if (!normalization->is_object()) {
            throw ValidationError("\"sweep.normalization\" must be an object of parameter -> value");
        }
        for (const auto& [key, value] : normalization->items()) {
            const auto p = parse_parameter(key);
            if (!p) {
                throw ValidationError("\"sweep.normalization\": unknown parameter \"" + key + "\"");
            }
            spec.normalization.emplace_back(*p, as_fraction(value, "sweep.normalization." + key));
        }
    }
    return spec;
}

DistributionSpec load_distribution(const ordered_json& object, const std::string& where) {
    reject_unknown_keys(object, where,
                        {"parameter", "shape", "mean", "sd", "low", "high", "value", "min", "max"});
    const auto* parameter = find(object, "parameter");
    const auto* shape = find(object, "shape");
    if (!parameter) throw ValidationError("\"" + where + ".parameter\" is required");
    if (!shape) throw ValidationError("\"" + where + ".shape\" is required");

    DistributionSpec spec;
    spec.parameter = as_parameter(*parameter, where + ".parameter");
    const std::string tag = as_string(*shape, where + ".shape");
    auto require = [&](const char* key) -> const ordered_json& {
        const auto* v = find(object, key);
        if (!v) throw ValidationError("\"" + where + "." + key + "\" is required for shape " + tag);
        return *v;
    };
    auto forbid = [&](const char* key) {
        if (find(object, key)) {
            throw ValidationError("\"" + where + "." + key + "\" does not apply to shape " + tag);
        }
    };
    if (tag == "normal") {
        spec.shape = DistributionShape::normal;
        spec.mean = as_fraction(require("mean"), where + ".mean");
        spec.sd = as_fraction(require("sd"), where + ".sd");
        forbid("low"); forbid("high"); forbid("value");
    } else if (tag == "uniform") {
        spec.shape = DistributionShape::uniform;
        spec.lo = as_fraction(require("low"), where + ".low");
        spec.hi = as_fraction(require("high"), where + ".high");
        forbid("mean"); forbid("sd"); forbid("value");
    } else if (tag == "point") {
        spec.shape = DistributionShape::point;
        spec.value = as_fraction(require("value"), where + ".value");
        forbid("mean"); forbid("sd"); forbid("low"); forbid("high");
    } else {
        throw ValidationError("\"" + where + ".shape\" must be \"normal\", \"uniform\" or \"point\"");
    }
    if (const auto* v = find(object, "min")) spec.trunc_lo = as_fraction(*v, where + ".min");
    if (const auto* v = find(object, "max")) spec.trunc_hi = as_fraction(*v, where + ".max");
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(where + ": " + e.what());
    }
    return spec;
}

}  // namespace

double parse_fraction(const std::string& text) {
    std::string_view trimmed = text;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) trimmed.remove_suffix(1);
    if (trimmed.empty()) throw ValidationError("empty rate value");
    if (trimmed.back() == '%') {
        trimmed.remove_suffix(1);
        return parse_double_strict(trimmed) / 100.0;
    }
    return parse_double_strict(trimmed);
}

nlohmann::ordered_json parse_scenario_document(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // recover line/column from the byte offset for a usable message
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream message;
        message << "parse error at line " << line << ", column " << column << ": " << e.what();
        throw ValidationError(message.str());
    }
}

Scenario scenario_from_json(const ordered_json& document) {
    if (!document.is_object()) throw ValidationError("scenario document must be a JSON object");
    reject_unknown_keys(document, "",
                        {"schema_version", "name", "description", "model", "plant", "curve",
                         "financing", "module_replacement", "sweep", "distributions"});

    const auto* version = find(document, "schema_version");
    if (!version) throw ValidationError("\"schema_version\" is required");
    if (as_int(*version, "schema_version") != schema_version) {
        throw ValidationError("unsupported schema_version (expected " +
                              std::to_string(schema_version) + ")");
    }

    Scenario scenario;
    if (const auto* v = find(document, "name")) scenario.name = as_string(*v, "name");
    if (const auto* v = find(document, "description")) scenario.description = as_string(*v, "description");

    const auto* model = find(document, "model");
    if (!model) throw ValidationError("\"model\" is required");
    const std::string model_tag = as_string(*model, "model");
    if (model_tag == "eq1") scenario.model = ModelKind::eq1;
    else if (model_tag == "eq3") scenario.model = ModelKind::eq3;
    else if (model_tag == "lcic") scenario.model = ModelKind::lcic;
    else throw ValidationError("\"model\" must be \"eq1\", \"eq3\" or \"lcic\"");

    if (const auto* plant = find(document, "plant")) {
        scenario.plant = load_plant(*plant);
    } else if (scenario.model != ModelKind::lcic) {
        throw ValidationError("\"plant\" is required for eq1/eq3 scenarios");
    }
    if (const auto* curve = find(document, "curve")) scenario.curve = load_curve(*curve);
    if (const auto* financing = find(document, "financing")) load_financing(*financing, scenario);
    if (const auto* replacement = find(document, "module_replacement")) {
        scenario.module_replacement = load_module_replacement(*replacement);
    }
    if (const auto* sweep = find(document, "sweep")) scenario.sweep = load_sweep(*sweep);
    if (const auto* distributions = find(document, "distributions")) {
        if (!distributions->is_array()) throw ValidationError("\"distributions\" must be an array");
        for (std::size_t i = 0; i < distributions->size(); ++i) {
            scenario.distributions.push_back(
                load_distribution((*distributions)[i], "distributions[" + std::to_string(i) + "]"));
        }
    }

    scenario.validate();
    return scenario;
}

Scenario load_scenario(const std::string& text) {
    return scenario_from_json(parse_scenario_document(text));
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw ValidationError("cannot open scenario file " + path.string());
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return load_scenario(buffer.str());
}

nlohmann::ordered_json scenario_to_json(const Scenario& scenario) {
    ordered_json document;
    document["schema_version"] = schema_version;
    if (!scenario.name.empty()) document["name"] = scenario.name;
    if (!scenario.description.empty()) document["description"] = scenario.description;
    switch (scenario.model) {
    case ModelKind::eq1: document["model"] = "eq1"; break;
    case ModelKind::eq3: document["model"] = "eq3"; break;
    case ModelKind::lcic: document["model"] = "lcic"; break;
    }

    ordered_json plant;
    plant["pci"] = scenario.plant.pci;
    plant["initial_kwh"] = scenario.plant.initial_kwh;
    plant["efficiency"] = scenario.plant.efficiency;
    plant["insolation"] = scenario.plant.insolation;
    plant["sdr"] = scenario.plant.sdr;
    plant["lifetime_n"] = scenario.plant.lifetime_n;
    plant["ao"] = scenario.plant.ao;
    plant["tr"] = scenario.plant.tr;
    plant["rv"] = scenario.plant.rv;
    plant["degradation_exponent"] =
        scenario.plant.degradation_exponent == DegradationExponent::n ? "n" : "n_minus_one";
    document["plant"] = std::move(plant);

    ordered_json curve;
    switch (scenario.curve.kind()) {
    case CurveKind::parametric: {
        curve["kind"] = "parametric";
        const auto& k = scenario.curve.coefficients();
        curve["coefficients"] = {k.a, k.b, k.c, k.d};
        break;
    }
    case CurveKind::flat:
        curve["kind"] = "flat";
        curve["rate"] = scenario.curve.flat_rate();
        break;
    case CurveKind::tabulated: {
        curve["kind"] = "tabulated";
        ordered_json points = ordered_json::array();
        for (const auto& [years, rate] : scenario.curve.points()) {
            points.push_back({years, rate});
        }
        curve["points"] = std::move(points);
        break;
    }
    }
    document["curve"] = std::move(curve);

    ordered_json financing;
    financing["spread"] = scenario.financing.spread;
    financing["discount_mode"] =
        scenario.financing.discount_mode == DiscountMode::legacy_equal_rates
            ? "legacy_equal_rates"
            : "corrected_riskfree";
    financing["rate_mode"] = scenario.financing.rate_mode == RateMode::flat_at_horizon
                                 ? "flat_at_horizon"
                                 : "per_year_term_structure";
    financing["financed_fraction"] = scenario.financed_fraction;
    financing["loan_shape"] =
        scenario.loan_shape == LoanShape::level_payment ? "level_payment" : "balloon";
    if (scenario.denominator) {
        financing["denominator"] = *scenario.denominator == DenominatorMode::discounted_legacy
                                       ? "discounted_legacy"
                                       : "physical_corrected";
    }
    document["financing"] = std::move(financing);

    if (scenario.module_replacement) {
        ordered_json replacement;
        replacement["c_bom"] = scenario.module_replacement->c_bom;
        replacement["module_life"] = scenario.module_replacement->module_life;
        replacement["energy_fraction_remaining"] = scenario.module_replacement->energy_fraction_remaining;
        replacement["horizon"] = scenario.module_replacement->horizon;
        document["module_replacement"] = std::move(replacement);
    }

    if (scenario.sweep) {
        ordered_json sweep;
        sweep["parameter"] = std::string(to_string(scenario.sweep->parameter));
        sweep["grid"] = scenario.sweep->grid;
        if (!scenario.sweep->normalization.empty()) {
            ordered_json normalization;
            for (const auto& [parameter, value] : scenario.sweep->normalization) {
                normalization[std::string(to_string(parameter))] = value;
            }
            sweep["normalization"] = std::move(normalization);
        }
        document["sweep"] = std::move(sweep);
    }

    if (!scenario.distributions.empty()) {
        ordered_json distributions = ordered_json::array();
        for (const auto& d : scenario.distributions) {
            ordered_json entry;
            entry["parameter"] = std::string(to_string(d.parameter));
            switch (d.shape) {
            case DistributionShape::normal:
                entry["shape"] = "normal";
                entry["mean"] = d.mean;
                entry["sd"] = d.sd;
                break;
            case DistributionShape::uniform:
                entry["shape"] = "uniform";
                entry["low"] = d.lo;
                entry["high"] = d.hi;
                break;
            case DistributionShape::point:
                entry["shape"] = "point";
                entry["value"] = d.value;
                break;
            }
            if (d.trunc_lo) entry["min"] = *d.trunc_lo;
            if (d.trunc_hi) entry["max"] = *d.trunc_hi;
            distributions.push_back(std::move(entry));
        }
        document["distributions"] = std::move(distributions);
    }

    return document;
}

}  // namespace pvlcoe
