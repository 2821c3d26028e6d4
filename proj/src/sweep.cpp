#include "hzent/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "hzent/ensembles.hpp"
#include "json.hpp"

namespace hzent {

namespace {

using json = nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Named {
    const char* name;
    int value;
};

constexpr Named kSystems[] = {
    {"two_mode", static_cast<int>(SystemKind::TwoMode)},  {"four_mode", static_cast<int>(SystemKind::FourMode)},
    {"bs_single", static_cast<int>(SystemKind::BsSingle)}, {"bs_double", static_cast<int>(SystemKind::BsDouble)},
    {"bs_four", static_cast<int>(SystemKind::BsFour)},     {"coherent_lo", static_cast<int>(SystemKind::CoherentLo)},
};

constexpr Named kVariables[] = {
    {"Ng_over_kappa", static_cast<int>(SweepVariable::NgOverKappa)}, {"N", static_cast<int>(SweepVariable::N)},
    {"N1", static_cast<int>(SweepVariable::N1)},                     {"T", static_cast<int>(SweepVariable::T)},
    {"alpha", static_cast<int>(SweepVariable::Alpha)},               {"m", static_cast<int>(SweepVariable::M)},
};

constexpr Named kRotations[] = {
    {"none", static_cast<int>(PairRotation::None)},
    {"pair1", static_cast<int>(PairRotation::Pair1)},
    {"both", static_cast<int>(PairRotation::BothPairs)},
    {"xz_pair1", static_cast<int>(PairRotation::PlanarPair1)},
    {"xz_both", static_cast<int>(PairRotation::PlanarBothPairs)},
};

template <std::size_t K>
std::optional<int> lookup(const Named (&table)[K], const std::string& name) {
    for (const auto& e : table)
        if (name == e.name) return e.value;
    return std::nullopt;
}

template <std::size_t K>
const char* name_of(const Named (&table)[K], int value) {
    for (const auto& e : table)
        if (e.value == value) return e.name;
    return "?";
}

const std::set<std::string> kCriteria = {"e_hz", "e_hz_rot", "e_hz_planar", "e_hz_rotated", "e_hz_spin",
                                         "coherent_lo", "duan", "heisenberg"};
const std::set<std::string> kObservables = {"energy", "gap",    "var_x",   "var_y",        "var_z", "mean_x",
                                            "mean_y", "mean_z", "entropy", "quadrature_D", "n_a",   "n_b"};

struct SystemRules {
    std::set<std::string> params;    // accepted parameter keys
    std::set<std::string> required;  // needed unless swept
    std::set<SweepVariable> variables;
    bool thermal = false;
    bool four_mode = false;
};

SystemRules rules_for(SystemKind s) {
    using V = SweepVariable;
    switch (s) {
        case SystemKind::TwoMode:
            return {{"N", "Ng_over_kappa", "kappa", "T"}, {"N", "Ng_over_kappa"}, {V::NgOverKappa, V::N, V::T, V::M}, true, false};
        case SystemKind::FourMode:
            return {{"N1", "N2", "Ng_over_kappa", "kappa1", "kappa2", "N2g22_over_kappa", "g22_over_g11", "g12",
                     "g12_over_g11", "T"},
                    {"N1", "N2", "Ng_over_kappa"},
                    {V::NgOverKappa, V::N1, V::T},
                    true,
                    true};
        case SystemKind::BsSingle:
        case SystemKind::BsDouble:
            return {{"N"}, {"N"}, {V::N, V::M}, false, false};
        case SystemKind::BsFour:
            return {{"N1", "N2", "N2_equals_N1"}, {"N1"}, {V::N1}, false, true};
        case SystemKind::CoherentLo:
            return {{"N", "Ng_over_kappa", "kappa", "alpha"}, {"N", "Ng_over_kappa", "alpha"}, {V::Alpha, V::NgOverKappa, V::N, V::M}, false, false};
    }
    return {};
}

std::string param_name(SweepVariable v) { return v == SweepVariable::M ? "" : to_string(v); }

bool is_integer_variable(SweepVariable v) {
    return v == SweepVariable::N || v == SweepVariable::N1 || v == SweepVariable::M;
}

class Diagnostics {
public:
    void add(const std::string& key, const std::string& message) {
        if (!first_) first_.emplace(key, message);
    }
    void raise() const {
        if (first_) throw ConfigError(first_->first, first_->second);
    }

private:
    std::optional<std::pair<std::string, std::string>> first_;
};

double number_at(const json& j, const std::string& key, Diagnostics& diag) {
    if (j.is_boolean()) return j.get<bool>() ? 1.0 : 0.0;
    if (!j.is_number()) {
        diag.add(key, "expected a number");
        return 0.0;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) diag.add(key, "must be finite");
    return v;
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

void check_criteria(const SweepConfig& cfg, const SystemRules& rules, Diagnostics& diag) {
    if (cfg.criteria.empty()) diag.add("criteria", "at least one criterion is required");
    std::set<std::string> columns;
    for (std::size_t i = 0; i < cfg.criteria.size(); ++i) {
        const auto& c = cfg.criteria[i];
        const std::string key = "criteria[" + std::to_string(i) + "]";
        const bool local = c.name == "e_hz_spin" || c.name == "duan" || c.name == "heisenberg";
        if (local && !rules.four_mode) diag.add(key, c.name + " needs a four-mode system");
        if (c.name == "coherent_lo" && cfg.system != SystemKind::CoherentLo)
            diag.add(key, "coherent_lo needs the coherent_lo system");
        if (c.pair != 0 && (!rules.four_mode || c.pair != 1)) diag.add(key + ".pair", "pair must be 0, or 1 on four-mode systems");
        if (c.name == "e_hz" || c.name == "e_hz_rot") {
            if (cfg.variable == SweepVariable::M && c.m != 0) diag.add(key + ".m", "order is taken from the sweep");
            if (cfg.variable != SweepVariable::M && c.m < 1) diag.add(key + ".m", "order must be at least 1");
        }
        if (!columns.insert(c.column()).second) diag.add(key, "duplicate criterion " + c.column());
    }
}

}  // namespace

const char* to_string(SweepVariable v) { return name_of(kVariables, static_cast<int>(v)); }
const char* to_string(SystemKind s) { return name_of(kSystems, static_cast<int>(s)); }

std::string CriterionSpec::column() const {
    std::string c = name;
    if ((name == "e_hz" || name == "e_hz_rot") && m > 0) c += "_m" + std::to_string(m);
    if (rotation == PairRotation::Pair1) c += "_rot1";
    if (rotation == PairRotation::BothPairs) c += "_rot";
    if (rotation == PairRotation::PlanarPair1) c += "_xz1";
    if (rotation == PairRotation::PlanarBothPairs) c += "_xz";
    if (pair == 1) c += "_pair2";
    return c;
}

SweepConfig validate_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config", "expected a JSON object");

    Diagnostics diag;
    SweepConfig cfg;
    for (const auto& [k, v] : j.items()) {
        static const std::set<std::string> top = {"name",        "system",           "params", "sweep",
                                                  "criteria",    "observables",      "output", "temperature_unit"};
        if (!top.count(k)) diag.add(k, "unknown key");
    }

    if (j.contains("name")) {
        if (j["name"].is_string() && !j["name"].get<std::string>().empty())
            cfg.name = j["name"].get<std::string>();
        else
            diag.add("name", "expected a nonempty string");
    }

    if (!j.contains("system") || !j["system"].is_string()) {
        throw ConfigError("system", "required string");
    }
    const auto sys = lookup(kSystems, j["system"].get<std::string>());
    if (!sys) throw ConfigError("system", "unknown system '" + j["system"].get<std::string>() + "'");
    cfg.system = static_cast<SystemKind>(*sys);
    const SystemRules rules = rules_for(cfg.system);

    // Sweep axis.
    if (!j.contains("sweep") || !j["sweep"].is_object()) throw ConfigError("sweep", "required object");
    const json& sw = j["sweep"];
    for (const auto& [k, v] : sw.items())
        if (k != "variable" && k != "grid") diag.add("sweep." + k, "unknown key");
    if (!sw.contains("variable") || !sw["variable"].is_string()) throw ConfigError("sweep.variable", "required string");
    const auto var = lookup(kVariables, sw["variable"].get<std::string>());
    if (!var) throw ConfigError("sweep.variable", "unknown variable '" + sw["variable"].get<std::string>() + "'");
    cfg.variable = static_cast<SweepVariable>(*var);
    if (!rules.variables.count(cfg.variable))
        diag.add("sweep.variable", std::string("cannot sweep ") + to_string(cfg.variable) + " for " + to_string(cfg.system));

    if (!sw.contains("grid") || !sw["grid"].is_object()) throw ConfigError("grid", "required object with start, stop, points");
    const json& g = sw["grid"];
    for (const auto& [k, v] : g.items())
        if (k != "start" && k != "stop" && k != "points") diag.add("grid." + k, "unknown key");
    if (!g.contains("start") || !g.contains("stop") || !g.contains("points"))
        throw ConfigError("grid", "needs start, stop and points");
    cfg.grid.start = number_at(g["start"], "grid.start", diag);
    cfg.grid.stop = number_at(g["stop"], "grid.stop", diag);
    const double pts = number_at(g["points"], "grid.points", diag);
    if (!near_integer(pts) || pts < 2) diag.add("grid", "points must be an integer >= 2");
    cfg.grid.points = static_cast<int>(std::lround(std::max(pts, 2.0)));
    if (!(cfg.grid.start < cfg.grid.stop)) diag.add("grid", "start must be below stop");

    if (is_integer_variable(cfg.variable)) {
        for (int k = 0; k < cfg.grid.points; ++k) {
            const double x = cfg.grid.at(k);
            if (!near_integer(x)) {
                diag.add("grid", std::string(to_string(cfg.variable)) + " takes integer values; point " +
                                     std::to_string(k) + " is " + format_number(x));
                break;
            }
        }
        const double low = cfg.variable == SweepVariable::M ? 1.0 : 0.0;
        if (cfg.grid.start < low - 1e-9) diag.add("grid", "start below the smallest allowed value");
    }
    if ((cfg.variable == SweepVariable::T || cfg.variable == SweepVariable::Alpha) && cfg.grid.start < 0)
        diag.add("grid", "start must be nonnegative");

    // Parameters.
    if (j.contains("params")) {
        if (!j["params"].is_object()) {
            diag.add("params", "expected an object");
        } else {
            for (const auto& [k, v] : j["params"].items()) {
                const std::string key = "params." + k;
                if (!rules.params.count(k)) {
                    diag.add(key, std::string("not a parameter of ") + to_string(cfg.system));
                    continue;
                }
                if (k == param_name(cfg.variable)) {
                    diag.add(key, "is the sweep variable");
                    continue;
                }
                cfg.params[k] = number_at(v, key, diag);
            }
        }
    }
    for (const auto& k : rules.required)
        if (k != param_name(cfg.variable) && !cfg.params.count(k)) diag.add("params." + k, "required");
    for (const auto& k : {"N", "N1", "N2"}) {
        if (cfg.params.count(k) && (!near_integer(cfg.params[k]) || cfg.params[k] < 0))
            diag.add(std::string("params.") + k, "must be a nonnegative integer");
    }
    if (cfg.params.count("T") && cfg.params["T"] < 0) diag.add("params.T", "must be nonnegative");
    if (cfg.params.count("alpha") && cfg.params["alpha"] < 0) diag.add("params.alpha", "must be nonnegative");
    if (cfg.params.count("g22_over_g11") && cfg.params.count("N2g22_over_kappa"))
        diag.add("params.g22_over_g11", "conflicts with N2g22_over_kappa");
    if (cfg.params.count("g12_over_g11") && cfg.params.count("g12"))
        diag.add("params.g12_over_g11", "conflicts with g12");
    if (cfg.system == SystemKind::BsFour && !cfg.params.count("N2") && cfg.params["N2_equals_N1"] == 0.0)
        diag.add("params.N2", "required unless N2_equals_N1 is set");

    // Defaults, so that the canonical form is explicit.
    auto fill = [&](const char* k, double v) {
        if (rules.params.count(k) && !cfg.params.count(k) && k != param_name(cfg.variable)) cfg.params[k] = v;
    };
    fill("kappa", 1.0);
    fill("kappa1", 1.0);
    fill("kappa2", 1.0);
    fill("T", 0.0);
    fill("N2_equals_N1", 0.0);
    if (cfg.system == SystemKind::FourMode) {
        if (!cfg.params.count("g22_over_g11")) fill("N2g22_over_kappa", 0.0);
        if (!cfg.params.count("g12_over_g11")) fill("g12", 0.0);
    }

    // Temperature unit.
    if (j.contains("temperature_unit")) {
        const json& t = j["temperature_unit"];
        if (t == "kappa_units") {
            cfg.temperature_unit = TemperatureUnit::KappaUnits;
        } else if (t == "nanokelvin") {
            cfg.temperature_unit = TemperatureUnit::Nanokelvin;
            if (!rules.thermal) diag.add("temperature_unit", "nanokelvin needs a thermal system (two_mode or four_mode)");
        } else {
            diag.add("temperature_unit", "expected kappa_units or nanokelvin");
        }
    }

    // Criteria.
    if (!j.contains("criteria") || !j["criteria"].is_array()) throw ConfigError("criteria", "required array");
    for (std::size_t i = 0; i < j["criteria"].size(); ++i) {
        const json& c = j["criteria"][i];
        const std::string key = "criteria[" + std::to_string(i) + "]";
        CriterionSpec spec;
        spec.m = cfg.variable == SweepVariable::M ? 0 : 1;
        if (c.is_string()) {
            spec.name = c.get<std::string>();
        } else if (c.is_object()) {
            for (const auto& [k, v] : c.items()) {
                if (k == "name" && v.is_string()) {
                    spec.name = v.get<std::string>();
                } else if (k == "m" && v.is_number_integer()) {
                    spec.m = v.get<int>();
                } else if (k == "pair" && v.is_number_integer()) {
                    spec.pair = v.get<int>();
                } else if (k == "rotation" && v.is_string() && lookup(kRotations, v.get<std::string>())) {
                    spec.rotation = static_cast<PairRotation>(*lookup(kRotations, v.get<std::string>()));
                } else {
                    diag.add(key + "." + k, "invalid entry");
                }
            }
        } else {
            diag.add(key, "expected a name or an object");
            continue;
        }
        if (!kCriteria.count(spec.name)) {
            diag.add(key, "unknown criterion '" + spec.name + "'");
            continue;
        }
        if (spec.name != "e_hz" && spec.name != "e_hz_rot") spec.m = 1;
        cfg.criteria.push_back(spec);
    }
    check_criteria(cfg, rules, diag);

    // Observables.
    if (j.contains("observables")) {
        if (!j["observables"].is_array()) {
            diag.add("observables", "expected an array");
        } else {
            for (const auto& o : j["observables"]) {
                if (!o.is_string() || !kObservables.count(o.get<std::string>())) {
                    diag.add("observables", "unknown observable " + o.dump());
                    continue;
                }
                const auto name = o.get<std::string>();
                if (name == "entropy" && rules.four_mode) diag.add("observables", "entropy needs a two-mode system");
                cfg.observables.push_back(name);
            }
        }
    }

    // Output.
    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) {
            diag.add("output", "expected an object");
        } else {
            for (const auto& [k, v] : o.items()) {
                if (k == "format" && v == "csv") {
                    cfg.format = OutputFormat::Csv;
                } else if (k == "format" && v == "json") {
                    cfg.format = OutputFormat::Json;
                } else if (k == "path" && v.is_string()) {
                    cfg.path = v.get<std::string>();
                } else {
                    diag.add("output." + k, "invalid entry");
                }
            }
        }
    }

    diag.raise();
    return cfg;
}

std::string canonical_json(const SweepConfig& cfg) {
    json j;
    j["name"] = cfg.name;
    j["system"] = to_string(cfg.system);
    j["params"] = json::object();
    for (const auto& [k, v] : cfg.params) j["params"][k] = v;
    j["sweep"] = {{"variable", to_string(cfg.variable)},
                  {"grid", {{"start", cfg.grid.start}, {"stop", cfg.grid.stop}, {"points", cfg.grid.points}}}};
    j["criteria"] = json::array();
    for (const auto& c : cfg.criteria) {
        json cj = {{"name", c.name}};
        if ((c.name == "e_hz" || c.name == "e_hz_rot") && c.m > 0) cj["m"] = c.m;
        if (c.rotation != PairRotation::None) cj["rotation"] = name_of(kRotations, static_cast<int>(c.rotation));
        if (c.pair != 0) cj["pair"] = c.pair;
        j["criteria"].push_back(cj);
    }
    j["observables"] = cfg.observables;
    j["temperature_unit"] = cfg.temperature_unit == TemperatureUnit::Nanokelvin ? "nanokelvin" : "kappa_units";
    j["output"] = {{"format", cfg.format == OutputFormat::Json ? "json" : "csv"}, {"path", cfg.path}};
    return j.dump(2);
}

namespace {

struct Prepared {
    std::optional<MixedState> state;
    bool degenerate = false;
    double energy = kNaN;
    double gap = kNaN;
};

int as_int(double v) { return static_cast<int>(std::lround(v)); }

Prepared prepare(const SweepConfig& cfg, const std::map<std::string, double>& p) {
    Prepared out;
    auto from_ground = [&](const GroundResult& g) {
        out.state.emplace(g.state);
        out.degenerate = g.degenerate;
        out.energy = g.energy;
        out.gap = g.gap;
    };
    switch (cfg.system) {
        case SystemKind::TwoMode:
        case SystemKind::CoherentLo: {
            const int N = as_int(p.at("N"));
            const double kappa = p.at("kappa");
            const TwoModeParams tp{kappa, N > 0 ? p.at("Ng_over_kappa") * kappa / N : 0.0, N};
            const double T = p.count("T") ? p.at("T") : 0.0;
            if (T > 0.0)
                out.state.emplace(thermal_state({tp, T}));
            else
                from_ground(ground_two_mode(tp));
            break;
        }
        case SystemKind::FourMode: {
            FourModeParams fp;
            fp.N1 = as_int(p.at("N1"));
            fp.N2 = as_int(p.at("N2"));
            fp.kappa1 = p.at("kappa1");
            fp.kappa2 = p.at("kappa2");
            fp.g11 = fp.N1 > 0 ? p.at("Ng_over_kappa") * fp.kappa1 / fp.N1 : 0.0;
            if (p.count("g22_over_g11"))
                fp.g22 = p.at("g22_over_g11") * fp.g11;
            else
                fp.g22 = fp.N2 > 0 ? p.at("N2g22_over_kappa") * fp.kappa2 / fp.N2 : 0.0;
            fp.g12 = p.count("g12_over_g11") ? p.at("g12_over_g11") * fp.g11 : p.at("g12");
            const double T = p.at("T");
            if (T > 0.0)
                out.state.emplace(thermal_state({fp, T}));
            else
                from_ground(ground_four_mode(fp));
            break;
        }
        case SystemKind::BsSingle:
            out.state.emplace(bs_single_fock(as_int(p.at("N"))));
            break;
        case SystemKind::BsDouble:
            out.state.emplace(bs_double_fock(as_int(p.at("N"))));
            break;
        case SystemKind::BsFour: {
            const int n1 = as_int(p.at("N1"));
            const int n2 = p.at("N2_equals_N1") != 0.0 ? n1 : as_int(p.at("N2"));
            out.state.emplace(bs_four_mode(n1, n2));
            break;
        }
    }
    return out;
}

std::pair<double, Classification> evaluate(const CriterionSpec& c, const MixedState& s,
                                           const std::map<std::string, double>& p, int swept_m) {
    const ModePair pair = ModePair::pair(c.pair);
    auto from = [](const CriterionResult& r) { return std::pair{r.value, r.classification}; };
    auto from_inequality = [](const InequalityResult& r) {
        if (r.inconclusive) return std::pair{kNaN, Classification::Inconclusive};
        return std::pair{r.lhs / r.rhs, r.passed ? Classification::Entangled : Classification::SeparableConsistent};
    };
    if (c.name == "e_hz") return from(e_hz(hz_moments(s, c.m > 0 ? c.m : swept_m, pair)));
    if (c.name == "e_hz_rot") return from(e_hz(rotated_hz_moments(s, c.m > 0 ? c.m : swept_m, pair)));
    if (c.name == "e_hz_planar") return from(e_hz_planar(interwell_spin_stats(s, pair)));
    if (c.name == "e_hz_rotated") return from(e_hz_rotated(interwell_spin_stats(s, pair)));
    if (c.name == "e_hz_spin") return from(e_hz_spin(local_spin_quartics(s, c.rotation)));
    if (c.name == "coherent_lo") return from(coherent_lo_ratio(hz_moments(s, 1, pair), p.at("alpha")));
    if (c.name == "duan") return from_inequality(duan_sum_spin(local_spin_moments(s, c.rotation)));
    if (c.name == "heisenberg") return from_inequality(heisenberg_product(local_spin_moments(s, c.rotation)));
    throw std::logic_error("unhandled criterion " + c.name);
}

double observable(const std::string& name, const Prepared& prep) {
    const MixedState& s = *prep.state;
    if (name == "energy") return prep.energy;
    if (name == "gap") return prep.gap;
    if (name == "entropy") return s.is_pure() ? reduced_entropy(s.components().front().state) : kNaN;
    if (name == "quadrature_D") return quadrature_D(s);
    if (name == "n_a") return expectation(s, number(modes::a)).real();
    if (name == "n_b") return expectation(s, number(modes::b)).real();
    const SpinStats st = interwell_spin_stats(s);
    if (name == "var_x") return st.covariance(0, 0);
    if (name == "var_y") return st.covariance(1, 1);
    if (name == "var_z") return st.covariance(2, 2);
    if (name == "mean_x") return st.mean[0];
    if (name == "mean_y") return st.mean[1];
    if (name == "mean_z") return st.mean[2];
    throw std::logic_error("unhandled observable " + name);
}

SweepRow evaluate_point(const SweepConfig& cfg, double x) {
    const auto t0 = std::chrono::steady_clock::now();
    std::map<std::string, double> p = cfg.params;
    int swept_m = 0;
    switch (cfg.variable) {
        case SweepVariable::M:
            swept_m = as_int(x);
            break;
        case SweepVariable::T:
            p["T"] = cfg.temperature_unit == TemperatureUnit::Nanokelvin ? x / kKappaNanokelvin : x;
            break;
        default:
            p[to_string(cfg.variable)] = x;
    }
    if (cfg.variable != SweepVariable::T && cfg.temperature_unit == TemperatureUnit::Nanokelvin && p.count("T"))
        p["T"] /= kKappaNanokelvin;

    const Prepared prep = prepare(cfg, p);
    SweepRow row;
    row.x = x;
    row.degenerate = prep.degenerate;
    for (const auto& c : cfg.criteria) {
        const auto [v, cls] = evaluate(c, *prep.state, p, swept_m);
        row.values.push_back(v);
        row.classes.push_back(cls);
    }
    for (const auto& o : cfg.observables) row.observables.push_back(observable(o, prep));
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

unsigned default_workers() {
    if (const char* env = std::getenv("HZENT_WORKERS")) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

SweepTable run_sweep(const SweepConfig& cfg, unsigned workers) {
    if (workers == 0) workers = default_workers();
    const int n = cfg.grid.points;
    std::vector<std::optional<SweepRow>> rows(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::atomic<int> next{0};

    auto work = [&] {
        for (int k = next++; k < n; k = next++) {
            double x = cfg.grid.at(k);
            if (is_integer_variable(cfg.variable)) x = std::round(x);
            try {
                rows[static_cast<std::size_t>(k)] = evaluate_point(cfg, x);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        }
    };
    const unsigned count = std::min<unsigned>(workers, static_cast<unsigned>(n));
    if (count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (int k = 0; k < n; ++k) {
        if (!errors[static_cast<std::size_t>(k)]) continue;
        const std::string where = "grid point " + std::to_string(k) + " (" + to_string(cfg.variable) + "=" +
                                  format_number(cfg.grid.at(k)) + ")";
        try {
            std::rethrow_exception(errors[static_cast<std::size_t>(k)]);
        } catch (const std::exception& e) {
            throw NumericalFailure(where + ": " + e.what());
        }
    }

    SweepTable table;
    table.name = cfg.name;
    table.variable = to_string(cfg.variable);
    for (const auto& c : cfg.criteria) table.criteria.push_back(c.column());
    table.observables = cfg.observables;
    for (auto& r : rows) table.rows.push_back(std::move(*r));
    return table;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

void write_csv(std::ostream& out, const SweepTable& table) {
    out << table.variable;
    for (const auto& c : table.criteria) out << ',' << c;
    for (const auto& c : table.criteria) out << ',' << c << "_class";
    out << ",degenerate";
    for (const auto& o : table.observables) out << ',' << o;
    out << '\n';
    for (const auto& r : table.rows) {
        out << format_number(r.x);
        for (double v : r.values) out << ',' << format_number(v);
        for (auto c : r.classes) out << ',' << static_cast<int>(c);
        out << ',' << (r.degenerate ? 1 : 0);
        for (double v : r.observables) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_json(std::ostream& out, const SweepTable& table) {
    auto num = [](double v) { return std::isfinite(v) ? format_number(v) : std::string("null"); };
    auto quoted = [](const std::string& s) { return json(s).dump(); };
    out << "{\n  \"name\": " << quoted(table.name) << ",\n  \"columns\": [" << quoted(table.variable);
    for (const auto& c : table.criteria) out << ", " << quoted(c);
    for (const auto& c : table.criteria) out << ", " << quoted(c + "_class");
    out << ", \"degenerate\"";
    for (const auto& o : table.observables) out << ", " << quoted(o);
    out << "],\n  \"rows\": [";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        out << (i ? ",\n    [" : "\n    [") << num(r.x);
        for (double v : r.values) out << ", " << num(v);
        for (auto c : r.classes) out << ", " << static_cast<int>(c);
        out << ", " << (r.degenerate ? 1 : 0);
        for (double v : r.observables) out << ", " << num(v);
        out << ']';
    }
    out << "\n  ]\n}\n";
}

}  // namespace hzent
