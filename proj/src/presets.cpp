#include <functional>

#include "hzent/sweep.hpp"

namespace hzent {

namespace {

// 87Rb scattering lengths in units of a_0.
constexpr double kA11 = 100.4;
constexpr double kA12 = 80.8;
constexpr double kA22 = 95.5;

CriterionSpec crit(std::string name, int m = 1, PairRotation rotation = PairRotation::None, int pair = 0) {
    return {std::move(name), m, rotation, pair};
}

SweepConfig table(std::string name, SystemKind system, std::map<std::string, double> params, SweepVariable variable,
                  Grid grid, std::vector<CriterionSpec> criteria, std::vector<std::string> observables = {}) {
    SweepConfig c;
    c.name = std::move(name);
    c.system = system;
    c.params = std::move(params);
    c.variable = variable;
    c.grid = grid;
    c.criteria = std::move(criteria);
    c.observables = std::move(observables);
    // Route through the validator so presets carry the same defaults as files.
    return validate_config(canonical_json(c));
}

std::vector<SweepConfig> planar() {
    const std::vector<CriterionSpec> criteria = {crit("e_hz", 1), crit("e_hz", 2), crit("e_hz_rot", 1),
                                                 crit("e_hz_rot", 2), crit("e_hz_planar")};
    const std::vector<std::string> obs = {"energy", "gap", "var_x", "var_y", "var_z", "mean_x"};
    return {table("fig-planar-n100", SystemKind::TwoMode, {{"N", 100}, {"kappa", 1}}, SweepVariable::NgOverKappa,
                  {-4, 4, 801}, criteria, obs),
            table("fig-planar-n6", SystemKind::TwoMode, {{"N", 6}, {"kappa", 1}}, SweepVariable::NgOverKappa,
                  {-4, 4, 801}, criteria, obs)};
}

std::vector<SweepConfig> ellipsoid() {
    return {table("fig-ellipsoid", SystemKind::TwoMode, {{"N", 100}, {"kappa", 1}}, SweepVariable::NgOverKappa,
                  {0, 100, 201}, {crit("e_hz_rotated"), crit("e_hz_planar"), crit("e_hz", 1)},
                  {"var_x", "var_y", "var_z", "mean_x", "mean_y", "mean_z"})};
}

std::vector<SweepConfig> fourmode() {
    const std::vector<CriterionSpec> criteria = {crit("e_hz_spin"), crit("e_hz_spin", 1, PairRotation::PlanarPair1)};
    const std::vector<std::string> obs = {"energy", "gap"};
    const Grid attractive{-4, 0, 81};
    auto four = [&](std::string name, std::map<std::string, double> extra, Grid grid = {-4, 0, 81}) {
        std::map<std::string, double> p = {{"N1", 5}, {"N2", 100}, {"kappa1", 1}, {"kappa2", 1}};
        p.insert(extra.begin(), extra.end());
        return table(std::move(name), SystemKind::FourMode, p, SweepVariable::NgOverKappa, grid, criteria, obs);
    };
    std::vector<SweepConfig> out = {
        four("fig-fourmode-equal", {{"g22_over_g11", 1}, {"g12_over_g11", 1}}),
        four("fig-fourmode-rb", {{"g22_over_g11", kA22 / kA11}, {"g12_over_g11", kA12 / kA11}}),
        four("fig-fourmode-g12-zero", {{"N2g22_over_kappa", -2.03}, {"g12", 0}}),
        four("fig-fourmode-negative", {{"g22_over_g11", kA22 / kA11}, {"g12_over_g11", -kA12 / kA11}}),
    };
    out.push_back(table("fig-fourmode-rotated", SystemKind::FourMode,
                        {{"N1", 5}, {"N2", 100}, {"N2g22_over_kappa", -2.03}, {"g12", 0}},
                        SweepVariable::NgOverKappa, {-4, 40, 89},
                        {crit("e_hz_spin"), crit("e_hz_spin", 1, PairRotation::PlanarPair1),
                         crit("e_hz_spin", 1, PairRotation::PlanarBothPairs)},
                        obs));
    // N1 g11 = N2 g22 with N2 = 100, so g22/g11 = N1/100.
    for (int n1 : {5, 20}) {
        std::map<std::string, double> p = {{"N1", n1},  {"N2", 100},          {"kappa1", 1},
                                           {"kappa2", 1}, {"g22_over_g11", n1 / 100.0}, {"g12", 0}};
        out.push_back(table("fig-fourmode-tied-n" + std::to_string(n1), SystemKind::FourMode, p,
                            SweepVariable::NgOverKappa, attractive,
                            {crit("e_hz_spin"), crit("e_hz", 1, PairRotation::None, 0),
                             crit("e_hz", 1, PairRotation::None, 1)},
                            obs));
    }
    out.push_back(table("fig-fourmode-inset", SystemKind::FourMode,
                        {{"N2", 100}, {"Ng_over_kappa", -2.1}, {"N2g22_over_kappa", -2.03}, {"g12", 0}},
                        SweepVariable::N1, {5, 50, 10}, criteria, obs));
    return out;
}

std::vector<SweepConfig> thermal() {
    SweepConfig two = table("fig-thermal", SystemKind::TwoMode, {{"N", 100}, {"Ng_over_kappa", -2.23}},
                            SweepVariable::T, {0, 100, 21}, {crit("e_hz", 1)});
    SweepConfig four = table("fig-thermal-fourmode", SystemKind::FourMode,
                             {{"N1", 5}, {"N2", 100}, {"Ng_over_kappa", -2.23}, {"N2g22_over_kappa", -2.03}, {"g12", 0}},
                             SweepVariable::T, {0, 100, 21}, {crit("e_hz_spin")});
    std::vector<SweepConfig> out;
    for (auto* c : {&two, &four}) {
        c->temperature_unit = TemperatureUnit::Nanokelvin;
        out.push_back(validate_config(canonical_json(*c)));
    }
    return out;
}

std::vector<SweepConfig> local_oscillator() {
    return {table("fig-lo", SystemKind::CoherentLo, {{"N", 100}, {"Ng_over_kappa", -2.03}}, SweepVariable::Alpha,
                  {1, 100, 100}, {crit("coherent_lo"), crit("e_hz", 1)})};
}

std::vector<SweepConfig> single_fock() {
    std::vector<CriterionSpec> orders;
    for (int m = 1; m <= 20; ++m) orders.push_back(crit("e_hz", m));
    return {table("fig-singlefock", SystemKind::BsSingle, {}, SweepVariable::N, {1, 20, 20}, orders),
            table("fig-singlefock-n", SystemKind::BsSingle, {}, SweepVariable::N, {1, 100, 100}, {crit("e_hz", 1)})};
}

std::vector<SweepConfig> double_fock() {
    return {table("fig-doublefock", SystemKind::BsDouble, {}, SweepVariable::N, {1, 20, 20},
                  {crit("e_hz", 1), crit("e_hz", 2), crit("e_hz", 3), crit("e_hz", 4)})};
}

std::vector<SweepConfig> bs_four() {
    const std::vector<CriterionSpec> criteria = {crit("e_hz_spin"), crit("duan")};
    return {table("fig-bsfour", SystemKind::BsFour, {{"N2", 100}}, SweepVariable::N1, {1, 20, 20}, criteria),
            table("fig-bsfour-symmetric", SystemKind::BsFour, {{"N2_equals_N1", 1}}, SweepVariable::N1, {1, 20, 20},
                  criteria)};
}

const std::vector<std::pair<std::string, std::function<std::vector<SweepConfig>()>>>& registry() {
    static const std::vector<std::pair<std::string, std::function<std::vector<SweepConfig>()>>> r = {
        {"fig-planar", planar},     {"fig-ellipsoid", ellipsoid},     {"fig-fourmode", fourmode},
        {"fig-thermal", thermal},   {"fig-lo", local_oscillator},     {"fig-singlefock", single_fock},
        {"fig-doublefock", double_fock}, {"fig-bsfour", bs_four},
    };
    return r;
}

}  // namespace

std::vector<std::string> preset_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, make] : registry()) ids.push_back(id);
    return ids;
}

std::vector<SweepConfig> figure_preset(const std::string& id) {
    for (const auto& [name, make] : registry())
        if (name == id) return make();
    throw UnknownPreset("unknown figure preset '" + id + "'");
}

}  // namespace hzent
