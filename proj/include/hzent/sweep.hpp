#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hzent/criteria.hpp"
#include "hzent/errors.hpp"

namespace hzent {

/// Invalid sweep configuration. `key` names the offending entry.
struct ConfigError : Error {
    ConfigError(std::string key, const std::string& message)
        : Error(key + ": " + message), key(std::move(key)) {}
    std::string key;
};

struct UnknownPreset : Error {
    using Error::Error;
};

enum class SystemKind { TwoMode, FourMode, BsSingle, BsDouble, BsFour, CoherentLo };
enum class SweepVariable { NgOverKappa, N, N1, T, Alpha, M };
enum class TemperatureUnit { KappaUnits, Nanokelvin };
enum class OutputFormat { Csv, Json };

/// kappa / k_B in nanokelvin for the physical temperature axis.
inline constexpr double kKappaNanokelvin = 50.0;

struct CriterionSpec {
    std::string name;  ///< e_hz, e_hz_rot, e_hz_planar, e_hz_rotated, e_hz_spin, coherent_lo, duan, heisenberg
    int m = 1;         ///< order for e_hz and e_hz_rot; 0 when m is swept
    PairRotation rotation = PairRotation::None;  ///< e_hz_spin, duan, heisenberg
    int pair = 0;      ///< mode pair for two-mode criteria on four-mode states

    std::string column() const;
    friend bool operator==(const CriterionSpec&, const CriterionSpec&) = default;
};

struct Grid {
    double start = 0;
    double stop = 1;
    int points = 2;

    double at(int k) const { return start + (stop - start) * k / (points - 1); }
    friend bool operator==(const Grid&, const Grid&) = default;
};

struct SweepConfig {
    std::string name = "sweep";
    SystemKind system = SystemKind::TwoMode;
    std::map<std::string, double> params;
    SweepVariable variable = SweepVariable::NgOverKappa;
    Grid grid;
    std::vector<CriterionSpec> criteria;
    std::vector<std::string> observables;
    TemperatureUnit temperature_unit = TemperatureUnit::KappaUnits;
    OutputFormat format = OutputFormat::Csv;
    std::string path;  ///< empty writes to standard output

    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Parses and checks a JSON configuration. Every problem found is collected;
/// the first one is thrown as ConfigError.
SweepConfig validate_config(const std::string& text);

/// Canonical JSON text: all defaults explicit, keys sorted.
std::string canonical_json(const SweepConfig& cfg);

struct SweepRow {
    double x = 0;
    std::vector<double> values;
    std::vector<Classification> classes;
    bool degenerate = false;
    std::vector<double> observables;
    double wall_seconds = 0;
};

struct SweepTable {
    std::string name;
    std::string variable;
    std::vector<std::string> criteria;
    std::vector<std::string> observables;
    std::vector<SweepRow> rows;
};

/// Evaluates every grid point, in parallel when `workers` > 1 (0 picks the
/// HZENT_WORKERS environment variable, else the hardware concurrency).
/// Rows come back in grid order. Numerical problems are rethrown as
/// NumericalFailure naming the grid point.
SweepTable run_sweep(const SweepConfig& cfg, unsigned workers = 0);

/// Header, then one line per row: sweep value, criterion values,
/// classification codes, degenerate flag, observables. Wall time is not
/// written so output is byte-stable.
void write_csv(std::ostream& out, const SweepTable& table);
void write_json(std::ostream& out, const SweepTable& table);

/// "%.12g"; nan and inf spelled out.
std::string format_number(double v);

/// Ids accepted by figure_preset().
std::vector<std::string> preset_ids();

/// Configurations behind one figure. Throws UnknownPreset.
std::vector<SweepConfig> figure_preset(const std::string& id);

const char* to_string(SweepVariable v);
const char* to_string(SystemKind s);

}  // namespace hzent
