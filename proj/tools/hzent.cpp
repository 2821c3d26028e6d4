#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hzent/criteria.hpp"
#include "hzent/sweep.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumerical = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hzent::ConfigError("config", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const hzent::SweepTable& table, hzent::OutputFormat format, const std::string& path) {
    auto write = [&](std::ostream& out) {
        if (format == hzent::OutputFormat::Json)
            hzent::write_json(out, table);
        else
            hzent::write_csv(out, table);
    };
    if (path.empty()) {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw hzent::ConfigError("output.path", "cannot write " + path);
    write(out);
    std::cerr << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

std::optional<hzent::OutputFormat> parse_format(const std::string& s) {
    if (s == "csv") return hzent::OutputFormat::Csv;
    if (s == "json") return hzent::OutputFormat::Json;
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hillery-Zubairy entanglement and EPR-steering sweeps for number-conserving Bose states"};
    app.require_subcommand(1);

    std::string format;
    std::string out;
    unsigned workers = 0;

    auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a JSON config file");
    std::string config_path;
    sweep->add_option("config", config_path, "config file")->required();
    sweep->add_option("--format", format, "csv or json (overrides the config)")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out, "output file (overrides the config)");
    sweep->add_option("--workers", workers, "worker threads (default: HZENT_WORKERS or all cores)");
    bool check_only = false;
    sweep->add_flag("--check", check_only, "validate and print the canonical config without running");

    auto* figure = app.add_subcommand("figure", "Write every table behind a figure preset");
    std::string figure_id;
    std::string out_dir = ".";
    figure->add_option("id", figure_id, "preset id (see 'list')")->required();
    figure->add_option("--out", out_dir, "output directory");
    figure->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    figure->add_option("--workers", workers, "worker threads");

    app.add_subcommand("list", "List figure preset ids");

    auto* cj = app.add_subcommand("cj", "Tabulate the planar squeezing bound C_J");
    double jmax = 10;
    cj->add_option("--jmax", jmax, "largest J")->required()->check(CLI::PositiveNumber);

    auto* depth = app.add_subcommand("depth", "Entanglement depth certified by a measured E_HZ");
    double e_value = 0;
    double depth_jmax = 100;
    depth->add_option("--e", e_value, "E_HZ value")->required();
    depth->add_option("--jmax", depth_jmax, "largest tabulated J")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*sweep) {
            hzent::SweepConfig cfg = hzent::validate_config(read_file(config_path));
            if (auto f = parse_format(format)) cfg.format = *f;
            if (!out.empty()) cfg.path = out;
            if (check_only) {
                std::cout << hzent::canonical_json(cfg) << '\n';
                return kOk;
            }
            std::cerr << "sweeping " << hzent::to_string(cfg.variable) << " over " << cfg.grid.points << " points\n";
            emit(hzent::run_sweep(cfg, workers), cfg.format, cfg.path);
        } else if (*figure) {
            const auto tables = hzent::figure_preset(figure_id);
            const auto fmt = parse_format(format).value_or(hzent::OutputFormat::Csv);
            std::filesystem::create_directories(out_dir);
            for (const auto& cfg : tables) {
                std::cerr << cfg.name << ": " << cfg.grid.points << " points\n";
                const auto path = std::filesystem::path(out_dir) /
                                  (cfg.name + (fmt == hzent::OutputFormat::Json ? ".json" : ".csv"));
                emit(hzent::run_sweep(cfg, workers), fmt, path.string());
            }
        } else if (app.got_subcommand("list")) {
            for (const auto& id : hzent::preset_ids()) std::cout << id << '\n';
        } else if (*cj) {
            hzent::CJTable table(jmax);
            std::cout << "J,C_J,C_J_over_J\n";
            for (const auto& [J, c] : table.entries())
                std::cout << hzent::format_number(J) << ',' << hzent::format_number(c) << ','
                          << hzent::format_number(c / J) << '\n';
        } else if (*depth) {
            hzent::CJTable table(depth_jmax);
            std::cout << hzent::entanglement_depth(e_value, table) << '\n';
        }
    } catch (const hzent::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const hzent::UnknownPreset& e) {
        std::cerr << e.what() << "; known ids:";
        for (const auto& id : hzent::preset_ids()) std::cerr << ' ' << id;
        std::cerr << '\n';
        return kConfig;
    } catch (const hzent::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
