#include "qcorr/run.hpp"

#include "qcorr/analysis.hpp"
#include "qcorr/format.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace qcorr {

std::string m_label(double m) { return "m" + format_number(m); }

namespace {

std::vector<double> config_grid(const RunConfig& cfg)
{
    return uniform_grid(cfg.grid.points, cfg.grid.x_min, cfg.grid.x_max);
}

ReservoirParams params_for(const RunConfig& cfg, double m) { return {cfg.gamma, m}; }

CsvTable with_x_column(const std::vector<double>& grid)
{
    CsvTable table;
    table.header.push_back("X");
    table.rows.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        table.rows[i].push_back(grid[i]);
    return table;
}

void add_column(CsvTable& table, std::string name, const std::vector<double>& values)
{
    table.header.push_back(std::move(name));
    for (std::size_t i = 0; i < values.size(); ++i)
        table.rows[i].push_back(values[i]);
}

CsvTable measure_table(const RunConfig& cfg)
{
    const auto grid = config_grid(cfg);
    CsvTable table = with_x_column(grid);
    // figure2 pairs the two MIN variants per m; the other scenarios group by
    // measure.
    if (cfg.scenario == Scenario::Figure2) {
        for (double m : cfg.m_values)
            for (Measure measure : cfg.measures) {
                const auto series = sweep({cfg.state0, cfg.state_label, params_for(cfg, m), measure, cfg.backend}, grid);
                add_column(table, std::string(measure_name(measure)) + "_" + m_label(m), series.values);
            }
        return table;
    }
    for (Measure measure : cfg.measures)
        for (double m : cfg.m_values) {
            const auto series = sweep({cfg.state0, cfg.state_label, params_for(cfg, m), measure, cfg.backend}, grid);
            add_column(table, std::string(measure_name(measure)) + "_" + m_label(m), series.values);
        }
    return table;
}

CsvTable evolve_table(const RunConfig& cfg)
{
    const auto grid = config_grid(cfg);
    CsvTable table = with_x_column(grid);
    const bool checked = !std::holds_alternative<PaperLiteral>(cfg.backend);
    for (double m : cfg.m_values) {
        const auto states = trajectory(cfg.state0, params_for(cfg, m), cfg.backend, grid);
        const auto label = m_label(m);
        auto column = [&](std::string name, auto&& fn) {
            std::vector<double> values;
            values.reserve(states.size());
            for (const auto& s : states)
                values.push_back(fn(s));
            add_column(table, std::move(name) + "_" + label, values);
        };
        column("a", [](const XState& s) { return s.a; });
        column("b", [](const XState& s) { return s.b; });
        column("c", [](const XState& s) { return s.c; });
        column("d", [](const XState& s) { return s.d; });
        column("abs_w", [](const XState& s) { return std::abs(s.w); });
        column("abs_z", [](const XState& s) { return std::abs(s.z); });
        for (Measure measure : cfg.measures)
            column(std::string(measure_name(measure)),
                [&](const XState& s) { return evaluate_measure(measure, s, checked); });
    }
    return table;
}

double max_deviation(const XState& lhs, const XState& rhs)
{
    return std::max({std::abs(lhs.a - rhs.a), std::abs(lhs.b - rhs.b), std::abs(lhs.c - rhs.c),
        std::abs(lhs.d - rhs.d), std::abs(lhs.w - rhs.w), std::abs(lhs.z - rhs.z)});
}

CsvTable compare_table(const RunConfig& cfg)
{
    const auto grid = config_grid(cfg);
    CsvTable table = with_x_column(grid);
    const OdeOracle ode = std::holds_alternative<OdeOracle>(cfg.backend) ? std::get<OdeOracle>(cfg.backend)
                                                                         : OdeOracle{default_ode_step(cfg.gamma)};
    for (double m : cfg.m_values) {
        const auto params = params_for(cfg, m);
        const auto repaired = trajectory(cfg.state0, params, RepairedClosedForm{}, grid);
        const auto oracle = trajectory(cfg.state0, params, ode, grid);
        std::vector<double> dev(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            dev[i] = max_deviation(repaired[i], oracle[i]);
        add_column(table, "maxdev_" + m_label(m), dev);
    }
    return table;
}

std::string title_for(const RunConfig& cfg)
{
    switch (cfg.scenario) {
    case Scenario::Figure1:
        return "GMOD vs X, " + cfg.state_label;
    case Scenario::Figure2:
        return "MIN vs X, " + cfg.state_label;
    case Scenario::CompareBackends:
        return "repaired vs ODE max deviation, " + cfg.state_label;
    default:
        return std::string(scenario_name(cfg.scenario)) + ", " + cfg.state_label + ", backend "
            + backend_name(cfg.backend);
    }
}

} // namespace

CsvTable build_table(const RunConfig& config)
{
    switch (config.scenario) {
    case Scenario::Evolve:
        return evolve_table(config);
    case Scenario::CompareBackends:
        return compare_table(config);
    case Scenario::Sweep:
    case Scenario::Figure1:
    case Scenario::Figure2:
        return measure_table(config);
    case Scenario::Audit:
        break;
    }
    throw std::invalid_argument("scenario has no CSV table");
}

std::vector<std::filesystem::path> run(const RunConfig& config, const std::filesystem::path& out_dir)
{
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::ios_base::failure("cannot create output directory " + out_dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    if (config.scenario == Scenario::Audit) {
        std::string text;
        for (double m : config.m_values) {
            if (!text.empty())
                text += "\n";
            text += render_audit(audit(config.state0, params_for(config, m), config.state_label));
        }
        const auto path = out_dir / (config.output + ".txt");
        write_file(path, text);
        written.push_back(path);
        return written;
    }

    const CsvTable table = build_table(config);
    const auto csv_path = out_dir / (config.output + ".csv");
    write_file(csv_path, render_csv(table));
    written.push_back(csv_path);
    if (config.emit_svg) {
        const auto svg_path = out_dir / (config.output + ".svg");
        write_file(svg_path, render_svg(table, title_for(config)));
        written.push_back(svg_path);
    }
    return written;
}

int run_with_status(const RunConfig& config, const std::filesystem::path& out_dir)
{
    try {
        for (const auto& path : run(config, out_dir))
            std::cout << "wrote " << path.string() << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "numerical/validation failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

} // namespace qcorr
