#include "qcorr/run.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Two-qubit thermal dissipation: geometric discord, MIN and concurrence"};
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
    app.add_option("config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--svg", svg, "also emit an SVG plot next to each CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qcorr::kExitConfig;
    }

    qcorr::RunConfig config;
    try {
        config = qcorr::load_config(config_path);
    } catch (const qcorr::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return qcorr::kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return qcorr::kExitIo;
    }
    if (svg)
        config.emit_svg = true;
    return qcorr::run_with_status(config, out_dir);
}
