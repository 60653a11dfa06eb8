#pragma once

#include "qcorr/config.hpp"
#include "qcorr/output.hpp"

#include <filesystem>
#include <vector>

namespace qcorr {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumerical = 3,
    kExitIo = 4,
};

/// Column label for an occupation number: "m0", "m0.1", "m1".
std::string m_label(double m);

/// The table a CSV-producing scenario emits. Audit has no table.
CsvTable build_table(const RunConfig& config);

/// Runs the scenario and writes its outputs into `out_dir`. Returns the
/// written paths in emission order. Exceptions propagate.
std::vector<std::filesystem::path> run(const RunConfig& config, const std::filesystem::path& out_dir);

/// run() with exceptions mapped to exit codes and reported on stderr.
int run_with_status(const RunConfig& config, const std::filesystem::path& out_dir);

} // namespace qcorr
