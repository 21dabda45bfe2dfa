#ifndef MIDSIFT_CLI_COMMANDS_HPP
#define MIDSIFT_CLI_COMMANDS_HPP

#include "midsift/cli/experiment.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace midsift::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidArgument = 2,
    kExitFormat = 3,
    kExitNumeric = 4,
};

// Each command writes its files under config.out_dir and returns the JSON
// document it wrote (or echoes).

nlohmann::json cmd_generate(const ExperimentConfig& config, std::ostream& out);
nlohmann::json cmd_decompose(const ExperimentConfig& config, std::ostream& out);
nlohmann::json cmd_compare(const ExperimentConfig& config, std::ostream& out);
nlohmann::json cmd_spectrum(const ExperimentConfig& config, std::ostream& out);
nlohmann::json cmd_pca(const ExperimentConfig& config, std::ostream& out);
nlohmann::json cmd_atmospheric(const ExperimentConfig& config, std::ostream& out);

/// The CompareReport for an already loaded input (no file output).
nlohmann::json compare_report(const LoadedSignal& input, const ExperimentConfig& config);

/// Full command line entry point; args[0] is the program name. Maps errors
/// to the documented exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace midsift::cli

#endif // MIDSIFT_CLI_COMMANDS_HPP
