#ifndef MIDSIFT_CLI_EXPERIMENT_HPP
#define MIDSIFT_CLI_EXPERIMENT_HPP

#include "midsift/emd.hpp"
#include "midsift/pca.hpp"
#include "midsift/signal.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace midsift::cli {

/// Two probe frequencies and the integration period for Fourier projections.
struct ProbeSpec {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double period = 0.0;
};

struct Grid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 0;
};

/// A canned signal: tones on a grid, optionally plus a power-law turbulence
/// component and a constant offset. Presets also carry the boundary policy and
/// probes their experiment needs.
struct Preset {
    std::string name;
    std::string description;
    std::vector<ToneSpec> tones;
    Grid grid;
    BoundaryPolicy boundary = BoundaryPolicy::mirror;
    std::optional<ProbeSpec> probes;
    std::optional<PowerLawSpec> turbulence;
    double offset = 0.0;
};

const std::vector<Preset>& presets();
/// Throws InvalidArgument listing the known names.
const Preset& find_preset(const std::string& name);

struct SignalSource {
    std::optional<std::string> preset;
    std::optional<std::filesystem::path> csv;
    std::optional<std::vector<ToneSpec>> tones;
    std::optional<Grid> grid; // required with tones
};

struct PcaOptions {
    std::optional<std::size_t> delta; // auto-selected when absent
    std::size_t copies = 16;
    std::optional<GroupingCutoffs> cutoffs;
};

struct ExperimentConfig {
    SignalSource source;
    std::optional<NoiseSpec> noise;
    std::optional<std::uint64_t> seed; // overrides noise / turbulence seeds

    SiftConfig sift;
    std::optional<BoundaryPolicy> boundary; // else preset default, else mirror

    std::vector<SiftStrategy> strategies{SiftStrategy::classical, SiftStrategy::midpoint};
    bool single_sift = false;
    std::optional<ProbeSpec> probes; // else preset default
    double ghost_threshold = 0.01;

    std::optional<std::pair<double, double>> band;
    PcaOptions pca;
    std::vector<std::size_t> wave_imfs; // 1-based IMF indices

    std::filesystem::path out_dir = ".";
    bool parallel = false;
};

/// Throws InvalidArgument on unknown keys, bad values, or more than one
/// signal source.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json sift_config_json(const SiftConfig& config);

/// The materialized input of an experiment.
struct LoadedSignal {
    Signal signal;
    std::vector<ToneSpec> tones; // generating tones, empty for CSV input
    std::optional<ProbeSpec> probes;
    BoundaryPolicy boundary = BoundaryPolicy::mirror;
    std::string label;
};

/// Exactly one source must be set. Applies noise and seed overrides.
LoadedSignal load_signal(const ExperimentConfig& config);

/// Sift configuration with the effective boundary of the loaded input.
SiftConfig effective_sift(const ExperimentConfig& config, const LoadedSignal& input);

} // namespace midsift::cli

#endif // MIDSIFT_CLI_EXPERIMENT_HPP
