#include "midsift/cli/experiment.hpp"

#include "midsift/error.hpp"

#include <fstream>
#include <numbers>
#include <set>

namespace midsift::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<ToneSpec> pair_of_tones(double w1, double w2) {
    return {{0.5, w1, 0.0}, {0.5, w2, 0.0}};
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;
    const Grid centered_grid{-2048.0, 1.0, 4097};
    const double w0 = kPi / 256.0;

    out.push_back({"eq2.1", "three close tones (12, 10, 8) * pi/256, amplitude 1/3, [-2048, 2048]",
                   {{1.0 / 3.0, 12.0 * w0, 0.0}, {1.0 / 3.0, 10.0 * w0, 0.0},
                    {1.0 / 3.0, 8.0 * w0, 0.0}},
                   centered_grid, BoundaryPolicy::mirror, std::nullopt, std::nullopt, 0.0});

    const double w4 = 3.0 * kPi / 64.0;
    const double w5 = kPi / 32.0;
    out.push_back({"eq3.1", "tones 3pi/64 and pi/32 (period 128) on a dt = 1/64 grid over [0, 128]",
                   pair_of_tones(w4, w5), Grid{0.0, 1.0 / 64.0, 128 * 64 + 1},
                   BoundaryPolicy::periodic, ProbeSpec{w4, w5, 128.0}, std::nullopt, 0.0});

    out.push_back({"case1", "well separated tones 12 pi/256 and 8 pi/256",
                   pair_of_tones(12.0 * w0, 8.0 * w0), centered_grid, BoundaryPolicy::mirror,
                   std::nullopt, std::nullopt, 0.0});
    out.push_back({"case2", "close tones pi/24 +- pi/288",
                   pair_of_tones(kPi / 24.0 + kPi / 288.0, kPi / 24.0 - kPi / 288.0), centered_grid,
                   BoundaryPolicy::mirror, std::nullopt, std::nullopt, 0.0});
    out.push_back({"case3", "nearly overlapping tones pi/24 +- pi/1000",
                   pair_of_tones(kPi / 24.0 + kPi / 1000.0, kPi / 24.0 - kPi / 1000.0),
                   centered_grid, BoundaryPolicy::mirror, std::nullopt, std::nullopt, 0.0});

    // Synthetic temperature sounding: offset + two gravity-wave tones on exact
    // bins + random-phase turbulence with a -2.7 power law.
    const std::size_t n = 4096;
    const double bin = 2.0 * kPi / static_cast<double>(n);
    out.push_back({"sounding",
                   "sounding surrogate: offset, gravity waves at bins 24 and 40, -2.7 turbulence",
                   {{1.5, 24.0 * bin, 0.3}, {1.0, 40.0 * bin, 1.1}},
                   Grid{0.0, 1.0, n}, BoundaryPolicy::mirror, std::nullopt,
                   PowerLawSpec{-2.7, 2000.0, 8, 2001, false}, 220.0});
    return out;
}

template <typename T>
T get_checked(const json& j, const char* key) {
    try {
        return j.get<T>();
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config key '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw InvalidArgument("unknown config key '" + key + "' in " + where);
        }
    }
}

std::vector<ToneSpec> tones_from_json(const json& arr) {
    if (!arr.is_array()) {
        throw InvalidArgument("config key 'tones' must be an array");
    }
    std::vector<ToneSpec> tones;
    for (const auto& t : arr) {
        reject_unknown(t, {"amplitude", "omega", "phase"}, "tone");
        ToneSpec spec;
        spec.amplitude = get_checked<double>(t.value("amplitude", json(1.0)), "amplitude");
        spec.omega = get_checked<double>(t.at("omega"), "omega");
        spec.phase = get_checked<double>(t.value("phase", json(0.0)), "phase");
        tones.push_back(spec);
    }
    return tones;
}

void apply_sift(const json& j, ExperimentConfig& cfg) {
    reject_unknown(j,
                   {"strategy", "epsilon", "norm", "tolerance", "max_sift_iterations",
                    "max_imfs", "boundary", "refinement"},
                   "sift");
    auto& s = cfg.sift;
    if (j.contains("strategy")) {
        const auto v = parse_strategy(get_checked<std::string>(j["strategy"], "strategy"));
        if (!v) throw InvalidArgument("sift.strategy must be classical|midpoint|hybrid");
        s.strategy = *v;
    }
    if (j.contains("epsilon")) s.epsilon = get_checked<double>(j["epsilon"], "epsilon");
    if (j.contains("norm")) {
        const auto v = parse_norm(get_checked<std::string>(j["norm"], "norm"));
        if (!v) throw InvalidArgument("sift.norm must be rms|sup");
        s.norm = *v;
    }
    if (j.contains("tolerance")) {
        const auto v = parse_tolerance(get_checked<std::string>(j["tolerance"], "tolerance"));
        if (!v) throw InvalidArgument("sift.tolerance must be relative|absolute");
        s.tolerance = *v;
    }
    if (j.contains("max_sift_iterations")) {
        s.max_sift_iterations = get_checked<std::size_t>(j["max_sift_iterations"], "max_sift_iterations");
    }
    if (j.contains("max_imfs")) s.max_imfs = get_checked<std::size_t>(j["max_imfs"], "max_imfs");
    if (j.contains("boundary")) {
        const auto v = parse_boundary(get_checked<std::string>(j["boundary"], "boundary"));
        if (!v) throw InvalidArgument("sift.boundary must be mirror|periodic");
        cfg.boundary = *v;
    }
    if (j.contains("refinement")) {
        const auto v = parse_refinement(get_checked<std::string>(j["refinement"], "refinement"));
        if (!v) throw InvalidArgument("sift.refinement must be parabolic|none");
        s.refinement = *v;
    }
}

} // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets()) {
        if (p.name == name) {
            return p;
        }
    }
    std::string known;
    for (const auto& p : presets()) {
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw InvalidArgument("unknown preset '" + name + "' (known: " + known + ")");
}

ExperimentConfig config_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw InvalidArgument("config must be a JSON object");
    }
    reject_unknown(doc,
                   {"preset", "csv", "tones", "grid", "noise", "seed", "sift", "strategies",
                    "single_sift", "probes", "ghost_threshold", "band", "pca", "wave_imfs",
                    "out", "parallel"},
                   "config");
    ExperimentConfig cfg;
    int sources = 0;
    if (doc.contains("preset")) {
        cfg.source.preset = get_checked<std::string>(doc["preset"], "preset");
        ++sources;
    }
    if (doc.contains("csv")) {
        cfg.source.csv = get_checked<std::string>(doc["csv"], "csv");
        ++sources;
    }
    if (doc.contains("tones")) {
        cfg.source.tones = tones_from_json(doc["tones"]);
        ++sources;
        if (!doc.contains("grid")) {
            throw InvalidArgument("config with 'tones' requires 'grid' {t0, dt, n}");
        }
    }
    if (sources > 1) {
        throw InvalidArgument("config names more than one signal source (preset/csv/tones)");
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        reject_unknown(g, {"t0", "dt", "n"}, "grid");
        cfg.source.grid = Grid{get_checked<double>(g.value("t0", json(0.0)), "grid.t0"),
                               get_checked<double>(g.value("dt", json(1.0)), "grid.dt"),
                               get_checked<std::size_t>(g.at("n"), "grid.n")};
    }
    if (doc.contains("noise")) {
        const auto& nj = doc["noise"];
        reject_unknown(nj, {"sigma", "seed"}, "noise");
        cfg.noise = NoiseSpec{get_checked<double>(nj.value("sigma", json(0.0)), "noise.sigma"),
                              get_checked<std::uint64_t>(nj.value("seed", json(0)), "noise.seed")};
    }
    if (doc.contains("seed")) cfg.seed = get_checked<std::uint64_t>(doc["seed"], "seed");
    if (doc.contains("sift")) apply_sift(doc["sift"], cfg);
    if (doc.contains("strategies")) {
        cfg.strategies.clear();
        for (const auto& s : doc["strategies"]) {
            const auto v = parse_strategy(get_checked<std::string>(s, "strategies"));
            if (!v) throw InvalidArgument("strategies entries must be classical|midpoint|hybrid");
            cfg.strategies.push_back(*v);
        }
    }
    if (doc.contains("single_sift")) cfg.single_sift = get_checked<bool>(doc["single_sift"], "single_sift");
    if (doc.contains("probes")) {
        const auto& pj = doc["probes"];
        reject_unknown(pj, {"omega_a", "omega_b", "period"}, "probes");
        cfg.probes = ProbeSpec{get_checked<double>(pj.at("omega_a"), "probes.omega_a"),
                               get_checked<double>(pj.at("omega_b"), "probes.omega_b"),
                               get_checked<double>(pj.at("period"), "probes.period")};
    }
    if (doc.contains("ghost_threshold")) {
        cfg.ghost_threshold = get_checked<double>(doc["ghost_threshold"], "ghost_threshold");
    }
    if (doc.contains("band")) {
        const auto band = get_checked<std::vector<double>>(doc["band"], "band");
        if (band.size() != 2) throw InvalidArgument("config key 'band' must be [lo, hi]");
        cfg.band = std::pair{band[0], band[1]};
    }
    if (doc.contains("pca")) {
        const auto& pj = doc["pca"];
        reject_unknown(pj, {"delta", "copies", "m1", "m2"}, "pca");
        if (pj.contains("delta")) cfg.pca.delta = get_checked<std::size_t>(pj["delta"], "pca.delta");
        if (pj.contains("copies")) cfg.pca.copies = get_checked<std::size_t>(pj["copies"], "pca.copies");
        if (pj.contains("m1") != pj.contains("m2")) {
            throw InvalidArgument("pca.m1 and pca.m2 must be given together");
        }
        if (pj.contains("m1")) {
            cfg.pca.cutoffs = GroupingCutoffs{get_checked<std::size_t>(pj["m1"], "pca.m1"),
                                              get_checked<std::size_t>(pj["m2"], "pca.m2")};
        }
    }
    if (doc.contains("wave_imfs")) {
        cfg.wave_imfs = get_checked<std::vector<std::size_t>>(doc["wave_imfs"], "wave_imfs");
    }
    if (doc.contains("out")) cfg.out_dir = get_checked<std::string>(doc["out"], "out");
    if (doc.contains("parallel")) cfg.parallel = get_checked<bool>(doc["parallel"], "parallel");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

json sift_config_json(const SiftConfig& c) {
    return {{"strategy", to_string(c.strategy)},
            {"epsilon", c.epsilon},
            {"norm", to_string(c.norm)},
            {"tolerance", to_string(c.tolerance)},
            {"max_sift_iterations", c.max_sift_iterations},
            {"max_imfs", c.max_imfs},
            {"boundary", to_string(c.boundary)},
            {"refinement", to_string(c.refinement)}};
}

LoadedSignal load_signal(const ExperimentConfig& config) {
    const auto& src = config.source;
    const int count = int(src.preset.has_value()) + int(src.csv.has_value()) +
                      int(src.tones.has_value());
    if (count != 1) {
        throw InvalidArgument(count == 0 ? "no signal source: give --preset, --input, or a config "
                                           "with preset/csv/tones"
                                         : "more than one signal source specified");
    }

    std::optional<Signal> signal;
    LoadedSignal loaded{Signal({0.0, 0.0}, 0.0, 1.0), {}, std::nullopt, BoundaryPolicy::mirror, ""};
    if (src.preset) {
        const auto& p = find_preset(*src.preset);
        signal = generate_multitone(p.tones, p.grid.t0, p.grid.dt, p.grid.n);
        if (p.turbulence) {
            auto spec = *p.turbulence;
            if (config.seed) spec.seed = *config.seed;
            const auto turb = generate_power_law(spec, p.grid.t0, p.grid.dt, p.grid.n);
            std::vector<double> xs = signal->values();
            for (std::size_t k = 0; k < xs.size(); ++k) xs[k] += turb[k] + p.offset;
            signal = signal->with_samples(std::move(xs));
        } else if (p.offset != 0.0) {
            std::vector<double> xs = signal->values();
            for (auto& x : xs) x += p.offset;
            signal = signal->with_samples(std::move(xs));
        }
        loaded.tones = p.tones;
        loaded.probes = p.probes;
        loaded.boundary = p.boundary;
        loaded.label = "preset:" + p.name;
    } else if (src.csv) {
        signal = load_csv(*src.csv);
        loaded.label = "csv:" + src.csv->string();
    } else {
        if (src.tones->empty()) {
            throw InvalidArgument("empty tone list");
        }
        if (!src.grid) {
            throw InvalidArgument("tone source requires a grid {t0, dt, n}");
        }
        signal = generate_multitone(*src.tones, src.grid->t0, src.grid->dt, src.grid->n);
        loaded.tones = *src.tones;
        loaded.label = "tones";
    }

    if (config.noise && config.noise->sigma > 0.0) {
        auto noise = *config.noise;
        if (config.seed) noise.seed = *config.seed;
        signal = add_noise(*signal, noise);
    }
    if (config.probes) loaded.probes = config.probes;
    if (config.boundary) loaded.boundary = *config.boundary;
    loaded.signal = std::move(*signal);
    return loaded;
}

SiftConfig effective_sift(const ExperimentConfig& config, const LoadedSignal& input) {
    SiftConfig s = config.sift;
    s.boundary = input.boundary;
    s.validate();
    return s;
}

} // namespace midsift::cli
