#include "midsift/cli/commands.hpp"

#include "midsift/emd.hpp"
#include "midsift/error.hpp"
#include "midsift/pca.hpp"
#include "midsift/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>

namespace midsift::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void prepare_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw InvalidArgument("output directory '" + dir.string() + "' cannot be created");
    }
    const auto probe = dir / ".midsift-write-probe";
    {
        std::ofstream f(probe);
        if (!f) {
            throw InvalidArgument("output directory '" + dir.string() + "' is not writable");
        }
    }
    fs::remove(probe, ec);
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    f << doc.dump(2) << '\n';
}

void write_spectrum_csv(const fs::path& path, const Spectrum& s) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    f << "frequency,power\n";
    std::array<char, 64> buf{};
    for (std::size_t j = 0; j < s.power.size(); ++j) {
        std::snprintf(buf.data(), buf.size(), "%.17g,%.17g\n", s.frequencies[j], s.power[j]);
        f << buf.data();
    }
}

std::string imf_file_name(std::size_t index) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "imf_%02zu.csv", index);
    return buf.data();
}

json grid_json(const Signal& s) {
    return {{"n", s.size()}, {"t0", s.t0()}, {"dt", s.dt()}};
}

json tones_json(const std::vector<ToneSpec>& tones) {
    json arr = json::array();
    for (const auto& t : tones) {
        arr.push_back({{"amplitude", t.amplitude}, {"omega", t.omega}, {"phase", t.phase}});
    }
    return arr;
}

json projection_json(const ProjectionAmplitudes& p) {
    return {{"A", p.A}, {"B", p.B}, {"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}};
}

double energy(std::span<const double> xs) {
    double e = 0.0;
    for (const double x : xs) e += x * x;
    return e;
}

json imf_peak_json(const Signal& grid, const std::vector<double>& samples) {
    const auto spec = periodogram(grid.with_samples(samples));
    const auto bin = spec.peak_bin();
    return {{"peak_bin", bin}, {"peak_omega", spec.frequencies[bin]}};
}

// Periodogram peaks of one IMF that match no generating tone within one bin.
json ghost_peaks(const Spectrum& spec, const std::vector<ToneSpec>& tones, double threshold,
                 std::size_t imf_index) {
    json ghosts = json::array();
    const double top = spec.power[spec.peak_bin()];
    for (const auto j : find_peaks(spec, threshold)) {
        const bool matches = std::any_of(tones.begin(), tones.end(), [&](const ToneSpec& t) {
            return std::abs(static_cast<double>(j) - spec.bin_of(t.omega)) <= 1.0;
        });
        if (!matches) {
            ghosts.push_back({{"imf", imf_index},
                              {"bin", j},
                              {"omega", spec.frequencies[j]},
                              {"relative_power", spec.power[j] / top}});
        }
    }
    return ghosts;
}

json strategy_entry(const LoadedSignal& input, const ExperimentConfig& config,
                    SiftStrategy strategy) {
    const auto& signal = input.signal;
    auto sift = effective_sift(config, input);
    sift.strategy = strategy;
    json entry{{"strategy", to_string(strategy)}};

    if (config.single_sift) {
        const auto step = sift_once(signal, strategy, sift.boundary, sift.refinement);
        entry["residual_signal"] = !step.has_value();
        if (step) {
            entry["iterations"] = 1;
            entry["curve_knots"] = step->curve.knot_count;
            if (input.probes) {
                entry["projection"] = projection_json(project_fourier(
                    step->next, input.probes->omega_a, input.probes->omega_b,
                    input.probes->period));
            }
        }
        return entry;
    }

    const auto dec = decompose(signal, sift);
    const double total = energy(signal.samples());
    json imfs = json::array();
    json ghosts = json::array();
    for (std::size_t i = 0; i < dec.imfs.size(); ++i) {
        const auto& imf = dec.imfs[i];
        const auto spec = periodogram(signal.with_samples(imf.samples));
        const auto bin = spec.peak_bin();
        imfs.push_back({{"index", i + 1},
                        {"iterations", imf.iterations_used},
                        {"converged", imf.converged},
                        {"peak_bin", bin},
                        {"peak_omega", spec.frequencies[bin]},
                        {"energy_fraction", total > 0.0 ? energy(imf.samples) / total : 0.0}});
        if (!input.tones.empty()) {
            for (auto& g : ghost_peaks(spec, input.tones, config.ghost_threshold, i + 1)) {
                ghosts.push_back(std::move(g));
            }
        }
    }
    entry["imfs"] = std::move(imfs);
    entry["ghost_peaks"] = std::move(ghosts);
    entry["imf_count"] = dec.imfs.size();
    return entry;
}

} // namespace

json compare_report(const LoadedSignal& input, const ExperimentConfig& config) {
    std::vector<SiftStrategy> strategies = config.strategies;
    // Both reference strategies are always present.
    for (const auto s : {SiftStrategy::classical, SiftStrategy::midpoint}) {
        if (std::find(strategies.begin(), strategies.end(), s) == strategies.end()) {
            strategies.push_back(s);
        }
    }
    std::sort(strategies.begin(), strategies.end());
    strategies.erase(std::unique(strategies.begin(), strategies.end()), strategies.end());

    std::vector<json> entries(strategies.size());
    if (config.parallel) {
        std::vector<std::future<json>> jobs;
        for (const auto s : strategies) {
            jobs.push_back(std::async(std::launch::async, [&input, &config, s] {
                return strategy_entry(input, config, s);
            }));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            entries[i] = jobs[i].get();
        }
    } else {
        for (std::size_t i = 0; i < strategies.size(); ++i) {
            entries[i] = strategy_entry(input, config, strategies[i]);
        }
    }

    const auto sift = effective_sift(config, input);
    json report{{"schema", kSchemaVersion},
                {"command", "compare"},
                {"input", input.label},
                {"grid", grid_json(input.signal)},
                {"tones", tones_json(input.tones)},
                {"sift", sift_config_json(sift)},
                {"single_sift", config.single_sift},
                {"ghost_threshold", config.ghost_threshold},
                {"strategies", entries}};
    if (input.probes) {
        report["probes"] = {{"omega_a", input.probes->omega_a},
                            {"omega_b", input.probes->omega_b},
                            {"period", input.probes->period}};
        if (config.single_sift) {
            report["input_projection"] = projection_json(project_fourier(
                input.signal, input.probes->omega_a, input.probes->omega_b, input.probes->period));
        }
    }
    return report;
}

json cmd_generate(const ExperimentConfig& config, std::ostream& out) {
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto path = config.out_dir / "signal.csv";
    save_csv(input.signal, path);
    json doc{{"schema", kSchemaVersion},
             {"command", "generate"},
             {"input", input.label},
             {"grid", grid_json(input.signal)},
             {"file", path.filename().string()}};
    out << "wrote " << input.signal.size() << " samples (t0=" << input.signal.t0()
        << ", dt=" << input.signal.dt() << ") to " << path.string() << '\n';
    return doc;
}

json cmd_decompose(const ExperimentConfig& config, std::ostream& out) {
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto sift = effective_sift(config, input);
    const auto& signal = input.signal;
    const auto dec = decompose(signal, sift);

    json imfs = json::array();
    for (std::size_t i = 0; i < dec.imfs.size(); ++i) {
        const auto& imf = dec.imfs[i];
        const auto file = imf_file_name(i + 1);
        save_csv(signal.with_samples(imf.samples), config.out_dir / file);
        json entry{{"index", i + 1},
                   {"file", file},
                   {"iterations", imf.iterations_used},
                   {"converged", imf.converged},
                   {"trace", dec.traces[i]}};
        entry.update(imf_peak_json(signal, imf.samples));
        imfs.push_back(std::move(entry));
    }
    save_csv(dec.residual, config.out_dir / "residual.csv");

    json summary{{"schema", kSchemaVersion},
                 {"command", "decompose"},
                 {"input", input.label},
                 {"grid", grid_json(signal)},
                 {"sift", sift_config_json(sift)},
                 {"imf_count", dec.imfs.size()},
                 {"imfs", std::move(imfs)},
                 {"residual_file", "residual.csv"}};
    if (!dec.imfs.empty()) {
        // High-pass filter parameter per sifting iteration of the first IMF.
        const auto iterates = sift_iterates(signal, sift);
        const auto fit = fit_filter(iterates);
        summary["imf1_filter_alpha"] = fit.alphas;
        summary["imf1_filter_residual"] = fit.residuals;
    }
    write_json(config.out_dir / "summary.json", summary);
    out << "decomposed " << signal.size() << " samples into " << dec.imfs.size()
        << " IMFs (" << to_string(sift.strategy) << ") -> " << config.out_dir.string() << '\n';
    return summary;
}

json cmd_compare(const ExperimentConfig& config, std::ostream& out) {
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto report = compare_report(input, config);
    write_json(config.out_dir / "compare.json", report);
    for (const auto& entry : report["strategies"]) {
        out << entry["strategy"].get<std::string>() << ':';
        if (entry.contains("imfs")) {
            for (const auto& imf : entry["imfs"]) {
                out << " IMF" << imf["index"].get<std::size_t>() << '='
                    << imf["iterations"].get<std::size_t>() << "it";
                if (!imf["converged"].get<bool>()) out << "(cap)";
            }
            out << " ghosts=" << entry["ghost_peaks"].size();
        }
        if (entry.contains("projection")) {
            out << " A=" << entry["projection"]["A"].get<double>()
                << " B=" << entry["projection"]["B"].get<double>();
        }
        out << '\n';
    }
    return report;
}

json cmd_spectrum(const ExperimentConfig& config, std::ostream& out) {
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto spec = periodogram(input.signal);
    write_spectrum_csv(config.out_dir / "spectrum.csv", spec);
    json peaks = json::array();
    for (const auto j : find_peaks(spec, config.ghost_threshold)) {
        peaks.push_back({{"bin", j}, {"omega", spec.frequencies[j]}, {"power", spec.power[j]}});
    }
    json doc{{"schema", kSchemaVersion},
             {"command", "spectrum"},
             {"input", input.label},
             {"grid", grid_json(input.signal)},
             {"bin_width", spec.bin_width},
             {"peak_bin", spec.peak_bin()},
             {"peak_omega", spec.peak_frequency()},
             {"peaks", std::move(peaks)},
             {"file", "spectrum.csv"}};
    if (config.band) {
        const auto fit = fit_spectral_slope(spec, config.band->first, config.band->second);
        doc["slope_fit"] = {{"slope", fit.slope},
                            {"intercept", fit.intercept},
                            {"r_squared", fit.r_squared},
                            {"band", {fit.f_lo, fit.f_hi}},
                            {"bins_used", fit.bins_used}};
    }
    write_json(config.out_dir / "spectrum.json", doc);
    out << "periodogram: " << spec.power.size() << " bins, peak at omega="
        << spec.peak_frequency() << '\n';
    return doc;
}

json cmd_pca(const ExperimentConfig& config, std::ostream& out) {
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto& signal = input.signal;

    std::size_t delta = 0;
    bool auto_delta = false;
    bool fallback = false;
    if (config.pca.delta) {
        delta = *config.pca.delta;
    } else {
        const auto sel = select_delta(signal);
        delta = sel.delta;
        fallback = sel.fallback;
        auto_delta = true;
    }
    const auto embedding = embed(signal, delta, config.pca.copies);
    const auto model = eigen_decompose(autocovariance(embedding));

    {
        const auto path = config.out_dir / "eigenvalues.csv";
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
        f << "index,eigenvalue\n";
        std::array<char, 48> buf{};
        for (std::size_t i = 0; i < model.eigenvalues.size(); ++i) {
            std::snprintf(buf.data(), buf.size(), "%zu,%.17g\n", i, model.eigenvalues[i]);
            f << buf.data();
        }
    }

    double trace = 0.0;
    for (std::size_t i = 0; i < model.covariance.size(); ++i) trace += model.covariance(i, i);

    json doc{{"schema", kSchemaVersion},
             {"command", "pca"},
             {"input", input.label},
             {"grid", grid_json(signal)},
             {"delta", delta},
             {"delta_auto", auto_delta},
             {"delta_fallback", fallback},
             {"copies", embedding.copies},
             {"effective_length", embedding.effective_length},
             {"eigenvalues", model.eigenvalues},
             {"trace", trace},
             {"eigenvalue_file", "eigenvalues.csv"}};

    if (config.pca.cutoffs) {
        const auto groups = group_components(embedding, model, *config.pca.cutoffs);
        const Signal window(std::vector<double>(embedding.rows[0]), signal.t0(), signal.dt());
        save_csv(window.with_samples(groups.mean_flow), config.out_dir / "pca_mean_flow.csv");
        save_csv(window.with_samples(groups.waves), config.out_dir / "pca_waves.csv");
        save_csv(window.with_samples(groups.residual), config.out_dir / "pca_residual.csv");
        double worst = 0.0;
        for (std::size_t j = 0; j < window.size(); ++j) {
            const double sum = groups.mean_flow[j] + groups.waves[j] + groups.residual[j];
            worst = std::max(worst, std::abs(sum - window[j]));
        }
        doc["cutoffs"] = {{"m1", config.pca.cutoffs->m1}, {"m2", config.pca.cutoffs->m2}};
        doc["group_files"] = {"pca_mean_flow.csv", "pca_waves.csv", "pca_residual.csv"};
        doc["max_partition_error"] = worst;
    }
    write_json(config.out_dir / "pca.json", doc);
    out << "pca: delta=" << delta << (auto_delta ? " (auto)" : "") << ", n=" << embedding.copies
        << ", N'=" << embedding.effective_length << ", lambda0=" << model.eigenvalues.front()
        << '\n';
    return doc;
}

json cmd_atmospheric(const ExperimentConfig& config, std::ostream& out) {
    if (!config.band) {
        throw InvalidArgument("atmospheric requires an inertial band (--band LO HI or \"band\")");
    }
    prepare_out_dir(config.out_dir);
    const auto input = load_signal(config);
    const auto detrended = detrend_mean(input.signal);
    const auto sift = effective_sift(config, input);
    const auto dec = decompose(detrended.signal, sift);

    std::vector<double> residual = detrended.signal.values();
    for (const auto idx : config.wave_imfs) {
        if (idx < 1 || idx > dec.imfs.size()) {
            throw InvalidArgument("wave IMF index " + std::to_string(idx) + " out of range [1, " +
                                  std::to_string(dec.imfs.size()) + "]");
        }
        const auto& imf = dec.imfs[idx - 1].samples;
        for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= imf[k];
    }
    const auto turbulent = detrended.signal.with_samples(std::move(residual));
    const auto spec = periodogram(turbulent);
    const auto fit = fit_spectral_slope(spec, config.band->first, config.band->second);

    save_csv(turbulent, config.out_dir / "turbulent_residual.csv");
    write_spectrum_csv(config.out_dir / "residual_spectrum.csv", spec);

    json imfs = json::array();
    for (std::size_t i = 0; i < dec.imfs.size(); ++i) {
        json entry{{"index", i + 1},
                   {"iterations", dec.imfs[i].iterations_used},
                   {"converged", dec.imfs[i].converged}};
        entry.update(imf_peak_json(detrended.signal, dec.imfs[i].samples));
        imfs.push_back(std::move(entry));
    }
    json doc{{"schema", kSchemaVersion},
             {"command", "atmospheric"},
             {"input", input.label},
             {"grid", grid_json(input.signal)},
             {"mean", detrended.mean},
             {"sift", sift_config_json(sift)},
             {"imfs", std::move(imfs)},
             {"wave_imfs", config.wave_imfs},
             {"slope", fit.slope},
             {"intercept", fit.intercept},
             {"r_squared", fit.r_squared},
             {"band", {fit.f_lo, fit.f_hi}},
             {"bins_used", fit.bins_used},
             {"files", {"turbulent_residual.csv", "residual_spectrum.csv"}}};
    write_json(config.out_dir / "atmospheric.json", doc);
    out << "turbulent residual slope " << fit.slope << " (r^2=" << fit.r_squared << ") over ["
        << fit.f_lo << ", " << fit.f_hi << "]\n";
    return doc;
}

} // namespace midsift::cli

namespace midsift::cli {

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::string preset;
    std::string input;
    std::string strategy;
    std::string boundary;
    std::string norm;
    std::string tolerance;
    std::string refinement;
    std::optional<double> epsilon;
    std::optional<std::size_t> max_iter;
    std::optional<std::size_t> max_imfs;
    std::optional<std::uint64_t> seed;
    std::optional<double> sigma;
    std::optional<std::size_t> delta;
    std::optional<std::size_t> copies;
    std::optional<std::size_t> m1;
    std::optional<std::size_t> m2;
    std::vector<double> band;
    std::vector<std::size_t> wave_imfs;
    bool single_sift = false;
    bool hybrid = false;
    bool parallel = false;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("-c,--config", o.config, "JSON experiment config");
    sub->add_option("-o,--out", o.out, "output directory");
    sub->add_option("-p,--preset", o.preset, "canned signal name");
    sub->add_option("-i,--input", o.input, "two-column CSV input (time,value)");
    sub->add_option("--seed", o.seed, "seed for noise and turbulence");
    sub->add_option("--sigma", o.sigma, "additive Gaussian noise level");
}

void add_sift(CLI::App* sub, Overrides& o) {
    sub->add_option("-s,--strategy", o.strategy, "classical | midpoint | hybrid");
    sub->add_option("-e,--epsilon", o.epsilon, "stopping tolerance");
    sub->add_option("--max-iter", o.max_iter, "sifting iteration cap per IMF");
    sub->add_option("--max-imfs", o.max_imfs, "IMF cap");
    sub->add_option("-b,--boundary", o.boundary, "mirror | periodic");
    sub->add_option("--norm", o.norm, "rms | sup");
    sub->add_option("--tolerance", o.tolerance, "relative | absolute");
    sub->add_option("--refinement", o.refinement, "none | parabolic");
}

template <typename Parser>
auto require_parsed(Parser parse, const std::string& text, const char* flag) {
    const auto v = parse(text);
    if (!v) throw InvalidArgument(std::string("unknown value '") + text + "' for " + flag);
    return *v;
}

ExperimentConfig build_config(const Overrides& o) {
    ExperimentConfig config = o.config.empty() ? ExperimentConfig{} : load_config(o.config);

    if (!o.preset.empty() && !o.input.empty()) {
        throw InvalidArgument("--preset and --input are mutually exclusive");
    }
    if (!o.preset.empty() || !o.input.empty()) {
        config.source = SignalSource{};
        if (!o.preset.empty()) config.source.preset = o.preset;
        if (!o.input.empty()) config.source.csv = o.input;
    }
    if (!o.out.empty()) config.out_dir = o.out;
    if (o.seed) config.seed = o.seed;
    if (o.sigma) {
        NoiseSpec noise = config.noise.value_or(NoiseSpec{});
        noise.sigma = *o.sigma;
        config.noise = noise;
    }

    auto& s = config.sift;
    if (!o.strategy.empty()) s.strategy = require_parsed(parse_strategy, o.strategy, "--strategy");
    if (o.epsilon) s.epsilon = *o.epsilon;
    if (o.max_iter) s.max_sift_iterations = *o.max_iter;
    if (o.max_imfs) s.max_imfs = *o.max_imfs;
    if (!o.boundary.empty()) config.boundary = require_parsed(parse_boundary, o.boundary, "--boundary");
    if (!o.norm.empty()) s.norm = require_parsed(parse_norm, o.norm, "--norm");
    if (!o.tolerance.empty()) s.tolerance = require_parsed(parse_tolerance, o.tolerance, "--tolerance");
    if (!o.refinement.empty()) s.refinement = require_parsed(parse_refinement, o.refinement, "--refinement");
    s.validate();

    if (o.single_sift) config.single_sift = true;
    if (o.parallel) config.parallel = true;
    if (o.hybrid &&
        std::find(config.strategies.begin(), config.strategies.end(), SiftStrategy::hybrid) ==
            config.strategies.end()) {
        config.strategies.push_back(SiftStrategy::hybrid);
    }
    if (!o.band.empty()) {
        if (o.band.size() != 2 || !(o.band[0] > 0.0) || !(o.band[1] > o.band[0])) {
            throw InvalidArgument("--band needs two frequencies 0 < LO < HI");
        }
        config.band = std::pair{o.band[0], o.band[1]};
    }
    if (!o.wave_imfs.empty()) config.wave_imfs = o.wave_imfs;

    if (o.delta) {
        if (*o.delta < 1) throw InvalidArgument("--delta must be at least 1");
        config.pca.delta = o.delta;
    }
    if (o.copies) config.pca.copies = *o.copies;
    if (o.m1 || o.m2) {
        if (!o.m1 || !o.m2) throw InvalidArgument("--m1 and --m2 must be given together");
        config.pca.cutoffs = GroupingCutoffs{*o.m1, *o.m2};
    }
    return config;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Empirical mode decomposition and spectral tools", "midsift"};
    app.require_subcommand(1);
    Overrides o;

    using Command = std::function<json(const ExperimentConfig&, std::ostream&)>;
    std::vector<std::pair<CLI::App*, Command>> commands;

    auto* gen = app.add_subcommand("generate", "write a synthetic signal to signal.csv");
    add_common(gen, o);
    commands.emplace_back(gen, cmd_generate);

    auto* dec = app.add_subcommand("decompose", "decompose a signal into IMFs");
    add_common(dec, o);
    add_sift(dec, o);
    commands.emplace_back(dec, cmd_decompose);

    auto* cmp = app.add_subcommand("compare", "classical vs midpoint sifting on one input");
    add_common(cmp, o);
    add_sift(cmp, o);
    cmp->add_flag("--single-sift", o.single_sift, "apply one sifting step only");
    cmp->add_flag("--hybrid", o.hybrid, "also run the hybrid strategy");
    cmp->add_flag("--parallel", o.parallel, "run strategies concurrently");
    commands.emplace_back(cmp, cmd_compare);

    auto* spc = app.add_subcommand("spectrum", "periodogram and optional slope fit");
    add_common(spc, o);
    spc->add_option("--band", o.band, "slope-fit band LO HI (rad per time unit)")->expected(2);
    commands.emplace_back(spc, cmd_spectrum);

    auto* pca = app.add_subcommand("pca", "delay-embedding principal components");
    add_common(pca, o);
    pca->add_option("--delta", o.delta, "delay in samples (auto when omitted)");
    pca->add_option("--copies", o.copies, "number of lagged copies");
    pca->add_option("--m1", o.m1, "last mean-flow component index");
    pca->add_option("--m2", o.m2, "last wave component index");
    commands.emplace_back(pca, cmd_pca);

    auto* atm = app.add_subcommand("atmospheric", "turbulent residual slope of a sounding");
    add_common(atm, o);
    add_sift(atm, o);
    atm->add_option("--band", o.band, "inertial band LO HI (rad per time unit)")->expected(2);
    atm->add_option("--wave-imfs", o.wave_imfs, "1-based IMF indices removed as waves");
    commands.emplace_back(atm, cmd_atmospheric);

    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidArgument;
    }

    try {
        for (const auto& [sub, command] : commands) {
            if (sub->parsed()) {
                command(build_config(o), out);
                return kExitOk;
            }
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidArgument;
    } catch (const FormatError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFormat;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFormat;
    } catch (const NumericError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFormat;
    }
    return kExitInvalidArgument;
}

} // namespace midsift::cli
