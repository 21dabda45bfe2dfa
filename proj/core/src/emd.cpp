#include "midsift/emd.hpp"

#include "midsift/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace midsift {

namespace {

double stop_norm(std::span<const double> xs, StopNorm norm) {
    if (norm == StopNorm::sup) {
        double m = 0.0;
        for (const double x : xs) {
            m = std::max(m, std::abs(x));
        }
        return m;
    }
    double acc = 0.0;
    for (const double x : xs) {
        acc += x * x;
    }
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

std::optional<SiftingCurve> build_curve(const Signal& h, SiftStrategy strategy,
                                        BoundaryPolicy boundary, ExtremaRefinement refinement) {
    const auto extrema = locate_extrema(h, boundary, refinement);
    switch (strategy) {
    case SiftStrategy::classical: return classical_sifting_curve(h, extrema, boundary);
    case SiftStrategy::midpoint: return midpoint_sifting_curve(h, extrema, boundary);
    case SiftStrategy::hybrid: return hybrid_sifting_curve(h, extrema, boundary);
    }
    return std::nullopt;
}

template <typename OnIterate>
std::optional<ImfExtraction> run_extraction(const Signal& input, const SiftConfig& config,
                                            OnIterate&& on_iterate) {
    config.validate();
    double scale = 1.0;
    if (config.tolerance == Tolerance::relative) {
        scale = stop_norm(input.samples(), config.norm);
        if (!(scale > 0.0)) {
            return std::nullopt; // identically zero: nothing to sift
        }
    }

    Signal h = input;
    ImfExtraction out{Imf{{}, 0, false, config.strategy}, {}};
    on_iterate(h);
    for (std::size_t it = 0; it < config.max_sift_iterations; ++it) {
        auto step = sift_once(h, config.strategy, config.boundary, config.refinement);
        if (!step) {
            if (it == 0) {
                return std::nullopt;
            }
            break; // lost its extrema mid-sift; keep what we have, unconverged
        }
        const double change = stop_norm(step->curve.values, config.norm) / scale;
        h = std::move(step->next);
        on_iterate(h);
        out.trace.push_back(change);
        out.imf.iterations_used = it + 1;
        if (change < config.epsilon) {
            out.imf.converged = true;
            break;
        }
    }
    out.imf.samples = h.values();
    return out;
}

} // namespace

void SiftConfig::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidArgument("sift config: epsilon must be positive and finite");
    }
    if (max_sift_iterations < 1) {
        throw InvalidArgument("sift config: max_sift_iterations must be >= 1");
    }
    if (max_imfs < 1) {
        throw InvalidArgument("sift config: max_imfs must be >= 1");
    }
}

std::optional<SiftStep> sift_once(const Signal& h, SiftStrategy strategy,
                                  BoundaryPolicy boundary, ExtremaRefinement refinement) {
    if (h.size() < 4) {
        return std::nullopt;
    }
    auto curve = build_curve(h, strategy, boundary, refinement);
    if (!curve) {
        return std::nullopt;
    }
    std::vector<double> next(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        next[k] = h[k] - curve->values[k];
    }
    return SiftStep{h.with_samples(std::move(next)), std::move(*curve)};
}

std::optional<ImfExtraction> extract_imf(const Signal& h, const SiftConfig& config) {
    return run_extraction(h, config, [](const Signal&) {});
}

std::vector<std::vector<double>> sift_iterates(const Signal& h, const SiftConfig& config) {
    std::vector<std::vector<double>> iterates;
    const auto result =
        run_extraction(h, config, [&](const Signal& s) { iterates.push_back(s.values()); });
    if (!result) {
        return {};
    }
    return iterates;
}

Decomposition decompose(const Signal& signal, const SiftConfig& config) {
    config.validate();
    if (signal.size() < 4) {
        throw InvalidArgument("decompose: signal needs at least 4 samples, got " +
                              std::to_string(signal.size()));
    }
    Decomposition result{{}, signal, {}};
    std::vector<double> remainder = signal.values();
    while (result.imfs.size() < config.max_imfs) {
        auto extraction = extract_imf(signal.with_samples(remainder), config);
        if (!extraction) {
            break;
        }
        for (std::size_t k = 0; k < remainder.size(); ++k) {
            remainder[k] -= extraction->imf.samples[k];
        }
        result.traces.push_back(std::move(extraction->trace));
        result.imfs.push_back(std::move(extraction->imf));
    }
    result.residual = signal.with_samples(std::move(remainder));
    return result;
}

std::string_view to_string(SiftStrategy strategy) noexcept {
    switch (strategy) {
    case SiftStrategy::classical: return "classical";
    case SiftStrategy::midpoint: return "midpoint";
    case SiftStrategy::hybrid: return "hybrid";
    }
    return "unknown";
}

std::optional<SiftStrategy> parse_strategy(std::string_view text) noexcept {
    if (text == "classical") return SiftStrategy::classical;
    if (text == "midpoint") return SiftStrategy::midpoint;
    if (text == "hybrid") return SiftStrategy::hybrid;
    return std::nullopt;
}

std::string_view to_string(StopNorm norm) noexcept {
    return norm == StopNorm::sup ? "sup" : "rms";
}

std::optional<StopNorm> parse_norm(std::string_view text) noexcept {
    if (text == "rms") return StopNorm::rms;
    if (text == "sup") return StopNorm::sup;
    return std::nullopt;
}

std::string_view to_string(Tolerance tolerance) noexcept {
    return tolerance == Tolerance::absolute ? "absolute" : "relative";
}

std::optional<Tolerance> parse_tolerance(std::string_view text) noexcept {
    if (text == "relative") return Tolerance::relative;
    if (text == "absolute") return Tolerance::absolute;
    return std::nullopt;
}

} // namespace midsift
