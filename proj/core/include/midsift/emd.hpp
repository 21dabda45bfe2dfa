#ifndef MIDSIFT_EMD_HPP
#define MIDSIFT_EMD_HPP

#include "midsift/envelope.hpp"
#include "midsift/signal.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace midsift {

enum class SiftStrategy { classical, midpoint, hybrid };

enum class StopNorm {
    rms, // sqrt(mean((h_i - h_{i+1})^2))
    sup, // max |h_i - h_{i+1}|
};

enum class Tolerance {
    relative, // stop norm divided by the same norm of the remainder being sifted
    absolute,
};

struct SiftConfig {
    SiftStrategy strategy = SiftStrategy::midpoint;
    double epsilon = 1e-3;
    StopNorm norm = StopNorm::rms;
    Tolerance tolerance = Tolerance::relative;
    std::size_t max_sift_iterations = 200;
    std::size_t max_imfs = 12;
    BoundaryPolicy boundary = BoundaryPolicy::mirror;
    ExtremaRefinement refinement = ExtremaRefinement::parabolic;

    /// Throws InvalidArgument unless epsilon > 0 and both caps are >= 1.
    void validate() const;
};

struct Imf {
    std::vector<double> samples;
    std::size_t iterations_used = 0;
    bool converged = false;
    SiftStrategy strategy = SiftStrategy::midpoint;
};

struct Decomposition {
    std::vector<Imf> imfs;
    Signal residual;
    /// Per IMF, the stop-norm value after each sifting iteration (normalized
    /// when the tolerance is relative).
    std::vector<std::vector<double>> traces;
};

struct SiftStep {
    Signal next;
    SiftingCurve curve;
};

/// One pass h_next = h - m. nullopt when h has too few extrema.
std::optional<SiftStep> sift_once(const Signal& h, SiftStrategy strategy,
                                  BoundaryPolicy boundary = BoundaryPolicy::mirror,
                                  ExtremaRefinement refinement = ExtremaRefinement::parabolic);

struct ImfExtraction {
    Imf imf;
    std::vector<double> trace;
};

/// Sifts until the stop norm drops below epsilon or the iteration cap is hit.
/// nullopt when h cannot be sifted even once.
std::optional<ImfExtraction> extract_imf(const Signal& h, const SiftConfig& config);

/// The successive iterates h_0, h_1, ..., h_N of one IMF extraction
/// (h_0 = input). Empty when h cannot be sifted.
std::vector<std::vector<double>> sift_iterates(const Signal& h, const SiftConfig& config);

/// Extracts IMFs from the running remainder until it can no longer be sifted
/// or max_imfs is reached. Requires at least 4 samples.
Decomposition decompose(const Signal& signal, const SiftConfig& config);

std::string_view to_string(SiftStrategy strategy) noexcept;
std::optional<SiftStrategy> parse_strategy(std::string_view text) noexcept;
std::string_view to_string(StopNorm norm) noexcept;
std::optional<StopNorm> parse_norm(std::string_view text) noexcept;
std::string_view to_string(Tolerance tolerance) noexcept;
std::optional<Tolerance> parse_tolerance(std::string_view text) noexcept;

} // namespace midsift

#endif // MIDSIFT_EMD_HPP
