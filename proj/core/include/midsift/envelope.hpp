#ifndef MIDSIFT_ENVELOPE_HPP
#define MIDSIFT_ENVELOPE_HPP

#include "midsift/signal.hpp"
#include "midsift/spline.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace midsift {

enum class ExtremumKind : std::int8_t { minimum = -1, maximum = 1 };

struct Extremum {
    std::size_t index; // grid sample that passed the discrete test
    double t;          // position, possibly refined off-grid
    double value;      // value at t
    ExtremumKind kind;
};

struct ExtremaSet {
    std::vector<Extremum> maxima;
    std::vector<Extremum> minima;

    /// Maxima and minima interleaved by time.
    [[nodiscard]] std::vector<Extremum> merged() const;
    [[nodiscard]] std::size_t total() const noexcept { return maxima.size() + minima.size(); }
};

enum class ExtremaRefinement {
    none,      // knots at grid samples
    parabolic, // vertex of the parabola through the three samples around a strict extremum
};

/// Strict local extrema of the interior samples. A plateau bracketed by lower
/// (higher) values yields one maximum (minimum) at its midpoint, rounded
/// down. Endpoints are never extrema. Requires at least 3 samples.
ExtremaSet find_extrema(const Signal& signal,
                        ExtremaRefinement refinement = ExtremaRefinement::none);

/// Extrema of a signal covering exactly one period: sample n-1 repeats
/// sample 0, and neighbours wrap around. Positions lie in [t0, t0 + period).
ExtremaSet find_extrema_cyclic(const Signal& signal,
                               ExtremaRefinement refinement = ExtremaRefinement::none);

/// End-effect treatment used when building spline knots.
///
/// mirror: reflect two extrema of each kind across each end. The mirror
/// axis is the endpoint itself when the endpoint is more extreme than the
/// first extremum of the opposite kind (the endpoint then joins the knots),
/// otherwise the first extremum.
///
/// periodic: the grid spans one period of length (n-1)*dt; knots are
/// replicated one period to each side.
enum class BoundaryPolicy { mirror, periodic };

/// Extrema appropriate for the policy: linear scan for mirror, cyclic scan
/// for periodic.
ExtremaSet locate_extrema(const Signal& signal, BoundaryPolicy boundary,
                          ExtremaRefinement refinement);

enum class CurveKind { envelope_mean, midpoint, hybrid };

struct SiftingCurve {
    std::vector<double> values; // one per sample of the source signal
    CurveKind kind;
    std::size_t knot_count; // spline knots used, boundary knots included
};

// Each curve builder returns nullopt when the input has too few extrema to
// sift (the residual-signal condition).

/// (S_max + S_min) / 2 from spline envelopes through maxima and minima.
/// Needs 2 maxima and 2 minima.
std::optional<SiftingCurve> classical_sifting_curve(const Signal& signal,
                                                    const ExtremaSet& extrema,
                                                    BoundaryPolicy boundary = BoundaryPolicy::mirror);

/// Spline through the signal values at the midpoints between consecutive
/// alternating extrema (values by linear interpolation between samples).
/// Needs 2 merged extrema.
std::optional<SiftingCurve> midpoint_sifting_curve(const Signal& signal,
                                                   const ExtremaSet& extrema,
                                                   BoundaryPolicy boundary = BoundaryPolicy::mirror);

/// Pointwise average of the classical and midpoint curves.
std::optional<SiftingCurve> hybrid_sifting_curve(const Signal& signal,
                                                 const ExtremaSet& extrema,
                                                 BoundaryPolicy boundary = BoundaryPolicy::mirror);

/// Knots of the midpoint curve (boundary knots included), exposed for
/// inspection and tests.
std::vector<Knot> midpoint_knots(const Signal& signal, const ExtremaSet& extrema,
                                 BoundaryPolicy boundary = BoundaryPolicy::mirror);

std::string_view to_string(CurveKind kind) noexcept;
std::string_view to_string(BoundaryPolicy policy) noexcept;
std::optional<BoundaryPolicy> parse_boundary(std::string_view text) noexcept;
std::string_view to_string(ExtremaRefinement refinement) noexcept;
std::optional<ExtremaRefinement> parse_refinement(std::string_view text) noexcept;

} // namespace midsift

#endif // MIDSIFT_ENVELOPE_HPP
