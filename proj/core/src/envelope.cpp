#include "midsift/envelope.hpp"

#include "midsift/error.hpp"

#include <algorithm>
#include <cmath>

namespace midsift {

namespace {

constexpr std::size_t kMirroredPerSide = 4; // two of each kind, alternating

struct ExtendedKnots {
    std::vector<Extremum> knots; // alternating, strictly increasing in t
    double left_axis = 0.0;
    double right_axis = 0.0;
    double period = 0.0;
    BoundaryPolicy policy = BoundaryPolicy::mirror;
};

ExtremumKind opposite(ExtremumKind kind) {
    return kind == ExtremumKind::maximum ? ExtremumKind::minimum : ExtremumKind::maximum;
}

// `inward` lists the extrema from the boundary towards the interior.
// Returns the reflected knots ordered from the boundary outwards, plus the
// endpoint knot when the endpoint is the mirror axis.
std::vector<Extremum> mirror_side(const std::vector<Extremum>& inward, double end_t,
                                  double end_value, std::size_t end_index, double& axis) {
    const Extremum& first = inward.front();
    const Extremum& opp = inward[1];
    const bool endpoint_axis = first.kind == ExtremumKind::maximum ? end_value <= opp.value
                                                                   : end_value >= opp.value;
    std::vector<Extremum> out;
    std::size_t start = 0;
    if (endpoint_axis) {
        axis = end_t;
        out.push_back({end_index, end_t, end_value, opposite(first.kind)});
    } else {
        axis = first.t;
        start = 1;
    }
    for (std::size_t i = start; i < inward.size() && i - start < kMirroredPerSide; ++i) {
        Extremum r = inward[i];
        r.t = 2.0 * axis - r.t;
        out.push_back(r);
    }
    return out;
}

ExtendedKnots extend_mirror(const Signal& signal, const std::vector<Extremum>& merged) {
    ExtendedKnots ext;
    ext.policy = BoundaryPolicy::mirror;
    const auto n = signal.size();

    auto left = mirror_side(merged, signal.t0(), signal[0], 0, ext.left_axis);
    std::vector<Extremum> reversed(merged.rbegin(), merged.rend());
    auto right = mirror_side(reversed, signal.t_end(), signal[n - 1], n - 1, ext.right_axis);

    ext.knots.reserve(left.size() + merged.size() + right.size());
    ext.knots.insert(ext.knots.end(), left.rbegin(), left.rend());
    ext.knots.insert(ext.knots.end(), merged.begin(), merged.end());
    ext.knots.insert(ext.knots.end(), right.begin(), right.end());
    return ext;
}

ExtendedKnots extend_periodic(const Signal& signal, const std::vector<Extremum>& merged) {
    ExtendedKnots ext;
    ext.policy = BoundaryPolicy::periodic;
    ext.period = signal.span();
    ext.left_axis = signal.t0();
    ext.right_axis = signal.t_end();
    ext.knots.reserve(3 * merged.size());
    for (const double shift : {-ext.period, 0.0, ext.period}) {
        for (auto e : merged) {
            e.t += shift;
            ext.knots.push_back(e);
        }
    }
    return ext;
}

ExtendedKnots extend(const Signal& signal, const ExtremaSet& extrema, BoundaryPolicy boundary) {
    const auto merged = extrema.merged();
    return boundary == BoundaryPolicy::periodic ? extend_periodic(signal, merged)
                                                : extend_mirror(signal, merged);
}

// Signal value at a (possibly extended) time, read through the boundary map.
double extended_value(const Signal& signal, const ExtendedKnots& ext, double t) {
    if (ext.policy == BoundaryPolicy::periodic) {
        double u = std::fmod(t - signal.t0(), ext.period);
        if (u < 0.0) {
            u += ext.period;
        }
        return signal.interpolate(signal.t0() + u);
    }
    if (t < ext.left_axis) {
        t = 2.0 * ext.left_axis - t;
    } else if (t > ext.right_axis) {
        t = 2.0 * ext.right_axis - t;
    }
    return signal.interpolate(t);
}

std::vector<double> spline_on_grid(const Signal& signal, std::span<const Knot> knots) {
    return NaturalCubicSpline(knots).evaluate_grid(signal.t0(), signal.dt(), signal.size());
}

std::vector<Knot> kind_knots(const ExtendedKnots& ext, ExtremumKind kind) {
    std::vector<Knot> out;
    for (const auto& e : ext.knots) {
        if (e.kind == kind) {
            out.push_back({e.t, e.value});
        }
    }
    return out;
}

std::vector<Knot> midpoints(const Signal& signal, const ExtendedKnots& ext) {
    std::vector<Knot> out;
    if (ext.knots.size() < 2) {
        return out;
    }
    out.reserve(ext.knots.size() - 1);
    for (std::size_t i = 0; i + 1 < ext.knots.size(); ++i) {
        const double t = 0.5 * (ext.knots[i].t + ext.knots[i + 1].t);
        out.push_back({t, extended_value(signal, ext, t)});
    }
    return out;
}

} // namespace

std::optional<SiftingCurve> classical_sifting_curve(const Signal& signal,
                                                    const ExtremaSet& extrema,
                                                    BoundaryPolicy boundary) {
    if (extrema.maxima.size() < 2 || extrema.minima.size() < 2) {
        return std::nullopt;
    }
    const auto ext = extend(signal, extrema, boundary);
    const auto upper_knots = kind_knots(ext, ExtremumKind::maximum);
    const auto lower_knots = kind_knots(ext, ExtremumKind::minimum);
    const auto upper = spline_on_grid(signal, upper_knots);
    const auto lower = spline_on_grid(signal, lower_knots);

    SiftingCurve curve{std::vector<double>(signal.size()), CurveKind::envelope_mean,
                       upper_knots.size() + lower_knots.size()};
    for (std::size_t k = 0; k < signal.size(); ++k) {
        curve.values[k] = 0.5 * (upper[k] + lower[k]);
    }
    return curve;
}

std::vector<Knot> midpoint_knots(const Signal& signal, const ExtremaSet& extrema,
                                 BoundaryPolicy boundary) {
    if (extrema.total() < 2) {
        return {};
    }
    return midpoints(signal, extend(signal, extrema, boundary));
}

std::optional<SiftingCurve> midpoint_sifting_curve(const Signal& signal,
                                                   const ExtremaSet& extrema,
                                                   BoundaryPolicy boundary) {
    const auto knots = midpoint_knots(signal, extrema, boundary);
    if (knots.size() < 2) {
        return std::nullopt;
    }
    return SiftingCurve{spline_on_grid(signal, knots), CurveKind::midpoint, knots.size()};
}

std::optional<SiftingCurve> hybrid_sifting_curve(const Signal& signal,
                                                 const ExtremaSet& extrema,
                                                 BoundaryPolicy boundary) {
    auto classical = classical_sifting_curve(signal, extrema, boundary);
    if (!classical) {
        return std::nullopt;
    }
    const auto midpoint = midpoint_sifting_curve(signal, extrema, boundary);
    if (!midpoint) {
        return std::nullopt;
    }
    SiftingCurve curve{std::move(classical->values), CurveKind::hybrid,
                       classical->knot_count + midpoint->knot_count};
    for (std::size_t k = 0; k < curve.values.size(); ++k) {
        curve.values[k] = 0.5 * (curve.values[k] + midpoint->values[k]);
    }
    return curve;
}

std::string_view to_string(CurveKind kind) noexcept {
    switch (kind) {
    case CurveKind::envelope_mean: return "envelope-mean";
    case CurveKind::midpoint: return "midpoint";
    case CurveKind::hybrid: return "hybrid";
    }
    return "unknown";
}

std::string_view to_string(BoundaryPolicy policy) noexcept {
    return policy == BoundaryPolicy::periodic ? "periodic" : "mirror";
}

std::optional<BoundaryPolicy> parse_boundary(std::string_view text) noexcept {
    if (text == "mirror") return BoundaryPolicy::mirror;
    if (text == "periodic") return BoundaryPolicy::periodic;
    return std::nullopt;
}

std::string_view to_string(ExtremaRefinement refinement) noexcept {
    return refinement == ExtremaRefinement::parabolic ? "parabolic" : "none";
}

std::optional<ExtremaRefinement> parse_refinement(std::string_view text) noexcept {
    if (text == "parabolic") return ExtremaRefinement::parabolic;
    if (text == "none") return ExtremaRefinement::none;
    return std::nullopt;
}

} // namespace midsift
