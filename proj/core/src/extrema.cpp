#include "midsift/envelope.hpp"
#include "midsift/error.hpp"

#include <algorithm>

namespace midsift {

namespace {

struct RawExtremum {
    std::size_t index;
    double offset; // refined position relative to index, in samples
    double value;
    ExtremumKind kind;
};

// Keeps adjacent refined extrema strictly ordered: two neighbours can sit on
// consecutive samples, and each moves by less than half a sample.
constexpr double kMaxRefinementOffset = 0.49;

std::vector<RawExtremum> scan(std::span<const double> y, ExtremaRefinement refinement) {
    std::vector<RawExtremum> out;
    const std::size_t n = y.size();
    std::size_t k = 1;
    while (k + 1 < n) {
        if (y[k] == y[k - 1]) {
            // Plateau touching the previous run; it cannot be bracketed.
            ++k;
            continue;
        }
        std::size_t j = k;
        while (j + 1 < n && y[j + 1] == y[k]) {
            ++j;
        }
        if (j + 1 >= n) {
            break; // plateau runs into the end sample
        }
        const double before = y[k - 1];
        const double level = y[k];
        const double after = y[j + 1];
        ExtremumKind kind{};
        bool found = false;
        if (level > before && level > after) {
            kind = ExtremumKind::maximum;
            found = true;
        } else if (level < before && level < after) {
            kind = ExtremumKind::minimum;
            found = true;
        }
        if (found) {
            const std::size_t mid = k + (j - k) / 2;
            double offset = 0.0;
            double value = level;
            if (refinement == ExtremaRefinement::parabolic && j == k) {
                const double curvature = before - 2.0 * level + after;
                offset = std::clamp(0.5 * (before - after) / curvature, -kMaxRefinementOffset,
                                    kMaxRefinementOffset);
                value = level - 0.25 * (before - after) * offset;
            }
            out.push_back({mid, offset, value, kind});
        }
        k = j + 1;
    }
    return out;
}

ExtremaSet assemble(const Signal& signal, std::span<const RawExtremum> raw) {
    ExtremaSet set;
    for (const auto& r : raw) {
        const Extremum e{r.index,
                         signal.t0() + (static_cast<double>(r.index) + r.offset) * signal.dt(),
                         r.value, r.kind};
        (r.kind == ExtremumKind::maximum ? set.maxima : set.minima).push_back(e);
    }
    return set;
}

} // namespace

std::vector<Extremum> ExtremaSet::merged() const {
    std::vector<Extremum> all;
    all.reserve(total());
    std::merge(maxima.begin(), maxima.end(), minima.begin(), minima.end(),
               std::back_inserter(all),
               [](const Extremum& a, const Extremum& b) { return a.t < b.t; });
    return all;
}

ExtremaSet find_extrema(const Signal& signal, ExtremaRefinement refinement) {
    if (signal.size() < 3) {
        throw InvalidArgument("find_extrema: signal needs at least 3 samples");
    }
    const auto raw = scan(signal.samples(), refinement);
    return assemble(signal, raw);
}

ExtremaSet find_extrema_cyclic(const Signal& signal, ExtremaRefinement refinement) {
    if (signal.size() < 4) {
        throw InvalidArgument("find_extrema_cyclic: signal needs at least 4 samples");
    }
    // One period is samples [0, m); tile three copies and keep the middle one
    // so that wrap-around neighbours and plateaus are seen like interior ones.
    const std::size_t m = signal.size() - 1;
    const auto y = signal.samples();
    std::vector<double> tiled;
    tiled.reserve(3 * m);
    for (int copy = 0; copy < 3; ++copy) {
        tiled.insert(tiled.end(), y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m));
    }
    std::vector<RawExtremum> raw;
    for (auto r : scan(tiled, refinement)) {
        if (r.index >= m && r.index < 2 * m) {
            r.index -= m;
            raw.push_back(r);
        }
    }
    return assemble(signal, raw);
}

ExtremaSet locate_extrema(const Signal& signal, BoundaryPolicy boundary,
                          ExtremaRefinement refinement) {
    return boundary == BoundaryPolicy::periodic ? find_extrema_cyclic(signal, refinement)
                                                : find_extrema(signal, refinement);
}

} // namespace midsift
