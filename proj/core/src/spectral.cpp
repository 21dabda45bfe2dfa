#include "midsift/spectral.hpp"

#include "midsift/error.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace midsift {

std::size_t Spectrum::peak_bin() const {
    if (power.size() < 2) {
        throw InvalidArgument("spectrum has no non-DC bins");
    }
    const auto it = std::max_element(power.begin() + 1, power.end());
    return static_cast<std::size_t>(std::distance(power.begin(), it));
}

Spectrum periodogram(const Signal& signal) {
    const auto n = signal.size();
    if (n < 4) {
        throw InvalidArgument("periodogram: signal needs at least 4 samples");
    }
    const auto xs = signal.samples();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    std::vector<double> centered(xs.begin(), xs.end());
    for (auto& x : centered) {
        x -= mean;
    }
    const auto dft = detail::real_forward(centered);

    Spectrum s;
    s.sample_count = n;
    s.dt = signal.dt();
    s.bin_width = 2.0 * std::numbers::pi / (static_cast<double>(n) * signal.dt());
    s.frequencies.resize(dft.size());
    s.power.resize(dft.size());
    const double scale = signal.dt() / static_cast<double>(n);
    for (std::size_t j = 0; j < dft.size(); ++j) {
        s.frequencies[j] = static_cast<double>(j) * s.bin_width;
        s.power[j] = std::norm(dft[j]) * scale;
    }
    return s;
}

double parseval_energy(const Spectrum& spectrum) {
    const auto n = spectrum.sample_count;
    const auto bins = spectrum.power.size();
    double total = spectrum.power[0];
    for (std::size_t j = 1; j < bins; ++j) {
        // The Nyquist bin of an even-length series has no mirror image.
        const bool nyquist = (n % 2 == 0) && j == bins - 1;
        total += (nyquist ? 1.0 : 2.0) * spectrum.power[j];
    }
    return total / spectrum.dt;
}

std::vector<std::size_t> find_peaks(const Spectrum& spectrum, double relative_threshold) {
    std::vector<std::size_t> peaks;
    const auto& p = spectrum.power;
    if (p.size() < 3) {
        return peaks;
    }
    const double floor = relative_threshold * p[spectrum.peak_bin()];
    for (std::size_t j = 1; j < p.size(); ++j) {
        const bool left = p[j] > p[j - 1];
        const bool right = j + 1 == p.size() || p[j] >= p[j + 1];
        if (left && right && p[j] > floor) {
            peaks.push_back(j);
        }
    }
    return peaks;
}

ProjectionAmplitudes project_fourier(const Signal& h, double omega_a, double omega_b,
                                     double period) {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw InvalidArgument("project_fourier: period must be positive");
    }
    const double dt = h.dt();
    const double steps = period / dt;
    // Tolerate the rounding of t0 + k*dt against a period on the grid.
    if (static_cast<double>(h.size() - 1) < steps - 1e-9 * steps) {
        throw InvalidArgument("project_fourier: signal spans " + std::to_string(h.span()) +
                              ", shorter than one period " + std::to_string(period));
    }
    const double whole = std::floor(steps + 1e-9);
    const auto full = static_cast<std::size_t>(whole);
    const double partial = std::max(0.0, steps - whole);

    ProjectionAmplitudes p;
    auto accumulate = [&](double t, double value, double weight) {
        p.a += weight * value * std::cos(omega_a * t);
        p.b += weight * value * std::sin(omega_a * t);
        p.c += weight * value * std::cos(omega_b * t);
        p.d += weight * value * std::sin(omega_b * t);
    };
    for (std::size_t k = 0; k <= full; ++k) {
        const double w = (k == 0 || k == full) ? 0.5 * dt : dt;
        accumulate(h.time(k), h[k], w);
    }
    if (partial > 1e-9) {
        // Trapezoid over [t_full, t0 + period] with a linearly interpolated end value.
        const double t_end = h.t0() + period;
        const double width = partial * dt;
        accumulate(h.time(full), h[full], 0.5 * width);
        accumulate(t_end, h.interpolate(t_end), 0.5 * width);
    }
    p.A = std::hypot(p.a, p.b);
    p.B = std::hypot(p.c, p.d);
    return p;
}

namespace {

struct AlphaFit {
    double alpha;
    double residual_rms;
};

AlphaFit fit_alpha(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidArgument("estimate_alpha: input and output lengths differ");
    }
    if (x.size() < 3) {
        throw InvalidArgument("estimate_alpha: need at least 3 samples");
    }
    if (std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; })) {
        return {0.0, 0.0};
    }
    double yz = 0.0;
    double zz = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double z = y[k - 1] + x[k] - x[k - 1];
        yz += y[k] * z;
        zz += z * z;
    }
    if (!(zz > 0.0)) {
        throw NumericError("estimate_alpha: degenerate regressor (sum of Z^2 is zero)");
    }
    const double alpha = yz / zz;
    double rr = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        const double r = y[k] - alpha * (y[k - 1] + x[k] - x[k - 1]);
        rr += r * r;
    }
    return {alpha, std::sqrt(rr / static_cast<double>(x.size() - 1))};
}

} // namespace

double estimate_alpha(std::span<const double> input, std::span<const double> output) {
    return fit_alpha(input, output).alpha;
}

FilterFit fit_filter(std::span<const std::vector<double>> iterates) {
    FilterFit fit;
    for (std::size_t i = 1; i < iterates.size(); ++i) {
        const auto f = fit_alpha(iterates[i - 1], iterates[i]);
        fit.alphas.push_back(f.alpha);
        fit.residuals.push_back(f.residual_rms);
    }
    return fit;
}

SlopeFit fit_spectral_slope(const Spectrum& spectrum, double f_lo, double f_hi) {
    if (!(f_lo < f_hi)) {
        throw InvalidArgument("fit_spectral_slope: band requires f_lo < f_hi");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t j = 0; j < spectrum.power.size(); ++j) {
        const double f = spectrum.frequencies[j];
        const double p = spectrum.power[j];
        if (f >= f_lo && f <= f_hi && f > 0.0 && p > 0.0) {
            lx.push_back(std::log(f));
            ly.push_back(std::log(p));
        }
    }
    if (lx.size() < 4) {
        throw InvalidArgument("fit_spectral_slope: only " + std::to_string(lx.size()) +
                              " usable bins in band, need at least 4");
    }
    const auto m = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.f_lo = f_lo;
    fit.f_hi = f_hi;
    fit.bins_used = lx.size();
    double ss_res = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res += r * r;
    }
    // A flat spectrum is fitted perfectly by slope 0.
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

} // namespace midsift
