#ifndef MIDSIFT_SPECTRAL_HPP
#define MIDSIFT_SPECTRAL_HPP

#include "midsift/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace midsift {

/// One-sided periodogram on angular frequencies omega_j = j * bin_width.
struct Spectrum {
    std::vector<double> frequencies;
    std::vector<double> power;
    double bin_width = 0.0;
    std::size_t sample_count = 0; // length of the transformed series
    double dt = 1.0;

    /// Bin with the largest power, ignoring the DC bin.
    [[nodiscard]] std::size_t peak_bin() const;
    [[nodiscard]] double peak_frequency() const { return frequencies[peak_bin()]; }
    /// Fractional bin position of an angular frequency.
    [[nodiscard]] double bin_of(double omega) const { return omega / bin_width; }
};

/// Rectangular-window periodogram of the mean-removed samples:
/// power[j] = |DFT_j|^2 * dt / n for j = 0..floor(n/2). Requires n >= 4.
Spectrum periodogram(const Signal& signal);

/// Time-domain energy sum(x^2) reconstructed from a periodogram (two-sided
/// Parseval sum divided by dt).
double parseval_energy(const Spectrum& spectrum);

/// Local maxima of the power above `relative_threshold` times the global
/// maximum, DC excluded, in increasing bin order.
std::vector<std::size_t> find_peaks(const Spectrum& spectrum, double relative_threshold);

/// Fourier projections of h over one period starting at h.t0():
///   a = ∫ h cos(omega_a t), b = ∫ h sin(omega_a t),
///   c = ∫ h cos(omega_b t), d = ∫ h sin(omega_b t),
/// with A = hypot(a, b), B = hypot(c, d). Composite trapezoid rule on the
/// signal grid; a final partial interval is linearly interpolated.
struct ProjectionAmplitudes {
    double A = 0.0;
    double B = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
};

ProjectionAmplitudes project_fourier(const Signal& h, double omega_a, double omega_b,
                                     double period);

/// Least-squares alpha of the first-order high-pass model
///   Y_n = alpha * Y_{n-1} + alpha * (X_n - X_{n-1}).
/// Returns 0 for an identically zero output; throws NumericError when the
/// regressor vanishes.
double estimate_alpha(std::span<const double> input, std::span<const double> output);

struct FilterFit {
    std::vector<double> alphas;    // one per sifting iteration
    std::vector<double> residuals; // rms of the model residual
};

/// Applies estimate_alpha to each consecutive pair of sifting iterates.
FilterFit fit_filter(std::span<const std::vector<double>> iterates);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0; // natural-log units
    double f_lo = 0.0;
    double f_hi = 0.0;
    double r_squared = 0.0;
    std::size_t bins_used = 0;
};

/// OLS of ln(power) on ln(omega) over bins in [f_lo, f_hi] with positive
/// power and frequency. Needs at least 4 such bins.
SlopeFit fit_spectral_slope(const Spectrum& spectrum, double f_lo, double f_hi);

} // namespace midsift

#endif // MIDSIFT_SPECTRAL_HPP
