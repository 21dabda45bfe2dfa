#ifndef MIDSIFT_SIGNAL_HPP
#define MIDSIFT_SIGNAL_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace midsift {

/// Uniformly sampled real time series. Sample k sits at t0 + k*dt.
///
/// The class guarantees at least two samples and a strictly positive,
/// finite spacing, so every consumer can rely on a well-formed grid.
class Signal {
public:
    Signal(std::vector<double> samples, double t0, double dt);

    [[nodiscard]] std::span<const double> samples() const noexcept { return samples_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return samples_; }
    [[nodiscard]] std::size_t size() const noexcept { return samples_.size(); }
    [[nodiscard]] double operator[](std::size_t k) const noexcept { return samples_[k]; }

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] double time(std::size_t k) const noexcept {
        return t0_ + static_cast<double>(k) * dt_;
    }
    [[nodiscard]] double t_end() const noexcept { return time(samples_.size() - 1); }
    /// Length of the sampled span, (n-1)*dt.
    [[nodiscard]] double span() const noexcept {
        return static_cast<double>(samples_.size() - 1) * dt_;
    }

    /// Same grid, new samples. Throws InvalidArgument on length mismatch.
    [[nodiscard]] Signal with_samples(std::vector<double> samples) const;

    /// Linear interpolation at an arbitrary time; clamps to the end samples
    /// outside the grid.
    [[nodiscard]] double interpolate(double t) const noexcept;

private:
    std::vector<double> samples_;
    double t0_;
    double dt_;
};

struct ToneSpec {
    double amplitude = 1.0;
    double omega = 0.0; // rad per time unit
    double phase = 0.0; // rad
};

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// samples[k] = sum_j a_j cos(w_j (t0 + k dt) + phi_j). An empty tone list
/// yields the zero signal.
Signal generate_multitone(std::span<const ToneSpec> tones, double t0, double dt,
                          std::size_t n);

/// Zero-mean Gaussian noise from a seeded mt19937_64 stream (Box-Muller, so
/// the sequence is bit-identical across standard libraries).
Signal add_noise(const Signal& signal, const NoiseSpec& noise);

/// Random-phase series whose periodogram follows power ∝ omega^slope over
/// bins [first_bin, n/2]. Bins are exact DFT frequencies so there is no
/// leakage; `level` is the power of the first bin.
struct PowerLawSpec {
    double slope = -2.7;
    double level = 1.0;
    std::size_t first_bin = 1;
    std::uint64_t seed = 0;
    // Draw each bin's amplitude from a Rayleigh law with the same mean power,
    // so the periodogram scatters like real turbulence instead of lying exactly
    // on the power law.
    bool random_amplitude = false;
};
Signal generate_power_law(const PowerLawSpec& spec, double t0, double dt, std::size_t n);

struct Detrended {
    Signal signal;
    double mean;
};

Detrended detrend_mean(const Signal& signal);

/// Reads a two-column `time,value` CSV. A header row and '#' comment lines
/// are skipped. Times must be strictly increasing and uniform to 1e-6
/// relative; violations raise FormatError naming the data row and line.
Signal load_csv(const std::filesystem::path& path);
Signal read_csv(std::istream& in);

/// Writes `time,value` with a header and 17 significant digits.
void save_csv(const Signal& signal, const std::filesystem::path& path);
void write_csv(const Signal& signal, std::ostream& out);

} // namespace midsift

#endif // MIDSIFT_SIGNAL_HPP
