#include "midsift/signal.hpp"

#include "midsift/error.hpp"

#include "fft.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace midsift {

Signal::Signal(std::vector<double> samples, double t0, double dt)
    : samples_(std::move(samples)), t0_(t0), dt_(dt) {
    if (samples_.size() < 2) {
        throw InvalidArgument("signal needs at least 2 samples, got " +
                              std::to_string(samples_.size()));
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw InvalidArgument("sample spacing dt must be positive and finite");
    }
    if (!std::isfinite(t0_)) {
        throw InvalidArgument("start time t0 must be finite");
    }
}

Signal Signal::with_samples(std::vector<double> samples) const {
    if (samples.size() != samples_.size()) {
        throw InvalidArgument("with_samples: length " + std::to_string(samples.size()) +
                              " does not match grid length " +
                              std::to_string(samples_.size()));
    }
    return Signal(std::move(samples), t0_, dt_);
}

double Signal::interpolate(double t) const noexcept {
    const double x = (t - t0_) / dt_;
    if (x <= 0.0) {
        return samples_.front();
    }
    const auto last = samples_.size() - 1;
    if (x >= static_cast<double>(last)) {
        return samples_.back();
    }
    auto i = static_cast<std::size_t>(x);
    if (i >= last) {
        i = last - 1;
    }
    const double frac = x - static_cast<double>(i);
    return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
}

Signal generate_multitone(std::span<const ToneSpec> tones, double t0, double dt,
                          std::size_t n) {
    if (n < 2) {
        throw InvalidArgument("generate_multitone: n must be >= 2");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidArgument("generate_multitone: dt must be positive and finite");
    }
    for (const auto& tone : tones) {
        if (!std::isfinite(tone.omega) || tone.omega < 0.0) {
            throw InvalidArgument("generate_multitone: omega must be finite and >= 0");
        }
    }
    std::vector<double> samples(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        double acc = 0.0;
        for (const auto& tone : tones) {
            acc += tone.amplitude * std::cos(tone.omega * t + tone.phase);
        }
        samples[k] = acc;
    }
    return Signal(std::move(samples), t0, dt);
}

namespace {

// Uniform on (0, 1] from the top 53 bits.
double unit_open_closed(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace

Signal add_noise(const Signal& signal, const NoiseSpec& noise) {
    if (!(noise.sigma >= 0.0) || !std::isfinite(noise.sigma)) {
        throw InvalidArgument("add_noise: sigma must be finite and >= 0");
    }
    if (noise.sigma == 0.0) {
        return signal;
    }
    std::mt19937_64 rng(noise.seed);
    std::vector<double> out(signal.values());
    const std::size_t n = out.size();
    for (std::size_t k = 0; k < n; k += 2) {
        const double radius = std::sqrt(-2.0 * std::log(unit_open_closed(rng)));
        const double angle = 2.0 * std::numbers::pi * unit_open_closed(rng);
        out[k] += noise.sigma * radius * std::cos(angle);
        if (k + 1 < n) {
            out[k + 1] += noise.sigma * radius * std::sin(angle);
        }
    }
    return signal.with_samples(std::move(out));
}

Signal generate_power_law(const PowerLawSpec& spec, double t0, double dt, std::size_t n) {
    if (n < 4) {
        throw InvalidArgument("generate_power_law: n must be >= 4");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidArgument("generate_power_law: dt must be positive and finite");
    }
    // Highest bin strictly below Nyquist.
    const std::size_t last_bin = (n - 1) / 2;
    if (spec.first_bin < 1 || spec.first_bin > last_bin) {
        throw InvalidArgument("generate_power_law: first_bin out of range");
    }
    if (!(spec.level > 0.0)) {
        throw InvalidArgument("generate_power_law: level must be positive");
    }

    const double nd = static_cast<double>(n);
    const double bin = 2.0 * std::numbers::pi / (nd * dt);
    const double omega_first = bin * static_cast<double>(spec.first_bin);

    // x_k = sum_j A_j cos(2 pi jk/n + phi_j) is the c2r transform of X_j = A_j/2 e^{i phi_j}.
    std::mt19937_64 rng(spec.seed);
    std::vector<std::complex<double>> half(n / 2 + 1);
    for (std::size_t j = spec.first_bin; j <= last_bin; ++j) {
        const double omega = bin * static_cast<double>(j);
        const double power = spec.level * std::pow(omega / omega_first, spec.slope);
        // One-sided periodogram of A cos(...) on an exact bin is A^2 n dt / 4.
        double amplitude = std::sqrt(4.0 * power / (nd * dt));
        if (spec.random_amplitude) {
            amplitude *= std::sqrt(-std::log(unit_open_closed(rng)));
        }
        const double phase = 2.0 * std::numbers::pi * unit_open_closed(rng);
        half[j] = std::polar(0.5 * amplitude, phase);
    }
    auto samples = detail::real_inverse(half, n);
    return Signal(std::move(samples), t0, dt);
}

Detrended detrend_mean(const Signal& signal) {
    const auto xs = signal.samples();
    const double mean =
        std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    std::vector<double> out(xs.begin(), xs.end());
    for (auto& x : out) {
        x -= mean;
    }
    return {signal.with_samples(std::move(out)), mean};
}

} // namespace midsift
