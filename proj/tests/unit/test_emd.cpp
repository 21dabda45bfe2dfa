#include "midsift/emd.hpp"
#include "midsift/error.hpp"
#include "midsift/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace midsift;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr SiftStrategy kAll[] = {SiftStrategy::classical, SiftStrategy::midpoint,
                                 SiftStrategy::hybrid};

Signal noisy(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    return Signal(oracle::gaussian(n, scale, seed), 0.0, 1.0);
}

SiftConfig with(SiftStrategy s) {
    SiftConfig c;
    c.strategy = s;
    return c;
}

void expect_telescopes(const Signal& input, const Decomposition& d) {
    const double tol = 1e-9 * oracle::max_abs(input.values());
    for (std::size_t k = 0; k < input.size(); ++k) {
        double sum = d.residual[k];
        for (const auto& imf : d.imfs) sum += imf.samples[k];
        ASSERT_NEAR(sum, input[k], tol) << "sample " << k;
    }
}

} // namespace

TEST(SiftOnce, ClassicalRemovesAnOffset) {
    std::vector<double> xs(1024);
    for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = 3.0 + std::cos(2 * kPi * k / 40.0);
    const Signal h(xs, 0.0, 1.0);
    const auto step = sift_once(h, SiftStrategy::classical);
    ASSERT_TRUE(step);
    for (std::size_t k = 256; k < 768; ++k) {
        EXPECT_NEAR(step->next[k], std::cos(2 * kPi * k / 40.0), 0.05);
    }
}

TEST(SiftOnce, NextPlusCurveIsTheInput) {
    for (const auto s : kAll) {
        const auto h = noisy(256, 3);
        const auto step = sift_once(h, s);
        ASSERT_TRUE(step);
        // Exact up to the rounding of the subtraction itself.
        for (std::size_t k = 0; k < h.size(); ++k) {
            const double m = step->curve.values[k];
            const double ulp = std::numeric_limits<double>::epsilon() * (std::abs(h[k]) + std::abs(m));
            EXPECT_NEAR(step->next[k] + m, h[k], ulp);
            EXPECT_EQ(step->next[k], h[k] - m);
        }
    }
}

TEST(SiftOnce, MonotoneInputCannotBeSifted) {
    std::vector<double> ramp(50);
    for (std::size_t k = 0; k < ramp.size(); ++k) ramp[k] = 0.1 * static_cast<double>(k);
    for (const auto s : kAll) EXPECT_FALSE(sift_once(Signal(ramp, 0.0, 1.0), s));
}

TEST(ExtractImf, PureCosineConvergesQuickly) {
    const std::size_t n = 16 * 64 + 1;
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) xs[k] = std::cos(2 * kPi * k / 64.0);
    const Signal h(xs, 0.0, 1.0);
    const auto r = extract_imf(h, with(SiftStrategy::midpoint));
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->imf.converged);
    EXPECT_LE(r->imf.iterations_used, 3u);
    EXPECT_GT(oracle::correlation(r->imf.samples, xs), 0.99);
}

TEST(ExtractImf, IterationCapIsReported) {
    SiftConfig c = with(SiftStrategy::classical);
    c.epsilon = 1e-15;
    c.max_sift_iterations = 5;
    const auto r = extract_imf(noisy(300, 1), c);
    ASSERT_TRUE(r);
    EXPECT_FALSE(r->imf.converged);
    EXPECT_EQ(r->imf.iterations_used, 5u);
    EXPECT_EQ(r->trace.size(), 5u);
}

TEST(ExtractImf, CaseOneMidpointBeatsClassical) {
    const double w = kPi / 256;
    const std::vector<ToneSpec> tones{{0.5, 12 * w, 0.0}, {0.5, 8 * w, 0.0}};
    const auto s = generate_multitone(tones, -2048.0, 1.0, 4097);
    const auto mid = extract_imf(s, with(SiftStrategy::midpoint));
    const auto cls = extract_imf(s, with(SiftStrategy::classical));
    ASSERT_TRUE(mid && cls);
    EXPECT_TRUE(mid->imf.converged);
    EXPECT_TRUE(cls->imf.converged);
    EXPECT_LT(mid->imf.iterations_used, cls->imf.iterations_used);
}

TEST(SiftIterates, StartAtTheInputAndMatchExtraction) {
    const auto h = noisy(200, 8);
    const auto c = with(SiftStrategy::midpoint);
    const auto its = sift_iterates(h, c);
    const auto r = extract_imf(h, c);
    ASSERT_TRUE(r);
    ASSERT_EQ(its.size(), r->imf.iterations_used + 1);
    EXPECT_EQ(its.front(), h.values());
    EXPECT_EQ(its.back(), r->imf.samples);
}

TEST(Decompose, TelescopesForEveryStrategy) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto input = noisy(200 + 13 * seed, seed, 0.5 + static_cast<double>(seed));
        for (const auto s : kAll) {
            for (const auto b : {BoundaryPolicy::mirror, BoundaryPolicy::periodic}) {
                auto c = with(s);
                c.boundary = b;
                expect_telescopes(input, decompose(input, c));
            }
        }
    }
}

TEST(Decompose, ConstantInputHasNoImfs) {
    const Signal c(std::vector<double>(64, 2.5), 1.0, 0.5);
    for (const auto s : kAll) {
        const auto d = decompose(c, with(s));
        EXPECT_TRUE(d.imfs.empty());
        EXPECT_EQ(d.residual.values(), c.values());
    }
}

TEST(Decompose, IsDeterministic) {
    const auto input = noisy(777, 5);
    for (const auto s : kAll) {
        const auto a = decompose(input, with(s));
        const auto b = decompose(input, with(s));
        ASSERT_EQ(a.imfs.size(), b.imfs.size());
        for (std::size_t i = 0; i < a.imfs.size(); ++i) {
            EXPECT_EQ(a.imfs[i].samples, b.imfs[i].samples);
            EXPECT_EQ(a.traces[i], b.traces[i]);
        }
        EXPECT_EQ(a.residual.values(), b.residual.values());
    }
}

TEST(Decompose, ScalesWithTheInputUnderAbsoluteTolerance) {
    const auto input = noisy(400, 12);
    for (const auto s : kAll) {
        for (const double c : {0.01, 3.0, 250.0}) {
            auto base = with(s);
            base.tolerance = Tolerance::absolute;
            base.epsilon = 1e-3;
            auto scaled_cfg = base;
            scaled_cfg.epsilon = base.epsilon * c;
            std::vector<double> xs = input.values();
            for (auto& x : xs) x *= c;
            const auto a = decompose(input, base);
            const auto b = decompose(input.with_samples(xs), scaled_cfg);
            ASSERT_EQ(a.imfs.size(), b.imfs.size()) << "c=" << c;
            for (std::size_t i = 0; i < a.imfs.size(); ++i) {
                ASSERT_EQ(a.imfs[i].iterations_used, b.imfs[i].iterations_used);
                const double scale = c * oracle::max_abs(a.imfs[i].samples);
                for (std::size_t k = 0; k < xs.size(); ++k) {
                    EXPECT_NEAR(b.imfs[i].samples[k], c * a.imfs[i].samples[k], 1e-9 * scale);
                }
            }
        }
    }
}

TEST(Decompose, TracesAreFiniteAndEndBelowEpsilon) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (const auto s : kAll) {
            const auto c = with(s);
            const auto d = decompose(noisy(500, 40 + seed), c);
            ASSERT_EQ(d.traces.size(), d.imfs.size());
            for (std::size_t i = 0; i < d.imfs.size(); ++i) {
                for (const double v : d.traces[i]) EXPECT_TRUE(std::isfinite(v));
                EXPECT_EQ(d.traces[i].size(), d.imfs[i].iterations_used);
                if (d.imfs[i].converged) EXPECT_LT(d.traces[i].back(), c.epsilon);
            }
        }
    }
}

TEST(Decompose, CaseTwoMidpointResolvesBothTones) {
    const double w1 = kPi / 24 + kPi / 288;
    const double w2 = kPi / 24 - kPi / 288;
    const std::vector<ToneSpec> tones{{0.5, w1, 0.0}, {0.5, w2, 0.0}};
    const auto s = generate_multitone(tones, -2048.0, 1.0, 4097);
    const auto mid = decompose(s, with(SiftStrategy::midpoint));
    const auto cls = decompose(s, with(SiftStrategy::classical));
    ASSERT_GE(mid.imfs.size(), 2u);
    ASSERT_GE(cls.imfs.size(), 1u);
    const auto p1 = periodogram(s.with_samples(mid.imfs[0].samples));
    const auto p2 = periodogram(s.with_samples(mid.imfs[1].samples));
    const double e1 = std::abs(static_cast<double>(p1.peak_bin()) - p1.bin_of(w1));
    const double e2 = std::abs(static_cast<double>(p2.peak_bin()) - p2.bin_of(w2));
    EXPECT_LE(e1, 1.0);
    EXPECT_LE(e2, 1.0);
    const auto pc = periodogram(s.with_samples(cls.imfs[0].samples));
    EXPECT_GE(std::abs(static_cast<double>(pc.peak_bin()) - pc.bin_of(w1)), e1);
}

TEST(Decompose, ShortInputThrows) {
    EXPECT_THROW(decompose(Signal({1, 2, 3}, 0, 1), SiftConfig{}), InvalidArgument);
}

TEST(SiftConfig, Validation) {
    SiftConfig c;
    EXPECT_NO_THROW(c.validate());
    c.epsilon = 0.0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = SiftConfig{};
    c.max_sift_iterations = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    c = SiftConfig{};
    c.max_imfs = 0;
    EXPECT_THROW(c.validate(), InvalidArgument);
    EXPECT_THROW(decompose(noisy(50, 1), c), InvalidArgument);
}

TEST(SiftConfig, NamesRoundTrip) {
    for (const auto s : kAll) EXPECT_EQ(parse_strategy(to_string(s)), s);
    for (const auto n : {StopNorm::rms, StopNorm::sup}) EXPECT_EQ(parse_norm(to_string(n)), n);
    for (const auto t : {Tolerance::relative, Tolerance::absolute}) {
        EXPECT_EQ(parse_tolerance(to_string(t)), t);
    }
    EXPECT_FALSE(parse_strategy("fancy"));
}
