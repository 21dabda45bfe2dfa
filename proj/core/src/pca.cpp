#include "midsift/pca.hpp"

#include "midsift/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace midsift {

SquareMatrix SquareMatrix::identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DelayEmbedding embed(const Signal& signal, std::size_t delta, std::size_t copies) {
    if (delta < 1) {
        throw InvalidArgument("embed: delta must be >= 1");
    }
    if (copies < 2) {
        throw InvalidArgument("embed: number of copies must be >= 2");
    }
    const std::size_t span = (copies - 1) * delta;
    const std::size_t required = span + copies;
    if (signal.size() < required) {
        throw InvalidArgument("embed: series of length " + std::to_string(signal.size()) +
                              " too short for delta=" + std::to_string(delta) +
                              ", copies=" + std::to_string(copies) +
                              "; minimum length is " + std::to_string(required));
    }
    DelayEmbedding e;
    e.delta = delta;
    e.copies = copies;
    e.effective_length = signal.size() - span;
    e.rows.resize(copies);
    const auto xs = signal.samples();
    for (std::size_t i = 0; i < copies; ++i) {
        const auto first = xs.begin() + static_cast<std::ptrdiff_t>(i * delta);
        e.rows[i].assign(first, first + static_cast<std::ptrdiff_t>(e.effective_length));
    }
    return e;
}

PcaModel autocovariance(const DelayEmbedding& embedding) {
    const auto n = embedding.copies;
    PcaModel model;
    model.covariance = SquareMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const auto& ri = embedding.rows[i];
            const auto& rj = embedding.rows[j];
            const double s = std::inner_product(ri.begin(), ri.end(), rj.begin(), 0.0);
            model.covariance(i, j) = s;
            model.covariance(j, i) = s;
        }
    }
    return model;
}

SymmetricEigen jacobi_eigen(const SquareMatrix& input, std::size_t max_sweeps) {
    const auto n = input.size();
    SquareMatrix a = input;
    SquareMatrix v = SquareMatrix::identity(n);

    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            frob += a(i, j) * a(i, j);
        }
    }
    frob = std::sqrt(frob);
    const double threshold = 1e-12 * frob;

    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                s += 2.0 * a(i, j) * a(i, j);
            }
        }
        return std::sqrt(s);
    };

    SymmetricEigen result;
    bool converged = off_diagonal() <= threshold;
    while (!converged && result.sweeps < max_sweeps) {
        ++result.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                // Rotation angle annihilating a(p, q), numerically stable form.
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal() <= threshold;
    }
    if (!converged) {
        throw NumericError("jacobi_eigen: no convergence within " + std::to_string(max_sweeps) +
                           " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    result.values.resize(n);
    result.vectors = SquareMatrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        const auto src = order[col];
        result.values[col] = a(src, src);
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(v(k, src)) > 1e-12) {
                sign = v(k, src) < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            result.vectors(k, col) = sign * v(k, src);
        }
    }
    return result;
}

PcaModel eigen_decompose(PcaModel model) {
    auto eig = jacobi_eigen(model.covariance);
    model.eigenvalues = std::move(eig.values);
    model.eigenvectors = std::move(eig.vectors);
    return model;
}

std::vector<double> component_coefficients(const DelayEmbedding& embedding,
                                           const PcaModel& model, std::size_t k) {
    if (!model.decomposed()) {
        throw InvalidArgument("component_coefficients: model has not been decomposed");
    }
    if (k >= embedding.copies) {
        throw InvalidArgument("component index " + std::to_string(k) + " out of range [0, " +
                              std::to_string(embedding.copies) + ")");
    }
    std::vector<double> coeff(embedding.effective_length, 0.0);
    for (std::size_t i = 0; i < embedding.copies; ++i) {
        const double phi = model.eigenvectors(i, k);
        const auto& row = embedding.rows[i];
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            coeff[j] += row[j] * phi;
        }
    }
    return coeff;
}

std::vector<double> component_series(const DelayEmbedding& embedding, const PcaModel& model,
                                     std::size_t k) {
    auto series = component_coefficients(embedding, model, k);
    const double phi0 = model.eigenvectors(0, k);
    for (auto& x : series) {
        x *= phi0;
    }
    return series;
}

ComponentGroups group_components(const DelayEmbedding& embedding, const PcaModel& model,
                                 const GroupingCutoffs& cutoffs) {
    if (!(cutoffs.m1 <= cutoffs.m2 && cutoffs.m2 < embedding.copies)) {
        throw InvalidArgument("grouping cutoffs must satisfy 0 <= m1 <= m2 < n (m1=" +
                              std::to_string(cutoffs.m1) + ", m2=" +
                              std::to_string(cutoffs.m2) +
                              ", n=" + std::to_string(embedding.copies) + ")");
    }
    const auto len = embedding.effective_length;
    ComponentGroups g{std::vector<double>(len, 0.0), std::vector<double>(len, 0.0),
                      std::vector<double>(len, 0.0)};
    for (std::size_t k = 0; k < embedding.copies; ++k) {
        auto& target = k <= cutoffs.m1 ? g.mean_flow : (k <= cutoffs.m2 ? g.waves : g.residual);
        const auto comp = component_series(embedding, model, k);
        for (std::size_t j = 0; j < len; ++j) {
            target[j] += comp[j];
        }
    }
    return g;
}

DelaySelection select_delta(const Signal& signal) {
    const auto n = signal.size();
    if (n < 16) {
        throw InvalidArgument("select_delta: series needs at least 16 samples");
    }
    const auto xs = signal.samples();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (const double x : xs) {
        var += (x - mean) * (x - mean);
    }
    const std::size_t fallback_lag = n / 4;
    if (!(var > 0.0)) {
        return {fallback_lag, true};
    }
    auto autocorr = [&](std::size_t lag) {
        double s = 0.0;
        for (std::size_t k = 0; k + lag < n; ++k) {
            s += (xs[k] - mean) * (xs[k + lag] - mean);
        }
        return s / var;
    };
    const double band = 1.96 / std::sqrt(static_cast<double>(n));
    const std::size_t max_lag = n / 2;
    std::vector<double> r(max_lag + 1, 0.0);
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        r[lag] = autocorr(lag);
        if (r[lag] <= band) {
            return {lag, false};
        }
    }
    const double e_fold = 1.0 / std::numbers::e;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        if (r[lag] < e_fold) {
            return {lag, false};
        }
    }
    return {fallback_lag, true};
}

} // namespace midsift
