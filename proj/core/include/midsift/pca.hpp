#ifndef MIDSIFT_PCA_HPP
#define MIDSIFT_PCA_HPP

#include "midsift/signal.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace midsift {

/// Dense row-major square matrix.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept {
        return data_[i * n_ + j];
    }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * n_ + j];
    }
    [[nodiscard]] static SquareMatrix identity(std::size_t n);

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// n lagged copies of a series, truncated so every copy has the same length:
/// rows[i][k] = X[k + i*delta], k < effective_length = N - (n-1)*delta.
struct DelayEmbedding {
    std::size_t delta = 0;
    std::size_t copies = 0;
    std::size_t effective_length = 0;
    std::vector<std::vector<double>> rows;
};

/// Throws InvalidArgument when delta < 1, copies < 2, or the series is too
/// short (the message names the minimum length).
DelayEmbedding embed(const Signal& signal, std::size_t delta, std::size_t copies);

struct PcaModel {
    SquareMatrix covariance;          // raw lag products, not divided by N'
    std::vector<double> eigenvalues;  // nonincreasing; empty until decomposed
    SquareMatrix eigenvectors;        // column i pairs with eigenvalues[i]

    [[nodiscard]] bool decomposed() const noexcept { return !eigenvalues.empty(); }
};

/// R_ij = sum_k rows[i][k] * rows[j][k].
PcaModel autocovariance(const DelayEmbedding& embedding);

struct SymmetricEigen {
    std::vector<double> values;
    SquareMatrix vectors; // columns
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi for a symmetric matrix. Eigenvalues sorted nonincreasing,
/// each eigenvector's first non-negligible entry made positive. Throws
/// NumericError if off-diagonal mass is not below 1e-12*||A|| within
/// `max_sweeps`.
SymmetricEigen jacobi_eigen(const SquareMatrix& a, std::size_t max_sweeps = 30);

PcaModel eigen_decompose(PcaModel model);

/// k-th additive component of the reconstruction over j < N':
///   a_k(j) * phi^k_0 with a_k(j) = sum_i X(j + i*delta) phi^k_i.
/// The coefficient omits the 1/n factor so the components sum to X exactly
/// for orthonormal eigenvectors.
std::vector<double> component_series(const DelayEmbedding& embedding, const PcaModel& model,
                                     std::size_t k);

/// Coefficient series a_k(j) (same normalization as component_series).
std::vector<double> component_coefficients(const DelayEmbedding& embedding,
                                           const PcaModel& model, std::size_t k);

struct GroupingCutoffs {
    std::size_t m1 = 0; // last mean-flow component
    std::size_t m2 = 0; // last wave component
};

struct ComponentGroups {
    std::vector<double> mean_flow; // components 0..m1
    std::vector<double> waves;     // components m1+1..m2
    std::vector<double> residual;  // components m2+1..n-1
};

ComponentGroups group_components(const DelayEmbedding& embedding, const PcaModel& model,
                                 const GroupingCutoffs& cutoffs);

struct DelaySelection {
    std::size_t delta = 0;
    bool fallback = false; // no decorrelation found; delta = N/4
};

/// First lag where the sample autocorrelation reaches zero (within the
/// ±1.96/sqrt(N) white-noise band); else the first lag below 1/e; else N/4
/// with `fallback` set. Requires N >= 16.
DelaySelection select_delta(const Signal& signal);

} // namespace midsift

#endif // MIDSIFT_PCA_HPP
