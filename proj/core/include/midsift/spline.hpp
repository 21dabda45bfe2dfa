#ifndef MIDSIFT_SPLINE_HPP
#define MIDSIFT_SPLINE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace midsift {

struct Knot {
    double t;
    double value;
};

/// Natural cubic interpolating spline (zero second derivative at the first
/// and last knot). Queries outside the knot span extend the first/last
/// cubic segment.
class NaturalCubicSpline {
public:
    /// Throws InvalidArgument for fewer than 2 knots or non-increasing times.
    explicit NaturalCubicSpline(std::span<const Knot> knots);

    [[nodiscard]] double operator()(double t) const noexcept;

    [[nodiscard]] std::vector<double> evaluate(std::span<const double> query_times) const;

    /// Evaluates on t0 + k*dt, k = 0..n-1, with a single forward sweep.
    [[nodiscard]] std::vector<double> evaluate_grid(double t0, double dt, std::size_t n) const;

    [[nodiscard]] std::size_t knot_count() const noexcept { return ts_.size(); }
    /// Second derivatives at the knots.
    [[nodiscard]] std::span<const double> curvatures() const noexcept { return m_; }

private:
    [[nodiscard]] double segment_value(std::size_t i, double t) const noexcept;
    [[nodiscard]] std::size_t locate(double t) const noexcept;

    std::vector<double> ts_;
    std::vector<double> vs_;
    std::vector<double> m_;
};

std::vector<double> natural_cubic_spline(std::span<const Knot> knots,
                                         std::span<const double> query_times);

} // namespace midsift

#endif // MIDSIFT_SPLINE_HPP
