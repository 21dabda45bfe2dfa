#include "midsift/spline.hpp"

#include "midsift/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace midsift {

NaturalCubicSpline::NaturalCubicSpline(std::span<const Knot> knots) {
    const auto n = knots.size();
    if (n < 2) {
        throw InvalidArgument("natural cubic spline needs at least 2 knots, got " +
                              std::to_string(n));
    }
    ts_.reserve(n);
    vs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(knots[i].t) || !std::isfinite(knots[i].value)) {
            throw InvalidArgument("spline knot " + std::to_string(i) + " is not finite");
        }
        if (i > 0 && !(knots[i].t > knots[i - 1].t)) {
            throw InvalidArgument("spline knot times must be strictly increasing (knot " +
                                  std::to_string(i) + ")");
        }
        ts_.push_back(knots[i].t);
        vs_.push_back(knots[i].value);
    }

    m_.assign(n, 0.0);
    if (n == 2) {
        return;
    }

    // Tridiagonal system for interior curvatures m_1..m_{n-2}, m_0 = m_{n-1} = 0:
    // h_{i-1} m_{i-1} + 2 (h_{i-1} + h_i) m_i + h_i m_{i+1} = 6 (d_i - d_{i-1}).
    const auto interior = n - 2;
    std::vector<double> diag(interior);
    std::vector<double> upper(interior);
    std::vector<double> rhs(interior);
    for (std::size_t r = 0; r < interior; ++r) {
        const auto i = r + 1;
        const double h_prev = ts_[i] - ts_[i - 1];
        const double h_next = ts_[i + 1] - ts_[i];
        diag[r] = 2.0 * (h_prev + h_next);
        upper[r] = h_next;
        rhs[r] = 6.0 * ((vs_[i + 1] - vs_[i]) / h_next - (vs_[i] - vs_[i - 1]) / h_prev);
    }
    // Thomas forward sweep; the sub-diagonal entry of row r is h_{r}, which
    // equals upper[r-1].
    for (std::size_t r = 1; r < interior; ++r) {
        const double w = upper[r - 1] / diag[r - 1];
        diag[r] -= w * upper[r - 1];
        rhs[r] -= w * rhs[r - 1];
    }
    m_[interior] = rhs[interior - 1] / diag[interior - 1];
    for (std::size_t r = interior - 1; r-- > 0;) {
        m_[r + 1] = (rhs[r] - upper[r] * m_[r + 2]) / diag[r];
    }
}

double NaturalCubicSpline::segment_value(std::size_t i, double t) const noexcept {
    const double h = ts_[i + 1] - ts_[i];
    const double b = (t - ts_[i]) / h;
    const double a = 1.0 - b;
    return a * vs_[i] + b * vs_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h) / 6.0;
}

std::size_t NaturalCubicSpline::locate(double t) const noexcept {
    // Segment i covers [ts_[i], ts_[i+1]); out-of-span queries use the end segments.
    const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    const auto idx = static_cast<std::size_t>(std::distance(ts_.begin(), it));
    if (idx == 0) {
        return 0;
    }
    return std::min(idx - 1, ts_.size() - 2);
}

double NaturalCubicSpline::operator()(double t) const noexcept {
    return segment_value(locate(t), t);
}

std::vector<double> NaturalCubicSpline::evaluate(std::span<const double> query_times) const {
    std::vector<double> out;
    out.reserve(query_times.size());
    for (const double t : query_times) {
        out.push_back((*this)(t));
    }
    return out;
}

std::vector<double> NaturalCubicSpline::evaluate_grid(double t0, double dt,
                                                      std::size_t n) const {
    std::vector<double> out(n);
    std::size_t seg = 0;
    const std::size_t last_seg = ts_.size() - 2;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = t0 + static_cast<double>(k) * dt;
        while (seg < last_seg && t >= ts_[seg + 1]) {
            ++seg;
        }
        out[k] = segment_value(seg, t);
    }
    return out;
}

std::vector<double> natural_cubic_spline(std::span<const Knot> knots,
                                         std::span<const double> query_times) {
    return NaturalCubicSpline(knots).evaluate(query_times);
}

} // namespace midsift
