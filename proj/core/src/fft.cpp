#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace midsift::detail {

namespace {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanGuard {
    fftw_plan plan = nullptr;
    ~PlanGuard() {
        if (plan != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
    }
};

struct Buffer {
    explicit Buffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
    ~Buffer() { fftw_free(ptr); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    void* ptr;
};

} // namespace

std::vector<std::complex<double>> real_forward(std::span<const double> x) {
    const auto n = x.size();
    const auto bins = n / 2 + 1;
    Buffer in(sizeof(double) * n);
    Buffer out(sizeof(fftw_complex) * bins);
    auto* in_ptr = static_cast<double*>(in.ptr);
    auto* out_ptr = static_cast<fftw_complex*>(out.ptr);

    PlanGuard guard;
    {
        std::lock_guard lock(planner_mutex());
        guard.plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_ptr, out_ptr, FFTW_ESTIMATE);
    }
    std::copy(x.begin(), x.end(), in_ptr);
    fftw_execute(guard.plan);

    std::vector<std::complex<double>> result(bins);
    for (std::size_t j = 0; j < bins; ++j) {
        result[j] = {out_ptr[j][0], out_ptr[j][1]};
    }
    return result;
}

std::vector<double> real_inverse(std::span<const std::complex<double>> half, std::size_t n) {
    const auto bins = n / 2 + 1;
    Buffer in(sizeof(fftw_complex) * bins);
    Buffer out(sizeof(double) * n);
    auto* in_ptr = static_cast<fftw_complex*>(in.ptr);
    auto* out_ptr = static_cast<double*>(out.ptr);

    PlanGuard guard;
    {
        std::lock_guard lock(planner_mutex());
        guard.plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in_ptr, out_ptr, FFTW_ESTIMATE);
    }
    for (std::size_t j = 0; j < bins; ++j) {
        const auto v = j < half.size() ? half[j] : std::complex<double>{};
        in_ptr[j][0] = v.real();
        in_ptr[j][1] = v.imag();
    }
    fftw_execute(guard.plan);
    return {out_ptr, out_ptr + n};
}

} // namespace midsift::detail
