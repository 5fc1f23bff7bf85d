#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace wifiholo::detail {

namespace {

// The FFTW planner is not thread-safe; executing a finished plan on new arrays is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n0, int n1, int sign) {
        std::lock_guard lock(mutex_);
        const auto key = std::make_tuple(n0, n1, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        const std::size_t n = static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1 > 0 ? n1 : 1);
        fftw_complex* buf = fftw_alloc_complex(n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = (n1 > 0) ? fftw_plan_dft_2d(n0, n1, buf, buf, sign, flags)
                                  : fftw_plan_dft_1d(n0, buf, buf, sign, flags);
        fftw_free(buf);
        if (!plan) throw std::runtime_error("fft: planning failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void fft_1d(std::vector<std::complex<double>>& data, int sign) {
    if (data.empty()) return;
    fftw_plan plan = cache().get(static_cast<int>(data.size()), 0, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

void fft_2d(std::vector<std::complex<double>>& data, int n0, int n1, int sign) {
    if (static_cast<std::size_t>(n0) * static_cast<std::size_t>(n1) != data.size())
        throw std::invalid_argument("fft_2d: size mismatch");
    fftw_plan plan = cache().get(n0, n1, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace wifiholo::detail
