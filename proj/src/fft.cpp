#include "lacuna/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace lacuna::fft {
namespace {

struct PlanCache {
    std::mutex mutex;
    std::map<std::tuple<int, std::size_t, int>, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
    }

    fftw_plan get(int rank, std::size_t n, int sign) {
        std::lock_guard lock(mutex);
        auto key = std::make_tuple(rank, n, sign);
        if (auto it = plans.find(key); it != plans.end()) return it->second;
        const std::size_t total = rank == 2 ? n * n : n;
        std::vector<std::complex<double>> scratch(total);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = rank == 2
            ? fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), buf, buf, sign, flags)
            : fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, flags);
        plans.emplace(key, plan);
        return plan;
    }
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void transform_2d(std::span<std::complex<double>> data, std::size_t n, int sign) {
    fftw_plan plan = cache().get(2, n, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

void transform_1d(std::span<std::complex<double>> data, int sign) {
    fftw_plan plan = cache().get(1, data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace lacuna::fft
