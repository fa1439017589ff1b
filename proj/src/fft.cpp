#include "gbq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gbq::fft {

namespace {

// FFTW's planner is not thread-safe; executing distinct plans is.
std::mutex g_planner_mutex;

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

struct PlanCache {
    std::map<int, PlanPair> d1;
    std::map<std::pair<int, int>, PlanPair> d2;

    ~PlanCache() {
        std::lock_guard<std::mutex> lock(g_planner_mutex);
        for (auto& [n, p] : d1) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
        for (auto& [n, p] : d2) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.bwd);
        }
    }
};

thread_local PlanCache t_cache;

PlanPair& plans_1d(int n) {
    auto it = t_cache.d1.find(n);
    if (it != t_cache.d1.end()) return it->second;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    PlanPair p;
    // UNALIGNED + new-array execution lets plans run on any caller buffer.
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    p.fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return t_cache.d1.emplace(n, p).first->second;
}

PlanPair& plans_2d(int rows, int cols) {
    auto key = std::make_pair(rows, cols);
    auto it = t_cache.d2.find(key);
    if (it != t_cache.d2.end()) return it->second;
    std::lock_guard<std::mutex> lock(g_planner_mutex);
    PlanPair p;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(rows) *
                                              static_cast<std::size_t>(cols));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    p.fwd = fftw_plan_dft_2d(rows, cols, buf, buf, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_2d(rows, cols, buf, buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
    return t_cache.d2.emplace(key, p).first->second;
}

} // namespace

void dft(std::span<std::complex<double>> a, bool forward) {
    if (a.empty()) return;
    PlanPair& p = plans_1d(static_cast<int>(a.size()));
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(forward ? p.fwd : p.bwd, buf, buf);
}

void dft2d(std::span<std::complex<double>> a, int Q, int M, bool forward) {
    if (a.size() != static_cast<std::size_t>(Q) * static_cast<std::size_t>(M))
        throw std::invalid_argument("dft2d: size mismatch");
    PlanPair& p = plans_2d(Q, M);
    auto* buf = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(forward ? p.fwd : p.bwd, buf, buf);
}

int next_fast_size(int lo) {
    for (int n = lo;; ++n) {
        int r = n;
        for (int f : {2, 3, 5, 7})
            while (r % f == 0) r /= f;
        if (r == 1) return n;
    }
}

} // namespace gbq::fft
