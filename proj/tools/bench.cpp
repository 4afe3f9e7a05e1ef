// Benchmark of the OpenMP kernels against their serial references.
// Each kernel pair must produce identical results; timings are wall clock.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spiraldim/dimension.hpp"
#include "spiraldim/kernels.hpp"
#include "spiraldim/lipschitz.hpp"

using namespace spiraldim;

namespace {

int g_mismatches = 0;

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "results equal" : "RESULTS DIFFER");
    if (!equal) ++g_mismatches;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        const double p = 1.0 / 3.0, r = 2e-10;
        const auto K = tight_turn_cutoff(p, r);
        std::int64_t a = 0, b = 0;
        const double ts = time_ms([&] { a = kernels::cover_term_sum_serial(p, r, 1, K); });
        const double tp = time_ms([&] { b = kernels::cover_term_sum_parallel(p, r, 1, K); });
        report("cover_term_sum", ts, tp, a == b);
    }

    {
        const double p = 0.5, r = 1e-11;
        const auto K = tight_turn_cutoff(p, r);
        double a = 0, b = 0;
        const double ts = time_ms([&] { a = kernels::cover_term_sum_real_serial(p, r, 1, K); });
        const double tp = time_ms([&] { b = kernels::cover_term_sum_real_parallel(p, r, 1, K); });
        report("cover_term_sum_real", ts, tp, a == b);
    }

    {
        const auto pts = sampled_spiral(0.5, 4e-4);
        std::int64_t a = 0, b = 0;
        const double ts =
            time_ms([&] { a = kernels::occupied_cells_serial(pts, 4e-4, std::nullopt); });
        const double tp =
            time_ms([&] { b = kernels::occupied_cells_parallel(pts, 4e-4, std::nullopt); });
        std::printf("  (%zu points)\n", pts.size());
        report("occupied_cells", ts, tp, a == b);
    }

    {
        const auto phi = WindingFunction::polynomial(1.0);
        std::vector<double> a, b;
        const double ts = time_ms([&] { a = kernels::turn_lengths_serial(phi, 1'000'000, 1e-10); });
        const double tp = time_ms([&] { b = kernels::turn_lengths_parallel(phi, 1'000'000, 1e-10); });
        report("turn_lengths", ts, tp, a == b);
    }

    {
        EquivalenceMap map(reciprocal_mixed_profile(1.0));
        DistortionReport a, b;
        const double ts = time_ms([&] { a = distortion_stats(map, 0, 2'000'000, Exec::serial); });
        const double tp = time_ms([&] { b = distortion_stats(map, 0, 2'000'000, Exec::parallel); });
        report("distortion_stats", ts, tp,
               a.min_ratio == b.min_ratio && a.max_ratio == b.max_ratio);
    }

    return g_mismatches;
}
