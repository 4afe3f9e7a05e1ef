#include "spiraldim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spiraldim/spiral.hpp"

namespace spiraldim::kernels {

namespace {

inline double pow_neg(double k, double p) {
    if (p == 1.0) return 1.0 / k;
    if (p == 2.0) return 1.0 / (k * k);
    return std::pow(k, -p);
}

inline std::int64_t ceil_term(double k, double p, double r) {
    return static_cast<std::int64_t>(std::ceil(pow_neg(k, p) / r));
}

inline std::uint64_t cell_key(double x, double y, double inv_r) {
    // Offset into the positive range; coordinates here are O(1), mesh >= 1e-8.
    const auto ix = static_cast<std::int64_t>(std::floor(x * inv_r)) + (1LL << 31);
    const auto iy = static_cast<std::int64_t>(std::floor(y * inv_r)) + (1LL << 31);
    return (static_cast<std::uint64_t>(ix) << 32) | static_cast<std::uint64_t>(iy & 0xffffffffLL);
}

inline bool in_window(const std::array<double, 2>& pt, const std::optional<Window>& w) {
    if (!w) return true;
    return std::hypot(pt[0] - w->cx, pt[1] - w->cy) <= w->radius;
}

}  // namespace

std::int64_t cover_term_sum_serial(double p, double r, std::int64_t k_lo, std::int64_t k_hi) {
    std::int64_t total = 0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        total += ceil_term(static_cast<double>(k), p, r);
    }
    return total;
}

std::int64_t cover_term_sum_parallel(double p, double r, std::int64_t k_lo, std::int64_t k_hi) {
    std::int64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        total += ceil_term(static_cast<double>(k), p, r);
    }
    return total;
}

std::int64_t cover_term_sum(double p, double r, std::int64_t k_lo, std::int64_t k_hi, Exec exec) {
    if (k_hi < k_lo) return 0;
    return exec == Exec::parallel ? cover_term_sum_parallel(p, r, k_lo, k_hi)
                                  : cover_term_sum_serial(p, r, k_lo, k_hi);
}

namespace {

constexpr std::int64_t kChunk = 65536;

double chunk_sum(double p, double r, std::int64_t k_lo, std::int64_t k_hi) {
    double s = 0.0;
    for (std::int64_t k = k_hi; k >= k_lo; --k) {  // ascending magnitudes
        s += pow_neg(static_cast<double>(k), p) / r;
    }
    return s;
}

}  // namespace

double cover_term_sum_real_serial(double p, double r, std::int64_t k_lo, std::int64_t k_hi) {
    if (k_hi < k_lo) return 0.0;
    const std::int64_t nchunks = (k_hi - k_lo) / kChunk + 1;
    double total = 0.0;
    for (std::int64_t c = nchunks - 1; c >= 0; --c) {
        const std::int64_t lo = k_lo + c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk - 1, k_hi);
        total += chunk_sum(p, r, lo, hi);
    }
    return total;
}

double cover_term_sum_real_parallel(double p, double r, std::int64_t k_lo, std::int64_t k_hi) {
    if (k_hi < k_lo) return 0.0;
    const std::int64_t nchunks = (k_hi - k_lo) / kChunk + 1;
    std::vector<double> partial(static_cast<std::size_t>(nchunks));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = k_lo + c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk - 1, k_hi);
        partial[static_cast<std::size_t>(c)] = chunk_sum(p, r, lo, hi);
    }
    double total = 0.0;
    for (std::int64_t c = nchunks - 1; c >= 0; --c) {
        total += partial[static_cast<std::size_t>(c)];
    }
    return total;
}

double cover_term_sum_real(double p, double r, std::int64_t k_lo, std::int64_t k_hi, Exec exec) {
    return exec == Exec::parallel ? cover_term_sum_real_parallel(p, r, k_lo, k_hi)
                                  : cover_term_sum_real_serial(p, r, k_lo, k_hi);
}

std::int64_t occupied_cells_serial(std::span<const std::array<double, 2>> pts, double r,
                                   const std::optional<Window>& window) {
    const double inv_r = 1.0 / r;
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(pts.size() / 8 + 16);
    for (const auto& pt : pts) {
        if (!in_window(pt, window)) continue;
        cells.insert(cell_key(pt[0], pt[1], inv_r));
    }
    return static_cast<std::int64_t>(cells.size());
}

std::int64_t occupied_cells_parallel(std::span<const std::array<double, 2>> pts, double r,
                                     const std::optional<Window>& window) {
#ifndef _OPENMP
    return occupied_cells_serial(pts, r, window);
#else
    const double inv_r = 1.0 / r;
    // per-task cell sets, merged afterwards; set union is order-independent
    std::vector<std::unordered_set<std::uint64_t>> sets(
        static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
    {
        auto& mine = sets[static_cast<std::size_t>(omp_get_thread_num())];
        mine.reserve(pts.size() / (8 * sets.size()) + 16);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(pts.size()); ++i) {
            const auto& pt = pts[static_cast<std::size_t>(i)];
            if (!in_window(pt, window)) continue;
            mine.insert(cell_key(pt[0], pt[1], inv_r));
        }
    }
    auto& all = sets.front();
    for (std::size_t s = 1; s < sets.size(); ++s) {
        all.insert(sets[s].begin(), sets[s].end());
    }
    return static_cast<std::int64_t>(all.size());
#endif
}

std::int64_t occupied_cells(std::span<const std::array<double, 2>> pts, double r,
                            const std::optional<Window>& window, Exec exec) {
    return exec == Exec::parallel ? occupied_cells_parallel(pts, r, window)
                                  : occupied_cells_serial(pts, r, window);
}

std::vector<double> turn_lengths_serial(const WindingFunction& phi, std::int64_t K, double tol) {
    std::vector<double> out(static_cast<std::size_t>(K));
    for (std::int64_t k = 1; k <= K; ++k) {
        out[static_cast<std::size_t>(k - 1)] = turn_arclength(phi, k, tol);
    }
    return out;
}

std::vector<double> turn_lengths_parallel(const WindingFunction& phi, std::int64_t K, double tol) {
    std::vector<double> out(static_cast<std::size_t>(K));
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t k = 1; k <= K; ++k) {
        out[static_cast<std::size_t>(k - 1)] = turn_arclength(phi, k, tol);
    }
    return out;
}

std::vector<double> turn_lengths(const WindingFunction& phi, std::int64_t K, double tol, Exec exec) {
    return exec == Exec::parallel ? turn_lengths_parallel(phi, K, tol)
                                  : turn_lengths_serial(phi, K, tol);
}

}  // namespace spiraldim::kernels
