#include "funcat/kernels.hpp"

#include <atomic>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace funcat::kernels {

namespace {
#if defined(_OPENMP)
std::atomic<bool> g_parallel{true};
#else
std::atomic<bool> g_parallel{false};
#endif

// accumulate products with deferred reduction; (p-1)^2 < 2^62 so two
// pending terms always fit in a u64
constexpr u64 kOverflowGuard = u64(1) << 62;

inline u64 dot_mod(const u32* a, const u32* bcol, int k, int stride, u64 p) {
    u64 acc = 0;
    for (int i = 0; i < k; ++i) {
        acc += u64(a[i]) * bcol[size_t(i) * stride];
        if (acc >= kOverflowGuard) acc %= p;
    }
    return acc % p;
}

inline void matmul_rows(const u32* a, const u32* b, u32* c, int r0, int r1, int k, int n, u64 p) {
    for (int i = r0; i < r1; ++i) {
        const u32* arow = a + size_t(i) * k;
        u32* crow = c + size_t(i) * n;
        for (int j = 0; j < n; ++j) crow[j] = u32(dot_mod(arow, b + j, k, n, p));
    }
}

// eliminate column `col` against the normalized pivot row, rows [r0, r1)
inline void eliminate_rows(u32* a, const u32* prow, int r0, int r1, int piv_row, int col, int cols,
                           Fp f) {
    for (int r = r0; r < r1; ++r) {
        if (r == piv_row) continue;
        u32* row = a + size_t(r) * cols;
        u32 factor = row[col];
        if (!factor) continue;
        for (int c = col; c < cols; ++c) row[c] = f.sub(row[c], f.mul(factor, prow[c]));
    }
}
}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void matmul_serial(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f) {
    matmul_rows(a, b, c, 0, m, k, n, f.p);
}

void matmul_parallel(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f) {
#if defined(_OPENMP)
    const u64 p = f.p;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) matmul_rows(a, b, c, i, i + 1, k, n, p);
#else
    matmul_serial(a, b, c, m, k, n, f);
#endif
}

void matmul(const u32* a, const u32* b, u32* c, int m, int k, int n, Fp f) {
    if (parallel_enabled() && u64(m) * k * n >= (u64(1) << 18))
        matmul_parallel(a, b, c, m, k, n, f);
    else
        matmul_serial(a, b, c, m, k, n, f);
}

namespace {
std::vector<int> rref_impl(u32* a, int rows, int cols, Fp f, bool parallel) {
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < cols && prow < rows; ++col) {
        int sel = -1;
        for (int r = prow; r < rows; ++r) {
            if (a[size_t(r) * cols + col]) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        if (sel != prow) {
            for (int c = col; c < cols; ++c) std::swap(a[size_t(sel) * cols + c], a[size_t(prow) * cols + c]);
        }
        u32* pr = a + size_t(prow) * cols;
        u32 invp = f.inv(pr[col]);
        if (invp != 1) {
            for (int c = col; c < cols; ++c) pr[c] = f.mul(pr[c], invp);
        }
        if (parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
            for (int r = 0; r < rows; ++r) eliminate_rows(a, pr, r, r + 1, prow, col, cols, f);
#else
            eliminate_rows(a, pr, 0, rows, prow, col, cols, f);
#endif
        } else {
            eliminate_rows(a, pr, 0, rows, prow, col, cols, f);
        }
        pivots.push_back(col);
        ++prow;
    }
    return pivots;
}
}  // namespace

std::vector<int> rref_serial(u32* a, int rows, int cols, Fp f) {
    return rref_impl(a, rows, cols, f, false);
}

std::vector<int> rref_parallel(u32* a, int rows, int cols, Fp f) {
    return rref_impl(a, rows, cols, f, true);
}

std::vector<int> rref(u32* a, int rows, int cols, Fp f) {
    bool par = parallel_enabled() && u64(rows) * cols >= (u64(1) << 15);
    return rref_impl(a, rows, cols, f, par);
}

}  // namespace funcat::kernels
