#include "rainskit/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rainskit::kernels {

namespace {
std::atomic<bool> g_parallel{
#ifdef _OPENMP
    true
#else
    false
#endif
};
}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

template <typename T>
static void gemm_rows(const T* a, int /*m*/, int k, const T* b, int n, T* c, int i0, int i1) {
    for (int i = i0; i < i1; ++i) {
        T* ci = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) ci[j] = T(0);
        const T* ai = a + static_cast<size_t>(i) * k;
        for (int l = 0; l < k; ++l) {
            const T s = ai[l];
            const T* bl = b + static_cast<size_t>(l) * n;
            for (int j = 0; j < n; ++j) ci[j] += s * bl[j];
        }
    }
}

void gemm_serial(const double* a, int m, int k, const double* b, int n, double* c) {
    gemm_rows(a, m, k, b, n, c, 0, m);
}

void gemm_serial(const cplx* a, int m, int k, const cplx* b, int n, cplx* c) {
    gemm_rows(a, m, k, b, n, c, 0, m);
}

void gemm_parallel(const double* a, int m, int k, const double* b, int n, double* c) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) gemm_rows(a, m, k, b, n, c, i, i + 1);
#else
    gemm_serial(a, m, k, b, n, c);
#endif
}

void gemm_parallel(const cplx* a, int m, int k, const cplx* b, int n, cplx* c) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) gemm_rows(a, m, k, b, n, c, i, i + 1);
#else
    gemm_serial(a, m, k, b, n, c);
#endif
}

namespace {
// Parallelism pays only past a few thousand inner products per matrix.
constexpr long kParallelGemmThreshold = 64L * 64L;
}  // namespace

void gemm(const double* a, int m, int k, const double* b, int n, double* c) {
    if (parallel_enabled() && static_cast<long>(m) * n >= kParallelGemmThreshold)
        gemm_parallel(a, m, k, b, n, c);
    else
        gemm_serial(a, m, k, b, n, c);
}

void gemm(const cplx* a, int m, int k, const cplx* b, int n, cplx* c) {
    if (parallel_enabled() && static_cast<long>(m) * n >= kParallelGemmThreshold)
        gemm_parallel(a, m, k, b, n, c);
    else
        gemm_serial(a, m, k, b, n, c);
}

// out = g^T (a g); scratch = a g.
static void congruence_impl(const double* a, const double* g, int n, double* scratch, double* out,
                            bool parallel) {
    if (parallel) {
        gemm_parallel(a, n, n, g, n, scratch);
    } else {
        gemm_serial(a, n, n, g, n, scratch);
    }
    auto col_pass = [&](int i) {
        double* oi = out + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int l = 0; l < n; ++l) s += g[static_cast<size_t>(l) * n + i] * scratch[static_cast<size_t>(l) * n + j];
            oi[j] = s;
        }
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) col_pass(i);
#else
        for (int i = 0; i < n; ++i) col_pass(i);
#endif
    } else {
        for (int i = 0; i < n; ++i) col_pass(i);
    }
}

void congruence_serial(const double* a, const double* g, int n, double* scratch, double* out) {
    congruence_impl(a, g, n, scratch, out, false);
}

void congruence_parallel(const double* a, const double* g, int n, double* scratch, double* out) {
    congruence_impl(a, g, n, scratch, out, true);
}

void congruence(const double* a, const double* g, int n, double* scratch, double* out) {
    congruence_impl(a, g, n, scratch, out, parallel_enabled() && n >= 64);
}

double dot(const double* a, const double* b, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace rainskit::kernels
