#pragma once

#include <complex>
#include <cstddef>

namespace rainskit::kernels {

using cplx = std::complex<double>;

// Dense row-major matrix kernels. Every kernel has a serial reference
// implementation and an OpenMP variant over independent output rows; the
// unsuffixed entry points dispatch on parallel_enabled(). Per output entry
// the summation order is fixed, so serial and parallel results are
// bit-identical.

bool parallel_enabled();
void set_parallel(bool on);
int thread_count();

// c[m x n] = a[m x k] * b[k x n]
void gemm_serial(const double* a, int m, int k, const double* b, int n, double* c);
void gemm_parallel(const double* a, int m, int k, const double* b, int n, double* c);
void gemm(const double* a, int m, int k, const double* b, int n, double* c);

void gemm_serial(const cplx* a, int m, int k, const cplx* b, int n, cplx* c);
void gemm_parallel(const cplx* a, int m, int k, const cplx* b, int n, cplx* c);
void gemm(const cplx* a, int m, int k, const cplx* b, int n, cplx* c);

// out[n x n] = g^T a g with a[n x n] symmetric, g[n x n]; scratch must hold n*n.
void congruence_serial(const double* a, const double* g, int n, double* scratch, double* out);
void congruence_parallel(const double* a, const double* g, int n, double* scratch, double* out);
void congruence(const double* a, const double* g, int n, double* scratch, double* out);

double dot(const double* a, const double* b, size_t n);

}  // namespace rainskit::kernels
