// Benchmark comparing the serial reference kernels against the OpenMP
// variants, plus one end-to-end SDP solve under both settings.

#include <chrono>
#include <cstdio>
#include <vector>

#include "rainskit/channels.hpp"
#include "rainskit/kernels.hpp"
#include "rainskit/linalg.hpp"
#include "rainskit/rains.hpp"
#include "rainskit/rng.hpp"

using namespace rainskit;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

void bench_gemm_complex(int n, int reps) {
    Rng rng(1);
    const ComplexMatrix a = rng.ginibre(n, n);
    const ComplexMatrix b = rng.ginibre(n, n);
    ComplexMatrix c1(n, n), c2(n, n);
    const double ts = time_best_of(reps, [&] {
        kernels::gemm_serial(a.data().data(), n, n, b.data().data(), n, c1.data().data());
    });
    const double tp = time_best_of(reps, [&] {
        kernels::gemm_parallel(a.data().data(), n, n, b.data().data(), n, c2.data().data());
    });
    const bool same = c1.approx_equal(c2, 0.0);
    std::printf("gemm<complex> n=%-4d serial %8.4f ms   omp %8.4f ms   speedup %5.2fx   %s\n", n,
                ts * 1e3, tp * 1e3, ts / tp, same ? "bitwise-equal" : "MISMATCH");
}

void bench_congruence(int n, int reps) {
    Rng rng(2);
    RealMatrix a(n, n), g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = rng.gaussian();
            g(i, j) = rng.gaussian();
        }
    a.symmetrize();
    RealMatrix s1(n, n), s2(n, n), o1(n, n), o2(n, n);
    const double ts = time_best_of(reps, [&] {
        kernels::congruence_serial(a.data().data(), g.data().data(), n, s1.data().data(),
                                   o1.data().data());
    });
    const double tp = time_best_of(reps, [&] {
        kernels::congruence_parallel(a.data().data(), g.data().data(), n, s2.data().data(),
                                     o2.data().data());
    });
    bool same = true;
    for (size_t i = 0; i < o1.data().size(); ++i) same = same && o1.data()[i] == o2.data()[i];
    std::printf("congruence    n=%-4d serial %8.4f ms   omp %8.4f ms   speedup %5.2fx   %s\n", n,
                ts * 1e3, tp * 1e3, ts / tp, same ? "bitwise-equal" : "MISMATCH");
}

void bench_full_solve() {
    const BipartiteState rho = random_state(DimSpec{2, 2, 2}, 5);
    kernels::set_parallel(false);
    const auto t0 = Clock::now();
    const MeasureResult serial = w_state(rho, Bipartition{{1, 2}});
    const double ts = seconds_since(t0);
    kernels::set_parallel(true);
    const auto t1 = Clock::now();
    const MeasureResult parallel = w_state(rho, Bipartition{{1, 2}});
    const double tp = seconds_since(t1);
    std::printf("w_state 2x2x2        serial %8.2f ms   omp %8.2f ms   speedup %5.2fx   |dW|=%.2e\n",
                ts * 1e3, tp * 1e3, ts / tp, std::abs(serial.value - parallel.value));
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", kernels::thread_count());
    bench_gemm_complex(96, 5);
    bench_gemm_complex(192, 3);
    bench_congruence(64, 10);
    bench_congruence(160, 4);
    bench_full_solve();
    return 0;
}
