#ifndef BUBBLESIM_PARALLEL_H
#define BUBBLESIM_PARALLEL_H

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

// Data-parallel loop helpers. Every kernel in the solver is written so that
// the result is bitwise identical for any thread count: per-index kernels
// write disjoint outputs, and reductions use a fixed chunk decomposition
// whose partial sums are combined in chunk order.

namespace bubblesim {

// Thread cap: min(SIM_THREADS, hardware). SIM_THREADS <= 0 or unset means
// all cores. Read once, then cached.
int max_threads();

// Override the cap programmatically (tests, benchmark). n <= 0 restores the
// environment default.
void set_max_threads(int n);

inline constexpr int kParallelGrain = 2048;
inline constexpr int kChunkSize = 1024;

template <class Body>
void parallel_for(int n, const Body& body)
{
    if (n <= 0) return;
#ifdef _OPENMP
    int threads = max_threads();
    if (threads > 1 && n >= kParallelGrain) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#endif
    for (int i = 0; i < n; ++i) body(i);
}

// Deterministic sum of per-index values: partials are accumulated serially
// inside fixed chunks of kChunkSize and the chunk partials are added in
// chunk order, so the rounding path never depends on the thread count.
template <class Term>
double chunked_sum(int n, const Term& term)
{
    if (n <= 0) return 0.0;
    const int chunks = (n + kChunkSize - 1) / kChunkSize;
    std::vector<double> partial(static_cast<size_t>(chunks), 0.0);
    parallel_for(chunks, [&](int c) {
        const int begin = c * kChunkSize;
        const int end = begin + kChunkSize < n ? begin + kChunkSize : n;
        double s = 0.0;
        for (int i = begin; i < end; ++i) s += term(i);
        partial[static_cast<size_t>(c)] = s;
    });
    double total = 0.0;
    for (int c = 0; c < chunks; ++c) total += partial[static_cast<size_t>(c)];
    return total;
}

} // namespace bubblesim

#endif
