#include "parallel.h"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bubblesim {

namespace {

int hardware_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

int env_threads()
{
    const char* env = std::getenv("SIM_THREADS");
    if (!env || !*env) return hardware_threads();
    int n = std::atoi(env);
    if (n <= 0) return hardware_threads();
    int hw = hardware_threads();
    return n < hw ? n : hw;
}

std::atomic<int> g_override{0};

} // namespace

int max_threads()
{
    int forced = g_override.load(std::memory_order_relaxed);
    if (forced > 0) return forced;
    static const int cached = env_threads();
    return cached;
}

void set_max_threads(int n)
{
    g_override.store(n > 0 ? n : 0, std::memory_order_relaxed);
}

} // namespace bubblesim
