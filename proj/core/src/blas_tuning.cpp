#include "ngr/blas_tuning.hpp"

#include <cstdlib>
#include <cstring>

#if defined(__linux__) && defined(__x86_64__)
#include <malloc.h>
#include <strings.h>
#include <unistd.h>
extern "C" char* openblas_get_corename(void);
#endif

namespace ngr::blas {

#if defined(__linux__) && defined(__x86_64__)

void ensure_tuned(char** argv) {
    // The working buffers here are a few MB each and short-lived; keep glibc
    // from serving them with fresh mmap'd (page-faulting) regions every call.
    mallopt(M_MMAP_THRESHOLD, 256 << 20);

    if (std::getenv("OPENBLAS_CORETYPE") != nullptr) return;  // explicit choice wins
    if (std::getenv("NGR_BLAS_RETUNED") != nullptr) return;   // already re-executed once

    // Under some hypervisors CPUID model/family are masked, so OpenBLAS's
    // runtime detection lands on an older (sometimes pre-AVX) kernel set.
    // Pick the kernel generation from the feature flags instead; they survive
    // the masking. The choice is baked in when the library initializes, so a
    // one-time re-exec with OPENBLAS_CORETYPE set is the only way to apply it.
    const char* target = nullptr;
    if (__builtin_cpu_supports("avx512f"))
        target = "SKYLAKEX";
    else if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        target = "HASWELL";
    else if (__builtin_cpu_supports("avx"))
        target = "SANDYBRIDGE";
    if (target == nullptr) return;  // nothing better to offer

    // corename reports mixed case ("SkylakeX"); the env override is uppercase
    if (strcasecmp(openblas_get_corename(), target) == 0) return;  // already right

    setenv("OPENBLAS_CORETYPE", target, 1);
    setenv("NGR_BLAS_RETUNED", "1", 1);
    execv("/proc/self/exe", argv);
    // exec failed: carry on with the slow kernels
}

#else

void ensure_tuned(char**) {}

#endif

} // namespace ngr::blas
