#pragma once

namespace ngr::blas {

// Works around OpenBLAS DYNAMIC_ARCH misdetection on hypervisors that mask
// the CPUID family/model: when the selected kernel set predates AVX but the
// CPU reports AVX2/AVX-512, re-executes the current process once with
// OPENBLAS_CORETYPE set so the library picks a matching kernel at startup.
// The kernel choice is baked in during library initialization, so it cannot
// be changed in-process; the re-exec happens at most once (guarded by an
// environment sentinel) and only on Linux. Call first thing in main(). A
// no-op when OPENBLAS_CORETYPE is already set or detection looks sane.
//
// argv must be the null-terminated vector passed to main. Returns only when
// no re-exec was needed (or exec failed, in which case execution continues
// with the slow kernels — a performance issue, not a correctness one).
void ensure_tuned(char** argv);

} // namespace ngr::blas
