#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace bsos::kernels {

// Hot inner loops of the Schur-complement assembly.  Scalar reference
// implementations plus SIMD variants selected once at startup; all variants
// agree with the scalar ones to tight relative tolerance (equivalence-tested).
struct Ops {
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // dst[i] = a[i] * w[i]
    void (*scale)(double* dst, const double* a, const double* w, std::size_t n);
    // dst[i] += s[i] * s[i]
    void (*square_accumulate)(double* dst, const double* s, std::size_t n);
    // dst[i] += c * a[i]
    void (*axpy)(double* dst, double c, const double* a, std::size_t n);
};

extern const Ops scalar_ops;
#if defined(__x86_64__) || defined(_M_X64)
extern const Ops avx2_ops;
bool avx2_supported();
#endif
#if defined(__aarch64__)
extern const Ops neon_ops;
#endif

// Selected backend.  BSOS_KERNEL=scalar|avx2|neon|auto overrides; unknown or
// unsupported values fall back to scalar.
const Ops& ops();
std::string backend_name();

// Runs fn(begin, end) over chunks of [0, n).  Thread count comes from
// BSOS_NUM_THREADS (0 or unset = serial).  Chunks are disjoint, so results
// are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

int num_threads();

}  // namespace bsos::kernels
