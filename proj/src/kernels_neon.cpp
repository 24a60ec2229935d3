#if defined(__aarch64__)

#include <arm_neon.h>

#include "bsos/kernels.hpp"

namespace bsos::kernels {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void scale_neon(double* dst, const double* a, const double* w, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(w + i)));
    for (; i < n; ++i) dst[i] = a[i] * w[i];
}

void square_accumulate_neon(double* dst, const double* s, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(s + i);
        vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), v, v));
    }
    for (; i < n; ++i) dst[i] += s[i] * s[i];
}

void axpy_neon(double* dst, double c, const double* a, std::size_t n) {
    const float64x2_t cv = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), cv, vld1q_f64(a + i)));
    for (; i < n; ++i) dst[i] += c * a[i];
}

}  // namespace

const Ops neon_ops = {dot_neon, scale_neon, square_accumulate_neon, axpy_neon};

}  // namespace bsos::kernels

#endif  // aarch64
