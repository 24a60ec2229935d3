#include "bsos/kernels.hpp"

namespace bsos::kernels {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void scale_scalar(double* dst, const double* a, const double* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * w[i];
}

void square_accumulate_scalar(double* dst, const double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += s[i] * s[i];
}

void axpy_scalar(double* dst, double c, const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += c * a[i];
}

}  // namespace

const Ops scalar_ops = {dot_scalar, scale_scalar, square_accumulate_scalar, axpy_scalar};

}  // namespace bsos::kernels
