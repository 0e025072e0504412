#pragma once

#include "gapfill/kernels.hpp"

namespace gapfill::kernels {

#define GAPFILL_KERNEL_DECLS                                                              \
    void multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n);       \
    void ramp_multiply(const Complex* in, double step, Complex* out, std::size_t n);      \
    void butterfly(Complex* lo, Complex* hi, const Complex* tw, std::size_t half);        \
    Complex dot_reversed(const Complex* a, const Complex* b_last, std::size_t n);         \
    void scale(Complex* x, double s, std::size_t n);

namespace scalar {
GAPFILL_KERNEL_DECLS
}

#if defined(GAPFILL_HAVE_AVX2)
namespace avx2 {
GAPFILL_KERNEL_DECLS
}
#endif

#undef GAPFILL_KERNEL_DECLS

} // namespace gapfill::kernels
