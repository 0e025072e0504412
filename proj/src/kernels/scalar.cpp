#include "kernels_impl.hpp"

// Complex products are spelled out on the real and imaginary parts so the
// compiler does not route them through the C99 Annex G (NaN-recovering)
// multiplication helper.

namespace gapfill::kernels::scalar {

void multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        out[i] = Complex(ar * br - ai * bi, ar * bi + ai * br);
    }
}

void ramp_multiply(const Complex* in, double step, Complex* out, std::size_t n) {
    for (std::size_t p = 0; p < n; ++p) {
        const double w = step * static_cast<double>(p);
        // (x + jy) * jw = -w*y + j*w*x
        out[p] = Complex(-w * in[p].imag(), w * in[p].real());
    }
}

void butterfly(Complex* lo, Complex* hi, const Complex* tw, std::size_t half) {
    for (std::size_t k = 0; k < half; ++k) {
        const double hr = hi[k].real(), hm = hi[k].imag();
        const double wr = tw[k].real(), wi = tw[k].imag();
        const double vr = hr * wr - hm * wi;
        const double vi = hr * wi + hm * wr;
        const double lr = lo[k].real(), lm = lo[k].imag();
        hi[k] = Complex(lr - vr, lm - vi);
        lo[k] = Complex(lr + vr, lm + vi);
    }
}

Complex dot_reversed(const Complex* a, const Complex* b_last, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex& b = *(b_last - k);
        re += a[k].real() * b.real() - a[k].imag() * b.imag();
        im += a[k].real() * b.imag() + a[k].imag() * b.real();
    }
    return {re, im};
}

void scale(Complex* x, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = Complex(x[i].real() * s, x[i].imag() * s);
    }
}

} // namespace gapfill::kernels::scalar
