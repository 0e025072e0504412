#include "kernels_impl.hpp"

#include <immintrin.h>

// Two interleaved complex<double> values per 256-bit register:
// [re0, im0, re1, im1].

namespace gapfill::kernels::avx2 {
namespace {

inline const double* as_doubles(const Complex* p) {
    return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(Complex* p) {
    return reinterpret_cast<double*>(p);
}

inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d b_re = _mm256_movedup_pd(b);
    const __m256d b_im = _mm256_permute_pd(b, 0xF);
    const __m256d a_swap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im));
}

} // namespace

void multiply(const Complex* a, const Complex* b, Complex* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(as_doubles(a + i));
        const __m256d vb = _mm256_loadu_pd(as_doubles(b + i));
        _mm256_storeu_pd(as_doubles(out + i), cmul(va, vb));
    }
    if (i < n) {
        scalar::multiply(a + i, b + i, out + i, n - i);
    }
}

void ramp_multiply(const Complex* in, double step, Complex* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    const __m256d vstep = _mm256_set1_pd(step);
    std::size_t p = 0;
    for (; p + 2 <= n; p += 2) {
        const double p0 = static_cast<double>(p);
        const double p1 = static_cast<double>(p + 1);
        const __m256d w = _mm256_mul_pd(vstep, _mm256_set_pd(p1, p1, p0, p0));
        const __m256d x = _mm256_loadu_pd(as_doubles(in + p));
        const __m256d x_swap = _mm256_permute_pd(x, 0x5);
        // [0 - w*im, 0 + w*re]
        _mm256_storeu_pd(as_doubles(out + p), _mm256_addsub_pd(zero, _mm256_mul_pd(w, x_swap)));
    }
    if (p < n) {
        const double wp = step * static_cast<double>(p);
        out[p] = Complex(-wp * in[p].imag(), wp * in[p].real());
    }
}

void butterfly(Complex* lo, Complex* hi, const Complex* tw, std::size_t half) {
    std::size_t k = 0;
    for (; k + 2 <= half; k += 2) {
        const __m256d h = _mm256_loadu_pd(as_doubles(hi + k));
        const __m256d t = _mm256_loadu_pd(as_doubles(tw + k));
        const __m256d l = _mm256_loadu_pd(as_doubles(lo + k));
        const __m256d v = cmul(h, t);
        _mm256_storeu_pd(as_doubles(hi + k), _mm256_sub_pd(l, v));
        _mm256_storeu_pd(as_doubles(lo + k), _mm256_add_pd(l, v));
    }
    if (k < half) {
        scalar::butterfly(lo + k, hi + k, tw + k, half - k);
    }
}

Complex dot_reversed(const Complex* a, const Complex* b_last, std::size_t n) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d va = _mm256_loadu_pd(as_doubles(a + k));
        // b_last[-k-1], b_last[-k] in memory order; swap lanes to pair with a[k], a[k+1].
        const __m256d raw = _mm256_loadu_pd(as_doubles(b_last - k - 1));
        const __m256d vb = _mm256_permute2f128_pd(raw, raw, 0x01);
        acc_re = _mm256_fmadd_pd(va, _mm256_movedup_pd(vb), acc_re);
        acc_im = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), _mm256_permute_pd(vb, 0xF), acc_im);
    }
    const __m256d acc = _mm256_addsub_pd(acc_re, acc_im);
    const __m128d folded = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    alignas(16) double parts[2];
    _mm_store_pd(parts, folded);
    Complex sum(parts[0], parts[1]);
    if (k < n) {
        sum += scalar::dot_reversed(a + k, b_last - k, n - k);
    }
    return sum;
}

void scale(Complex* x, double s, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        _mm256_storeu_pd(as_doubles(x + i), _mm256_mul_pd(_mm256_loadu_pd(as_doubles(x + i)), vs));
    }
    if (i < n) {
        scalar::scale(x + i, s, n - i);
    }
}

} // namespace gapfill::kernels::avx2
