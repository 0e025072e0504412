#pragma once

// Transforms, cyclic convolution, spectral differentiation and trigonometric
// polynomial evaluation.
//
// Convention used throughout the library:
//   dft:  V_k = sum_n v_n e^{-j 2 pi n k / N}          (unscaled)
//   idft: v_n = (1/N) sum_k V_k e^{+j 2 pi n k / N}
// so the Fourier coefficients of a sampled element of F_N are dft(v) / N.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "gapfill/types.hpp"

namespace gapfill {

/// Precomputed tables for transforms of one length. Powers of two use an
/// iterative radix-2 transform, short odd lengths a direct O(N^2) sum and
/// everything else Bluestein's chirp-z algorithm on a power-of-two grid.
/// Immutable after construction.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    /// In-place unscaled forward transform of `data` (length size()).
    void forward(std::span<Complex> data) const;
    /// In-place unscaled inverse transform (no 1/N).
    void backward(std::span<Complex> data) const;

private:
    enum class Kind { radix2, direct, bluestein };

    void radix2_forward(std::span<Complex> data) const;
    void direct_forward(std::span<Complex> data) const;
    void bluestein_forward(std::span<Complex> data) const;

    std::size_t n_;
    Kind kind_;
    // radix2: per-stage twiddles concatenated (stage with half-length h starts at h-1).
    std::vector<Complex> stage_twiddles_;
    std::vector<std::size_t> bit_reverse_;
    // direct: e^{-j 2 pi k / N}, k in I_N.
    std::vector<Complex> roots_;
    // bluestein: chirp e^{-j pi k^2 / N} and the transformed conjugate chirp.
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_spectrum_;
    std::shared_ptr<const FftPlan> inner_;
};

/// Shared plan for length n; thread-safe lookup-or-build.
std::shared_ptr<const FftPlan> fft_plan(std::size_t n);

ComplexVector dft(std::span<const Complex> v);
ComplexVector idft(std::span<const Complex> v);

/// c_n = sum_p a_p b_{(n-p) mod N}, evaluated as idft(dft(a) . dft(b)).
ComplexVector cyclic_convolve(std::span<const Complex> a, std::span<const Complex> b);

/// Same contract as cyclic_convolve, by direct O(N^2) summation.
ComplexVector cyclic_convolve_direct(std::span<const Complex> a, std::span<const Complex> b);

/// Samples v'(n) of the derivative of the element of F_N whose samples are v:
/// idft(dft(v) . d) with d_p = j 2 pi p / N.
ComplexVector spectral_derivative(std::span<const Complex> v);

/// sum_{p<P} S_p e^{j 2 pi p t / N} with P <= N.
class TrigPolynomial {
public:
    TrigPolynomial(ComplexVector coefficients, std::size_t period);

    const ComplexVector& coefficients() const noexcept { return coefficients_; }
    std::size_t period() const noexcept { return period_; }
    std::size_t degree_bound() const noexcept { return coefficients_.size(); }

private:
    ComplexVector coefficients_;
    std::size_t period_;
};

/// Direct-summation evaluation; the ground truth used by tests and the
/// pseudo-inverse back-substitution.
Complex eval_trig(const TrigPolynomial& poly, double t);

/// e^{j 2 pi k / n} with k reduced mod n before the trig call.
Complex unit_root(long long k, std::size_t n);

} // namespace gapfill
