#include "gapfill/spectral_core.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gapfill/kernels.hpp"

namespace gapfill {
namespace {

constexpr std::size_t kDirectLimit = 32;

void conjugate(std::span<Complex> data) {
    for (Complex& z : data) {
        z = std::conj(z);
    }
}

void require_same_length(std::span<const Complex> a, std::span<const Complex> b, const char* what) {
    require_valid(a, what);
    require_valid(b, what);
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                    ")");
    }
}

} // namespace

Complex unit_root(long long k, std::size_t n) {
    const auto nn = static_cast<long long>(n);
    long long r = k % nn;
    if (r < 0) {
        r += nn;
    }
    // Fold into (-n/2, n/2] so the argument passed to sin/cos is as small as possible.
    if (2 * r > nn) {
        r -= nn;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) {
        throw std::invalid_argument("FftPlan: length must be positive");
    }
    if (std::has_single_bit(n)) {
        kind_ = Kind::radix2;
        if (n > 1) {
            stage_twiddles_.resize(n - 1);
            for (std::size_t half = 1; half < n; half *= 2) {
                for (std::size_t k = 0; k < half; ++k) {
                    stage_twiddles_[half - 1 + k] =
                        unit_root(-static_cast<long long>(k), 2 * half);
                }
            }
        }
        const int bits = std::countr_zero(n);
        bit_reverse_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (int b = 0; b < bits; ++b) {
                r |= ((i >> b) & 1U) << (bits - 1 - b);
            }
            bit_reverse_[i] = r;
        }
    } else if (n < kDirectLimit) {
        kind_ = Kind::direct;
        roots_.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            roots_[k] = unit_root(-static_cast<long long>(k), n);
        }
    } else {
        kind_ = Kind::bluestein;
        const std::size_t m = std::bit_ceil(2 * n - 1);
        inner_ = fft_plan(m);
        chirp_.resize(n);
        const auto two_n = static_cast<unsigned long long>(2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            // e^{-j pi k^2 / n} = e^{-j 2 pi (k^2 mod 2n) / (2n)}
            const unsigned long long k2 = (static_cast<unsigned long long>(k) * k) % two_n;
            chirp_[k] = unit_root(-static_cast<long long>(k2), 2 * n);
        }
        chirp_spectrum_.assign(m, Complex{});
        chirp_spectrum_[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n; ++k) {
            chirp_spectrum_[k] = std::conj(chirp_[k]);
            chirp_spectrum_[m - k] = std::conj(chirp_[k]);
        }
        inner_->forward(chirp_spectrum_);
        // Fold the inner inverse transform's 1/m into the filter.
        kernels::active().scale(chirp_spectrum_.data(), 1.0 / static_cast<double>(m), m);
    }
}

void FftPlan::forward(std::span<Complex> data) const {
    if (data.size() != n_) {
        throw std::invalid_argument("FftPlan: buffer length does not match plan");
    }
    switch (kind_) {
    case Kind::radix2:
        radix2_forward(data);
        break;
    case Kind::direct:
        direct_forward(data);
        break;
    case Kind::bluestein:
        bluestein_forward(data);
        break;
    }
}

void FftPlan::backward(std::span<Complex> data) const {
    conjugate(data);
    forward(data);
    conjugate(data);
}

void FftPlan::radix2_forward(std::span<Complex> data) const {
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t r = bit_reverse_[i];
        if (i < r) {
            std::swap(data[i], data[r]);
        }
    }
    const auto& k = kernels::active();
    for (std::size_t half = 1; half < n_; half *= 2) {
        const Complex* tw = stage_twiddles_.data() + (half - 1);
        for (std::size_t start = 0; start < n_; start += 2 * half) {
            k.butterfly(data.data() + start, data.data() + start + half, tw, half);
        }
    }
}

void FftPlan::direct_forward(std::span<Complex> data) const {
    ComplexVector out(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        Complex acc{};
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            acc += data[i] * roots_[idx];
            idx += k;
            if (idx >= n_) {
                idx -= n_;
            }
        }
        out[k] = acc;
    }
    std::copy(out.begin(), out.end(), data.begin());
}

void FftPlan::bluestein_forward(std::span<Complex> data) const {
    const auto& k = kernels::active();
    const std::size_t m = inner_->size();
    ComplexVector work(m);
    k.multiply(data.data(), chirp_.data(), work.data(), n_);
    inner_->forward(work);
    k.multiply(work.data(), chirp_spectrum_.data(), work.data(), m);
    inner_->backward(work);
    k.multiply(work.data(), chirp_.data(), data.data(), n_);
}

std::shared_ptr<const FftPlan> fft_plan(std::size_t n) {
    static std::shared_mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const FftPlan>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    // Built outside the lock: Bluestein plans request their inner plan recursively.
    auto plan = std::make_shared<const FftPlan>(n);
    std::unique_lock lock(mutex);
    return cache.try_emplace(n, std::move(plan)).first->second;
}

ComplexVector dft(std::span<const Complex> v) {
    require_valid(v, "dft");
    ComplexVector out(v.begin(), v.end());
    fft_plan(out.size())->forward(out);
    return out;
}

ComplexVector idft(std::span<const Complex> v) {
    require_valid(v, "idft");
    ComplexVector out(v.begin(), v.end());
    fft_plan(out.size())->backward(out);
    kernels::active().scale(out.data(), 1.0 / static_cast<double>(out.size()), out.size());
    return out;
}

ComplexVector cyclic_convolve(std::span<const Complex> a, std::span<const Complex> b) {
    require_same_length(a, b, "cyclic_convolve");
    ComplexVector fa = dft(a);
    const ComplexVector fb = dft(b);
    kernels::active().multiply(fa.data(), fb.data(), fa.data(), fa.size());
    return idft(fa);
}

ComplexVector cyclic_convolve_direct(std::span<const Complex> a, std::span<const Complex> b) {
    require_same_length(a, b, "cyclic_convolve_direct");
    const auto& k = kernels::active();
    const std::size_t n = a.size();
    ComplexVector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        // p <= i pairs with b[i-p]; p > i wraps to b[n+i-p].
        Complex acc = k.dot_reversed(a.data(), b.data() + i, i + 1);
        if (i + 1 < n) {
            acc += k.dot_reversed(a.data() + i + 1, b.data() + n - 1, n - 1 - i);
        }
        out[i] = acc;
    }
    return out;
}

ComplexVector spectral_derivative(std::span<const Complex> v) {
    ComplexVector spectrum = dft(v);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(spectrum.size());
    kernels::active().ramp_multiply(spectrum.data(), step, spectrum.data(), spectrum.size());
    return idft(spectrum);
}

TrigPolynomial::TrigPolynomial(ComplexVector coefficients, std::size_t period)
    : coefficients_(std::move(coefficients)), period_(period) {
    require_valid(coefficients_, "TrigPolynomial");
    if (period_ < coefficients_.size()) {
        throw std::invalid_argument("TrigPolynomial: period " + std::to_string(period_) +
                                    " is smaller than the coefficient count " +
                                    std::to_string(coefficients_.size()));
    }
}

Complex eval_trig(const TrigPolynomial& poly, double t) {
    const double n = static_cast<double>(poly.period());
    const double t_red = std::fmod(t, n);
    Complex acc{};
    const auto& c = poly.coefficients();
    for (std::size_t p = 0; p < c.size(); ++p) {
        // p*t mod N keeps the phase argument within one period.
        const double phase = std::fmod(static_cast<double>(p) * t_red, n);
        const double angle = 2.0 * std::numbers::pi * phase / n;
        acc += c[p] * Complex(std::cos(angle), std::sin(angle));
    }
    return acc;
}

} // namespace gapfill
