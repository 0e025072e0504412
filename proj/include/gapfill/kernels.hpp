#pragma once

// Data-parallel inner loops shared by the transforms and solvers.
//
// Every kernel has a portable scalar reference in kernels/scalar.cpp. On x86-64
// builds an AVX2/FMA variant is compiled into its own translation unit and is
// picked at startup when the CPU reports both extensions. Results of the two
// variants agree to rounding (FMA contraction changes the last bits), which the
// kernel equivalence tests pin down.

#include <complex>
#include <cstddef>
#include <string_view>

namespace gapfill::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
    Isa isa;
    std::string_view name;

    /// out[i] = a[i] * b[i]. `out` may alias `a` or `b`.
    void (*multiply)(const Complex* a, const Complex* b, Complex* out, std::size_t n);

    /// out[p] = in[p] * (j * step * p). `out` may alias `in`.
    void (*ramp_multiply)(const Complex* in, double step, Complex* out, std::size_t n);

    /// One radix-2 stage on a block: v = hi[k]*tw[k]; hi[k] = lo[k]-v; lo[k] += v.
    void (*butterfly)(Complex* lo, Complex* hi, const Complex* tw, std::size_t half);

    /// Sum_{k<n} a[k] * b_last[-k], i.e. `b` walked backwards from `b_last`.
    Complex (*dot_reversed)(const Complex* a, const Complex* b_last, std::size_t n);

    /// x[i] *= s.
    void (*scale)(Complex* x, double s, std::size_t n);
};

/// Table chosen at first use: AVX2 if compiled in and supported, else scalar.
/// Setting the environment variable GAPFILL_KERNELS=scalar forces the scalar
/// table.
const KernelTable& active();

/// Scalar reference table; always available.
const KernelTable& scalar_table();

/// Returns the table for `isa`, or nullptr when it is not compiled in or the
/// running CPU lacks it.
const KernelTable* table_for(Isa isa);

} // namespace gapfill::kernels
