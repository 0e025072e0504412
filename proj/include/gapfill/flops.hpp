#pragma once

// Analytic flop-count model. Costs per primitive follow a fixed convention
// (complex multiply = 6, size-N FFT = 5 N log2 N, ...); log2 N is taken as a
// real number so non-power-of-two sizes give smooth curves.

#include <cstddef>
#include <string_view>
#include <vector>

namespace gapfill::flops {

struct FlopModel {
    static constexpr double real_add = 1.0;
    static constexpr double complex_add = 2.0;
    static constexpr double real_mul = 1.0;
    static constexpr double complex_mul = 6.0;
    static constexpr double complex_exp = 7.0;
    static double fft_of(double n);
};

enum class CostMethod { ber, prop_a, prop_b, prop_no_weights, zp_fft };

std::string_view to_string(CostMethod m);
CostMethod cost_method_from_string(std::string_view name);

struct CostReport {
    CostMethod method;
    std::size_t n_total;
    std::size_t n_known;
    double flops;
};

/// BER cost broken down by step.
struct BerBreakdown {
    double phi_samples;       // erasure polynomial on J by direct product
    double phi_transform;     // DFT of phi samples
    double known_transform;   // DFT of the zero-filled known samples
    double recursion;         // coefficient recursion
    double inverse_transform; // final IDFT
    double total() const;
};

/// Proposed-method cost broken down by step.
struct ProposedBreakdown {
    double beta;          // 1_{J^c} (*) alpha (FFT route or direct sum)
    double phi_weights;   // exponentials for phi(n), n in J
    double derivative;    // DFT, ramp weighting, IDFT
    double inv_dphi;      // exponentials for 1/phi'(n) and the final product
    double total() const;
};

enum class Variant { a, b, no_weights };

BerBreakdown ber_breakdown(std::size_t n, std::size_t p);
/// 18P(N-P) - 12P + 3 + 15 N log2 N.
double ber_flops(std::size_t n, std::size_t p);

ProposedBreakdown proposed_breakdown(std::size_t n, std::size_t p, Variant v);
/// Variant a: 20 N log2 N + 32 N - 2P - 10.
double proposed_flops(std::size_t n, std::size_t p, Variant v);

/// Zero-padding FFT interpolation on a regular subgrid: size-P forward
/// transform, size-N inverse, one complex scaling pass. Requires P | N.
double zp_fft_flops(std::size_t n, std::size_t p);

double flops_for(CostMethod m, std::size_t n, std::size_t p);

struct Crossover {
    std::size_t low_p;    // last P of the leading run where BER is cheaper (0 if none)
    std::size_t high_p;   // first P of the trailing run where BER is cheaper (N if none)
    double max_ratio;     // max over P of ber / prop_a
    std::size_t argmax_p;
};

/// Scans P in [1, N-1]. Requires N >= 16.
Crossover crossover_scan(std::size_t n);

} // namespace gapfill::flops
