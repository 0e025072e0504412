#pragma once

// Erasure polynomial phi(t) = prod_{k in J^c} (e^{j2pi t/N} - e^{j2pi k/N}) and
// the weights phi(n), n in J, and 1/phi'(n), n in J^c, that the FFT recovery
// needs. The fast route obtains both from beta = 1_{J^c} (*) alpha, a single
// cyclic convolution against a per-N table; the direct products are kept as
// reference implementations.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gapfill/types.hpp"

namespace gapfill {

/// Split of I_N = {0..N-1} into known indices J and missing indices J^c.
class GridPartition {
public:
    /// Both factories reject out-of-range and duplicate indices and require
    /// |J| >= 1. Input order does not matter; the stored sets are sorted.
    static GridPartition from_known(std::size_t n, std::span<const std::size_t> known);
    static GridPartition from_missing(std::size_t n, std::span<const std::size_t> missing);

    std::size_t size() const noexcept { return indicator_.size(); }
    std::size_t known_count() const noexcept { return known_.size(); }
    std::size_t missing_count() const noexcept { return missing_.size(); }
    const std::vector<std::size_t>& known() const noexcept { return known_; }
    const std::vector<std::size_t>& missing() const noexcept { return missing_; }
    bool is_missing(std::size_t n) const { return indicator_.at(n) != 0; }

    /// 1_{J^c} as a complex sequence of length N.
    ComplexVector missing_indicator() const;

    friend bool operator==(const GridPartition&, const GridPartition&) = default;

private:
    GridPartition(std::vector<std::uint8_t> indicator);

    std::vector<std::uint8_t> indicator_; // 1 on J^c
    std::vector<std::size_t> known_;
    std::vector<std::size_t> missing_;
};

/// alpha(0) = 0, alpha(n) = log(1 - e^{-j2pi n/N}) (principal branch), and its
/// DFT. Depends only on N.
struct AlphaTable {
    std::size_t n = 0;
    ComplexVector values;
    ComplexVector spectrum;
};

AlphaTable build_alpha_table(std::size_t n);

/// Process-wide cache keyed by N. Concurrent callers may both build a missing
/// table; one of the results is kept.
std::shared_ptr<const AlphaTable> alpha_table(std::size_t n);

/// beta = 1_{J^c} (*) alpha over period N, using the cached alpha spectrum.
ComplexVector beta(const GridPartition& grid, const AlphaTable& alpha);

/// phi(n) on J and 1/phi'(n) on J^c, stored in the order of grid.known() and
/// grid.missing().
class ErasureWeights {
public:
    ErasureWeights(GridPartition grid, ComplexVector phi_on_known,
                   ComplexVector inv_phi_prime_on_missing);

    const GridPartition& grid() const noexcept { return grid_; }
    const ComplexVector& phi_on_known() const noexcept { return phi_; }
    const ComplexVector& inv_phi_prime_on_missing() const noexcept { return inv_dphi_; }

private:
    GridPartition grid_;
    ComplexVector phi_;
    ComplexVector inv_dphi_;
};

/// phi(n) = exp(-j2pi nP/N + beta(n)), n in J;
/// 1/phi'(n) = N/(j2pi) exp(j2pi nP/N - beta(n)), n in J^c.
/// Throws std::overflow_error if an exponential leaves the double range.
ErasureWeights erasure_weights_fast(const GridPartition& grid, const AlphaTable& alpha);
ErasureWeights erasure_weights_fast(const GridPartition& grid);

/// Direct product phi(n); exactly 0 on J^c. O(N-P).
Complex erasure_phi_direct(const GridPartition& grid, std::size_t n);
/// Direct product at real t (periodic with period N).
Complex erasure_phi_at(const GridPartition& grid, double t);

/// phi'(n) from the derivative of the product (sum of leave-one-out products).
Complex erasure_phi_prime_direct(const GridPartition& grid, std::size_t n);
Complex erasure_phi_prime_at(const GridPartition& grid, double t);

} // namespace gapfill
