#pragma once

// Missing-sample solvers for s(t) = sum_{p<P} S_p e^{j2pi pt/N} given s(n), n in J:
//   - proposed: derivative of s(t)phi(t) via one DFT/IDFT pair, divided by phi'
//   - BER: burst-error-recovery recursion on the Fourier coefficients
//   - pinv: truncated-SVD solve of the P x P Vandermonde-type system

#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "gapfill/erasure.hpp"
#include "gapfill/types.hpp"

namespace gapfill {

enum class Method { proposed, ber, pinv };

std::string_view to_string(Method m);
/// Accepts "proposed", "ber", "pinv"; throws std::invalid_argument otherwise.
Method method_from_string(std::string_view name);

/// Values s(n) for n in J, stored in the order of grid.known().
class KnownSamples {
public:
    KnownSamples(GridPartition grid, ComplexVector values);

    /// Builds the grid from (index, value) pairs on a period of length n.
    static KnownSamples from_pairs(std::size_t n,
                                   std::span<const std::pair<std::size_t, Complex>> samples);
    /// Takes the samples on J from a full-length vector.
    static KnownSamples from_full(const GridPartition& grid, std::span<const Complex> full);

    const GridPartition& grid() const noexcept { return grid_; }
    const ComplexVector& values() const noexcept { return values_; }

    /// Zero-filled length-N vector holding the known values on J.
    ComplexVector zero_filled() const;

private:
    GridPartition grid_;
    ComplexVector values_;
};

struct RecoveryResult {
    ComplexVector full_samples;
    std::optional<ComplexVector> coefficients;
    Method method = Method::proposed;
};

RecoveryResult recover_proposed(const KnownSamples& known, const ErasureWeights& weights);
/// Builds the weights with erasure_weights_fast first.
RecoveryResult recover_proposed(const KnownSamples& known);

/// Throws ConsistencyError when the erasure polynomial computed from its
/// samples is not monic to within 1e-6.
RecoveryResult recover_ber(const KnownSamples& known);

RecoveryResult recover_pinv(const KnownSamples& known);

RecoveryResult recover(const KnownSamples& known, Method method);

/// Smallest divisor Q of N with Q >= P.
std::size_t smallest_divisor_at_least(std::size_t n, std::size_t p);

/// S_p, p < P, from all N samples: decimate to the Q-point subgrid, dft / Q.
ComplexVector extract_coefficients(std::span<const Complex> full_samples, std::size_t p);

namespace detail {

/// Intermediate state of the BER recursion, exposed for tests.
struct BerTrace {
    ComplexVector phi_coefficients;    // phi_p, p in I_N
    ComplexVector known_coefficients;  // S_{J,p}
    ComplexVector missing_seed;        // S_{J^c,p} after the seeding step
    ComplexVector missing_coefficients; // S_{J^c,p} after the recursion
};

BerTrace ber_trace(const KnownSamples& known);

} // namespace detail

} // namespace gapfill
