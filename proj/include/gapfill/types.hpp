#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gapfill {

using Complex = std::complex<double>;

/// Sample or coefficient vector. Every public operation expects a non-empty,
/// all-finite vector and returns one.
using ComplexVector = std::vector<Complex>;

/// Raised when a recovery pipeline detects that one of its own intermediate
/// results is inconsistent (e.g. a non-monic erasure polynomial).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline bool all_finite(std::span<const Complex> v) {
    for (const Complex& z : v) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return false;
        }
    }
    return true;
}

/// Throws std::invalid_argument if `v` is empty or holds a NaN/Inf.
inline void require_valid(std::span<const Complex> v, const char* what) {
    if (v.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty input");
    }
    if (!all_finite(v)) {
        throw std::invalid_argument(std::string(what) + ": non-finite component");
    }
}

} // namespace gapfill
