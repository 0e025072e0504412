#include "gapfill/recovery.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "gapfill/kernels.hpp"
#include "gapfill/spectral_core.hpp"

namespace gapfill {
namespace {

RecoveryResult passthrough(const KnownSamples& known, Method method) {
    return {known.zero_filled(), std::nullopt, method};
}

} // namespace

std::string_view to_string(Method m) {
    switch (m) {
    case Method::proposed:
        return "proposed";
    case Method::ber:
        return "ber";
    case Method::pinv:
        return "pinv";
    }
    return "unknown";
}

Method method_from_string(std::string_view name) {
    if (name == "proposed") {
        return Method::proposed;
    }
    if (name == "ber") {
        return Method::ber;
    }
    if (name == "pinv") {
        return Method::pinv;
    }
    throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

// KnownSamples ----------------------------------------------------------------

KnownSamples::KnownSamples(GridPartition grid, ComplexVector values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.known_count()) {
        throw std::invalid_argument("KnownSamples: " + std::to_string(values_.size()) +
                                    " values for " + std::to_string(grid_.known_count()) +
                                    " known indices");
    }
    require_valid(values_, "KnownSamples");
}

KnownSamples KnownSamples::from_pairs(std::size_t n,
                                      std::span<const std::pair<std::size_t, Complex>> samples) {
    std::vector<std::size_t> indices;
    indices.reserve(samples.size());
    for (const auto& [idx, value] : samples) {
        indices.push_back(idx);
    }
    GridPartition grid = GridPartition::from_known(n, indices);
    ComplexVector full(n);
    for (const auto& [idx, value] : samples) {
        full[idx] = value;
    }
    return from_full(grid, full);
}

KnownSamples KnownSamples::from_full(const GridPartition& grid, std::span<const Complex> full) {
    if (full.size() != grid.size()) {
        throw std::invalid_argument("KnownSamples: sample vector length does not match N");
    }
    ComplexVector values;
    values.reserve(grid.known_count());
    for (std::size_t idx : grid.known()) {
        values.push_back(full[idx]);
    }
    return KnownSamples(grid, std::move(values));
}

ComplexVector KnownSamples::zero_filled() const {
    ComplexVector out(grid_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out[grid_.known()[i]] = values_[i];
    }
    return out;
}

// Proposed --------------------------------------------------------------------

RecoveryResult recover_proposed(const KnownSamples& known, const ErasureWeights& weights) {
    const GridPartition& grid = known.grid();
    if (!(weights.grid() == grid)) {
        throw std::invalid_argument("recover_proposed: weights were built for a different grid");
    }
    if (grid.missing_count() == 0) {
        return passthrough(known, Method::proposed);
    }
    ComplexVector weighted(grid.size());
    const ComplexVector& phi = weights.phi_on_known();
    for (std::size_t i = 0; i < grid.known_count(); ++i) {
        weighted[grid.known()[i]] = known.values()[i] * phi[i];
    }
    const ComplexVector derivative = spectral_derivative(weighted);

    RecoveryResult result = passthrough(known, Method::proposed);
    const ComplexVector& inv_dphi = weights.inv_phi_prime_on_missing();
    for (std::size_t i = 0; i < grid.missing_count(); ++i) {
        const std::size_t idx = grid.missing()[i];
        result.full_samples[idx] = derivative[idx] * inv_dphi[i];
    }
    return result;
}

RecoveryResult recover_proposed(const KnownSamples& known) {
    return recover_proposed(known, erasure_weights_fast(known.grid()));
}

// BER -------------------------------------------------------------------------

namespace detail {

BerTrace ber_trace(const KnownSamples& known) {
    const GridPartition& grid = known.grid();
    const std::size_t n = grid.size();
    const std::size_t p = grid.known_count();
    const std::size_t degree = n - p;
    const double inv_n = 1.0 / static_cast<double>(n);
    const auto& k = kernels::active();

    BerTrace trace;

    ComplexVector phi_samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        phi_samples[i] = grid.is_missing(i) ? Complex{} : erasure_phi_direct(grid, i);
    }
    trace.phi_coefficients = dft(phi_samples);
    k.scale(trace.phi_coefficients.data(), inv_n, n);
    const Complex leading = trace.phi_coefficients[degree];
    if (std::abs(leading - Complex(1.0, 0.0)) > 1e-6) {
        throw ConsistencyError("recover_ber: erasure polynomial is not monic (phi_" +
                               std::to_string(degree) + " = " + std::to_string(leading.real()) +
                               (leading.imag() < 0 ? " - j" : " + j") +
                               std::to_string(std::abs(leading.imag())) + ")");
    }

    trace.known_coefficients = dft(known.zero_filled());
    k.scale(trace.known_coefficients.data(), inv_n, n);

    ComplexVector s(n);
    for (std::size_t i = p; i < n; ++i) {
        s[i] = -trace.known_coefficients[i];
    }
    trace.missing_seed = s;

    // S_q = -sum_{m=1}^{N-P} phi_{N-P-m} S_{q+m}, q = P-1 .. 0. The window
    // q+1 .. q+N-P never wraps for q < P.
    if (degree > 0) {
        const Complex* phi_last = trace.phi_coefficients.data() + (degree - 1);
        for (std::size_t q = p; q-- > 0;) {
            s[q] = -k.dot_reversed(s.data() + q + 1, phi_last, degree);
        }
    }
    trace.missing_coefficients = std::move(s);
    return trace;
}

} // namespace detail

RecoveryResult recover_ber(const KnownSamples& known) {
    const GridPartition& grid = known.grid();
    if (grid.missing_count() == 0) {
        return passthrough(known, Method::ber);
    }
    detail::BerTrace trace = detail::ber_trace(known);
    // N * idft, i.e. the unscaled inverse transform.
    ComplexVector missing_signal = std::move(trace.missing_coefficients);
    fft_plan(grid.size())->backward(missing_signal);

    RecoveryResult result = passthrough(known, Method::ber);
    for (std::size_t idx : grid.missing()) {
        result.full_samples[idx] = missing_signal[idx];
    }
    return result;
}

// Pseudo-inverse --------------------------------------------------------------

RecoveryResult recover_pinv(const KnownSamples& known) {
    const GridPartition& grid = known.grid();
    const std::size_t n = grid.size();
    const std::size_t p = grid.known_count();
    const auto rows = static_cast<Eigen::Index>(p);

    Eigen::MatrixXcd system(rows, rows);
    Eigen::VectorXcd rhs(rows);
    for (std::size_t r = 0; r < p; ++r) {
        const auto nr = static_cast<unsigned long long>(grid.known()[r]);
        for (std::size_t c = 0; c < p; ++c) {
            system(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                unit_root(static_cast<long long>((nr * c) % n), n);
        }
        rhs(static_cast<Eigen::Index>(r)) = known.values()[r];
    }

    Eigen::BDCSVD<Eigen::MatrixXcd> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(std::numeric_limits<double>::epsilon() * static_cast<double>(p));
    const Eigen::VectorXcd solution = svd.solve(rhs);

    ComplexVector coefficients(solution.data(), solution.data() + solution.size());
    const TrigPolynomial poly(coefficients, n);

    RecoveryResult result = passthrough(known, Method::pinv);
    for (std::size_t idx : grid.missing()) {
        result.full_samples[idx] = eval_trig(poly, static_cast<double>(idx));
    }
    result.coefficients = std::move(coefficients);
    return result;
}

RecoveryResult recover(const KnownSamples& known, Method method) {
    switch (method) {
    case Method::proposed:
        return recover_proposed(known);
    case Method::ber:
        return recover_ber(known);
    case Method::pinv:
        return recover_pinv(known);
    }
    throw std::invalid_argument("recover: unknown method");
}

// Coefficients ----------------------------------------------------------------

std::size_t smallest_divisor_at_least(std::size_t n, std::size_t p) {
    if (p == 0 || p > n) {
        throw std::invalid_argument("smallest_divisor_at_least: need 1 <= P <= N (P=" +
                                    std::to_string(p) + ", N=" + std::to_string(n) + ")");
    }
    for (std::size_t q = p; q < n; ++q) {
        if (n % q == 0) {
            return q;
        }
    }
    return n;
}

ComplexVector extract_coefficients(std::span<const Complex> full_samples, std::size_t p) {
    require_valid(full_samples, "extract_coefficients");
    const std::size_t n = full_samples.size();
    const std::size_t q = smallest_divisor_at_least(n, p);
    const std::size_t stride = n / q;
    ComplexVector decimated(q);
    for (std::size_t i = 0; i < q; ++i) {
        decimated[i] = full_samples[i * stride];
    }
    ComplexVector spectrum = dft(decimated);
    spectrum.resize(p);
    kernels::active().scale(spectrum.data(), 1.0 / static_cast<double>(q), p);
    return spectrum;
}

} // namespace gapfill
