#include "gapfill/erasure.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gapfill/kernels.hpp"
#include "gapfill/spectral_core.hpp"

namespace gapfill {
namespace {

constexpr double kPi = std::numbers::pi;

void check_size(std::size_t n, const char* what) {
    if (n == 0) {
        throw std::invalid_argument(std::string(what) + ": N must be positive");
    }
}

void check_index(std::size_t index, std::size_t n, const char* what) {
    if (index >= n) {
        throw std::invalid_argument(std::string(what) + ": index " + std::to_string(index) +
                                    " outside [0, " + std::to_string(n) + ")");
    }
}

Complex on_circle(double t, std::size_t n) {
    const double nn = static_cast<double>(n);
    const double angle = 2.0 * kPi * std::fmod(t, nn) / nn;
    return {std::cos(angle), std::sin(angle)};
}

std::vector<Complex> missing_roots(const GridPartition& grid) {
    std::vector<Complex> roots;
    roots.reserve(grid.missing_count());
    for (std::size_t k : grid.missing()) {
        roots.push_back(unit_root(static_cast<long long>(k), grid.size()));
    }
    return roots;
}

Complex product_of_differences(Complex z, const std::vector<Complex>& roots) {
    Complex acc(1.0, 0.0);
    for (const Complex& w : roots) {
        acc *= (z - w);
    }
    return acc;
}

Complex derivative_of_product(Complex z, const std::vector<Complex>& roots, std::size_t n) {
    const std::size_t m = roots.size();
    if (m == 0) {
        return {};
    }
    // sum_k prod_{i != k} (z - w_i) through prefix and suffix products.
    std::vector<Complex> suffix(m + 1, Complex(1.0, 0.0));
    for (std::size_t i = m; i-- > 0;) {
        suffix[i] = suffix[i + 1] * (z - roots[i]);
    }
    Complex prefix(1.0, 0.0);
    Complex sum{};
    for (std::size_t k = 0; k < m; ++k) {
        sum += prefix * suffix[k + 1];
        prefix *= (z - roots[k]);
    }
    return Complex(0.0, 2.0 * kPi / static_cast<double>(n)) * z * sum;
}

bool usable(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) && z != Complex{};
}

} // namespace

// GridPartition ---------------------------------------------------------------

GridPartition::GridPartition(std::vector<std::uint8_t> indicator)
    : indicator_(std::move(indicator)) {
    for (std::size_t i = 0; i < indicator_.size(); ++i) {
        (indicator_[i] ? missing_ : known_).push_back(i);
    }
    if (known_.empty()) {
        throw std::invalid_argument("GridPartition: at least one known sample is required");
    }
}

GridPartition GridPartition::from_known(std::size_t n, std::span<const std::size_t> known) {
    check_size(n, "GridPartition");
    std::vector<std::uint8_t> indicator(n, 1);
    for (std::size_t idx : known) {
        check_index(idx, n, "GridPartition");
        if (indicator[idx] == 0) {
            throw std::invalid_argument("GridPartition: duplicate known index " +
                                        std::to_string(idx));
        }
        indicator[idx] = 0;
    }
    return GridPartition(std::move(indicator));
}

GridPartition GridPartition::from_missing(std::size_t n, std::span<const std::size_t> missing) {
    check_size(n, "GridPartition");
    std::vector<std::uint8_t> indicator(n, 0);
    for (std::size_t idx : missing) {
        check_index(idx, n, "GridPartition");
        if (indicator[idx] != 0) {
            throw std::invalid_argument("GridPartition: duplicate missing index " +
                                        std::to_string(idx));
        }
        indicator[idx] = 1;
    }
    return GridPartition(std::move(indicator));
}

ComplexVector GridPartition::missing_indicator() const {
    ComplexVector out(indicator_.size());
    for (std::size_t i = 0; i < indicator_.size(); ++i) {
        out[i] = indicator_[i] ? 1.0 : 0.0;
    }
    return out;
}

// alpha / beta ----------------------------------------------------------------

AlphaTable build_alpha_table(std::size_t n) {
    check_size(n, "build_alpha_table");
    AlphaTable table;
    table.n = n;
    table.values.assign(n, Complex{});
    const double nn = static_cast<double>(n);
    for (std::size_t i = 1; i < n; ++i) {
        // 1 - e^{-jx} = 2 sin(x/2) e^{j(pi - x)/2}, x = 2 pi i / N in (0, 2pi).
        const std::size_t folded = std::min(i, n - i);
        const double modulus = 2.0 * std::sin(kPi * static_cast<double>(folded) / nn);
        const double arg = kPi * (nn - 2.0 * static_cast<double>(i)) / (2.0 * nn);
        table.values[i] = Complex(std::log(modulus), arg);
    }
    table.spectrum = dft(table.values);
    return table;
}

std::shared_ptr<const AlphaTable> alpha_table(std::size_t n) {
    static std::shared_mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const AlphaTable>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const AlphaTable>(build_alpha_table(n));
    std::unique_lock lock(mutex);
    return cache.try_emplace(n, std::move(built)).first->second;
}

ComplexVector beta(const GridPartition& grid, const AlphaTable& alpha) {
    if (grid.size() != alpha.n || alpha.spectrum.size() != alpha.n) {
        throw std::invalid_argument("beta: grid has N=" + std::to_string(grid.size()) +
                                    " but alpha table was built for N=" +
                                    std::to_string(alpha.n));
    }
    ComplexVector spectrum = dft(grid.missing_indicator());
    kernels::active().multiply(spectrum.data(), alpha.spectrum.data(), spectrum.data(),
                               spectrum.size());
    return idft(spectrum);
}

// Weights ---------------------------------------------------------------------

ErasureWeights::ErasureWeights(GridPartition grid, ComplexVector phi_on_known,
                               ComplexVector inv_phi_prime_on_missing)
    : grid_(std::move(grid)), phi_(std::move(phi_on_known)),
      inv_dphi_(std::move(inv_phi_prime_on_missing)) {
    if (phi_.size() != grid_.known_count() || inv_dphi_.size() != grid_.missing_count()) {
        throw std::invalid_argument("ErasureWeights: weight counts do not match the grid");
    }
    for (const Complex& z : phi_) {
        if (!usable(z)) {
            throw std::invalid_argument("ErasureWeights: phi must be finite and non-zero on J");
        }
    }
    for (const Complex& z : inv_dphi_) {
        if (!usable(z)) {
            throw std::invalid_argument(
                "ErasureWeights: 1/phi' must be finite and non-zero on J^c");
        }
    }
}

ErasureWeights erasure_weights_fast(const GridPartition& grid, const AlphaTable& alpha) {
    const ComplexVector b = beta(grid, alpha);
    const std::size_t n = grid.size();
    const std::size_t p = grid.known_count();
    const double nn = static_cast<double>(n);

    auto linear_phase = [&](std::size_t idx) {
        // 2 pi (idx * P mod N) / N
        const auto r = static_cast<double>((static_cast<unsigned long long>(idx) * p) % n);
        return 2.0 * kPi * r / nn;
    };

    ComplexVector phi;
    phi.reserve(grid.known_count());
    for (std::size_t idx : grid.known()) {
        const Complex z = std::polar(std::exp(b[idx].real()), b[idx].imag() - linear_phase(idx));
        if (!usable(z)) {
            throw std::overflow_error("erasure_weights_fast: phi(" + std::to_string(idx) +
                                      ") is not representable");
        }
        phi.push_back(z);
    }

    ComplexVector inv_dphi;
    inv_dphi.reserve(grid.missing_count());
    const double gain = nn / (2.0 * kPi);
    for (std::size_t idx : grid.missing()) {
        // N/(j 2 pi) = (N / 2 pi) e^{-j pi/2}
        const Complex z = std::polar(gain * std::exp(-b[idx].real()),
                                     linear_phase(idx) - b[idx].imag() - kPi / 2.0);
        if (!usable(z)) {
            throw std::overflow_error("erasure_weights_fast: 1/phi'(" + std::to_string(idx) +
                                      ") is not representable");
        }
        inv_dphi.push_back(z);
    }
    return ErasureWeights(grid, std::move(phi), std::move(inv_dphi));
}

ErasureWeights erasure_weights_fast(const GridPartition& grid) {
    return erasure_weights_fast(grid, *alpha_table(grid.size()));
}

// Direct products -------------------------------------------------------------

Complex erasure_phi_direct(const GridPartition& grid, std::size_t n) {
    check_index(n, grid.size(), "erasure_phi_direct");
    return product_of_differences(unit_root(static_cast<long long>(n), grid.size()),
                                  missing_roots(grid));
}

Complex erasure_phi_at(const GridPartition& grid, double t) {
    return product_of_differences(on_circle(t, grid.size()), missing_roots(grid));
}

Complex erasure_phi_prime_direct(const GridPartition& grid, std::size_t n) {
    check_index(n, grid.size(), "erasure_phi_prime_direct");
    return derivative_of_product(unit_root(static_cast<long long>(n), grid.size()),
                                 missing_roots(grid), grid.size());
}

Complex erasure_phi_prime_at(const GridPartition& grid, double t) {
    return derivative_of_product(on_circle(t, grid.size()), missing_roots(grid), grid.size());
}

} // namespace gapfill
