#include "gapfill/selfcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gapfill/erasure.hpp"
#include "gapfill/experiments.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/spectral_core.hpp"

namespace gapfill {
namespace {

using experiments::Rng;

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double max_abs(const ComplexVector& a) {
    double worst = 0.0;
    for (const Complex& z : a) {
        worst = std::max(worst, std::abs(z));
    }
    return worst;
}

ComplexVector random_vector(std::size_t n, Rng& rng) {
    ComplexVector v(n);
    for (Complex& z : v) {
        const double re = rng.uniform_pm1();
        z = Complex(re, rng.uniform_pm1());
    }
    return v;
}

GridPartition random_grid(std::size_t n, Rng& rng) {
    std::vector<std::size_t> known;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform_below(2) == 0) {
            known.push_back(i);
        }
    }
    if (known.empty()) {
        known.push_back(rng.uniform_below(n));
    }
    return GridPartition::from_known(n, known);
}

CheckOutcome alpha_sum() {
    double worst = 0.0;
    for (std::size_t n = 1; n <= 512; ++n) {
        const AlphaTable table = build_alpha_table(n);
        Complex sum{};
        for (const Complex& a : table.values) {
            sum += a;
        }
        worst = std::max(worst, std::abs(sum - std::log(static_cast<double>(n))) /
                                    static_cast<double>(n));
    }
    return {"alpha sum equals log N (N = 1..512)", worst <= 1e-12,
            "max |sum - log N| / N = " + sci(worst)};
}

CheckOutcome round_trip() {
    Rng rng(0x5eed);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        const ComplexVector v = random_vector(n, rng);
        worst = std::max(worst, max_abs_diff(idft(dft(v)), v) / max_abs(v));
    }
    return {"idft(dft(v)) = v (N = 1..64)", worst <= 1e-12, "max rel error " + sci(worst)};
}

CheckOutcome convolution() {
    Rng rng(0xc0417);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 64; ++n) {
        const ComplexVector a = random_vector(n, rng);
        const ComplexVector b = random_vector(n, rng);
        const ComplexVector direct = cyclic_convolve_direct(a, b);
        worst = std::max(worst, max_abs_diff(cyclic_convolve(a, b), direct) / max_abs(direct));
    }
    return {"FFT convolution matches direct sum (N = 1..64)", worst <= 1e-11,
            "max rel error " + sci(worst)};
}

CheckOutcome product_identity() {
    Rng rng(0x9a9a);
    const std::size_t n = 48;
    const GridPartition grid = random_grid(n, rng);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) + 0.5;
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * t / static_cast<double>(n));
        Complex phi1(1.0, 0.0);
        for (std::size_t k : grid.known()) {
            phi1 *= z - unit_root(static_cast<long long>(k), n);
        }
        const Complex expected = std::polar(1.0, 2.0 * std::numbers::pi * t) - 1.0;
        worst = std::max(worst, std::abs(erasure_phi_at(grid, t) * phi1 - expected) /
                                    std::abs(expected));
    }
    return {"phi(t) phi_1(t) = e^{j2pi t} - 1 at half-integers (N = 48)", worst <= 1e-9,
            "max rel error " + sci(worst)};
}

CheckOutcome weights_agree() {
    Rng rng(0x7e1);
    double worst = 0.0;
    for (std::size_t n : {16U, 64U, 256U}) {
        const GridPartition grid = random_grid(n, rng);
        const ErasureWeights w = erasure_weights_fast(grid);
        for (std::size_t i = 0; i < grid.known_count(); ++i) {
            const Complex ref = erasure_phi_direct(grid, grid.known()[i]);
            worst = std::max(worst, std::abs(w.phi_on_known()[i] - ref) / std::abs(ref));
        }
        for (std::size_t i = 0; i < grid.missing_count(); ++i) {
            const Complex ref = 1.0 / erasure_phi_prime_direct(grid, grid.missing()[i]);
            worst = std::max(worst,
                             std::abs(w.inv_phi_prime_on_missing()[i] - ref) / std::abs(ref));
        }
    }
    return {"fast erasure weights match direct products", worst <= 1e-9,
            "max rel error " + sci(worst)};
}

CheckOutcome traced_recovery() {
    const Complex c(0.75, -0.5);
    const std::pair<std::size_t, Complex> sample{0, c};
    const KnownSamples known = KnownSamples::from_pairs(2, std::span(&sample, 1));
    double worst = 0.0;
    for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
        const RecoveryResult r = recover(known, m);
        worst = std::max({worst, std::abs(r.full_samples[0] - c), std::abs(r.full_samples[1] - c)});
    }
    return {"N = 2 constant signal recovered by every solver", worst <= 1e-12,
            "max error " + sci(worst)};
}

CheckOutcome passthrough() {
    Rng rng(0x1d);
    bool same = true;
    for (std::size_t n = 1; n <= 64; ++n) {
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) {
            all[i] = i;
        }
        const GridPartition grid = GridPartition::from_known(n, all);
        const ComplexVector v = random_vector(n, rng);
        const KnownSamples known = KnownSamples::from_full(grid, v);
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            same = same && recover(known, m).full_samples == v;
        }
    }
    return {"no missing samples: all solvers return the input (N = 1..64)", same,
            same ? "exact" : "mismatch"};
}

template <typename F>
CheckOutcome guarded(const char* name, F&& check) {
    try {
        return check();
    } catch (const std::exception& e) {
        return {name, false, std::string("threw: ") + e.what()};
    }
}

} // namespace

std::vector<CheckOutcome> run_selfcheck() {
    return {
        guarded("alpha sum", alpha_sum),
        guarded("round trip", round_trip),
        guarded("convolution", convolution),
        guarded("product identity", product_identity),
        guarded("weights", weights_agree),
        guarded("traced recovery", traced_recovery),
        guarded("passthrough", passthrough),
    };
}

} // namespace gapfill
