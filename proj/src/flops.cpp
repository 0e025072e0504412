#include "gapfill/flops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gapfill::flops {
namespace {

void check_np(std::size_t n, std::size_t p, const char* what) {
    if (n < 2 || p < 1 || p > n) {
        throw std::invalid_argument(std::string(what) + ": need N >= 2 and 1 <= P <= N (N=" +
                                    std::to_string(n) + ", P=" + std::to_string(p) + ")");
    }
}

} // namespace

double FlopModel::fft_of(double n) {
    return n <= 1.0 ? 0.0 : 5.0 * n * std::log2(n);
}

std::string_view to_string(CostMethod m) {
    switch (m) {
    case CostMethod::ber:
        return "ber";
    case CostMethod::prop_a:
        return "prop_a";
    case CostMethod::prop_b:
        return "prop_b";
    case CostMethod::prop_no_weights:
        return "prop_no_weights";
    case CostMethod::zp_fft:
        return "zp_fft";
    }
    return "unknown";
}

CostMethod cost_method_from_string(std::string_view name) {
    for (CostMethod m : {CostMethod::ber, CostMethod::prop_a, CostMethod::prop_b,
                         CostMethod::prop_no_weights, CostMethod::zp_fft}) {
        if (name == to_string(m)) {
            return m;
        }
    }
    throw std::invalid_argument("unknown cost method '" + std::string(name) + "'");
}

double BerBreakdown::total() const {
    return phi_samples + phi_transform + known_transform + recursion + inverse_transform;
}

double ProposedBreakdown::total() const {
    return beta + phi_weights + derivative + inv_dphi;
}

BerBreakdown ber_breakdown(std::size_t n, std::size_t p) {
    check_np(n, p, "ber_flops");
    const double nn = static_cast<double>(n);
    const double pp = static_cast<double>(p);
    const double fft = FlopModel::fft_of(nn);
    return {
        10.0 * pp * (nn - pp) - 11.0 * pp + 3.0,
        fft,
        fft,
        8.0 * pp * (nn - pp) - pp,
        fft,
    };
}

double ber_flops(std::size_t n, std::size_t p) {
    check_np(n, p, "ber_flops");
    const double nn = static_cast<double>(n);
    const double pp = static_cast<double>(p);
    return 18.0 * pp * (nn - pp) - 12.0 * pp + 3.0 + 15.0 * nn * std::log2(nn);
}

ProposedBreakdown proposed_breakdown(std::size_t n, std::size_t p, Variant v) {
    check_np(n, p, "proposed_flops");
    const double nn = static_cast<double>(n);
    const double pp = static_cast<double>(p);
    const double fft = FlopModel::fft_of(nn);

    ProposedBreakdown b{};
    switch (v) {
    case Variant::a:
        // two transforms plus N complex products and the sum over them
        b.beta = 2.0 * fft + 8.0 * nn - 1.0;
        b.phi_weights = 18.0 * pp - 3.0;
        break;
    case Variant::b:
        // direct circular sum: N-P complex additions per output, no products
        b.beta = FlopModel::complex_add * nn * (nn - pp);
        b.phi_weights = 18.0 * pp - 3.0;
        break;
    case Variant::no_weights:
        b.beta = 0.0;
        b.phi_weights = 0.0;
        break;
    default:
        throw std::invalid_argument("proposed_flops: unknown variant");
    }
    b.derivative = 2.0 * fft + 4.0 * nn - 2.0;
    b.inv_dphi = 20.0 * (nn - pp) - 4.0;
    return b;
}

double proposed_flops(std::size_t n, std::size_t p, Variant v) {
    if (v == Variant::a) {
        check_np(n, p, "proposed_flops");
        const double nn = static_cast<double>(n);
        return 20.0 * nn * std::log2(nn) + 32.0 * nn - 2.0 * static_cast<double>(p) - 10.0;
    }
    return proposed_breakdown(n, p, v).total();
}

double zp_fft_flops(std::size_t n, std::size_t p) {
    check_np(n, p, "zp_fft_flops");
    if (n % p != 0) {
        throw std::invalid_argument("zp_fft_flops: P=" + std::to_string(p) +
                                    " does not divide N=" + std::to_string(n));
    }
    const double nn = static_cast<double>(n);
    return FlopModel::fft_of(static_cast<double>(p)) + FlopModel::fft_of(nn) +
           FlopModel::complex_mul * nn;
}

double flops_for(CostMethod m, std::size_t n, std::size_t p) {
    switch (m) {
    case CostMethod::ber:
        return ber_flops(n, p);
    case CostMethod::prop_a:
        return proposed_flops(n, p, Variant::a);
    case CostMethod::prop_b:
        return proposed_flops(n, p, Variant::b);
    case CostMethod::prop_no_weights:
        return proposed_flops(n, p, Variant::no_weights);
    case CostMethod::zp_fft:
        return zp_fft_flops(n, p);
    }
    throw std::invalid_argument("flops_for: unknown method");
}

Crossover crossover_scan(std::size_t n) {
    if (n < 16) {
        throw std::invalid_argument("crossover_scan: N must be at least 16");
    }
    Crossover c{0, n, 0.0, 0};
    for (std::size_t p = 1; p < n; ++p) {
        const double ratio = ber_flops(n, p) / proposed_flops(n, p, Variant::a);
        if (ratio > c.max_ratio) {
            c.max_ratio = ratio;
            c.argmax_p = p;
        }
    }
    for (std::size_t p = 1; p < n && ber_flops(n, p) < proposed_flops(n, p, Variant::a); ++p) {
        c.low_p = p;
    }
    for (std::size_t p = n - 1; p >= 1 && ber_flops(n, p) < proposed_flops(n, p, Variant::a); --p) {
        c.high_p = p;
    }
    return c;
}

} // namespace gapfill::flops
