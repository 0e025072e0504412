#include <doctest.h>

#include <random>
#include <stdexcept>

#include "gapfill/recovery.hpp"
#include "gapfill/spectral_core.hpp"
#include "test_support.hpp"

using namespace gapfill;
using namespace testing_support;

namespace {

struct Instance {
    ComplexVector coeffs;
    ComplexVector truth;
    GridPartition grid;
};

Instance make_instance(std::size_t n, std::size_t a, std::mt19937_64& rng) {
    GridPartition grid = jittered_grid(n, a, rng);
    ComplexVector coeffs = random_vector(grid.known_count(), rng);
    ComplexVector truth = synth(coeffs, n);
    return {std::move(coeffs), std::move(truth), std::move(grid)};
}

double missing_error(const ComplexVector& got, const Instance& inst) {
    double m = 0.0;
    for (std::size_t idx : inst.grid.missing()) {
        m = std::max(m, std::abs(got[idx] - inst.truth[idx]));
    }
    return m;
}

} // namespace

TEST_SUITE("method names") {
    TEST_CASE("round trip") {
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            CHECK(method_from_string(to_string(m)) == m);
        }
        CHECK_THROWS_AS(method_from_string("fastest"), std::invalid_argument);
    }
}

TEST_SUITE("KnownSamples") {
    TEST_CASE("from_pairs sorts by index") {
        const std::vector<std::pair<std::size_t, Complex>> pairs{{3, 3.0}, {0, 1.0}};
        const KnownSamples ks = KnownSamples::from_pairs(4, pairs);
        CHECK(ks.grid().known() == std::vector<std::size_t>{0, 3});
        CHECK(ks.values() == ComplexVector{1.0, 3.0});
        CHECK(ks.zero_filled() == ComplexVector{1.0, 0.0, 0.0, 3.0});
    }

    TEST_CASE("invalid inputs") {
        const std::vector<std::size_t> known{0, 2};
        const GridPartition g = GridPartition::from_known(4, known);
        CHECK_THROWS_AS(KnownSamples(g, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(KnownSamples(g, {1.0, Complex(std::nan(""), 0.0)}), std::invalid_argument);
        const std::vector<std::pair<std::size_t, Complex>> dup{{1, 1.0}, {1, 2.0}};
        CHECK_THROWS_AS(KnownSamples::from_pairs(4, dup), std::invalid_argument);
        const ComplexVector short_full(3);
        CHECK_THROWS_AS(KnownSamples::from_full(g, short_full), std::invalid_argument);
    }
}

TEST_SUITE("hand traces") {
    TEST_CASE("N = 2, P = 1: constant signal c") {
        const Complex c(0.75, -0.25);
        const std::vector<std::pair<std::size_t, Complex>> pairs{{0, c}};
        const KnownSamples ks = KnownSamples::from_pairs(2, pairs);
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            CAPTURE(to_string(m));
            const RecoveryResult r = recover(ks, m);
            CHECK(r.method == m);
            CHECK(r.full_samples[0] == c);
            CHECK(std::abs(r.full_samples[1] - c) <= 1e-15);
        }

        const detail::BerTrace t = detail::ber_trace(ks);
        CHECK(std::abs(t.phi_coefficients[0] - 1.0) <= 1e-15);
        CHECK(std::abs(t.phi_coefficients[1] - 1.0) <= 1e-15);
        CHECK(std::abs(t.known_coefficients[0] - c / 2.0) <= 1e-15);
        CHECK(std::abs(t.known_coefficients[1] - c / 2.0) <= 1e-15);
        CHECK(t.missing_seed[0] == Complex{});
        CHECK(std::abs(t.missing_seed[1] + c / 2.0) <= 1e-15);
        CHECK(std::abs(t.missing_coefficients[0] - c / 2.0) <= 1e-15);
    }

    TEST_CASE("N = 4, J = {0, 2}: s(t) = S_0 + S_1 e^{j pi t/2}") {
        const Complex s0(1.0, 0.0);
        const Complex s1(0.0, 2.0);
        const std::vector<std::pair<std::size_t, Complex>> pairs{{0, s0 + s1}, {2, s0 - s1}};
        const KnownSamples ks = KnownSamples::from_pairs(4, pairs);
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            CAPTURE(to_string(m));
            const RecoveryResult r = recover(ks, m);
            CHECK(std::abs(r.full_samples[1] - (s0 + Complex(0.0, 1.0) * s1)) <= 1e-14);
            CHECK(std::abs(r.full_samples[3] - (s0 - Complex(0.0, 1.0) * s1)) <= 1e-14);
        }
        const RecoveryResult r = recover_pinv(ks);
        REQUIRE(r.coefficients.has_value());
        CHECK(std::abs((*r.coefficients)[0] - s0) <= 1e-14);
        CHECK(std::abs((*r.coefficients)[1] - s1) <= 1e-14);
    }
}

TEST_SUITE("solvers") {
    TEST_CASE("full grid is a pass-through") {
        std::mt19937_64 rng(16);
        const ComplexVector full = random_vector(16, rng);
        std::vector<std::size_t> all(16);
        for (std::size_t i = 0; i < 16; ++i) {
            all[i] = i;
        }
        const KnownSamples ks = KnownSamples::from_full(GridPartition::from_known(16, all), full);
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            CHECK(recover(ks, m).full_samples == full);
        }
        // pinv still returns the coefficients of the full-band signal
        const RecoveryResult r = recover_pinv(ks);
        REQUIRE(r.coefficients.has_value());
        ComplexVector expected = direct_dft(full);
        for (Complex& z : expected) {
            z /= 16.0;
        }
        CHECK(rel_error(*r.coefficients, expected) <= 1e-12);
    }

    TEST_CASE("known samples are copied unchanged") {
        std::mt19937_64 rng(5);
        const Instance inst = make_instance(32, 4, rng);
        const KnownSamples ks = KnownSamples::from_full(inst.grid, inst.truth);
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            const RecoveryResult r = recover(ks, m);
            for (std::size_t idx : inst.grid.known()) {
                CHECK(r.full_samples[idx] == inst.truth[idx]);
            }
        }
    }

    TEST_CASE("jittered N = 64, a = 8 recovers the missing samples") {
        std::mt19937_64 rng(64);
        for (int trial = 0; trial < 20; ++trial) {
            const Instance inst = make_instance(64, 8, rng);
            const KnownSamples ks = KnownSamples::from_full(inst.grid, inst.truth);
            const RecoveryResult prop = recover_proposed(ks);
            const RecoveryResult ber = recover_ber(ks);
            const RecoveryResult pinv = recover_pinv(ks);
            CHECK(missing_error(prop.full_samples, inst) <= 1e-9);
            CHECK(missing_error(ber.full_samples, inst) <= 1e-9);
            CHECK(missing_error(pinv.full_samples, inst) <= 1e-9);
            CHECK(max_abs_diff(prop.full_samples, ber.full_samples) <= 1e-8);
            CHECK(max_abs_diff(prop.full_samples, pinv.full_samples) <= 1e-8);
            REQUIRE(pinv.coefficients.has_value());
            CHECK(max_abs_diff(*pinv.coefficients, inst.coeffs) <= 1e-9);
        }
    }

    TEST_CASE("methods agree at N = 256") {
        std::mt19937_64 rng(256);
        for (int trial = 0; trial < 3; ++trial) {
            const Instance inst = make_instance(256, 8, rng);
            const KnownSamples ks = KnownSamples::from_full(inst.grid, inst.truth);
            const RecoveryResult prop = recover_proposed(ks);
            CHECK(missing_error(prop.full_samples, inst) <= 1e-9);
            CHECK(max_abs_diff(prop.full_samples, recover_ber(ks).full_samples) <= 1e-8);
            CHECK(max_abs_diff(prop.full_samples, recover_pinv(ks).full_samples) <= 1e-8);
        }
    }

    TEST_CASE("solvers are linear in the known samples") {
        std::mt19937_64 rng(11);
        const Instance x = make_instance(48, 6, rng);
        const ComplexVector y_truth = synth(random_vector(x.grid.known_count(), rng), 48);
        const Complex a(0.5, -1.5);
        ComplexVector combo(48);
        for (std::size_t i = 0; i < 48; ++i) {
            combo[i] = a * x.truth[i] + y_truth[i];
        }
        for (Method m : {Method::proposed, Method::ber, Method::pinv}) {
            const ComplexVector rx = recover(KnownSamples::from_full(x.grid, x.truth), m).full_samples;
            const ComplexVector ry = recover(KnownSamples::from_full(x.grid, y_truth), m).full_samples;
            const ComplexVector rc = recover(KnownSamples::from_full(x.grid, combo), m).full_samples;
            for (std::size_t i = 0; i < 48; ++i) {
                CHECK(std::abs(rc[i] - (a * rx[i] + ry[i])) <= 1e-10);
            }
        }
    }

    TEST_CASE("BER recursion reproduces the missing-part coefficients") {
        std::mt19937_64 rng(40);
        const Instance inst = make_instance(40, 5, rng);
        const KnownSamples ks = KnownSamples::from_full(inst.grid, inst.truth);
        const detail::BerTrace t = detail::ber_trace(ks);

        ComplexVector missing_part(40);
        for (std::size_t idx : inst.grid.missing()) {
            missing_part[idx] = inst.truth[idx];
        }
        ComplexVector expected = direct_dft(missing_part);
        for (Complex& z : expected) {
            z /= 40.0;
        }
        CHECK(max_abs_diff(t.missing_coefficients, expected) <= 1e-10);

        // the seed is exact for q >= P, where the full signal has no content
        const std::size_t p = inst.grid.known_count();
        for (std::size_t q = p; q < 40; ++q) {
            CHECK(std::abs(t.missing_seed[q] - expected[q]) <= 1e-12);
        }
        // (phi * S_{J^c})_q = 0 for the coefficients the recursion relies on
        const std::size_t degree = 40 - p;
        for (std::size_t q = 0; q < p; ++q) {
            Complex acc{};
            for (std::size_t m = 0; m <= degree; ++m) {
                acc += t.phi_coefficients[m] * expected[q + degree - m];
            }
            CHECK(std::abs(acc) <= 1e-10);
        }
    }

    TEST_CASE("BER reports a non-monic erasure polynomial on a wide gap") {
        std::vector<std::size_t> known;
        for (std::size_t i = 0; i < 8; ++i) {
            known.push_back(i);
        }
        const GridPartition g = GridPartition::from_known(256, known);
        const KnownSamples ks(g, ComplexVector(8, Complex(1.0, 0.0)));
        CHECK_THROWS_WITH_AS(recover_ber(ks), doctest::Contains("not monic"), ConsistencyError);
    }

    TEST_CASE("weights for another grid are rejected") {
        const std::vector<std::size_t> a{0, 2};
        const std::vector<std::size_t> b{0, 1};
        const KnownSamples ks(GridPartition::from_known(4, a), {1.0, 1.0});
        const ErasureWeights w = erasure_weights_fast(GridPartition::from_known(4, b));
        CHECK_THROWS_AS(recover_proposed(ks, w), std::invalid_argument);
    }
}

TEST_SUITE("coefficient extraction") {
    TEST_CASE("smallest divisor") {
        CHECK(smallest_divisor_at_least(8, 3) == 4);
        CHECK(smallest_divisor_at_least(7, 3) == 7);
        CHECK(smallest_divisor_at_least(12, 5) == 6);
        CHECK(smallest_divisor_at_least(12, 1) == 1);
        CHECK_THROWS_AS(smallest_divisor_at_least(4, 5), std::invalid_argument);
        CHECK_THROWS_AS(smallest_divisor_at_least(4, 0), std::invalid_argument);
    }

    TEST_CASE("round trip P = 5, N = 20") {
        std::mt19937_64 rng(20);
        const ComplexVector c = random_vector(5, rng);
        const ComplexVector full = synth(c, 20);
        CHECK(max_abs_diff(extract_coefficients(full, 5), c) <= 1e-10);
    }

    TEST_CASE("P > N is rejected") {
        const ComplexVector full(4, Complex(1.0, 0.0));
        CHECK_THROWS_AS(extract_coefficients(full, 5), std::invalid_argument);
    }
}
