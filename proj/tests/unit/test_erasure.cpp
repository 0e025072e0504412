#include <doctest.h>

#include <future>
#include <random>
#include <stdexcept>

#include "gapfill/erasure.hpp"
#include "gapfill/spectral_core.hpp"
#include "test_support.hpp"

using namespace gapfill;
using namespace testing_support;

namespace {

double rel(Complex a, Complex b) {
    return std::abs(a - b) / std::abs(b);
}

ComplexVector known_indicator(const GridPartition& grid) {
    ComplexVector out(grid.size());
    for (std::size_t idx : grid.known()) {
        out[idx] = 1.0;
    }
    return out;
}

} // namespace

TEST_SUITE("GridPartition") {
    TEST_CASE("partitions I_N") {
        const std::vector<std::size_t> missing{4, 1, 6};
        const GridPartition g = GridPartition::from_missing(8, missing);
        CHECK(g.missing() == std::vector<std::size_t>{1, 4, 6});
        CHECK(g.known() == std::vector<std::size_t>{0, 2, 3, 5, 7});
        const ComplexVector ind = g.missing_indicator();
        const ComplexVector kind = known_indicator(g);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(ind[i] + kind[i] == Complex(1.0, 0.0));
        }
        CHECK(GridPartition::from_known(8, g.known()) == g);
    }

    TEST_CASE("invalid index sets are rejected") {
        const std::vector<std::size_t> dup{1, 3, 1};
        CHECK_THROWS_WITH_AS(GridPartition::from_known(5, dup), doctest::Contains("index 1"),
                             std::invalid_argument);
        const std::vector<std::size_t> out_of_range{7};
        CHECK_THROWS_AS(GridPartition::from_missing(5, out_of_range), std::invalid_argument);
        const std::vector<std::size_t> everything{0, 1, 2};
        CHECK_THROWS_AS(GridPartition::from_missing(3, everything), std::invalid_argument);
        CHECK_THROWS_AS(GridPartition::from_known(0, {}), std::invalid_argument);
    }
}

TEST_SUITE("alpha table") {
    TEST_CASE("N = 2") {
        const AlphaTable t = build_alpha_table(2);
        CHECK(t.values[0] == Complex(0.0, 0.0));
        CHECK(std::abs(t.values[1] - Complex(std::log(2.0), 0.0)) <= 1e-15);
    }

    TEST_CASE("N = 4 principal-branch values") {
        const AlphaTable t = build_alpha_table(4);
        const double half_log2 = 0.5 * std::log(2.0);
        CHECK(t.values[0] == Complex(0.0, 0.0));
        CHECK(std::abs(t.values[1] - Complex(half_log2, kPi / 4)) <= 1e-15);
        CHECK(std::abs(t.values[2] - Complex(std::log(2.0), 0.0)) <= 1e-15);
        CHECK(std::abs(t.values[3] - Complex(half_log2, -kPi / 4)) <= 1e-15);
    }

    TEST_CASE("matches the principal complex logarithm") {
        for (std::size_t n : {3U, 10U, 127U}) {
            const AlphaTable t = build_alpha_table(n);
            for (std::size_t i = 1; i < n; ++i) {
                const Complex ref = std::log(1.0 - cis(-2.0 * kPi * double(i) / double(n)));
                CHECK(std::abs(t.values[i] - ref) <= 1e-13);
                // exp(alpha) reproduces the factor exactly enough
                CHECK(std::abs(std::exp(t.values[i]) - (1.0 - cis(-2.0 * kPi * double(i) / double(n)))) <= 1e-14);
            }
        }
    }

    TEST_CASE("sum equals log N for N = 1..512") {
        for (std::size_t n = 1; n <= 512; ++n) {
            const AlphaTable t = build_alpha_table(n);
            Complex sum{};
            for (const Complex& a : t.values) {
                sum += a;
            }
            CHECK(std::abs(sum - std::log(double(n))) <= 1e-12 * double(n));
        }
    }

    TEST_CASE("spectrum is the DFT of the values") {
        const AlphaTable t = build_alpha_table(21);
        CHECK(rel_error(t.spectrum, direct_dft(t.values)) <= 1e-12);
    }

    TEST_CASE("N = 0 is rejected") {
        CHECK_THROWS_AS(build_alpha_table(0), std::invalid_argument);
    }

    TEST_CASE("cache returns one consistent table under concurrent lookup") {
        std::vector<std::future<std::shared_ptr<const AlphaTable>>> jobs;
        for (int i = 0; i < 8; ++i) {
            jobs.push_back(std::async(std::launch::async, [] { return alpha_table(777); }));
        }
        const auto first = jobs[0].get();
        for (std::size_t i = 1; i < jobs.size(); ++i) {
            const auto t = jobs[i].get();
            CHECK(t->values == first->values);
            CHECK(t->spectrum == first->spectrum);
        }
        CHECK(alpha_table(777).get() == alpha_table(777).get());
    }
}

TEST_SUITE("beta") {
    TEST_CASE("empty J^c gives zero") {
        const std::vector<std::size_t> none;
        const GridPartition g = GridPartition::from_missing(6, none);
        CHECK(max_abs(beta(g, build_alpha_table(6))) <= 1e-15);
    }

    TEST_CASE("N = 2, J^c = {1} shifts alpha by one") {
        const std::vector<std::size_t> missing{1};
        const ComplexVector b = beta(GridPartition::from_missing(2, missing), build_alpha_table(2));
        CHECK(std::abs(b[0] - Complex(std::log(2.0), 0.0)) <= 1e-15);
        CHECK(std::abs(b[1]) <= 1e-15);
    }

    TEST_CASE("random N = 32 matches the direct convolution") {
        std::mt19937_64 rng(32);
        const GridPartition g = random_grid(32, rng);
        const AlphaTable t = build_alpha_table(32);
        CHECK(rel_error(beta(g, t), direct_cyclic(g.missing_indicator(), t.values)) <= 1e-11);
    }

    TEST_CASE("complement identity: (1_J + 1_Jc) * alpha = log N") {
        std::mt19937_64 rng(33);
        for (std::size_t n : {8U, 37U, 100U}) {
            const GridPartition g = random_grid(n, rng);
            const AlphaTable t = build_alpha_table(n);
            const ComplexVector on_missing = cyclic_convolve(g.missing_indicator(), t.values);
            const ComplexVector on_known = cyclic_convolve(known_indicator(g), t.values);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(on_missing[i] + on_known[i] - std::log(double(n))) <= 1e-10);
            }
        }
    }

    TEST_CASE("size mismatch is rejected") {
        const std::vector<std::size_t> missing{1};
        CHECK_THROWS_AS(beta(GridPartition::from_missing(4, missing), build_alpha_table(5)),
                        std::invalid_argument);
    }
}

TEST_SUITE("direct products") {
    TEST_CASE("hand values") {
        const std::vector<std::size_t> one{1};
        const GridPartition g2 = GridPartition::from_missing(2, one);
        CHECK(std::abs(erasure_phi_direct(g2, 0) - Complex(2.0, 0.0)) <= 1e-15);
        CHECK(std::abs(erasure_phi_prime_direct(g2, 1) - Complex(0.0, -kPi)) <= 1e-14);

        const std::vector<std::size_t> odd{1, 3};
        const GridPartition g4 = GridPartition::from_missing(4, odd);
        CHECK(std::abs(erasure_phi_direct(g4, 0) - Complex(2.0, 0.0)) <= 1e-15);
    }

    TEST_CASE("zero exactly on J^c, bounded away on J") {
        std::mt19937_64 rng(128);
        for (std::size_t n : {8U, 31U, 64U, 128U}) {
            const GridPartition g = random_grid(n, rng);
            double largest = 0.0;
            double smallest_known = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n; ++i) {
                const double mag = std::abs(erasure_phi_direct(g, i));
                largest = std::max(largest, mag);
                if (!g.is_missing(i)) {
                    smallest_known = std::min(smallest_known, mag);
                }
            }
            for (std::size_t i : g.missing()) {
                CHECK(std::abs(erasure_phi_direct(g, i)) < 1e-9 * largest);
            }
            CHECK(smallest_known > 1e-9 * largest);
        }
    }

    TEST_CASE("empty J^c: phi = 1 and phi' = 0") {
        const std::vector<std::size_t> none;
        const GridPartition g = GridPartition::from_missing(5, none);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(erasure_phi_direct(g, i) == Complex(1.0, 0.0));
            CHECK(erasure_phi_prime_direct(g, i) == Complex(0.0, 0.0));
        }
    }

    TEST_CASE("derivative matches a centred finite difference, N = 24") {
        std::mt19937_64 rng(24);
        const GridPartition g = random_grid(24, rng);
        const double h = 1e-6;
        for (std::size_t i : g.missing()) {
            const double t = static_cast<double>(i);
            const Complex fd = (erasure_phi_at(g, t + h) - erasure_phi_at(g, t - h)) / (2.0 * h);
            CHECK(rel(erasure_phi_prime_direct(g, i), fd) <= 1e-4);
        }
    }

    TEST_CASE("phi(t) phi_1(t) = e^{j2pi t} - 1 at half-integer t") {
        std::mt19937_64 rng(296);
        for (std::size_t n : {12U, 40U, 96U}) {
            const GridPartition g = random_grid(n, rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double t = static_cast<double>(i) + 0.5;
                const Complex z = cis(2.0 * kPi * t / double(n));
                Complex phi1(1.0, 0.0);
                for (std::size_t k : g.known()) {
                    phi1 *= z - cis(2.0 * kPi * double(k) / double(n));
                }
                const Complex rhs = cis(2.0 * kPi * t) - 1.0;
                CHECK(rel(erasure_phi_at(g, t) * phi1, rhs) <= 1e-9);
            }
        }
    }

    TEST_CASE("index out of range is rejected") {
        const std::vector<std::size_t> one{1};
        const GridPartition g = GridPartition::from_missing(3, one);
        CHECK_THROWS_AS(erasure_phi_direct(g, 3), std::invalid_argument);
        CHECK_THROWS_AS(erasure_phi_prime_direct(g, 9), std::invalid_argument);
    }
}

TEST_SUITE("erasure_weights_fast") {
    TEST_CASE("N = 2, P = 1") {
        const std::vector<std::size_t> one{1};
        const ErasureWeights w = erasure_weights_fast(GridPartition::from_missing(2, one));
        REQUIRE(w.phi_on_known().size() == 1);
        REQUIRE(w.inv_phi_prime_on_missing().size() == 1);
        CHECK(std::abs(w.phi_on_known()[0] - Complex(2.0, 0.0)) <= 1e-15);
        CHECK(std::abs(w.inv_phi_prime_on_missing()[0] - Complex(0.0, 1.0 / kPi)) <= 1e-15);
    }

    TEST_CASE("no missing samples: phi = 1 everywhere") {
        const std::vector<std::size_t> none;
        const ErasureWeights w = erasure_weights_fast(GridPartition::from_missing(10, none));
        CHECK(w.inv_phi_prime_on_missing().empty());
        for (const Complex& z : w.phi_on_known()) {
            CHECK(std::abs(z - Complex(1.0, 0.0)) <= 1e-13);
        }
    }

    TEST_CASE("matches the direct products on random grids") {
        std::mt19937_64 rng(2024);
        for (std::size_t n : {16U, 64U, 256U}) {
            for (double p_missing : {0.2, 0.5, 0.85}) {
                CAPTURE(n);
                CAPTURE(p_missing);
                const GridPartition g = random_grid(n, rng, p_missing);
                const ErasureWeights w = erasure_weights_fast(g);
                for (std::size_t i = 0; i < g.known_count(); ++i) {
                    CHECK(rel(w.phi_on_known()[i], erasure_phi_direct(g, g.known()[i])) <= 1e-9);
                }
                for (std::size_t i = 0; i < g.missing_count(); ++i) {
                    const Complex ref = 1.0 / erasure_phi_prime_direct(g, g.missing()[i]);
                    CHECK(rel(w.inv_phi_prime_on_missing()[i], ref) <= 1e-9);
                }
            }
        }
    }

    TEST_CASE("explicit table must match the grid size") {
        const std::vector<std::size_t> one{1};
        CHECK_THROWS_AS(erasure_weights_fast(GridPartition::from_missing(4, one),
                                             build_alpha_table(8)),
                        std::invalid_argument);
    }

    TEST_CASE("ErasureWeights rejects zero or mismatched weights") {
        const std::vector<std::size_t> one{1};
        const GridPartition g = GridPartition::from_missing(2, one);
        CHECK_THROWS_AS(ErasureWeights(g, {Complex{}}, {Complex(1.0, 0.0)}), std::invalid_argument);
        CHECK_THROWS_AS(ErasureWeights(g, {1.0, 1.0}, {1.0}), std::invalid_argument);
    }
}
