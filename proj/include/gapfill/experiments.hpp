#pragma once

// Monte-Carlo accuracy runs and flop-model sweeps, with CSV emission.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gapfill/erasure.hpp"
#include "gapfill/flops.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/spectral_core.hpp"

namespace gapfill::experiments {

/// Per-trial generator: std::mt19937_64 whose seed is derived with SplitMix64
/// from (seed, N, P, trial). Draws are mapped to doubles and integers with
/// fixed bit arithmetic so a given seed reproduces across standard libraries.
class Rng {
public:
    static constexpr std::string_view algorithm = "mt19937_64 seeded by splitmix64(seed,N,P,trial)";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    static Rng for_trial(std::uint64_t seed, std::size_t n, std::size_t p, std::size_t trial);

    /// Uniform on [-1, 1).
    double uniform_pm1();
    /// Uniform on {0, .., bound-1}; bound >= 1.
    std::size_t uniform_below(std::size_t bound);

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t& state);

struct Signal {
    TrigPolynomial poly;
    ComplexVector samples; // s(n), n in I_N, by direct evaluation
};

/// S_p = U[-1,1] + j U[-1,1] for p < P.
Signal gen_signal(std::size_t p, std::size_t n, Rng& rng);

/// One known sample per length-a cell, at a uniform offset inside the cell.
GridPartition gen_jittered_grid(std::size_t n, std::size_t a, Rng& rng);

/// J = {0..P-1}.
GridPartition gen_gap_grid(std::size_t n, std::size_t p);

enum class Scenario { jittered, gap };
std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view name);

struct ExperimentConfig {
    Scenario scenario = Scenario::jittered;
    std::vector<std::size_t> n_values{512};
    std::size_t a = 8;                    // jittered: P = N / a
    std::vector<std::size_t> p_values;    // gap: P values at each N
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::vector<Method> methods{Method::proposed, Method::ber, Method::pinv};
    unsigned threads = 1;
};

/// Throws std::invalid_argument describing the first inconsistency.
void validate(const ExperimentConfig& config);

struct ErrorStats {
    Scenario scenario;
    Method method;
    std::size_t n;
    std::size_t p;
    std::size_t trials;
    std::uint64_t seed;
    double max_error;    // over trials and missing samples
    double median_error; // of the per-trial maxima
    double mean_error;   // of the per-trial maxima
};

/// Rows ordered by grid point, then by config.methods. Deterministic in the
/// config regardless of `threads`.
std::vector<ErrorStats> run_accuracy(const ExperimentConfig& config);

/// Largest |recovered - truth| over the missing indices of `grid`.
double max_missing_error(const GridPartition& grid, const ComplexVector& recovered,
                         const ComplexVector& truth);

enum class Sweep { n, p };

struct FlopSweepConfig {
    Sweep sweep = Sweep::n;
    std::vector<std::size_t> n_values{16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
    std::size_t a = 8;
    std::vector<flops::CostMethod> methods{flops::CostMethod::ber, flops::CostMethod::prop_a,
                                           flops::CostMethod::prop_b};
};

/// n sweep: one row per (N, method) with P = N/a. p sweep: one row per
/// (P, method) for P in [1, N-1] at each N; zp_fft rows only where P | N.
std::vector<flops::CostReport> run_flops_sweep(const FlopSweepConfig& config);

void write_accuracy_csv(std::ostream& out, const std::vector<ErrorStats>& rows);
void write_flops_csv(std::ostream& out, const std::vector<flops::CostReport>& rows);

} // namespace gapfill::experiments
