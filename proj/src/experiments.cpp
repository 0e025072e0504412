#include "gapfill/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

namespace gapfill::experiments {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Rng Rng::for_trial(std::uint64_t seed, std::size_t n, std::size_t p, std::size_t trial) {
    std::uint64_t state = seed;
    for (std::uint64_t word : {std::uint64_t(n), std::uint64_t(p), std::uint64_t(trial)}) {
        state = splitmix64(state) ^ word;
    }
    return Rng(splitmix64(state));
}

double Rng::uniform_pm1() {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

std::size_t Rng::uniform_below(std::size_t bound) {
    const auto b = static_cast<std::uint64_t>(bound);
    // Reject the low 2^64 mod b values so every residue is equally likely.
    const std::uint64_t threshold = (0 - b) % b;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) {
            return static_cast<std::size_t>(r % b);
        }
    }
}

Signal gen_signal(std::size_t p, std::size_t n, Rng& rng) {
    if (p == 0 || p > n) {
        throw std::invalid_argument("gen_signal: need 1 <= P <= N");
    }
    ComplexVector coefficients(p);
    for (Complex& c : coefficients) {
        const double re = rng.uniform_pm1();
        const double im = rng.uniform_pm1();
        c = Complex(re, im);
    }
    TrigPolynomial poly(std::move(coefficients), n);
    ComplexVector samples(n);
    for (std::size_t i = 0; i < n; ++i) {
        samples[i] = eval_trig(poly, static_cast<double>(i));
    }
    return {std::move(poly), std::move(samples)};
}

GridPartition gen_jittered_grid(std::size_t n, std::size_t a, Rng& rng) {
    if (a == 0 || n == 0 || n % a != 0) {
        throw std::invalid_argument("gen_jittered_grid: a=" + std::to_string(a) +
                                    " does not divide N=" + std::to_string(n));
    }
    const std::size_t p = n / a;
    std::vector<std::size_t> known(p);
    for (std::size_t cell = 0; cell < p; ++cell) {
        known[cell] = a * cell + rng.uniform_below(a);
    }
    return GridPartition::from_known(n, known);
}

GridPartition gen_gap_grid(std::size_t n, std::size_t p) {
    if (p == 0 || p > n) {
        throw std::invalid_argument("gen_gap_grid: need 1 <= P <= N");
    }
    std::vector<std::size_t> known(p);
    for (std::size_t i = 0; i < p; ++i) {
        known[i] = i;
    }
    return GridPartition::from_known(n, known);
}

std::string_view to_string(Scenario s) {
    return s == Scenario::jittered ? "jittered" : "gap";
}

Scenario scenario_from_string(std::string_view name) {
    if (name == "jittered") {
        return Scenario::jittered;
    }
    if (name == "gap") {
        return Scenario::gap;
    }
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

void validate(const ExperimentConfig& config) {
    if (config.trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.methods.empty()) {
        throw std::invalid_argument("at least one method is required");
    }
    if (config.n_values.empty()) {
        throw std::invalid_argument("at least one N is required");
    }
    for (std::size_t n : config.n_values) {
        if (n == 0) {
            throw std::invalid_argument("N must be positive");
        }
        if (config.scenario == Scenario::jittered) {
            if (config.a == 0 || n % config.a != 0) {
                throw std::invalid_argument("jittered scenario: a=" + std::to_string(config.a) +
                                            " does not divide N=" + std::to_string(n));
            }
        } else {
            if (config.p_values.empty()) {
                throw std::invalid_argument("gap scenario: at least one P is required");
            }
            for (std::size_t p : config.p_values) {
                if (p == 0 || p > n) {
                    throw std::invalid_argument("gap scenario: P=" + std::to_string(p) +
                                                " outside [1, N=" + std::to_string(n) + "]");
                }
            }
        }
    }
}

double max_missing_error(const GridPartition& grid, const ComplexVector& recovered,
                         const ComplexVector& truth) {
    double worst = 0.0;
    for (std::size_t idx : grid.missing()) {
        worst = std::max(worst, std::abs(recovered[idx] - truth[idx]));
    }
    return worst;
}

namespace {

struct GridPoint {
    std::size_t n;
    std::size_t p;
};

std::vector<GridPoint> grid_points(const ExperimentConfig& config) {
    std::vector<GridPoint> points;
    for (std::size_t n : config.n_values) {
        if (config.scenario == Scenario::jittered) {
            points.push_back({n, n / config.a});
        } else {
            for (std::size_t p : config.p_values) {
                points.push_back({n, p});
            }
        }
    }
    return points;
}

// errors[trial * methods + m]
std::vector<double> run_trials(const ExperimentConfig& config, GridPoint point) {
    const std::size_t method_count = config.methods.size();
    std::vector<double> errors(config.trials * method_count, 0.0);
    std::vector<std::exception_ptr> failures(config.trials);

    auto run_one = [&](std::size_t trial) {
        Rng rng = Rng::for_trial(config.seed, point.n, point.p, trial);
        const Signal signal = gen_signal(point.p, point.n, rng);
        const GridPartition grid = config.scenario == Scenario::jittered
                                       ? gen_jittered_grid(point.n, config.a, rng)
                                       : gen_gap_grid(point.n, point.p);
        const KnownSamples known = KnownSamples::from_full(grid, signal.samples);
        for (std::size_t m = 0; m < method_count; ++m) {
            const Method method = config.methods[m];
            try {
                const RecoveryResult result = recover(known, method);
                errors[trial * method_count + m] =
                    max_missing_error(grid, result.full_samples, signal.samples);
            } catch (const std::exception& e) {
                throw std::runtime_error(
                    std::string(e.what()) + " [method=" + std::string(to_string(method)) +
                    ", N=" + std::to_string(point.n) + ", P=" + std::to_string(point.p) +
                    ", trial=" + std::to_string(trial) + ", seed=" + std::to_string(config.seed) +
                    "]");
            }
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(config.threads,
                                                             static_cast<unsigned>(config.trials)));
    if (workers == 1) {
        for (std::size_t t = 0; t < config.trials; ++t) {
            run_one(t);
        }
        return errors;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < config.trials; t = next++) {
                    try {
                        run_one(t);
                    } catch (...) {
                        failures[t] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return errors;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return buf;
}

} // namespace

std::vector<ErrorStats> run_accuracy(const ExperimentConfig& config) {
    validate(config);
    std::vector<ErrorStats> rows;
    const std::size_t method_count = config.methods.size();
    for (const GridPoint& point : grid_points(config)) {
        const std::vector<double> errors = run_trials(config, point);
        for (std::size_t m = 0; m < method_count; ++m) {
            std::vector<double> per_trial(config.trials);
            double sum = 0.0;
            for (std::size_t t = 0; t < config.trials; ++t) {
                per_trial[t] = errors[t * method_count + m];
                sum += per_trial[t];
            }
            const double worst = *std::max_element(per_trial.begin(), per_trial.end());
            rows.push_back({config.scenario, config.methods[m], point.n, point.p, config.trials,
                            config.seed, worst, median_of(per_trial),
                            sum / static_cast<double>(config.trials)});
        }
    }
    return rows;
}

std::vector<flops::CostReport> run_flops_sweep(const FlopSweepConfig& config) {
    using flops::CostMethod;
    std::vector<flops::CostReport> rows;
    auto emit = [&](std::size_t n, std::size_t p) {
        for (CostMethod m : config.methods) {
            if (m == CostMethod::zp_fft && n % p != 0) {
                continue;
            }
            rows.push_back({m, n, p, flops::flops_for(m, n, p)});
        }
    };
    if (config.sweep == Sweep::n) {
        if (config.a == 0) {
            throw std::invalid_argument("flops sweep: a must be positive");
        }
        for (std::size_t n : config.n_values) {
            if (n % config.a != 0 || n / config.a == 0) {
                throw std::invalid_argument("flops sweep: a=" + std::to_string(config.a) +
                                            " does not divide N=" + std::to_string(n));
            }
            emit(n, n / config.a);
        }
    } else {
        for (std::size_t n : config.n_values) {
            if (n < 2) {
                throw std::invalid_argument("flops sweep: N must be at least 2");
            }
            for (std::size_t p = 1; p < n; ++p) {
                emit(n, p);
            }
        }
    }
    return rows;
}

void write_accuracy_csv(std::ostream& out, const std::vector<ErrorStats>& rows) {
    out << "# rng: " << Rng::algorithm << '\n';
    out << "scenario,method,N,P,trials,seed,max_err,median_err,mean_err\n";
    for (const ErrorStats& r : rows) {
        out << to_string(r.scenario) << ',' << to_string(r.method) << ',' << r.n << ',' << r.p
            << ',' << r.trials << ',' << r.seed << ',' << format_double(r.max_error) << ','
            << format_double(r.median_error) << ',' << format_double(r.mean_error) << '\n';
    }
}

void write_flops_csv(std::ostream& out, const std::vector<flops::CostReport>& rows) {
    out << "method,N,P,flops\n";
    for (const flops::CostReport& r : rows) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", r.flops);
        out << flops::to_string(r.method) << ',' << r.n_total << ',' << r.n_known << ',' << buf
            << '\n';
    }
}

} // namespace gapfill::experiments
