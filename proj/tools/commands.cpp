#include "commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gapfill/erasure.hpp"
#include "gapfill/experiments.hpp"
#include "gapfill/flops.hpp"
#include "gapfill/json_io.hpp"
#include "gapfill/recovery.hpp"
#include "gapfill/selfcheck.hpp"

namespace gapfill::cli {
namespace {

// Raised for inconsistent flags; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t parse_size(const std::string& token, const std::string& what) {
    std::size_t value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || token.empty()) {
        throw UsageError(what + ": '" + token + "' is not a non-negative integer");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, const std::string& separators) {
    std::vector<std::string> parts;
    std::string current;
    for (char ch : text) {
        if (separators.find(ch) != std::string::npos) {
            if (!current.empty()) {
                parts.push_back(current);
            }
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) {
        parts.push_back(current);
    }
    return parts;
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& what) {
    std::vector<std::size_t> values;
    for (const std::string& token : split(text, ", \t\n\r")) {
        values.push_back(parse_size(token, what));
    }
    return values;
}

/// "lo:hi:step" (inclusive) or "lo:hi" (step 1).
std::vector<std::size_t> parse_range(const std::string& text, const std::string& what) {
    const std::vector<std::string> parts = split(text, ":");
    if (parts.size() < 2 || parts.size() > 3) {
        throw UsageError(what + ": expected lo:hi[:step], got '" + text + "'");
    }
    const std::size_t lo = parse_size(parts[0], what);
    const std::size_t hi = parse_size(parts[1], what);
    const std::size_t step = parts.size() == 3 ? parse_size(parts[2], what) : 1;
    if (step == 0 || lo > hi) {
        throw UsageError(what + ": empty range '" + text + "'");
    }
    std::vector<std::size_t> values;
    for (std::size_t v = lo; v <= hi; v += step) {
        values.push_back(v);
    }
    return values;
}

std::vector<std::size_t> n_values_from(const std::string& n_list, const std::string& n_range) {
    if (!n_list.empty() && !n_range.empty()) {
        throw UsageError("--n and --n-range are mutually exclusive");
    }
    if (!n_range.empty()) {
        return parse_range(n_range, "--n-range");
    }
    if (!n_list.empty()) {
        return parse_list(n_list, "--n");
    }
    return {};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write '" + path + "'");
    }
    return out;
}

// recover ---------------------------------------------------------------------

struct RecoverArgs {
    std::string input;
    std::string method = "proposed";
    std::string weights;
    std::string output;
    bool emit_coefficients = false;
};

int cmd_recover(const RecoverArgs& args, std::ostream& out, std::ostream& err) {
    std::optional<KnownSamples> known;
    try {
        known.emplace(json_io::instance_from_json(json_io::read_json_file(args.input)));
    } catch (const json_io::SchemaError& e) {
        err << "recover: " << e.what() << '\n';
        return bad_input;
    }
    const Method method = method_from_string(args.method);

    RecoveryResult result;
    if (!args.weights.empty()) {
        if (method != Method::proposed) {
            throw UsageError("--weights applies to --method proposed only");
        }
        std::optional<ErasureWeights> weights;
        try {
            weights.emplace(json_io::weights_from_json(json_io::read_json_file(args.weights)));
        } catch (const json_io::SchemaError& e) {
            err << "recover: " << e.what() << '\n';
            return bad_input;
        }
        if (!(weights->grid() == known->grid())) {
            err << "recover: weights in '" << args.weights
                << "' were computed for a different sampling grid\n";
            return grid_mismatch;
        }
        result = recover_proposed(*known, *weights);
    } else {
        result = recover(*known, method);
    }

    if (args.emit_coefficients) {
        result.coefficients = extract_coefficients(result.full_samples, known->grid().known_count());
    } else {
        result.coefficients.reset();
    }
    json_io::write_json_file(args.output, json_io::result_to_json(result));
    out << "recovered " << known->grid().missing_count() << " of " << known->grid().size()
        << " samples with " << to_string(method) << " -> " << args.output << '\n';
    return ok;
}

// weights ---------------------------------------------------------------------

struct WeightsArgs {
    std::size_t n = 0;
    std::string missing;
    std::string output;
};

int cmd_weights(const WeightsArgs& args, std::ostream& out, std::ostream& err) {
    std::string list = args.missing;
    if (!list.empty() && list.front() == '@') {
        std::ifstream in(list.substr(1));
        if (!in) {
            err << "weights: cannot open '" << list.substr(1) << "'\n";
            return bad_input;
        }
        list.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    std::vector<std::size_t> missing;
    std::optional<GridPartition> grid;
    try {
        missing = parse_list(list, "--missing");
        grid.emplace(GridPartition::from_missing(args.n, missing));
    } catch (const std::exception& e) {
        err << "weights: " << e.what() << '\n';
        return bad_input;
    }
    const ErasureWeights weights = erasure_weights_fast(*grid);
    json_io::write_json_file(args.output, json_io::weights_to_json(weights));
    out << "weights for N=" << args.n << " with " << grid->missing_count() << " missing -> "
        << args.output << '\n';
    return ok;
}

// bench-accuracy --------------------------------------------------------------

struct AccuracyArgs {
    std::string scenario = "jittered";
    std::string n_list;
    std::string n_range;
    std::size_t a = 8;
    std::string p_range;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    std::string methods = "proposed,ber,pinv";
    unsigned threads = 1;
    std::string csv;
};

int cmd_bench_accuracy(const AccuracyArgs& args, std::ostream& out) {
    experiments::ExperimentConfig config;
    config.scenario = experiments::scenario_from_string(args.scenario);
    config.n_values = n_values_from(args.n_list, args.n_range);
    if (config.n_values.empty()) {
        config.n_values = {config.scenario == experiments::Scenario::gap ? 64U : 512U};
    }
    config.a = args.a;
    if (config.scenario == experiments::Scenario::gap) {
        config.p_values = parse_range(args.p_range.empty() ? "4:60:4" : args.p_range, "--p-range");
    } else if (!args.p_range.empty()) {
        throw UsageError("--p-range applies to --scenario gap only");
    }
    config.trials = args.trials;
    config.seed = args.seed;
    config.threads = args.threads;
    config.methods.clear();
    for (const std::string& name : split(args.methods, ",")) {
        config.methods.push_back(method_from_string(name));
    }
    experiments::validate(config);

    const auto rows = experiments::run_accuracy(config);
    std::ofstream csv = open_output(args.csv);
    experiments::write_accuracy_csv(csv, rows);
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, r.max_error);
    }
    out << "bench-accuracy: " << rows.size() << " rows, worst max_err " << worst << " -> "
        << args.csv << '\n';
    return ok;
}

// bench-flops -----------------------------------------------------------------

struct FlopsArgs {
    std::string sweep = "n";
    std::string n_list;
    std::string n_range;
    std::size_t a = 8;
    std::string methods;
    std::string csv;
};

int cmd_bench_flops(const FlopsArgs& args, std::ostream& out) {
    experiments::FlopSweepConfig config;
    if (args.sweep == "n") {
        config.sweep = experiments::Sweep::n;
    } else if (args.sweep == "p") {
        config.sweep = experiments::Sweep::p;
        config.methods = {flops::CostMethod::ber, flops::CostMethod::prop_a};
    } else {
        throw UsageError("--sweep must be 'n' or 'p'");
    }
    if (auto n_values = n_values_from(args.n_list, args.n_range); !n_values.empty()) {
        config.n_values = std::move(n_values);
    } else if (config.sweep == experiments::Sweep::p) {
        config.n_values = {1024};
    }
    config.a = args.a;
    if (!args.methods.empty()) {
        config.methods.clear();
        for (const std::string& name : split(args.methods, ",")) {
            config.methods.push_back(flops::cost_method_from_string(name));
        }
    }
    const auto rows = experiments::run_flops_sweep(config);
    std::ofstream csv = open_output(args.csv);
    experiments::write_flops_csv(csv, rows);
    out << "bench-flops: " << rows.size() << " rows -> " << args.csv;
    if (config.sweep == experiments::Sweep::p) {
        for (std::size_t n : config.n_values) {
            if (n >= 16) {
                const auto c = flops::crossover_scan(n);
                out << "; N=" << n << " ber cheaper for P<=" << c.low_p << " or P>=" << c.high_p
                    << ", max ber/prop_a " << c.max_ratio << " at P=" << c.argmax_p;
            }
        }
    }
    out << '\n';
    return ok;
}

// selfcheck -------------------------------------------------------------------

int cmd_selfcheck(std::ostream& out) {
    bool all = true;
    for (const CheckOutcome& c : run_selfcheck()) {
        out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
        all = all && c.passed;
    }
    out << (all ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n");
    return all ? ok : bad_input;
}

constexpr const char* kFooter =
    "Exit codes: 0 success; 1 malformed input or inconsistent flags;\n"
    "            2 weights file does not match the instance grid.";

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recover missing samples of a periodic band-limited signal on a regular grid",
                 "gapfill"};
    app.footer(kFooter);
    app.require_subcommand(1);

    RecoverArgs rec;
    auto* recover_cmd = app.add_subcommand("recover", "Recover missing samples of one instance");
    recover_cmd->add_option("--input", rec.input, "Problem-instance JSON")->required();
    recover_cmd->add_option("--method", rec.method, "proposed | ber | pinv")
        ->check(CLI::IsMember({"proposed", "ber", "pinv"}));
    recover_cmd->add_option("--weights", rec.weights, "Precomputed weights JSON (proposed only)");
    recover_cmd->add_option("--output", rec.output, "Result JSON")->required();
    recover_cmd->add_flag("--emit-coefficients", rec.emit_coefficients,
                          "Include the Fourier coefficients S_p in the result");

    WeightsArgs wts;
    auto* weights_cmd = app.add_subcommand("weights", "Precompute erasure weights for a grid");
    weights_cmd->add_option("--n", wts.n, "Grid size N")->required();
    weights_cmd->add_option("--missing", wts.missing,
                            "Comma-separated missing indices, or @file")->required();
    weights_cmd->add_option("--output", wts.output, "Weights JSON")->required();

    AccuracyArgs acc;
    auto* acc_cmd = app.add_subcommand("bench-accuracy", "Monte-Carlo round-off experiment");
    acc_cmd->add_option("--scenario", acc.scenario, "jittered | gap")
        ->check(CLI::IsMember({"jittered", "gap"}));
    acc_cmd->add_option("--n", acc.n_list, "Comma-separated grid sizes");
    acc_cmd->add_option("--n-range", acc.n_range, "Grid sizes lo:hi[:step]");
    acc_cmd->add_option("--a", acc.a, "Oversampling factor N/P (jittered)");
    acc_cmd->add_option("--p-range", acc.p_range, "Known-sample counts lo:hi[:step] (gap)");
    acc_cmd->add_option("--trials", acc.trials, "Trials per grid point");
    acc_cmd->add_option("--seed", acc.seed, "Base seed");
    acc_cmd->add_option("--methods", acc.methods, "Comma-separated subset of proposed,ber,pinv");
    acc_cmd->add_option("--threads", acc.threads, "Worker threads for trials");
    acc_cmd->add_option("--csv", acc.csv, "Output CSV")->required();

    FlopsArgs flp;
    auto* flops_cmd = app.add_subcommand("bench-flops", "Evaluate the analytic flop model");
    flops_cmd->add_option("--sweep", flp.sweep, "n (P = N/a) or p (P = 1..N-1)");
    flops_cmd->add_option("--n", flp.n_list, "Comma-separated grid sizes");
    flops_cmd->add_option("--n-range", flp.n_range, "Grid sizes lo:hi[:step]");
    flops_cmd->add_option("--a", flp.a, "N/P ratio for the n sweep");
    flops_cmd->add_option("--methods", flp.methods,
                          "Comma-separated subset of ber,prop_a,prop_b,prop_no_weights,zp_fft");
    flops_cmd->add_option("--csv", flp.csv, "Output CSV")->required();

    auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Run the built-in identity checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (recover_cmd->parsed()) {
            return cmd_recover(rec, out, err);
        }
        if (weights_cmd->parsed()) {
            return cmd_weights(wts, out, err);
        }
        if (acc_cmd->parsed()) {
            return cmd_bench_accuracy(acc, out);
        }
        if (flops_cmd->parsed()) {
            return cmd_bench_flops(flp, out);
        }
        if (selfcheck_cmd->parsed()) {
            return cmd_selfcheck(out);
        }
    } catch (const std::exception& e) {
        err << "gapfill: " << e.what() << '\n';
        return bad_input;
    }
    return bad_input;
}

} // namespace gapfill::cli
