#include "gapfill/json_io.hpp"

#include <fstream>
#include <utility>
#include <vector>

namespace gapfill::json_io {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const char* context) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw SchemaError(std::string(context) + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

std::size_t as_index(const json& value, const char* context) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw SchemaError(std::string(context) + ": expected a non-negative integer");
    }
    return value.get<std::size_t>();
}

double as_double(const json& value, const char* context) {
    if (!value.is_number()) {
        throw SchemaError(std::string(context) + ": expected a number");
    }
    return value.get<double>();
}

const json& as_array(const json& value, const char* context) {
    if (!value.is_array()) {
        throw SchemaError(std::string(context) + ": expected an array");
    }
    return value;
}

json complex_entry(std::size_t index, Complex z, const char* re_key, const char* im_key) {
    return json{{"index", index}, {re_key, z.real()}, {im_key, z.imag()}};
}

json complex_list(const ComplexVector& values) {
    json out = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        out.push_back(complex_entry(i, values[i], "re", "im"));
    }
    return out;
}

} // namespace

KnownSamples instance_from_json(const json& doc) {
    const std::size_t n = as_index(field(doc, "n", "instance"), "instance.n");
    const std::size_t p = as_index(field(doc, "p", "instance"), "instance.p");
    const json& entries = as_array(field(doc, "known", "instance"), "instance.known");
    if (n == 0) {
        throw SchemaError("instance.n: must be positive");
    }

    std::vector<std::pair<std::size_t, Complex>> samples;
    std::vector<bool> seen(n, false);
    for (const json& e : entries) {
        const std::size_t idx = as_index(field(e, "index", "instance.known[]"), "known.index");
        if (idx >= n) {
            throw SchemaError("instance.known: index " + std::to_string(idx) +
                              " outside [0, " + std::to_string(n) + ")");
        }
        if (seen[idx]) {
            throw SchemaError("instance.known: duplicate index " + std::to_string(idx));
        }
        seen[idx] = true;
        samples.emplace_back(idx, Complex(as_double(field(e, "re", "instance.known[]"), "re"),
                                          as_double(field(e, "im", "instance.known[]"), "im")));
    }
    if (samples.size() != p) {
        throw SchemaError("instance: p=" + std::to_string(p) + " but " +
                          std::to_string(samples.size()) + " known samples were given");
    }
    try {
        return KnownSamples::from_pairs(n, samples);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("instance: ") + e.what());
    }
}

json instance_to_json(const KnownSamples& known) {
    json entries = json::array();
    for (std::size_t i = 0; i < known.values().size(); ++i) {
        entries.push_back(complex_entry(known.grid().known()[i], known.values()[i], "re", "im"));
    }
    return json{{"n", known.grid().size()}, {"p", known.grid().known_count()}, {"known", entries}};
}

json result_to_json(const RecoveryResult& result) {
    json doc{{"method", std::string(to_string(result.method))},
             {"samples", complex_list(result.full_samples)}};
    if (result.coefficients) {
        doc["coefficients"] = complex_list(*result.coefficients);
    }
    return doc;
}

json weights_to_json(const ErasureWeights& weights) {
    const GridPartition& grid = weights.grid();
    json known = json::array();
    for (std::size_t i = 0; i < grid.known_count(); ++i) {
        known.push_back(
            complex_entry(grid.known()[i], weights.phi_on_known()[i], "phi_re", "phi_im"));
    }
    json missing = json::array();
    for (std::size_t i = 0; i < grid.missing_count(); ++i) {
        missing.push_back(complex_entry(grid.missing()[i], weights.inv_phi_prime_on_missing()[i],
                                        "inv_dphi_re", "inv_dphi_im"));
    }
    return json{{"n", grid.size()}, {"known", known}, {"missing", missing}};
}

ErasureWeights weights_from_json(const json& doc) {
    const std::size_t n = as_index(field(doc, "n", "weights"), "weights.n");
    const json& known = as_array(field(doc, "known", "weights"), "weights.known");
    const json& missing = as_array(field(doc, "missing", "weights"), "weights.missing");

    std::vector<std::size_t> missing_idx;
    std::vector<std::pair<std::size_t, Complex>> inv_dphi;
    for (const json& e : missing) {
        const std::size_t idx = as_index(field(e, "index", "weights.missing[]"), "index");
        missing_idx.push_back(idx);
        inv_dphi.emplace_back(
            idx, Complex(as_double(field(e, "inv_dphi_re", "weights.missing[]"), "inv_dphi_re"),
                         as_double(field(e, "inv_dphi_im", "weights.missing[]"), "inv_dphi_im")));
    }
    std::vector<std::pair<std::size_t, Complex>> phi;
    for (const json& e : known) {
        const std::size_t idx = as_index(field(e, "index", "weights.known[]"), "index");
        phi.emplace_back(idx, Complex(as_double(field(e, "phi_re", "weights.known[]"), "phi_re"),
                                      as_double(field(e, "phi_im", "weights.known[]"), "phi_im")));
    }

    try {
        GridPartition grid = GridPartition::from_missing(n, missing_idx);
        if (phi.size() != grid.known_count()) {
            throw SchemaError("weights: known list does not cover the complement of missing");
        }
        ComplexVector full(n);
        std::vector<bool> seen(n, false);
        for (const auto& [idx, z] : phi) {
            if (idx >= n || grid.is_missing(idx) || seen[idx]) {
                throw SchemaError("weights: known index " + std::to_string(idx) +
                                  " is out of range, duplicated or also listed as missing");
            }
            seen[idx] = true;
            full[idx] = z;
        }
        ComplexVector phi_values;
        for (std::size_t idx : grid.known()) {
            phi_values.push_back(full[idx]);
        }
        for (const auto& [idx, z] : inv_dphi) {
            full[idx] = z;
        }
        ComplexVector inv_values;
        for (std::size_t idx : grid.missing()) {
            inv_values.push_back(full[idx]);
        }
        return ErasureWeights(std::move(grid), std::move(phi_values), std::move(inv_values));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("weights: ") + e.what());
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << doc.dump(2) << '\n';
}

} // namespace gapfill::json_io
