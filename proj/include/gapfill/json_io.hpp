#pragma once

// JSON documents exchanged by the command-line tool.
//
//   problem instance: {"n": N, "p": P, "known": [{"index", "re", "im"}, ...]}
//   result:           {"method": str, "samples": [{"index", "re", "im"} x N],
//                      "coefficients": [{"index", "re", "im"} x P]}   (optional)
//   weights:          {"n": N,
//                      "known":   [{"index", "phi_re", "phi_im"}, ...],
//                      "missing": [{"index", "inv_dphi_re", "inv_dphi_im"}, ...]}
//
// Indices are 0-based. Doubles are written with round-trip precision.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gapfill/erasure.hpp"
#include "gapfill/recovery.hpp"

namespace gapfill::json_io {

/// Document is syntactically valid JSON but does not match the schema, or
/// describes an invalid instance (duplicate index, out of range, ...).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

KnownSamples instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const KnownSamples& known);

nlohmann::json result_to_json(const RecoveryResult& result);

nlohmann::json weights_to_json(const ErasureWeights& weights);
ErasureWeights weights_from_json(const nlohmann::json& doc);

/// Parses the file; throws SchemaError for unreadable or malformed files.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& doc);

} // namespace gapfill::json_io
