#pragma once

#include <string>

#include <json.hpp>

#include "qdist/uncertainty.hpp"

namespace qdist::io {

using nlohmann::json;

// File schemas (all versioned with a top-level "schema": 1):
//   complex scalar   [re, im]
//   matrix           array of row arrays of complex scalars
//   observable       {"schema":1, "dim":d, "eigenvectors":[vec,...], "labels":[...]}
//   channel          {"schema":1, "dim_in":n, "dim_out":m, "kraus":[matrix,...]}
//   apparatus        {"schema":1, "channel":{...}, "output_factors":
//                       [{"dim":n, "kind":"quantum"|"classical", "labels":[...]}]}
//   joint apparatus  {"schema":1, "kraus_xz":[[matrix,...],...],
//                     "x_labels":[...], "z_labels":[...]}

json matrix_to_json(const cmat& m);
cmat matrix_from_json(const json& j, const std::string& field);

json observable_to_json(const Observable& o);
Observable observable_from_json(const json& j);

json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const json& j);

json apparatus_to_json(const Apparatus& a);
/// Accepts both the general and the joint-apparatus schema.
Apparatus apparatus_from_json(const json& j);

json report_to_json(const VerificationReport& r);
VerificationReport report_from_json(const json& j);

Observable load_observable(const std::string& path);
QuantumChannel load_channel(const std::string& path);
Apparatus load_apparatus(const std::string& path);

// Diagnostic dumps of solver problems/solutions (decimal values).
json problem_to_json(const sdp::SdpProblem& p);
json solution_to_json(const sdp::SdpSolution& s);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qdist::io
