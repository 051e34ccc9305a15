#pragma once

// JSON and CSV plumbing.
//
//   pair        {"n": n, "a": [n*n], "b": [n*n]}          row-major
//   pauli       {"n": n, "w": [n*n]}                      row-major
//   structured  {"kind": "circulant"|"bccb"|"bc2cb",
//                "dims": [p] | [p, q] | [p, q, r],
//                "a_root": [...], "b_root": [...]}
//
// Readers throw InputError for anything malformed; semantic violations
// (asymmetric a, bad root reflection) surface as the library's own errors
// with the offending indices.

#include "fermigap/lattice.hpp"
#include "fermigap/quadform.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace fermigap {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json pair_to_json(const CoefficientPair& pair);
CoefficientPair pair_from_json(const Json& doc);

Json w_to_json(const Matrix& w);
Matrix w_from_json(const Json& doc);

Json structured_to_json(const StructuredSpec& spec);
StructuredSpec structured_from_json(const Json& doc);
bool is_structured_json(const Json& doc);

Json gap_report_to_json(const GapReport& report);

// Shortest decimal string that parses back to the same double; locale free.
std::string format_double(double x);

}  // namespace fermigap
