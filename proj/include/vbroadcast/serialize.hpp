#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "vbroadcast/broadcast.hpp"

namespace vbroadcast {

using Json = nlohmann::json;

/// { "dims": [..], "re_im": [[re, im], ...] }, entries row-major. Doubles are
/// emitted in shortest round-trip form, so serialization is bit-exact.
Json matrix_to_json(const Operator& op);
Operator matrix_from_json(const Json& j);

/// Matrix JSON plus "input_dim" and "output_dims".
Json choi_to_json(const ChoiOperator& choi);
ChoiOperator choi_from_json(const Json& j);

/// 17-significant-digit decimal form (CSV artifact precision).
std::string format_sig17(double x);

/// Writes via a temp file in the same directory, then renames into place.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Throws argument_error naming the first key of `obj` not in `allowed`.
void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                         const std::string& context);

}  // namespace vbroadcast
