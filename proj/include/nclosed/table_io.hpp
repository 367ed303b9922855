#pragma once

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "nclosed/group.hpp"

namespace nclosed {

// Cayley-table file format:
//   {"labels": ["e", "a", ...], "table": [[0, 1, ...], [1, 0, ...], ...]}
// "labels" may be omitted, in which case elements are labelled 0, 1, ...

FiniteGroup group_from_json(const nlohmann::json& doc);
FiniteSemigroup semigroup_from_json(const nlohmann::json& doc);
nlohmann::json table_to_json(const FiniteSemigroup& s);

/// Reads and validates a group table. IoError when the file cannot be read,
/// SyntaxError (with byte offset) for malformed JSON or a wrong shape.
FiniteGroup load_cayley_table(const std::filesystem::path& path);
FiniteSemigroup load_semigroup_table(const std::filesystem::path& path);

}  // namespace nclosed
