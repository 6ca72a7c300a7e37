#pragma once

// JSON element format:
//   { "shape": [n1, ...], "blocks": [ [ [ [re, im], ... ], ... ], ... ] }
// Each block is a list of rows; each entry an [re, im] pair.

#include <filesystem>
#include <string>

#include "json.hpp"
#include "orthograph/algebra.hpp"

namespace orthograph {

nlohmann::json shape_to_json(const AlgebraShape& shape);
AlgebraShape shape_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Element& a);
/// Throws ParseError on any structural problem.
Element element_from_json(const nlohmann::json& j);

Element parse_element(const std::string& text);
Element read_element_file(const std::filesystem::path& path);

/// Writes to a temporary sibling and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace orthograph
