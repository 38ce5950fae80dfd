#pragma once

#include <string>

#include "hypokit/operator_core.hpp"
#include "json.hpp"

namespace hypokit {

using json = nlohmann::json;

// %.17g, lossless for doubles.
std::string fmt17(double x);

// JSON text with every float printed at 17 significant digits.
std::string dump_json(const json& j, int indent = 2);

json matrix_to_json(const Matrix& A);
Matrix matrix_from_json(const json& j);

json vector_to_json(const Vector& v);
Vector vector_from_json(const json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hypokit
