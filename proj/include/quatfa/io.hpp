#pragma once

#include <string>

#include <json.hpp>

#include "quatfa/bimodule.hpp"
#include "quatfa/bstar.hpp"
#include "quatfa/hilbert.hpp"
#include "quatfa/tensor.hpp"

namespace quatfa::io {

using Json = nlohmann::json;

/// Parses text; Error(Parse) with "line L, column C" on malformed input.
Json parse(const std::string& text);
/// Error(Parse) also when the file cannot be read.
Json load(const std::string& path);

Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const Quaternion& q);
Json to_json(const HTensor& t);
Json to_json(const HBimodule& m);
Json to_json(const HStarAlgebra& a);
Json to_json(const RightHModule& m);

/// Schema violations raise Error(Parse).
Matrix matrix_from_json(const Json& j, const std::string& what);
Quaternion quaternion_from_json(const Json& j, const std::string& what);
HTensor tensor_from_json(const Json& j);
ModulePtr bimodule_from_json(const Json& j);
HStarAlgebra algebra_from_json(const Json& j);
RightHModule module_from_json(const Json& j);

}  // namespace quatfa::io
