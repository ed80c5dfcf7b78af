#pragma once

#include <json.hpp>

#include "entlab/matcore.hpp"

namespace entlab {

/// Reports use insertion-ordered JSON so emitted bytes are reproducible.
using Json = nlohmann::ordered_json;

/// Fixture schema: {"n": int, "field": "real"|"complex",
///                  "re": [[...]], "im": [[...]]}.
/// Round trips are bit-exact: doubles serialize as the shortest
/// representation that parses back to the identical value.
Json matrix_to_json(const DenseMatrix& m);
DenseMatrix matrix_from_json(const Json& j);

}  // namespace entlab
