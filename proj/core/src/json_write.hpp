#pragma once

#include <string>

#include "json.hpp"

namespace ctc::detail {

using Json = nlohmann::ordered_json;

// Serializes with every floating-point number printed as %.17g.
std::string dump17(const Json& j, int indent = 2);

}  // namespace ctc::detail
