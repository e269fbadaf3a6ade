#pragma once

#include <string>

#include "json.hpp"

namespace optwin {

// "%.17g" rendering of a double; round-trips exactly through strtod.
std::string format_double(double value);

// Pretty-prints `value` like nlohmann's dump(2) but writes every floating
// point number with 17 significant digits. Non-finite numbers become null.
std::string dump_json(const nlohmann::json& value);

}  // namespace optwin
