#pragma once

// Reader for the TOML subset used by run configs: [table] headers,
// key = value pairs, strings, booleans, integers, floats (incl. inf/nan),
// single-line arrays of scalars, and # comments. Keys inside a table are
// flattened to "table.key".

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dicke::toml {

using Scalar = std::variant<bool, std::int64_t, double, std::string>;
using Value = std::variant<bool, std::int64_t, double, std::string, std::vector<Scalar>>;
using Table = std::map<std::string, Value>;

// Throws ConfigError with the offending line number.
Table parse(std::string_view text);

}  // namespace dicke::toml
