#pragma once

namespace fusswalk {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace fusswalk
