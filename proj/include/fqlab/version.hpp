#pragma once

namespace fqlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fqlab
