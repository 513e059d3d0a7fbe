#pragma once

#define DRHEAT_VERSION "0.1.0"

namespace drheat {
inline const char* version() { return DRHEAT_VERSION; }
}  // namespace drheat
