#pragma once

namespace qdim {
inline constexpr const char* kVersion = "1.0.0";
}
