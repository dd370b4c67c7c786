#pragma once

namespace witnesskit {
inline constexpr const char* kVersion = "witnesskit 0.1.0";
}
