#pragma once

namespace masq {
inline constexpr const char* version = "0.1.0";
}
