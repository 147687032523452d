#pragma once

#include <string>
#include <string_view>

namespace incoherent {

/// SHA-256 digest of a byte string, as lowercase hex.
std::string sha256_hex_of(std::string_view data);

}  // namespace incoherent
