#pragma once

#include <string>
#include <string_view>

namespace cablemap {

// SHA-256, lowercase hex.
std::string sha256_hex(std::string_view data);

// Digest of a file's raw bytes. Throws InputError if unreadable.
std::string sha256_file_hex(const std::string& path);

}  // namespace cablemap
