#pragma once

#include <string>

namespace homogen {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit digest, used to fingerprint input files in reports.
std::string fnv1a64_hex(const std::string& bytes);

} // namespace homogen
