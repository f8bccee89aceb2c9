#pragma once

#include <string>

namespace billiards {

std::string read_file(const std::string& path);

// Writes via a temporary file in the same directory plus rename, so an
// interrupted run never leaves a truncated document behind.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace billiards
