#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace qsum::detail {

/// Drops everything from '#' to the end of each line.
std::string strip_comments(std::string_view text);

/// Whole file as a string; throws DataError when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path, std::string_view what);

}  // namespace qsum::detail
