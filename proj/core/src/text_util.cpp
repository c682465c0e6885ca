#include "text_util.hpp"

#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "qsum/error.hpp"

namespace qsum::detail {

std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '\n') in_comment = false;
    else if (ch == '#') in_comment = true;
    if (!in_comment) out += ch;
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {} file {}", what, path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qsum::detail
