#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <numeric>
#include <sstream>
#include <variant>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/error.hpp"
#include "qsum/quandle.hpp"
#include "text_util.hpp"

namespace qsum {

namespace {

using detail::strip_comments;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

bool is_separator(char ch) { return ch == '~' || std::isspace(static_cast<unsigned char>(ch)) || ch == ','; }

// Parses "(a b c)(d e)" into a permutation of 0..n-1, or returns a defect.
std::variant<std::vector<Element>, std::string> parse_cycle_text(std::string_view text, std::size_t n) {
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), Element{0});
  std::vector<bool> seen(n, false);
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '\\' ||
                               text[i] == '$' || text[i] == '~'))
      ++i;
  };
  skip_blank();
  while (i < text.size()) {
    if (text[i] == '.' || text[i] == ',') {
      ++i;
      skip_blank();
      continue;
    }
    if (text[i] != '(') return fmt::format("unexpected character '{}' outside a cycle", text[i]);
    ++i;
    std::vector<Element> cycle;
    bool closed = false;
    while (i < text.size()) {
      if (is_separator(text[i])) {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        closed = true;
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && !is_separator(text[j]) && text[j] != ')' && text[j] != '(') ++j;
      std::string_view token = text.substr(i, j - i);
      if (token.empty()) return fmt::format("unexpected '{}' inside a cycle", text[i]);
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        return fmt::format("malformed entry '{}'", token);
      }
      if (value < 1 || value > n) return fmt::format("entry {} outside 1..{}", value, n);
      const auto e = static_cast<Element>(value - 1);
      if (seen[e]) return fmt::format("element {} repeated", value);
      seen[e] = true;
      cycle.push_back(e);
      i = j;
    }
    if (!closed) return std::string("unterminated cycle");
    for (std::size_t k = 0; k < cycle.size(); ++k) perm[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_blank();
  }
  return perm;
}

struct RawGroup {
  std::size_t offset;
  std::vector<unsigned> labels;
  std::string body;
};

// Splits the listing into "S_a = S_b = body" groups.
std::vector<RawGroup> split_groups(std::string_view text) {
  std::vector<RawGroup> groups;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '~' || text[i] == '$'))
      ++i;
  };
  auto at_label = [&](std::size_t k) { return k + 1 < text.size() && text[k] == 'S' && text[k + 1] == '_'; };
  while (true) {
    while (i < text.size() && !at_label(i)) {
      if (!std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '\\' && text[i] != '$') {
        throw DataError(fmt::format("line {}: text before the first S_k label", line_of_offset(text, i)));
      }
      ++i;
    }
    if (i >= text.size()) break;
    RawGroup g{i, {}, {}};
    while (at_label(i)) {
      i += 2;
      const bool braced = i < text.size() && text[i] == '{';
      if (braced) ++i;
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw DataError(fmt::format("line {}: S_ without an index", line_of_offset(text, i)));
      unsigned label = 0;
      std::from_chars(text.data() + i, text.data() + j, label);
      i = j;
      if (braced) {
        if (i >= text.size() || text[i] != '}') throw DataError(fmt::format("line {}: unclosed S_{{", line_of_offset(text, i)));
        ++i;
      }
      g.labels.push_back(label);
      skip_ws();
      if (i >= text.size() || text[i] != '=') {
        throw DataError(fmt::format("line {}: expected '=' after S_{}", line_of_offset(text, i), label));
      }
      ++i;
      skip_ws();
    }
    std::size_t end = i;
    while (end < text.size() && !at_label(end)) ++end;
    g.body = trim(text.substr(i, end - i));
    i = end;
    groups.push_back(std::move(g));
  }
  return groups;
}

}  // namespace

CycleListing parse_cycle_listing(std::string_view text) {
  std::string body = strip_comments(text);
  std::optional<std::size_t> declared;
  {
    std::istringstream in(body);
    std::string first;
    in >> first;
    if (first == "quandle-cycles") {
      std::size_t n = 0;
      if (!(in >> n) || n == 0) throw DataError("bad 'quandle-cycles <n>' header");
      declared = n;
      const auto pos = body.find("quandle-cycles");
      const auto eol = body.find('\n', pos);
      // Blank the header but keep line numbering.
      for (std::size_t k = pos; k < (eol == std::string::npos ? body.size() : eol); ++k) body[k] = ' ';
    }
  }

  auto groups = split_groups(body);
  std::set<unsigned> labels;
  for (const auto& g : groups)
    for (unsigned l : g.labels)
      if (!labels.insert(l).second) throw DataError(fmt::format("S_{} defined more than once", l));

  CycleListing listing;
  listing.order = declared.value_or(labels.size());
  const std::size_t n = listing.order;
  if (n == 0) throw DataError("empty cycle listing");
  for (unsigned l : labels)
    if (l < 1 || l > n) throw DataError(fmt::format("S_{} outside 1..{}", l, n));
  if (labels.size() != n) {
    for (unsigned l = 1; l <= n; ++l)
      if (!labels.count(l)) throw DataError(fmt::format("S_{} is not defined", l));
  }

  for (auto& g : groups) {
    CycleLine line;
    line.line_number = line_of_offset(body, g.offset);
    line.text = g.body;
    line.labels = g.labels;
    auto parsed = parse_cycle_text(g.body, n);
    if (auto* perm = std::get_if<std::vector<Element>>(&parsed)) line.permutation = std::move(*perm);
    else line.defect = std::get<std::string>(parsed);
    for (unsigned l : line.labels) listing.line_of_column[l - 1] = listing.lines.size();
    listing.lines.push_back(std::move(line));
  }
  return listing;
}

Quandle parse_cycles(std::string_view text) {
  const auto listing = parse_cycle_listing(text);
  const std::size_t n = listing.order;
  std::vector<Element> table(n * n);
  for (const auto& line : listing.lines) {
    if (line.defect) {
      throw DataError(fmt::format("line {} (S_{}): {}", line.line_number, line.labels.front(), *line.defect));
    }
    for (unsigned l : line.labels)
      for (std::size_t x = 0; x < n; ++x) table[x * n + (l - 1)] = (*line.permutation)[x];
  }
  return Quandle::from_table(n, std::move(table));
}

std::string render_permutation(std::span<const Element> perm) {
  std::vector<bool> visited(perm.size(), false);
  std::string cycles;
  for (std::size_t start = 0; start < perm.size(); ++start) {
    if (visited[start] || perm[start] == start) continue;
    std::vector<std::string> entries;
    for (std::size_t x = start; !visited[x]; x = perm[x]) {
      visited[x] = true;
      entries.push_back(std::to_string(x + 1));
    }
    cycles += fmt::format("({})", fmt::join(entries, " "));
  }
  return cycles.empty() ? "()" : cycles;
}

std::string render_cycles(const Quandle& q) {
  const std::size_t n = q.order();
  std::string out = fmt::format("quandle-cycles {}\n", n);
  std::vector<bool> done(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (done[k]) continue;
    const auto column = q.right_multiplication(static_cast<Element>(k));
    std::vector<std::size_t> same;
    for (std::size_t j = k; j < n; ++j) {
      if (!done[j] && q.right_multiplication(static_cast<Element>(j)) == column) {
        same.push_back(j);
        done[j] = true;
      }
    }
    for (auto j : same) out += fmt::format("S_{} = ", j + 1);
    out += render_permutation(column);
    out += '\n';
  }
  return out;
}

Quandle parse_quandle_table(std::string_view text) {
  std::istringstream in(strip_comments(text));
  std::string keyword;
  std::size_t n = 0;
  if (!(in >> keyword) || keyword != "quandle") throw DataError("quandle table must start with 'quandle <n>'");
  if (!(in >> n) || n == 0) throw DataError("bad quandle order in header");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (!(in >> rows[x][y])) {
        throw DataError(fmt::format("quandle table ended early at row {}, column {}", x + 1, y + 1));
      }
    }
  }
  std::string extra;
  if (in >> extra) throw DataError(fmt::format("unexpected trailing token '{}' after the table", extra));
  return Quandle::from_rows(rows);
}

std::string render_quandle_table(const Quandle& q, std::string_view comment) {
  const std::size_t n = q.order();
  std::string out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  }
  out += fmt::format("quandle {}\n", n);
  const int width = static_cast<int>(std::to_string(n).size());
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (y) out += ' ';
      out += fmt::format("{:>{}}", q.op(static_cast<Element>(x), static_cast<Element>(y)) + 1, width);
    }
    out += '\n';
  }
  return out;
}

Quandle parse_quandle_text(std::string_view text) {
  std::istringstream in(strip_comments(text));
  std::string first;
  in >> first;
  if (first == "quandle") return parse_quandle_table(text);
  if (first == "quandle-cycles" || first.rfind("S_", 0) == 0) return parse_cycles(text);
  throw DataError("unrecognized quandle format (expected 'quandle <n>' or a cycle listing)");
}

Quandle load_quandle(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path, "quandle");
  try {
    return parse_quandle_text(text);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  } catch (const VerificationError& e) {
    throw VerificationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace qsum
