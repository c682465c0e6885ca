#include "qsum/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <fmt/core.h>

#include "qsum/error.hpp"
#include "text_util.hpp"

namespace qsum {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Splits one delimited line, honouring double quotes.
std::vector<std::string> split_delimited(std::string_view line, char delim) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace

std::string canonical_knot_name(std::string_view name) {
  std::string s;
  for (char c : trim(name))
    if (c != '$' && c != '{' && c != '}' && !std::isspace(static_cast<unsigned char>(c))) s += c;
  const std::string low = lower(s);
  if (low.size() > 3 && low.rfind("m(", 0) == 0 && low.back() == ')') {
    return "m(" + canonical_knot_name(std::string_view(s).substr(2, s.size() - 3)) + ")";
  }
  std::size_t i = 0;
  if (i < low.size() && low[i] == 'k') ++i;
  const std::size_t crossings_begin = i;
  while (i < low.size() && std::isdigit(static_cast<unsigned char>(low[i]))) ++i;
  const std::string crossings = low.substr(crossings_begin, i - crossings_begin);
  if (i < low.size() && low[i] == '_') ++i;
  std::string family;
  if (i < low.size() && (low[i] == 'a' || low[i] == 'n')) family = low[i++];
  if (i < low.size() && low[i] == '_') ++i;
  const std::size_t index_begin = i;
  while (i < low.size() && std::isdigit(static_cast<unsigned char>(low[i]))) ++i;
  std::string index = low.substr(index_begin, i - index_begin);
  if (crossings.empty() || index.empty() || i != low.size()) {
    throw DataError(fmt::format("cannot read knot name '{}'", name));
  }
  index.erase(0, std::min(index.find_first_not_of('0'), index.size() - 1));
  return crossings + family + "_" + index;
}

void Catalog::add(KnotRecord record) {
  record.name = canonical_knot_name(record.name);
  if (auto it = index_.find(record.name); it != index_.end()) {
    records_[it->second] = std::move(record);
    return;
  }
  index_.emplace(record.name, records_.size());
  records_.push_back(std::move(record));
}

const KnotRecord* Catalog::find(std::string_view name) const {
  auto it = index_.find(canonical_knot_name(name));
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::optional<KnotRecord> Catalog::resolve(std::string_view name) const {
  const std::string canon = canonical_knot_name(name);
  if (const auto* direct = find(canon)) return *direct;
  if (canon.rfind("m(", 0) == 0) {
    if (const auto* base = find(canon.substr(2, canon.size() - 3))) return KnotRecord{canon, mirror(base->braid)};
  }
  return std::nullopt;
}

Catalog parse_catalog(std::string_view text) {
  Catalog out;
  std::istringstream in{std::string(text)};
  std::size_t line_number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_number;
    const std::string line = detail::strip_comments(raw);
    if (trim(line).empty()) continue;
    const auto fields = split_delimited(line, '\t');
    if (fields.size() != 3) {
      throw DataError(fmt::format("catalog line {}: expected 'name<TAB>m<TAB>letters'", line_number));
    }
    try {
      const std::string m_text(trim(fields[1]));
      std::size_t used = 0;
      const long m = std::stol(m_text, &used);
      if (used != m_text.size() || m < 1) throw DataError(fmt::format("bad braid index '{}'", m_text));
      out.add({std::string(trim(fields[0])),
               BraidWord::make(static_cast<std::size_t>(m), parse_braid_letters(fields[2]))});
    } catch (const std::logic_error&) {
      throw DataError(fmt::format("catalog line {}: bad braid index", line_number));
    } catch (const DataError& e) {
      throw DataError(fmt::format("catalog line {}: {}", line_number, e.what()));
    }
  }
  return out;
}

std::string render_catalog(const Catalog& c, std::string_view comment) {
  std::string out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  }
  for (const auto& r : c.records()) out += fmt::format("{}\t{}\t{}\n", r.name, r.braid.strands, r.braid.letters_text());
  return out;
}

Catalog load_catalog(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path, "catalog");
  try {
    return parse_catalog(text);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

Catalog import_braid_table(std::string_view text, ImportReport& report, std::string_view name_column,
                           std::string_view braid_column, std::string_view index_column) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) throw DataError("braid table is empty");
  // The delimiter is whichever candidate splits the header into the most fields.
  char delim = ',';
  std::size_t widest = 0;
  for (char d : {',', ';', '\t', '|'}) {
    const auto n = split_delimited(header, d).size();
    if (n > widest) {
      widest = n;
      delim = d;
    }
  }
  const auto columns = split_delimited(header, delim);
  auto column_of = [&](std::string_view want) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (lower(trim(columns[i])) == lower(want)) return i;
    return std::nullopt;
  };
  const auto name_idx = column_of(name_column);
  const auto braid_idx = column_of(braid_column);
  if (!name_idx || !braid_idx) {
    throw DataError(fmt::format("braid table needs columns '{}' and '{}'", name_column, braid_column));
  }
  std::optional<std::size_t> index_idx;
  if (!index_column.empty()) {
    index_idx = column_of(index_column);
    if (!index_idx) throw DataError(fmt::format("braid table has no column '{}'", index_column));
  }

  Catalog out;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty()) continue;
    ++report.rows;
    const auto fields = split_delimited(line, delim);
    const std::string raw_name =
        *name_idx < fields.size() ? std::string(trim(fields[*name_idx])) : std::string("<row " + std::to_string(report.rows) + ">");
    auto skip = [&](std::string_view why) { report.skipped.push_back(fmt::format("{}: {}", raw_name, why)); };
    if (*braid_idx >= fields.size() || trim(fields[*braid_idx]).empty()) {
      skip("no braid data");
      continue;
    }
    try {
      const std::string name = canonical_knot_name(raw_name);
      auto letters = parse_braid_letters(fields[*braid_idx]);
      std::size_t strands = 1;
      for (int l : letters) strands = std::max(strands, static_cast<std::size_t>(std::abs(l)) + 1);
      if (index_idx && *index_idx < fields.size() && !trim(fields[*index_idx]).empty()) {
        strands = std::max(strands, static_cast<std::size_t>(std::stoul(std::string(trim(fields[*index_idx])))));
      }
      out.add({name, BraidWord::make(strands, std::move(letters))});
      ++report.imported;
    } catch (const DataError& e) {
      skip(e.what());
    } catch (const std::logic_error& e) {
      skip(e.what());
    }
  }
  return out;
}

}  // namespace qsum
