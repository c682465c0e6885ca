#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qsum/braid.hpp"

namespace qsum {

struct KnotRecord {
  std::string name;  // canonical, see canonical_knot_name
  BraidWord braid;
};

/// Normalizes knot names: "12n_0572", "12_{n0572}", "12N572" -> "12n_572";
/// "9_{13}" -> "9_13". A leading "m(" ... ")" is kept as the mirror marker
/// "m(9_42)". Throws DataError for names it cannot read.
std::string canonical_knot_name(std::string_view name);

/// Knot catalog, one record per line "name<TAB>m<TAB>letters"; '#' comments.
class Catalog {
 public:
  void add(KnotRecord record);  // replaces an existing record of the same name
  const KnotRecord* find(std::string_view name) const;
  /// Like find(), but resolves "m(K)" to the mirror of K's braid.
  std::optional<KnotRecord> resolve(std::string_view name) const;

  const std::vector<KnotRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  std::vector<KnotRecord> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

Catalog parse_catalog(std::string_view text);
std::string render_catalog(const Catalog& c, std::string_view comment = {});
Catalog load_catalog(const std::filesystem::path& path);

struct ImportReport {
  std::size_t rows = 0;
  std::size_t imported = 0;
  std::vector<std::string> skipped;  // "name: reason"
};

/// Reads a delimited table with a header row (',', ';', tab or '|'), taking the
/// knot name from `name_column` and the braid from `braid_column`
/// ("{1,-2,1}" or "[1,-2,1]" or space separated). The braid index is the
/// largest |letter| + 1 unless `index_column` names a column holding it.
/// Rows without braid data are skipped and reported; nothing is guessed.
Catalog import_braid_table(std::string_view text, ImportReport& report, std::string_view name_column = "name",
                           std::string_view braid_column = "braid_notation",
                           std::string_view index_column = {});

}  // namespace qsum
