#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsum/battery.hpp"
#include "qsum/catalog.hpp"
#include "qsum/coloring.hpp"
#include "qsum/state_sum_value.hpp"

namespace qsum {

/// A cell value: a plain coloring count (modulus 0) or a state sum.
struct InvariantValue {
  unsigned modulus = 0;
  std::vector<std::uint64_t> counts;  // a single entry for a count

  static InvariantValue count(std::uint64_t n);
  static InvariantValue from(const StateSumValue& v);

  std::uint64_t total() const;
  bool is_constant() const;

  /// Coefficient-vector equality; values of different moduli (or a count and
  /// a state sum) are equal only when both are constant with the same total.
  bool operator==(const InvariantValue& other) const;

  /// "72" for counts, the state-sum rendering otherwise.
  std::string to_string() const;
  /// Store encoding, "0:72" or "2:40+32u".
  std::string encode() const;
  static InvariantValue decode(std::string_view text);
};

/// A computed value, or a hole with the reason it is missing.
struct Cell {
  std::optional<InvariantValue> value;
  std::string hole;          // e.g. "budget exceeded after 1000000 nodes"
  std::uint64_t nodes = 0;   // solver nodes spent (0 when reloaded)
  bool reloaded = false;
  bool known() const { return value.has_value(); }
};

/// Append-only "name<TAB>label<TAB>value" lines; on load the last line for a
/// (name, label) pair wins. Lines whose value starts with '!' record holes.
class ResultsStore {
 public:
  ResultsStore() = default;
  explicit ResultsStore(std::filesystem::path path);

  std::optional<Cell> lookup(const std::string& name, const std::string& label) const;
  void record(const std::string& name, const std::string& label, const Cell& cell);
  std::size_t size() const { return cells_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::map<std::pair<std::string, std::string>, Cell> cells_;
  mutable std::mutex mutex_;
};

struct InvariantMatrix {
  std::vector<std::string> knots;   // canonical names, row order
  std::vector<std::string> labels;  // battery labels, column order
  std::vector<std::vector<Cell>> cells;

  const Cell& at(std::string_view knot, std::string_view label) const;
};

struct MatrixOptions {
  SolverOptions solver{};
  /// Cells computed concurrently; each cell's solver uses solver.threads.
  unsigned cell_threads = 1;
  /// Called after each cell (from worker threads, serialized).
  std::function<void(const std::string& knot, const std::string& label, const Cell&)> progress;
};

/// Computes every (knot, entry) cell. Knot names may include "m(K)" for
/// mirrors. Missing catalog records throw DataError before any work starts;
/// a budget overrun leaves a hole and the run continues. With a store,
/// known cells are reused and new ones appended.
InvariantMatrix compute_invariant_matrix(const Battery& battery, const Catalog& catalog,
                                         const std::vector<std::string>& knots, const MatrixOptions& options = {},
                                         ResultsStore* store = nullptr);

/// A single cell: coloring count or state sum of one entry on one braid.
Cell compute_cell(const BatteryEntry& entry, const BraidWord& braid, const SolverOptions& options);

/// TSV: header "knot<TAB>label..." then one row per knot; holes print "?".
std::string render_matrix_tsv(const InvariantMatrix& m);

}  // namespace qsum
