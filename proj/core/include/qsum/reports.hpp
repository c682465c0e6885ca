#pragma once

#include <string>
#include <vector>

#include "qsum/invariant_matrix.hpp"

namespace qsum {

/// Knots grouped by equal invariant vectors over the chosen columns.
struct KnotClass {
  std::vector<std::string> knots;
  /// First column (in matrix order) on which the members agree.
  std::string first_agreeing_column;
};

struct DistinguishReport {
  std::vector<std::string> columns;
  std::vector<KnotClass> classes;  // complete rows only, in first-appearance order
  /// Rows with holes in the chosen columns, each with the complete or
  /// incomplete rows it matches on every known cell. They are never merged
  /// into a class.
  std::vector<std::pair<std::string, std::vector<std::string>>> unresolved;

  bool fully_distinguished() const;
};

/// Partition over `columns` (all columns when empty).
DistinguishReport distinguish_report(const InvariantMatrix& m, const std::vector<std::string>& columns = {});

enum class MirrorVerdict { Distinguished, NotDistinguished, Unknown };

struct MirrorRow {
  std::string knot;
  std::vector<Cell> knot_cells;
  std::vector<Cell> mirror_cells;
  MirrorVerdict verdict = MirrorVerdict::Unknown;
};

/// For each knot K, compares the invariant vectors of K and m(K).
/// Distinguished when some column is known on both sides and differs;
/// NotDistinguished when every column is known and equal.
std::vector<MirrorRow> mirror_report(const Battery& battery, const Catalog& catalog,
                                     const std::vector<std::string>& knots, const MatrixOptions& options = {},
                                     ResultsStore* store = nullptr);

struct SimilarityClass {
  std::vector<std::string> labels;
  bool complete = true;  // false when a member has holes on the family
};

/// Battery columns partitioned by equality on every knot of the matrix.
/// Columns with holes are kept as singleton incomplete classes.
std::vector<SimilarityClass> similarity_classes(const InvariantMatrix& m);

std::string render_distinguish(const DistinguishReport& r);
std::string render_mirror_report(const std::vector<MirrorRow>& rows, const std::vector<std::string>& labels);
std::string render_similarity(const std::vector<SimilarityClass>& classes);
/// "# battery" header lines: label, files and SHA-256 hashes.
std::string render_battery_provenance(const Battery& battery);

std::string to_string(MirrorVerdict v);

}  // namespace qsum
