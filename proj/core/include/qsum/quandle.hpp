#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsum {

/// Quandle elements are 0-based internally; every text format is 1-based.
using Element = std::uint16_t;

/// Why a Cayley table is not a quandle. Witnesses are 1-based labels.
struct AxiomViolation {
  enum class Kind {
    EntryOutOfRange,    // table[x][y] not in 1..n; witnesses {x, y}
    Idempotency,        // x*x != x; witnesses {x}
    RightInvertibility, // z*y == w*y for z != w; witnesses {y, z, w}
    SelfDistributivity, // (x*y)*z != (x*z)*(y*z); witnesses {x, y, z}
  };
  Kind kind;
  std::vector<unsigned> witnesses;

  /// 0 for a range error, otherwise the number of the violated axiom (1-3).
  int axiom() const;
  std::string describe() const;
};

struct QuandleCheck;

/// A finite quandle given by its Cayley table x*y, with the inverse
/// operation inv_op(x, y) defined by inv_op(x, y) * y = x.
class Quandle {
 public:
  /// Verifies the axioms; throws VerificationError carrying the certificate.
  static Quandle from_table(std::size_t n, std::vector<Element> table);
  /// 1-based rows: rows[x-1][y-1] = x*y.
  static Quandle from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t order() const { return n_; }
  Element op(Element x, Element y) const { return table_[x * n_ + y]; }
  Element inv_op(Element x, Element y) const { return inverse_[x * n_ + y]; }

  /// Row-major table, table()[x*n + y] = x*y.
  std::span<const Element> table() const { return table_; }
  /// S_y as a vector: result[x] = x*y.
  std::vector<Element> right_multiplication(Element y) const;

  bool operator==(const Quandle& other) const { return n_ == other.n_ && table_ == other.table_; }

 private:
  Quandle(std::size_t n, std::vector<Element> table);
  friend QuandleCheck check_quandle(std::size_t n, std::vector<Element> table);

  std::size_t n_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
};

struct QuandleCheck {
  std::optional<Quandle> quandle;
  std::optional<AxiomViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

/// Verifies the quandle axioms on a 0-based row-major table. Checks run in the
/// order: entry range, axiom 1, axiom 2, axiom 3; the first failure (scanning
/// witnesses lexicographically) is reported.
QuandleCheck check_quandle(std::size_t n, std::vector<Element> table);

/// Orbit index of every element under the inner automorphism group.
std::vector<std::size_t> inner_orbits(const Quandle& q);
bool is_connected(const Quandle& q);

Quandle trivial_quandle(std::size_t n);
/// x*y = T x + (1 - T) y on Z_k; requires gcd(T, k) = 1.
Quandle alexander_quandle(std::size_t k, long long t);
/// R_k, the Alexander quandle with T = -1.
Quandle dihedral_quandle(std::size_t k);
/// The dual quandle on the same set: x *' y = inv_op(x, y), so its right
/// multiplications are the inverses of those of q.
Quandle dual_quandle(const Quandle& q);

// --- cycle notation ------------------------------------------------------

/// One "S_a = S_b = (...)(...)" line after tokenization. `permutation` is set
/// when the cycles are well formed; otherwise `defect` says what is wrong.
struct CycleLine {
  std::size_t line_number = 0;
  std::string text;
  std::vector<unsigned> labels;  // 1-based element labels sharing this S
  std::optional<std::vector<Element>> permutation;
  std::optional<std::string> defect;
};

struct CycleListing {
  std::size_t order = 0;
  std::vector<CycleLine> lines;
  /// Column index (0-based) -> index into `lines`.
  std::map<std::size_t, std::size_t> line_of_column;
};

/// Tokenizes a cycle listing without rejecting defective lines. Entries may be
/// separated by '~' or whitespace; an optional "quandle-cycles <n>" header
/// fixes the order, otherwise it is the number of distinct S labels.
/// Throws DataError when the listing cannot be interpreted at all (missing
/// or duplicate S labels).
CycleListing parse_cycle_listing(std::string_view text);

/// Strict parse: any defective line is a DataError; the table is verified.
Quandle parse_cycles(std::string_view text);

/// One line per element, "S_k = (a b c)(d e)"; identity columns print "()".
/// Equal columns are grouped as "S_1 = S_5 = ...".
std::string render_cycles(const Quandle& q);

// --- table format ----------------------------------------------------------

/// Disjoint cycles of a 0-based permutation in 1-based labels, "()" for the identity.
std::string render_permutation(std::span<const Element> perm);

/// "quandle <n>" followed by n rows of n 1-based entries; '#' starts a comment.
Quandle parse_quandle_table(std::string_view text);
std::string render_quandle_table(const Quandle& q, std::string_view comment = {});

/// Reads either format, chosen by the first non-comment token.
Quandle parse_quandle_text(std::string_view text);
Quandle load_quandle(const std::filesystem::path& path);

// --- isomorphism -----------------------------------------------------------

/// A bijection f with f(x*y) = f(x)*f(y), or nullopt when none exists.
std::optional<std::vector<Element>> find_isomorphism(const Quandle& a, const Quandle& b);
bool is_isomorphism(const Quandle& a, const Quandle& b, std::span<const Element> f);

// --- repair ----------------------------------------------------------------

struct ColumnRepair {
  std::size_t column = 0;      // 0-based
  std::string original_text;   // source line as listed
  std::string reason;
  std::vector<Element> repaired;
};

struct RepairResult {
  Quandle quandle;
  std::vector<ColumnRepair> repairs;
};

/// Rebuilds defective columns of a listing from the self-distributivity
/// identity S_{x*y} = S_y S_x S_y^{-1}. Columns whose line failed to parse are
/// recomputed from the intact ones by majority over all derivations. If the
/// table still fails the axioms, well-formed columns contradicted by most of
/// their derivations are replaced, one at a time, largest margin first. The
/// result must verify, otherwise VerificationError is thrown. In a connected
/// quandle every column is determined by the others, so a verified repair
/// leaves no freedom in the replaced columns.
RepairResult repair_cycle_listing(const CycleListing& listing);

}  // namespace qsum
