#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsum/field.hpp"
#include "qsum/quandle.hpp"

namespace qsum {

/// A 2-cochain X x X -> GF(p), values[x*n + y] = phi(x, y) with 0-based x, y.
class Cocycle {
 public:
  Cocycle(std::size_t order, unsigned modulus);
  Cocycle(std::size_t order, unsigned modulus, std::vector<std::uint8_t> values);

  std::size_t order() const { return n_; }
  unsigned modulus() const { return p_; }

  unsigned at(Element x, Element y) const { return values_[x * n_ + y]; }
  void set(Element x, Element y, unsigned v) { values_[x * n_ + y] = static_cast<std::uint8_t>(v % p_); }
  std::span<const std::uint8_t> values() const { return values_; }

  Cocycle operator+(const Cocycle& other) const;
  bool operator==(const Cocycle& other) const = default;

 private:
  std::size_t n_;
  unsigned p_;
  std::vector<std::uint8_t> values_;
};

/// Where a cochain fails to be a 2-cocycle. Witnesses are 1-based.
struct CocycleViolation {
  enum class Kind {
    Diagonal,   // phi(x,x) != 0; witnesses {x}
    Condition,  // phi(x,y) - phi(x,z) + phi(x*y,z) - phi(x*z,y*z) != 0; witnesses {x,y,z}
  };
  Kind kind;
  std::vector<unsigned> witnesses;
  unsigned residue = 0;

  std::string describe() const;
};

/// Checks phi(x,x) = 0 for all x, then the 2-cocycle condition over all
/// triples in lexicographic order. Returns the first violation.
std::optional<CocycleViolation> verify_cocycle(const Quandle& q, const Cocycle& phi);

/// A subspace of the n^2-dimensional cochain space, coordinates row-major in (x, y).
struct CochainSpace {
  std::size_t order = 0;
  unsigned modulus = 2;
  std::vector<Cocycle> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Z^2(X; Z_p): nullspace of the diagonal and cocycle conditions.
CochainSpace cocycle_space(const Quandle& q, unsigned p);
/// B^2(X; Z_p): row space of delta, reduced to an echelon basis.
CochainSpace coboundary_space(const Quandle& q, unsigned p);

/// delta f (x, y) = f(x) - f(x*y).
Cocycle coboundary(const Quandle& q, std::span<const unsigned> f, unsigned p);

/// Membership of phi in B^2. Throws VerificationError when phi is not a cocycle.
bool is_coboundary(const Quandle& q, const Cocycle& phi);

/// A closest cocycle to a cochain in Hamming distance, found by walking all
/// of Z^2. `ties` counts the cocycles at the same distance; the one returned
/// comes first in the walk.
struct CocycleRepair {
  struct Change {
    unsigned x, y;  // 1-based
    unsigned from, to;
  };
  Cocycle cocycle;
  std::size_t distance = 0;
  std::uint64_t ties = 0;
  std::vector<Change> changes;
};

/// Throws BudgetExceeded when p^dim Z^2 exceeds `max_candidates`.
CocycleRepair nearest_cocycle(const Quandle& q, const Cocycle& phi, std::uint64_t max_candidates = 1ULL << 32);

/// Indexes the quotient chain groups: tuples with no two adjacent entries equal.
class ChainBasis {
 public:
  ChainBasis(std::size_t order, std::size_t degree);

  std::size_t size() const { return tuples_.size(); }
  const std::vector<Element>& tuple(std::size_t i) const { return tuples_[i]; }
  /// Index of a tuple, or nullopt for a degenerate one.
  std::optional<std::size_t> index(std::span<const Element> t) const;

 private:
  std::size_t n_;
  std::size_t degree_;
  std::vector<std::vector<Element>> tuples_;
  std::vector<std::size_t> index_;  // dense over n^degree, npos when degenerate
};

/// Matrix of the boundary map on the quotient complex C^Q, degree 2 or 3.
/// Columns index C_degree, rows index C_{degree-1}; degree 1 chains are all
/// single elements.
FieldMatrix boundary_matrix(const Quandle& q, std::size_t degree, unsigned p);

/// dim H^2_Q(X; Z_p) from the boundary matrices:
/// (|C_2| - rank d2 - rank d3). Independent of cocycle_space.
std::size_t second_cohomology_dimension(const Quandle& q, unsigned p);

// --- file format -------------------------------------------------------------

/// "cocycle <n> <p>" then "x y v" lines for nonzero entries, 1-based; '#' comments.
Cocycle parse_cocycle(std::string_view text);
std::string render_cocycle(const Cocycle& phi, std::string_view comment = {});
Cocycle load_cocycle(const std::filesystem::path& path);

}  // namespace qsum
