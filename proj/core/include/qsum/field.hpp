#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qsum {

/// Moduli accepted by the prime-field types.
bool is_supported_modulus(unsigned p);

/// Throws MismatchError unless p is a prime no larger than 7.
void require_supported_modulus(unsigned p);

/// An element of GF(p), always stored reduced.
class FieldScalar {
 public:
  FieldScalar(std::int64_t value, unsigned modulus);

  unsigned value() const { return value_; }
  unsigned modulus() const { return modulus_; }

  FieldScalar operator+(FieldScalar other) const;
  FieldScalar operator-(FieldScalar other) const;
  FieldScalar operator*(FieldScalar other) const;
  FieldScalar operator-() const;
  FieldScalar inverse() const;

  bool operator==(const FieldScalar&) const = default;

 private:
  void require_same_field(FieldScalar other) const;

  unsigned value_;
  unsigned modulus_;
};

// Raw-integer helpers for hot loops; inputs must already be reduced.
inline unsigned mod_add(unsigned a, unsigned b, unsigned p) {
  unsigned s = a + b;
  return s >= p ? s - p : s;
}
inline unsigned mod_sub(unsigned a, unsigned b, unsigned p) { return a >= b ? a - b : a + p - b; }
inline unsigned mod_mul(unsigned a, unsigned b, unsigned p) { return (a * b) % p; }
unsigned mod_inv(unsigned a, unsigned p);

/// Dense matrix over GF(p), row-major.
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, unsigned modulus);
  FieldMatrix(std::size_t rows, std::size_t cols, unsigned modulus, std::vector<std::uint8_t> entries);

  static FieldMatrix identity(std::size_t n, unsigned modulus);
  /// Builds from integer rows, reducing each entry mod p.
  static FieldMatrix from_rows(const std::vector<std::vector<int>>& rows, unsigned modulus);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned modulus() const { return modulus_; }

  unsigned at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, unsigned v) { entries_[r * cols_ + c] = static_cast<std::uint8_t>(v % modulus_); }

  std::span<const std::uint8_t> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
  std::span<std::uint8_t> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }

  FieldMatrix transposed() const;
  std::vector<unsigned> multiply(std::span<const unsigned> v) const;

  bool operator==(const FieldMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  unsigned modulus_;
  std::vector<std::uint8_t> entries_;
};

struct RrefResult {
  FieldMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Reduced row echelon form. Pivots are taken at the first nonzero entry
/// scanning columns left to right, rows top to bottom.
RrefResult rref(const FieldMatrix& m);

/// Basis of {v : Mv = 0}: one vector per free column, with a 1 at that column.
std::vector<std::vector<unsigned>> nullspace_basis(const FieldMatrix& m);

std::size_t rank(const FieldMatrix& m);

/// Row-by-row Gaussian elimination for systems too tall to materialize.
/// Stores at most `cols` independent rows; the resulting RREF and nullspace
/// match rref()/nullspace_basis() on the matrix of all inserted rows.
class IncrementalEchelon {
 public:
  IncrementalEchelon(std::size_t cols, unsigned modulus);

  /// Reduces the row against the stored pivots; stores it if independent.
  /// Returns true when the row increased the rank.
  bool insert(std::span<const std::uint8_t> row);

  /// True when the row lies in the span of the inserted rows.
  bool in_span(std::span<const std::uint8_t> row) const;

  std::size_t rank() const { return pivot_rows_.size(); }
  std::size_t cols() const { return cols_; }
  unsigned modulus() const { return modulus_; }

  /// Fully reduced rows sorted by pivot column.
  FieldMatrix reduced_rows() const;
  std::vector<std::size_t> pivot_columns() const;
  std::vector<std::vector<unsigned>> nullspace_basis() const;

 private:
  void reduce(std::vector<std::uint8_t>& row) const;

  std::size_t cols_;
  unsigned modulus_;
  // pivot_of_col_[c] = index into pivot_rows_, or npos.
  std::vector<std::size_t> pivot_of_col_;
  std::vector<std::vector<std::uint8_t>> pivot_rows_;
  std::vector<std::size_t> pivot_col_of_row_;
};

}  // namespace qsum
