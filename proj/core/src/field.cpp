#include "qsum/field.hpp"

#include <algorithm>
#include <limits>

#include <fmt/core.h>

#include "qsum/error.hpp"

namespace qsum {

namespace {
constexpr std::size_t kNoPivot = std::numeric_limits<std::size_t>::max();
}

bool is_supported_modulus(unsigned p) { return p == 2 || p == 3 || p == 5 || p == 7; }

void require_supported_modulus(unsigned p) {
  if (!is_supported_modulus(p)) {
    throw MismatchError(fmt::format("unsupported modulus {} (expected a prime <= 7)", p));
  }
}

unsigned mod_inv(unsigned a, unsigned p) {
  if (a % p == 0) throw std::domain_error("inverse of zero in a prime field");
  // Fermat: a^(p-2).
  unsigned result = 1;
  unsigned base = a % p;
  for (unsigned e = p - 2; e > 0; e >>= 1) {
    if (e & 1U) result = (result * base) % p;
    base = (base * base) % p;
  }
  return result;
}

FieldScalar::FieldScalar(std::int64_t value, unsigned modulus) : modulus_(modulus) {
  require_supported_modulus(modulus);
  auto r = value % static_cast<std::int64_t>(modulus);
  if (r < 0) r += modulus;
  value_ = static_cast<unsigned>(r);
}

void FieldScalar::require_same_field(FieldScalar other) const {
  if (other.modulus_ != modulus_) {
    throw MismatchError(fmt::format("field modulus mismatch: {} vs {}", modulus_, other.modulus_));
  }
}

FieldScalar FieldScalar::operator+(FieldScalar other) const {
  require_same_field(other);
  return {mod_add(value_, other.value_, modulus_), modulus_};
}

FieldScalar FieldScalar::operator-(FieldScalar other) const {
  require_same_field(other);
  return {mod_sub(value_, other.value_, modulus_), modulus_};
}

FieldScalar FieldScalar::operator*(FieldScalar other) const {
  require_same_field(other);
  return {mod_mul(value_, other.value_, modulus_), modulus_};
}

FieldScalar FieldScalar::operator-() const { return {mod_sub(0, value_, modulus_), modulus_}; }

FieldScalar FieldScalar::inverse() const { return {mod_inv(value_, modulus_), modulus_}; }

// ---------------------------------------------------------------------------

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, unsigned modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(rows * cols, 0) {
  require_supported_modulus(modulus);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, unsigned modulus, std::vector<std::uint8_t> entries)
    : rows_(rows), cols_(cols), modulus_(modulus), entries_(std::move(entries)) {
  require_supported_modulus(modulus);
  if (entries_.size() != rows * cols) throw DataError("matrix entry count does not match its shape");
  for (auto& e : entries_) e = static_cast<std::uint8_t>(e % modulus_);
}

FieldMatrix FieldMatrix::identity(std::size_t n, unsigned modulus) {
  FieldMatrix m(n, n, modulus);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<int>>& rows, unsigned modulus) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  FieldMatrix m(rows.size(), cols, modulus);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DataError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      int v = rows[r][c] % static_cast<int>(modulus);
      if (v < 0) v += static_cast<int>(modulus);
      m.set(r, c, static_cast<unsigned>(v));
    }
  }
  return m;
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix t(cols_, rows_, modulus_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

std::vector<unsigned> FieldMatrix::multiply(std::span<const unsigned> v) const {
  if (v.size() != cols_) throw MismatchError("matrix/vector dimension mismatch");
  std::vector<unsigned> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    unsigned acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = mod_add(acc, mod_mul(at(r, c), v[c] % modulus_, modulus_), modulus_);
    out[r] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------

IncrementalEchelon::IncrementalEchelon(std::size_t cols, unsigned modulus)
    : cols_(cols), modulus_(modulus), pivot_of_col_(cols, kNoPivot) {
  require_supported_modulus(modulus);
}

void IncrementalEchelon::reduce(std::vector<std::uint8_t>& row) const {
  const unsigned p = modulus_;
  for (std::size_t c = 0; c < cols_; ++c) {
    const unsigned f = row[c];
    if (f == 0 || pivot_of_col_[c] == kNoPivot) continue;
    const auto& prow = pivot_rows_[pivot_of_col_[c]];
    if (p == 2) {
      for (std::size_t j = c; j < cols_; ++j) row[j] ^= prow[j];
    } else {
      const unsigned g = p - f;
      for (std::size_t j = c; j < cols_; ++j) {
        row[j] = static_cast<std::uint8_t>((row[j] + g * prow[j]) % p);
      }
    }
  }
}

bool IncrementalEchelon::insert(std::span<const std::uint8_t> row) {
  if (row.size() != cols_) throw MismatchError("row length does not match the system width");
  std::vector<std::uint8_t> work(row.begin(), row.end());
  for (auto& e : work) e = static_cast<std::uint8_t>(e % modulus_);
  reduce(work);
  auto lead = std::find_if(work.begin(), work.end(), [](std::uint8_t e) { return e != 0; });
  if (lead == work.end()) return false;
  const auto c = static_cast<std::size_t>(lead - work.begin());
  if (*lead != 1) {
    const unsigned s = mod_inv(*lead, modulus_);
    for (auto& e : work) e = static_cast<std::uint8_t>(mod_mul(e, s, modulus_));
  }
  pivot_of_col_[c] = pivot_rows_.size();
  pivot_rows_.push_back(std::move(work));
  pivot_col_of_row_.push_back(c);
  return true;
}

bool IncrementalEchelon::in_span(std::span<const std::uint8_t> row) const {
  if (row.size() != cols_) throw MismatchError("row length does not match the system width");
  std::vector<std::uint8_t> work(row.begin(), row.end());
  for (auto& e : work) e = static_cast<std::uint8_t>(e % modulus_);
  reduce(work);
  return std::all_of(work.begin(), work.end(), [](std::uint8_t e) { return e == 0; });
}

std::vector<std::size_t> IncrementalEchelon::pivot_columns() const {
  std::vector<std::size_t> cols = pivot_col_of_row_;
  std::sort(cols.begin(), cols.end());
  return cols;
}

FieldMatrix IncrementalEchelon::reduced_rows() const {
  const unsigned p = modulus_;
  const auto pivots = pivot_columns();
  std::vector<std::vector<std::uint8_t>> rows;
  rows.reserve(pivots.size());
  for (auto c : pivots) rows.push_back(pivot_rows_[pivot_of_col_[c]]);
  // Back-substitution: clear each pivot column from every other row.
  for (std::size_t i = rows.size(); i-- > 0;) {
    const auto c = pivots[i];
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == i) continue;
      const unsigned f = rows[k][c];
      if (f == 0) continue;
      const unsigned g = p - f;
      for (std::size_t j = c; j < cols_; ++j) {
        rows[k][j] = static_cast<std::uint8_t>((rows[k][j] + g * rows[i][j]) % p);
      }
    }
  }
  std::vector<std::uint8_t> flat;
  flat.reserve(rows.size() * cols_);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return FieldMatrix(rows.size(), cols_, p, std::move(flat));
}

std::vector<std::vector<unsigned>> IncrementalEchelon::nullspace_basis() const {
  const unsigned p = modulus_;
  const FieldMatrix r = reduced_rows();
  const auto pivots = pivot_columns();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<unsigned>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<unsigned> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = mod_sub(0, r.at(i, free), p);
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------

RrefResult rref(const FieldMatrix& m) {
  IncrementalEchelon ech(m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  FieldMatrix reduced(m.rows(), m.cols(), m.modulus());
  const FieldMatrix nonzero = ech.reduced_rows();
  for (std::size_t r = 0; r < nonzero.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) reduced.set(r, c, nonzero.at(r, c));
  return {std::move(reduced), ech.rank(), ech.pivot_columns()};
}

std::vector<std::vector<unsigned>> nullspace_basis(const FieldMatrix& m) {
  IncrementalEchelon ech(m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.nullspace_basis();
}

std::size_t rank(const FieldMatrix& m) {
  IncrementalEchelon ech(m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r) ech.insert(m.row(r));
  return ech.rank();
}

}  // namespace qsum
