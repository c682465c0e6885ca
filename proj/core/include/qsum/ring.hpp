#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsum/quandle.hpp"

namespace qsum {

/// Largest quandle order for which the GF(2) idempotent scan is allowed.
inline constexpr std::size_t kMaxGf2ScanOrder = 26;
/// Largest quandle order for the exploratory scan over GF(p), p > 2.
inline constexpr std::size_t kMaxOddScanOrder = 16;

/// An element sum a_x e_x of the quandle ring k[X] with k = GF(p).
class RingElement {
 public:
  RingElement(std::shared_ptr<const Quandle> base, unsigned modulus, std::vector<std::uint8_t> coeffs);

  static RingElement zero(std::shared_ptr<const Quandle> base, unsigned modulus);
  static RingElement basis(std::shared_ptr<const Quandle> base, unsigned modulus, Element x);
  /// GF(2) element whose support is the set bits of `mask`.
  static RingElement from_mask(std::shared_ptr<const Quandle> base, std::uint64_t mask);

  const Quandle& base() const { return *base_; }
  const std::shared_ptr<const Quandle>& base_ptr() const { return base_; }
  unsigned modulus() const { return modulus_; }
  const std::vector<std::uint8_t>& coeffs() const { return coeffs_; }

  std::vector<Element> support() const;
  std::uint64_t mask() const;  // GF(2), order <= 64
  bool is_zero() const;

  RingElement operator+(const RingElement& other) const;
  /// (sum a_x e_x)(sum b_y e_y) = sum a_x b_y e_{x*y}.
  RingElement operator*(const RingElement& other) const;
  bool operator==(const RingElement& other) const;

  /// "e1+e3+e5", with coefficients when they are not 1 ("2e4").
  std::string to_string() const;

 private:
  void require_compatible(const RingElement& other) const;

  std::shared_ptr<const Quandle> base_;
  unsigned modulus_;
  std::vector<std::uint8_t> coeffs_;
};

/// All non-zero v with v*v = v, in canonical order: e_1..e_n first, then the
/// nontrivial idempotents by ascending coefficient vector read as a
/// little-endian base-p integer (for p = 2: the support bitmask).
struct IdempotentSet {
  std::shared_ptr<const Quandle> base;
  unsigned modulus = 2;
  std::vector<RingElement> elements;
  /// Candidates examined by the scan (p^n including zero).
  std::uint64_t candidates_scanned = 0;
};

struct ScanOptions {
  unsigned threads = 1;
  /// log2 of the number of masks handled per work block.
  unsigned block_bits = 16;
};

/// Exhaustive scan. GF(2) supports order <= kMaxGf2ScanOrder; GF(p) for
/// p > 2 supports order <= kMaxOddScanOrder. Larger inputs throw BudgetExceeded.
IdempotentSet enumerate_idempotents(std::shared_ptr<const Quandle> q, unsigned p, const ScanOptions& options = {});

/// Straightforward double-loop v*v check over GF(2); for tests.
std::vector<std::uint64_t> idempotent_masks_naive(const Quandle& q);

/// Why the idempotents do not form a quandle under ring multiplication.
struct IdempotentCertificate {
  enum class Kind {
    RightMultiplicationNotInjective,  // u1*v == u2*v; witnesses {v, u1, u2}
    NotClosed,                        // u*v not idempotent; witnesses {u, v}
    NotSelfDistributive,              // witnesses {u, v, w}
  };
  Kind kind;
  std::vector<RingElement> witnesses;
  std::optional<RingElement> product;

  std::string describe() const;
};

struct IdempotentQuandleResult {
  std::optional<Quandle> quandle;
  std::optional<IdempotentCertificate> failure;
  /// Idempotent behind each element label of `quandle` (canonical order).
  std::vector<RingElement> labels;
  bool ok() const { return quandle.has_value(); }
};

/// Cayley table of (S, ·) over the canonical ordering, or a certificate.
/// Checks run in the order: right injectivity, closure, self-distributivity.
IdempotentQuandleResult idempotent_quandle(const IdempotentSet& s);

struct IterationResult {
  std::optional<Quandle> quandle;
  std::optional<IdempotentCertificate> failure;
  std::size_t failed_at_depth = 0;
  std::vector<std::size_t> orders;  // order reached after each level
  bool ok() const { return quandle.has_value(); }
};

/// Applies enumerate_idempotents + idempotent_quandle over GF(2) `depth` times.
IterationResult iterate_idempotent_quandle(const Quandle& q, std::size_t depth, const ScanOptions& options = {});

/// One idempotent per line as sorted 1-based support lists, "1 3 5".
std::string render_support_listing(const IdempotentSet& s);

}  // namespace qsum
