#include "qsum/ring.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>
#include <tuple>
#include <unordered_map>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/error.hpp"
#include "qsum/field.hpp"

namespace qsum {

RingElement::RingElement(std::shared_ptr<const Quandle> base, unsigned modulus, std::vector<std::uint8_t> coeffs)
    : base_(std::move(base)), modulus_(modulus), coeffs_(std::move(coeffs)) {
  require_supported_modulus(modulus);
  if (!base_) throw DataError("ring element needs a base quandle");
  if (coeffs_.size() != base_->order()) throw MismatchError("coefficient vector length differs from quandle order");
  for (auto& c : coeffs_) c = static_cast<std::uint8_t>(c % modulus_);
}

RingElement RingElement::zero(std::shared_ptr<const Quandle> base, unsigned modulus) {
  const auto n = base->order();
  return {std::move(base), modulus, std::vector<std::uint8_t>(n, 0)};
}

RingElement RingElement::basis(std::shared_ptr<const Quandle> base, unsigned modulus, Element x) {
  auto e = zero(std::move(base), modulus);
  e.coeffs_.at(x) = 1;
  return e;
}

RingElement RingElement::from_mask(std::shared_ptr<const Quandle> base, std::uint64_t mask) {
  const auto n = base->order();
  std::vector<std::uint8_t> c(n, 0);
  for (std::size_t x = 0; x < n && x < 64; ++x) c[x] = static_cast<std::uint8_t>((mask >> x) & 1U);
  return {std::move(base), 2, std::move(c)};
}

std::vector<Element> RingElement::support() const {
  std::vector<Element> s;
  for (std::size_t x = 0; x < coeffs_.size(); ++x)
    if (coeffs_[x]) s.push_back(static_cast<Element>(x));
  return s;
}

std::uint64_t RingElement::mask() const {
  if (coeffs_.size() > 64) throw BudgetExceeded("support mask needs order <= 64");
  std::uint64_t m = 0;
  for (std::size_t x = 0; x < coeffs_.size(); ++x)
    if (coeffs_[x]) m |= std::uint64_t{1} << x;
  return m;
}

bool RingElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint8_t c) { return c == 0; });
}

void RingElement::require_compatible(const RingElement& other) const {
  if (modulus_ != other.modulus_) throw MismatchError("ring elements over different fields");
  if (base_ != other.base_ && !(*base_ == *other.base_)) throw MismatchError("ring elements over different quandles");
}

RingElement RingElement::operator+(const RingElement& other) const {
  require_compatible(other);
  auto sum = *this;
  for (std::size_t x = 0; x < coeffs_.size(); ++x)
    sum.coeffs_[x] = static_cast<std::uint8_t>(mod_add(coeffs_[x], other.coeffs_[x], modulus_));
  return sum;
}

RingElement RingElement::operator*(const RingElement& other) const {
  require_compatible(other);
  auto prod = zero(base_, modulus_);
  const auto& q = *base_;
  for (std::size_t x = 0; x < coeffs_.size(); ++x) {
    if (!coeffs_[x]) continue;
    for (std::size_t y = 0; y < coeffs_.size(); ++y) {
      if (!other.coeffs_[y]) continue;
      auto& slot = prod.coeffs_[q.op(static_cast<Element>(x), static_cast<Element>(y))];
      slot = static_cast<std::uint8_t>(mod_add(slot, mod_mul(coeffs_[x], other.coeffs_[y], modulus_), modulus_));
    }
  }
  return prod;
}

bool RingElement::operator==(const RingElement& other) const {
  return modulus_ == other.modulus_ && coeffs_ == other.coeffs_ &&
         (base_ == other.base_ || *base_ == *other.base_);
}

std::string RingElement::to_string() const {
  std::vector<std::string> terms;
  for (std::size_t x = 0; x < coeffs_.size(); ++x) {
    if (!coeffs_[x]) continue;
    terms.push_back(coeffs_[x] == 1 ? fmt::format("e{}", x + 1) : fmt::format("{}e{}", coeffs_[x], x + 1));
  }
  return terms.empty() ? "0" : fmt::format("{}", fmt::join(terms, "+"));
}

// ---------------------------------------------------------------------------

namespace {

// For S a subset of X, v = sum_{x in S} e_x satisfies
//   v*v = v + sum_{x<y in S} (e_{x*y} + e_{y*x})   over GF(2),
// so v is idempotent iff the pair term Q(S) vanishes. Toggling z changes Q by
// R_z(S) = XOR_{x in S} pair[z][x], which is linear in S and is evaluated
// bytewise through lookup tables.
class Gf2Scanner {
 public:
  explicit Gf2Scanner(const Quandle& q) : n_(q.order()), chunks_((n_ + 7) / 8), pair_(n_ * n_, 0) {
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) {
        const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
        pair_[x * n_ + y] = (x == y) ? 0 : (bit(q.op(ex, ey)) ^ bit(q.op(ey, ex)));
      }
    tables_.assign(n_ * chunks_ * 256, 0);
    for (std::size_t z = 0; z < n_; ++z)
      for (std::size_t c = 0; c < chunks_; ++c)
        for (std::size_t b = 1; b < 256; ++b) {
          const std::size_t low = static_cast<std::size_t>(std::countr_zero(b));
          const std::size_t x = c * 8 + low;
          const std::uint64_t contrib = x < n_ ? pair_[z * n_ + x] : 0;
          tables_[(z * chunks_ + c) * 256 + b] = tables_[(z * chunks_ + c) * 256 + (b & (b - 1))] ^ contrib;
        }
  }

  std::uint64_t toggle_delta(std::size_t z, std::uint64_t s) const {
    std::uint64_t r = 0;
    const std::uint64_t* t = tables_.data() + z * chunks_ * 256;
    for (std::size_t c = 0; c < chunks_; ++c) r ^= t[c * 256 + ((s >> (8 * c)) & 0xFF)];
    return r;
  }

  std::uint64_t pair_term(std::uint64_t s) const {
    std::uint64_t q = 0;
    for (std::size_t x = 0; x < n_; ++x) {
      if (!((s >> x) & 1U)) continue;
      for (std::size_t y = x + 1; y < n_; ++y)
        if ((s >> y) & 1U) q ^= pair_[x * n_ + y];
    }
    return q;
  }

  // Scans masks hi<<low_bits .. (hi+1)<<low_bits - 1 in Gray-code order.
  void scan_block(std::uint64_t hi, unsigned low_bits, std::vector<std::uint64_t>& out) const {
    std::uint64_t s = hi << low_bits;
    std::uint64_t q = pair_term(s);
    if (q == 0 && s != 0) out.push_back(s);
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
      const auto z = static_cast<std::size_t>(std::countr_zero(i));
      q ^= toggle_delta(z, s);
      s ^= std::uint64_t{1} << z;
      if (q == 0) out.push_back(s);
    }
  }

  std::size_t order() const { return n_; }

 private:
  static std::uint64_t bit(Element e) { return std::uint64_t{1} << e; }

  std::size_t n_;
  std::size_t chunks_;
  std::vector<std::uint64_t> pair_;
  std::vector<std::uint64_t> tables_;
};

// Trivial idempotents first, then the rest by mask.
void canonical_sort_masks(std::vector<std::uint64_t>& masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    const bool ta = std::has_single_bit(a), tb = std::has_single_bit(b);
    if (ta != tb) return ta;
    return a < b;
  });
}

std::vector<std::uint64_t> scan_gf2(const Quandle& q, const ScanOptions& options) {
  const Gf2Scanner scanner(q);
  const std::size_t n = q.order();
  const unsigned low_bits = static_cast<unsigned>(std::min<std::size_t>(n, std::max(1U, options.block_bits)));
  const std::uint64_t blocks = std::uint64_t{1} << (n - low_bits);
  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, blocks)));

  std::atomic<std::uint64_t> next{0};
  std::mutex merge_mutex;
  std::vector<std::uint64_t> all;
  auto work = [&] {
    std::vector<std::uint64_t> local;
    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) scanner.scan_block(b, low_bits, local);
    std::lock_guard lock(merge_mutex);
    all.insert(all.end(), local.begin(), local.end());
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  canonical_sort_masks(all);
  return all;
}

std::vector<std::vector<std::uint8_t>> scan_odd(const Quandle& q, unsigned p) {
  const std::size_t n = q.order();
  std::vector<std::uint8_t> v(n, 0), sq(n, 0);
  std::vector<std::vector<std::uint8_t>> found;
  while (true) {
    // Increment as a little-endian base-p counter.
    std::size_t i = 0;
    while (i < n && ++v[i] == p) v[i++] = 0;
    if (i == n) break;
    std::fill(sq.begin(), sq.end(), 0);
    for (std::size_t x = 0; x < n; ++x) {
      if (!v[x]) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (!v[y]) continue;
        auto& s = sq[q.op(static_cast<Element>(x), static_cast<Element>(y))];
        s = static_cast<std::uint8_t>((s + v[x] * v[y]) % p);
      }
    }
    if (sq == v) found.push_back(v);
  }
  auto key_less = [](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  };
  auto is_trivial = [](const std::vector<std::uint8_t>& a) {
    return std::count(a.begin(), a.end(), 0) + 1 == static_cast<std::ptrdiff_t>(a.size()) &&
           std::count(a.begin(), a.end(), 1) == 1;
  };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) {
    const bool ta = is_trivial(a), tb = is_trivial(b);
    if (ta != tb) return ta;
    return key_less(a, b);
  });
  return found;
}

}  // namespace

IdempotentSet enumerate_idempotents(std::shared_ptr<const Quandle> q, unsigned p, const ScanOptions& options) {
  require_supported_modulus(p);
  const std::size_t n = q->order();
  IdempotentSet set{q, p, {}, 0};
  if (p == 2) {
    if (n > kMaxGf2ScanOrder) {
      throw BudgetExceeded(fmt::format("GF(2) idempotent scan supports order <= {}, got {}", kMaxGf2ScanOrder, n));
    }
    set.candidates_scanned = std::uint64_t{1} << n;
    for (auto m : scan_gf2(*q, options)) set.elements.push_back(RingElement::from_mask(q, m));
  } else {
    if (n > kMaxOddScanOrder) {
      throw BudgetExceeded(fmt::format("GF({}) idempotent scan supports order <= {}, got {}", p, kMaxOddScanOrder, n));
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      total *= p;
      if (total > (std::uint64_t{1} << 28)) {
        throw BudgetExceeded(fmt::format("GF({}) idempotent scan of order {} exceeds 2^28 candidates", p, n));
      }
    }
    set.candidates_scanned = total;
    for (auto& v : scan_odd(*q, p)) set.elements.emplace_back(q, p, std::move(v));
  }
  return set;
}

std::vector<std::uint64_t> idempotent_masks_naive(const Quandle& q) {
  const std::size_t n = q.order();
  if (n > 20) throw BudgetExceeded("naive idempotent scan is limited to order 20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    std::uint64_t sq = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (!((s >> x) & 1U)) continue;
      for (std::size_t y = 0; y < n; ++y)
        if ((s >> y) & 1U) sq ^= std::uint64_t{1} << q.op(static_cast<Element>(x), static_cast<Element>(y));
    }
    if (sq == s) out.push_back(s);
  }
  canonical_sort_masks(out);
  return out;
}

// ---------------------------------------------------------------------------

std::string IdempotentCertificate::describe() const {
  auto name = [](const RingElement& e) { return e.to_string(); };
  switch (kind) {
    case Kind::RightMultiplicationNotInjective:
      return fmt::format("right multiplication by {} is not injective: {} and {} both map to {}", name(witnesses.at(0)),
                         name(witnesses.at(1)), name(witnesses.at(2)), product ? name(*product) : "?");
    case Kind::NotClosed:
      return fmt::format("not closed: {} * {} = {} is not an idempotent", name(witnesses.at(0)), name(witnesses.at(1)),
                         product ? name(*product) : "?");
    case Kind::NotSelfDistributive:
      return fmt::format("self-distributivity fails for u={}, v={}, w={}", name(witnesses.at(0)),
                         name(witnesses.at(1)), name(witnesses.at(2)));
  }
  return "unknown failure";
}

IdempotentQuandleResult idempotent_quandle(const IdempotentSet& s) {
  using Kind = IdempotentCertificate::Kind;
  if (s.modulus != 2) throw MismatchError("idempotent quandles are built over GF(2) only");
  const std::size_t m = s.elements.size();
  if (m == 0) throw DataError("empty idempotent set");
  if (m > 0xFFFF) throw BudgetExceeded("idempotent set too large for a quandle table");

  std::vector<std::uint64_t> masks(m);
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < m; ++i) {
    masks[i] = s.elements[i].mask();
    index.emplace(masks[i], i);
  }
  const Quandle& q = *s.base;
  const std::size_t n = q.order();
  auto multiply = [&](std::uint64_t u, std::uint64_t v) {
    std::uint64_t r = 0;
    for (std::uint64_t a = u; a; a &= a - 1) {
      const auto x = static_cast<Element>(std::countr_zero(a));
      for (std::uint64_t b = v; b; b &= b - 1) r ^= std::uint64_t{1} << q.op(x, static_cast<Element>(std::countr_zero(b)));
    }
    return r;
  };
  (void)n;

  std::vector<std::uint64_t> prod(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) prod[i * m + j] = multiply(masks[i], masks[j]);

  IdempotentQuandleResult result;
  result.labels = s.elements;
  auto elem = [&](std::uint64_t mask) { return RingElement::from_mask(s.base, mask); };

  // Among all collisions u1*v == u2*v report the one whose pair (u1, u2) comes
  // first in canonical order, then the smallest v. Pairs of basis idempotents
  // sort first, which keeps certificates short.
  std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> best;
  for (std::size_t j = 0; j < m; ++j) {
    std::unordered_map<std::uint64_t, std::size_t> first;
    for (std::size_t i = 0; i < m; ++i) {
      auto [it, inserted] = first.emplace(prod[i * m + j], i);
      if (!inserted) {
        const std::tuple cand{it->second, i, j};
        if (!best || cand < *best) best = cand;
      }
    }
  }
  if (best) {
    const auto [u1, u2, v] = *best;
    result.failure = IdempotentCertificate{Kind::RightMultiplicationNotInjective,
                                           {s.elements[v], s.elements[u1], s.elements[u2]},
                                           elem(prod[u2 * m + v])};
    return result;
  }

  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto it = index.find(prod[i * m + j]);
      if (it == index.end()) {
        result.failure =
            IdempotentCertificate{Kind::NotClosed, {s.elements[i], s.elements[j]}, elem(prod[i * m + j])};
        return result;
      }
      table[i * m + j] = static_cast<Element>(it->second);
    }

  auto check = check_quandle(m, std::move(table));
  if (!check.ok()) {
    const auto& w = check.violation->witnesses;
    std::vector<RingElement> ws;
    for (auto label : w) ws.push_back(s.elements.at(label - 1));
    // Idempotency and injectivity were established above, so only axiom 3 remains.
    result.failure = IdempotentCertificate{Kind::NotSelfDistributive, std::move(ws), std::nullopt};
    return result;
  }
  result.quandle = std::move(*check.quandle);
  return result;
}

IterationResult iterate_idempotent_quandle(const Quandle& q, std::size_t depth, const ScanOptions& options) {
  if (depth == 0) throw DataError("iteration depth must be at least 1");
  IterationResult out;
  auto current = std::make_shared<const Quandle>(q);
  for (std::size_t level = 1; level <= depth; ++level) {
    const auto set = enumerate_idempotents(current, 2, options);
    auto built = idempotent_quandle(set);
    if (!built.ok()) {
      out.failure = std::move(built.failure);
      out.failed_at_depth = level;
      return out;
    }
    out.orders.push_back(built.quandle->order());
    current = std::make_shared<const Quandle>(std::move(*built.quandle));
  }
  out.quandle = *current;
  return out;
}

std::string render_support_listing(const IdempotentSet& s) {
  std::string out;
  for (const auto& e : s.elements) {
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < e.coeffs().size(); ++x) {
      if (!e.coeffs()[x]) continue;
      labels.push_back(e.coeffs()[x] == 1 ? std::to_string(x + 1) : fmt::format("{}:{}", x + 1, e.coeffs()[x]));
    }
    out += fmt::format("{}\n", fmt::join(labels, " "));
  }
  return out;
}

}  // namespace qsum
