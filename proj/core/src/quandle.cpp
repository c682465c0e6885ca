#include "qsum/quandle.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/error.hpp"

namespace qsum {

int AxiomViolation::axiom() const {
  switch (kind) {
    case Kind::EntryOutOfRange: return 0;
    case Kind::Idempotency: return 1;
    case Kind::RightInvertibility: return 2;
    case Kind::SelfDistributivity: return 3;
  }
  return -1;
}

std::string AxiomViolation::describe() const {
  const auto& w = witnesses;
  switch (kind) {
    case Kind::EntryOutOfRange:
      return fmt::format("entry {}*{} is out of range", w.at(0), w.at(1));
    case Kind::Idempotency:
      return fmt::format("axiom 1 fails: {0}*{0} != {0}", w.at(0));
    case Kind::RightInvertibility:
      return fmt::format("axiom 2 fails: right multiplication by {} sends both {} and {} to the same element",
                         w.at(0), w.at(1), w.at(2));
    case Kind::SelfDistributivity:
      return fmt::format("axiom 3 fails: ({0}*{1})*{2} != ({0}*{2})*({1}*{2})", w.at(0), w.at(1), w.at(2));
  }
  return "unknown violation";
}

Quandle::Quandle(std::size_t n, std::vector<Element> table)
    : n_(n), table_(std::move(table)), inverse_(n * n) {
  for (std::size_t y = 0; y < n_; ++y)
    for (std::size_t x = 0; x < n_; ++x) inverse_[op(x, y) * n_ + y] = static_cast<Element>(x);
}

QuandleCheck check_quandle(std::size_t n, std::vector<Element> table) {
  using Kind = AxiomViolation::Kind;
  auto fail = [](Kind kind, std::vector<unsigned> w) {
    return QuandleCheck{std::nullopt, AxiomViolation{kind, std::move(w)}};
  };
  if (n == 0) throw DataError("a quandle must be non-empty");
  if (n > 0xFFFF) throw DataError("quandle order exceeds the element type");
  if (table.size() != n * n) throw DataError(fmt::format("table of order {} needs {} entries", n, n * n));

  auto at = [&](std::size_t x, std::size_t y) -> std::size_t { return table[x * n + y]; };
  const auto label = [](std::size_t x) { return static_cast<unsigned>(x + 1); };

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (at(x, y) >= n) return fail(Kind::EntryOutOfRange, {label(x), label(y)});

  for (std::size_t x = 0; x < n; ++x)
    if (at(x, x) != x) return fail(Kind::Idempotency, {label(x)});

  std::vector<std::size_t> preimage(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::fill(preimage.begin(), preimage.end(), n);
    for (std::size_t z = 0; z < n; ++z) {
      auto& slot = preimage[at(z, y)];
      if (slot != n) return fail(Kind::RightInvertibility, {label(y), label(slot), label(z)});
      slot = z;
    }
  }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (at(at(x, y), z) != at(at(x, z), at(y, z)))
          return fail(Kind::SelfDistributivity, {label(x), label(y), label(z)});

  return QuandleCheck{Quandle(n, std::move(table)), std::nullopt};
}

Quandle Quandle::from_table(std::size_t n, std::vector<Element> table) {
  auto check = check_quandle(n, std::move(table));
  if (!check.ok()) throw VerificationError(check.violation->describe());
  return std::move(*check.quandle);
}

Quandle Quandle::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n) throw DataError(fmt::format("row {} has {} entries, expected {}", x + 1, rows[x].size(), n));
    for (int v : rows[x]) {
      if (v < 1 || static_cast<std::size_t>(v) > n) {
        throw DataError(fmt::format("entry {} in row {} is outside 1..{}", v, x + 1, n));
      }
      table.push_back(static_cast<Element>(v - 1));
    }
  }
  return from_table(n, std::move(table));
}

std::vector<Element> Quandle::right_multiplication(Element y) const {
  std::vector<Element> s(n_);
  for (std::size_t x = 0; x < n_; ++x) s[x] = op(static_cast<Element>(x), y);
  return s;
}

std::vector<std::size_t> inner_orbits(const Quandle& q) {
  const std::size_t n = q.order();
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> orbit(n, kUnset);
  std::size_t next = 0;
  std::vector<Element> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] != kUnset) continue;
    orbit[start] = next;
    stack.assign(1, static_cast<Element>(start));
    while (!stack.empty()) {
      const Element x = stack.back();
      stack.pop_back();
      for (std::size_t y = 0; y < n; ++y) {
        for (Element z : {q.op(x, static_cast<Element>(y)), q.inv_op(x, static_cast<Element>(y))}) {
          if (orbit[z] == kUnset) {
            orbit[z] = next;
            stack.push_back(z);
          }
        }
      }
    }
    ++next;
  }
  return orbit;
}

bool is_connected(const Quandle& q) {
  const auto orbit = inner_orbits(q);
  return std::all_of(orbit.begin(), orbit.end(), [](std::size_t o) { return o == 0; });
}

Quandle trivial_quandle(std::size_t n) {
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<Element>(x);
  return Quandle::from_table(n, std::move(table));
}

Quandle alexander_quandle(std::size_t k, long long t) {
  if (k == 0) throw DataError("Alexander quandle needs a positive module order");
  const auto kk = static_cast<long long>(k);
  long long tm = t % kk;
  if (tm < 0) tm += kk;
  if (std::gcd(tm, kk) != 1) {
    throw DataError(fmt::format("T = {} is not a unit modulo {}", t, k));
  }
  const long long one_minus_t = ((1 - tm) % kk + kk) % kk;
  std::vector<Element> table(k * k);
  for (long long x = 0; x < kk; ++x)
    for (long long y = 0; y < kk; ++y)
      table[static_cast<std::size_t>(x * kk + y)] = static_cast<Element>((tm * x + one_minus_t * y) % kk);
  return Quandle::from_table(k, std::move(table));
}

Quandle dihedral_quandle(std::size_t k) { return alexander_quandle(k, -1); }

Quandle dual_quandle(const Quandle& q) {
  const std::size_t n = q.order();
  std::vector<Element> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = q.inv_op(static_cast<Element>(x), static_cast<Element>(y));
  return Quandle::from_table(n, std::move(table));
}

}  // namespace qsum
