#include "qsum/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

#include <fmt/core.h>

#include "qsum/error.hpp"
#include "text_util.hpp"

namespace qsum {

Cocycle::Cocycle(std::size_t order, unsigned modulus) : Cocycle(order, modulus, std::vector<std::uint8_t>(order * order, 0)) {}

Cocycle::Cocycle(std::size_t order, unsigned modulus, std::vector<std::uint8_t> values)
    : n_(order), p_(modulus), values_(std::move(values)) {
  require_supported_modulus(modulus);
  if (values_.size() != n_ * n_) throw DataError(fmt::format("cochain of order {} needs {} values", n_, n_ * n_));
  for (auto& v : values_) v = static_cast<std::uint8_t>(v % p_);
}

Cocycle Cocycle::operator+(const Cocycle& other) const {
  if (n_ != other.n_ || p_ != other.p_) throw MismatchError("cochains of different order or modulus");
  Cocycle sum = *this;
  for (std::size_t i = 0; i < values_.size(); ++i)
    sum.values_[i] = static_cast<std::uint8_t>(mod_add(values_[i], other.values_[i], p_));
  return sum;
}

std::string CocycleViolation::describe() const {
  if (kind == Kind::Diagonal) return fmt::format("phi({0},{0}) = {1} is not zero", witnesses.at(0), residue);
  return fmt::format("cocycle condition fails at (x,y,z) = ({},{},{}) with residue {}", witnesses.at(0),
                     witnesses.at(1), witnesses.at(2), residue);
}

namespace {

void require_order(const Quandle& q, const Cocycle& phi) {
  if (q.order() != phi.order()) {
    throw MismatchError(fmt::format("cocycle of order {} on a quandle of order {}", phi.order(), q.order()));
  }
}

// Coefficients of phi(x,y) - phi(x,z) + phi(x*y,z) - phi(x*z,y*z) on the
// row-major cochain coordinates.
void condition_row(const Quandle& q, unsigned p, Element x, Element y, Element z, std::vector<std::uint8_t>& row) {
  const std::size_t n = q.order();
  std::fill(row.begin(), row.end(), 0);
  auto add = [&](Element a, Element b, unsigned c) {
    auto& slot = row[a * n + b];
    slot = static_cast<std::uint8_t>(mod_add(slot, c, p));
  };
  add(x, y, 1);
  add(x, z, p - 1);
  add(q.op(x, y), z, 1);
  add(q.op(x, z), q.op(y, z), p - 1);
}

bool all_zero(const std::vector<std::uint8_t>& row) {
  return std::all_of(row.begin(), row.end(), [](std::uint8_t c) { return c == 0; });
}

std::vector<std::uint8_t> to_bytes(const std::vector<unsigned>& v) { return {v.begin(), v.end()}; }

IncrementalEchelon coboundary_echelon(const Quandle& q, unsigned p) {
  const std::size_t n = q.order();
  IncrementalEchelon ech(n * n, p);
  std::vector<unsigned> f(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    f.assign(n, 0);
    f[x] = 1;
    const auto d = coboundary(q, f, p);
    ech.insert(d.values());
  }
  return ech;
}

}  // namespace

std::optional<CocycleViolation> verify_cocycle(const Quandle& q, const Cocycle& phi) {
  require_order(q, phi);
  const std::size_t n = q.order();
  const unsigned p = phi.modulus();
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Element>(x);
    if (phi.at(e, e) != 0) {
      return CocycleViolation{CocycleViolation::Kind::Diagonal, {static_cast<unsigned>(x + 1)}, phi.at(e, e)};
    }
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        unsigned r = phi.at(x, y);
        r = mod_sub(r, phi.at(x, z), p);
        r = mod_add(r, phi.at(q.op(x, y), z), p);
        r = mod_sub(r, phi.at(q.op(x, z), q.op(y, z)), p);
        if (r != 0) {
          return CocycleViolation{CocycleViolation::Kind::Condition,
                                  {static_cast<unsigned>(x + 1), static_cast<unsigned>(y + 1),
                                   static_cast<unsigned>(z + 1)},
                                  r};
        }
      }
  return std::nullopt;
}

CochainSpace cocycle_space(const Quandle& q, unsigned p) {
  require_supported_modulus(p);
  const std::size_t n = q.order();
  IncrementalEchelon ech(n * n, p);
  std::vector<std::uint8_t> row(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(row.begin(), row.end(), 0);
    row[x * n + x] = 1;
    ech.insert(row);
  }
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        condition_row(q, p, x, y, z, row);
        if (!all_zero(row)) ech.insert(row);
      }
  CochainSpace space{n, p, {}};
  for (const auto& v : ech.nullspace_basis()) space.basis.emplace_back(n, p, to_bytes(v));
  return space;
}

CochainSpace coboundary_space(const Quandle& q, unsigned p) {
  require_supported_modulus(p);
  const std::size_t n = q.order();
  const auto ech = coboundary_echelon(q, p);
  const FieldMatrix reduced = ech.reduced_rows();
  CochainSpace space{n, p, {}};
  for (std::size_t r = 0; r < reduced.rows(); ++r) {
    const auto row = reduced.row(r);
    space.basis.emplace_back(n, p, std::vector<std::uint8_t>(row.begin(), row.end()));
  }
  return space;
}

Cocycle coboundary(const Quandle& q, std::span<const unsigned> f, unsigned p) {
  const std::size_t n = q.order();
  if (f.size() != n) throw MismatchError("1-cochain length differs from quandle order");
  Cocycle d(n, p);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) d.set(x, y, mod_sub(f[x] % p, f[q.op(x, y)] % p, p));
  return d;
}

bool is_coboundary(const Quandle& q, const Cocycle& phi) {
  if (auto bad = verify_cocycle(q, phi)) throw VerificationError("not a 2-cocycle: " + bad->describe());
  return coboundary_echelon(q, phi.modulus()).in_span(phi.values());
}

CocycleRepair nearest_cocycle(const Quandle& q, const Cocycle& phi, std::uint64_t max_candidates) {
  require_order(q, phi);
  const unsigned p = phi.modulus();
  const std::size_t n = q.order(), len = n * n;
  const auto space = cocycle_space(q, p);
  const std::size_t dim = space.dim();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > max_candidates / p) {
      throw BudgetExceeded(fmt::format("Z^2 has {}^{} elements, over the limit of {}", p, dim, max_candidates));
    }
    total *= p;
  }
  const auto target = phi.values();

  // Odometer over coefficient vectors. Bumping digit i adds basis i once;
  // p bumps return it to zero, so a carry costs no extra work.
  std::vector<unsigned> digits(dim, 0);
  std::vector<unsigned> best_digits(dim, 0);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t ties = 0;

  auto consider = [&](std::size_t dist) {
    if (dist < best) {
      best = dist;
      best_digits = digits;
      ties = 1;
    } else if (dist == best) {
      ++ties;
    }
  };
  auto bump = [&](auto&& add) {
    for (std::size_t i = 0; i < dim; ++i) {
      add(i);
      digits[i] = (digits[i] + 1) % p;
      if (digits[i] != 0) return true;
    }
    return false;
  };

  if (p == 2) {
    const std::size_t words = (len + 63) / 64;
    auto pack = [&](std::span<const std::uint8_t> v) {
      std::vector<std::uint64_t> w(words, 0);
      for (std::size_t k = 0; k < len; ++k)
        if (v[k]) w[k / 64] |= 1ULL << (k % 64);
      return w;
    };
    std::vector<std::vector<std::uint64_t>> basis;
    for (const auto& b : space.basis) basis.push_back(pack(b.values()));
    std::vector<std::uint64_t> cur = pack(target);  // cur = candidate xor target
    auto dist = [&] {
      std::size_t d = 0;
      for (auto w : cur) d += static_cast<std::size_t>(std::popcount(w));
      return d;
    };
    do consider(dist());
    while (bump([&](std::size_t i) {
      for (std::size_t w = 0; w < words; ++w) cur[w] ^= basis[i][w];
    }));
  } else {
    std::vector<std::vector<std::pair<std::size_t, std::uint8_t>>> support(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t k = 0; k < len; ++k)
        if (auto v = space.basis[i].values()[k]) support[i].emplace_back(k, v);
    std::vector<std::uint8_t> cur(len, 0);
    std::size_t d = 0;
    for (std::size_t k = 0; k < len; ++k) d += target[k] != 0;
    do consider(d);
    while (bump([&](std::size_t i) {
      for (auto [k, v] : support[i]) {
        const auto next = static_cast<std::uint8_t>((cur[k] + v) % p);
        d = d - (cur[k] != target[k]) + (next != target[k]);
        cur[k] = next;
      }
    }));
  }

  Cocycle out(n, p);
  for (std::size_t i = 0; i < dim; ++i)
    for (unsigned c = 0; c < best_digits[i]; ++c) out = out + space.basis[i];
  CocycleRepair r{out, best, ties, {}};
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (out.at(x, y) != phi.at(x, y))
        r.changes.push_back({static_cast<unsigned>(x + 1), static_cast<unsigned>(y + 1), phi.at(x, y), out.at(x, y)});
  return r;
}

// --- chain complex ------------------------------------------------------------

ChainBasis::ChainBasis(std::size_t order, std::size_t degree) : n_(order), degree_(degree) {
  if (degree < 1 || degree > 3) throw DataError(fmt::format("chain degree {} is not supported", degree));
  std::size_t total = 1;
  for (std::size_t i = 0; i < degree; ++i) total *= n_;
  index_.assign(total, static_cast<std::size_t>(-1));
  std::vector<Element> t(degree, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = degree; i-- > 0;) {
      t[i] = static_cast<Element>(c % n_);
      c /= n_;
    }
    bool degenerate = false;
    for (std::size_t i = 0; i + 1 < degree; ++i) degenerate = degenerate || t[i] == t[i + 1];
    if (degenerate) continue;
    index_[code] = tuples_.size();
    tuples_.push_back(t);
  }
}

std::optional<std::size_t> ChainBasis::index(std::span<const Element> t) const {
  if (t.size() != degree_) throw MismatchError("tuple length differs from chain degree");
  std::size_t code = 0;
  for (auto e : t) code = code * n_ + e;
  const auto i = index_[code];
  if (i == static_cast<std::size_t>(-1)) return std::nullopt;
  return i;
}

FieldMatrix boundary_matrix(const Quandle& q, std::size_t degree, unsigned p) {
  require_supported_modulus(p);
  if (degree != 2 && degree != 3) throw DataError(fmt::format("boundary of degree {} is not supported", degree));
  const std::size_t n = q.order();
  const ChainBasis source(n, degree), target(n, degree - 1);
  FieldMatrix m(target.size(), source.size(), p);
  auto add = [&](std::size_t col, std::initializer_list<Element> t, unsigned c) {
    const std::vector<Element> tv(t);
    if (auto row = target.index(tv)) m.set(*row, col, mod_add(m.at(*row, col), c, p));
  };
  for (std::size_t j = 0; j < source.size(); ++j) {
    const auto& t = source.tuple(j);
    if (degree == 2) {
      add(j, {t[0]}, 1);
      add(j, {q.op(t[0], t[1])}, p - 1);
    } else {
      const Element x = t[0], y = t[1], z = t[2];
      add(j, {x, z}, 1);
      add(j, {q.op(x, y), z}, p - 1);
      add(j, {x, y}, p - 1);
      add(j, {q.op(x, z), q.op(y, z)}, 1);
    }
  }
  return m;
}

std::size_t second_cohomology_dimension(const Quandle& q, unsigned p) {
  const FieldMatrix d2 = boundary_matrix(q, 2, p);
  const FieldMatrix d3 = boundary_matrix(q, 3, p);
  return d3.rows() - rank(d3) - rank(d2);
}

// --- file format -------------------------------------------------------------

Cocycle parse_cocycle(std::string_view text) {
  std::istringstream in(detail::strip_comments(text));
  std::string keyword;
  long long n = 0, p = 0;
  if (!(in >> keyword) || keyword != "cocycle") throw DataError("cocycle file must start with 'cocycle <n> <p>'");
  if (!(in >> n >> p) || n <= 0 || n > 0xFFFF) throw DataError("bad 'cocycle <n> <p>' header");
  if (!is_supported_modulus(static_cast<unsigned>(p))) throw DataError(fmt::format("unsupported modulus {}", p));
  const auto order = static_cast<std::size_t>(n);
  const auto mod = static_cast<unsigned>(p);
  Cocycle phi(order, mod);
  std::vector<bool> seen(order * order, false);
  for (long long x, y, v; in >> x;) {
    if (!(in >> y >> v)) throw DataError("cocycle entry needs three integers 'x y v'");
    if (x < 1 || x > n || y < 1 || y > n) throw DataError(fmt::format("cocycle entry ({},{}) outside 1..{}", x, y, n));
    if (v < 0 || v >= p) throw DataError(fmt::format("cocycle value {} at ({},{}) outside 0..{}", v, x, y, p - 1));
    const auto idx = static_cast<std::size_t>((x - 1) * n + (y - 1));
    if (seen[idx]) throw DataError(fmt::format("cocycle entry ({},{}) listed twice", x, y));
    seen[idx] = true;
    phi.set(static_cast<Element>(x - 1), static_cast<Element>(y - 1), static_cast<unsigned>(v));
  }
  if (!in.eof()) throw DataError("unexpected token in cocycle file");
  return phi;
}

std::string render_cocycle(const Cocycle& phi, std::string_view comment) {
  std::string out;
  if (!comment.empty()) {
    std::istringstream lines{std::string(comment)};
    for (std::string line; std::getline(lines, line);) out += "# " + line + "\n";
  }
  out += fmt::format("cocycle {} {}\n", phi.order(), phi.modulus());
  for (Element x = 0; x < phi.order(); ++x)
    for (Element y = 0; y < phi.order(); ++y)
      if (phi.at(x, y)) out += fmt::format("{} {} {}\n", x + 1, y + 1, phi.at(x, y));
  return out;
}

Cocycle load_cocycle(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path, "cocycle");
  try {
    return parse_cocycle(text);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

}  // namespace qsum
