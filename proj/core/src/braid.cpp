#include "qsum/braid.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/error.hpp"

namespace qsum {

BraidWord BraidWord::make(std::size_t strands, std::vector<int> letters) {
  if (strands == 0) throw DataError("a braid needs at least one strand");
  for (int l : letters) {
    const auto a = static_cast<std::size_t>(l < 0 ? -static_cast<long>(l) : l);
    if (l == 0 || a >= strands) {
      throw DataError(fmt::format("braid letter {} is invalid on {} strands", l, strands));
    }
  }
  return BraidWord{strands, std::move(letters)};
}

std::string BraidWord::letters_text() const { return fmt::format("{}", fmt::join(letters, " ")); }

std::vector<int> parse_braid_letters(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == ',' || c == '{' || c == '}' || c == '[' || c == ']' || c == '\r' ||
           c == '\n' || c == '"';
  };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    int v = 0;
    const char* begin = text.data() + i;
    const char* end = text.data() + text.size();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || (ptr != end && !is_sep(*ptr))) {
      throw DataError(fmt::format("bad braid letter near '{}'", text.substr(i, 12)));
    }
    if (v == 0) throw DataError("braid letter 0 is not a generator");
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - text.data());
  }
  return out;
}

BraidWord mirror(const BraidWord& w) {
  BraidWord m = w;
  for (int& l : m.letters) l = -l;
  return m;
}

std::size_t closure_components(const BraidWord& w) {
  // perm[j] = top position of the strand that ends at bottom position j.
  std::vector<std::size_t> perm(w.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    std::swap(perm[i], perm[i + 1]);
  }
  std::vector<bool> seen(w.strands, false);
  std::size_t cycles = 0;
  for (std::size_t s = 0; s < w.strands; ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (std::size_t j = s; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return cycles;
}

Propagation propagate(const Quandle& q, std::span<const Element> top, const BraidWord& w, const Cocycle* phi) {
  if (top.size() != w.strands) throw MismatchError("coloring vector length differs from braid index");
  if (phi && phi->order() != q.order()) throw MismatchError("cocycle order differs from quandle order");
  Propagation out{{top.begin(), top.end()}, 0};
  auto& x = out.bottom;
  const unsigned p = phi ? phi->modulus() : 1;
  for (int l : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    const Element a = x[i], b = x[i + 1];
    if (l > 0) {
      if (phi) out.weight = mod_add(out.weight, phi->at(a, b), p);
      x[i] = b;
      x[i + 1] = q.op(a, b);
    } else {
      const Element d = q.inv_op(b, a);
      if (phi) out.weight = mod_sub(out.weight, phi->at(d, a), p);
      x[i] = d;
      x[i + 1] = a;
    }
  }
  return out;
}

}  // namespace qsum
