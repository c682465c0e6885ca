#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsum/cohomology.hpp"
#include "qsum/quandle.hpp"

namespace qsum {

/// A braid on `strands` strands; letter +i / -i is the generator sigma_i or
/// its inverse, 1 <= i < strands.
struct BraidWord {
  std::size_t strands = 1;
  std::vector<int> letters;

  /// Throws DataError unless every |letter| is in 1..strands-1.
  static BraidWord make(std::size_t strands, std::vector<int> letters);

  std::string letters_text() const;  // "1 -2 1"
  bool operator==(const BraidWord&) const = default;
};

/// Parses space- or comma-separated signed letters, optionally wrapped in
/// brackets or braces ("{1,-2,1}").
std::vector<int> parse_braid_letters(std::string_view text);

/// Every letter negated.
BraidWord mirror(const BraidWord& w);

/// Number of cycles of the permutation underlying the braid.
std::size_t closure_components(const BraidWord& w);

struct Propagation {
  std::vector<Element> bottom;
  unsigned weight = 0;  // in Z_p, 0 when no cocycle is given
};

/// Pushes the colors `top` down through the braid. A positive letter i turns
/// (.., x_i, x_{i+1}, ..) into (.., x_{i+1}, x_i * x_{i+1}, ..) and adds
/// phi(x_i, x_{i+1}); a negative letter gives (.., x_{i+1} /x_i, x_i, ..) and
/// adds -phi(x_{i+1} /x_i, x_i), where a /b is the inverse operation.
Propagation propagate(const Quandle& q, std::span<const Element> top, const BraidWord& w,
                      const Cocycle* phi = nullptr);

}  // namespace qsum
