#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qsum/field.hpp"

namespace qsum {

/// An element c_0 + c_1 u + ... + c_{p-1} u^{p-1} of the integral group ring
/// Z[Z_p] with non-negative coefficients: counts[k] is the number of colorings
/// whose total Boltzmann weight is k.
class StateSumValue {
 public:
  explicit StateSumValue(unsigned modulus);
  StateSumValue(unsigned modulus, std::vector<std::uint64_t> counts);

  unsigned modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const;
  bool is_constant() const;

  void insert(FieldScalar weight, std::uint64_t multiplicity = 1);
  void insert_raw(unsigned weight, std::uint64_t multiplicity = 1) { counts_[weight] += multiplicity; }

  StateSumValue& operator+=(const StateSumValue& other);
  friend StateSumValue operator+(StateSumValue a, const StateSumValue& b) { return a += b; }

  bool operator==(const StateSumValue&) const = default;

  /// Ascending powers, zero terms omitted: "52+42u+11u^2"; the zero value is "0".
  std::string to_string() const;

  /// Accepts any term order and optional spaces ("11u^2+42u+52", "32u+16").
  static StateSumValue parse(std::string_view text, unsigned modulus);

 private:
  unsigned modulus_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace qsum
