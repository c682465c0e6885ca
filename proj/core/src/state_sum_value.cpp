#include "qsum/state_sum_value.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

#include <fmt/core.h>

#include "qsum/error.hpp"

namespace qsum {

StateSumValue::StateSumValue(unsigned modulus) : modulus_(modulus), counts_(modulus, 0) {
  require_supported_modulus(modulus);
}

StateSumValue::StateSumValue(unsigned modulus, std::vector<std::uint64_t> counts)
    : modulus_(modulus), counts_(std::move(counts)) {
  require_supported_modulus(modulus);
  if (counts_.size() != modulus_) {
    throw MismatchError(fmt::format("state sum needs {} coefficients, got {}", modulus_, counts_.size()));
  }
}

std::uint64_t StateSumValue::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

bool StateSumValue::is_constant() const {
  for (std::size_t k = 1; k < counts_.size(); ++k)
    if (counts_[k] != 0) return false;
  return true;
}

void StateSumValue::insert(FieldScalar weight, std::uint64_t multiplicity) {
  if (weight.modulus() != modulus_) {
    throw MismatchError(fmt::format("weight in GF({}) inserted into a Z[Z_{}] value", weight.modulus(), modulus_));
  }
  counts_[weight.value()] += multiplicity;
}

StateSumValue& StateSumValue::operator+=(const StateSumValue& other) {
  if (other.modulus_ != modulus_) {
    throw MismatchError(fmt::format("cannot add state sums over Z_{} and Z_{}", modulus_, other.modulus_));
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  return *this;
}

std::string StateSumValue::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += std::to_string(counts_[k]);
    } else {
      if (counts_[k] != 1) out += std::to_string(counts_[k]);
      out += 'u';
      if (k > 1) out += fmt::format("^{}", k);
    }
  }
  return out.empty() ? "0" : out;
}

StateSumValue StateSumValue::parse(std::string_view text, unsigned modulus) {
  StateSumValue value(modulus);
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) throw DataError("empty state-sum value");

  auto fail = [&](const std::string& why) -> DataError {
    return DataError(fmt::format("bad state-sum value '{}': {}", text, why));
  };

  std::size_t pos = 0;
  while (pos < compact.size()) {
    std::size_t end = compact.find('+', pos);
    if (end == std::string::npos) end = compact.size();
    std::string_view term(compact.data() + pos, end - pos);
    if (term.empty()) throw fail("empty term");

    std::uint64_t coeff = 1;
    std::size_t i = 0;
    bool has_digits = false;
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      auto [ptr, ec] = std::from_chars(term.data(), term.data() + term.size(), coeff);
      if (ec != std::errc()) throw fail("coefficient out of range");
      i = static_cast<std::size_t>(ptr - term.data());
      has_digits = true;
    }
    unsigned power = 0;
    if (i < term.size()) {
      if (term[i] == '*') ++i;
      if (i >= term.size() || term[i] != 'u') throw fail("expected 'u'");
      ++i;
      power = 1;
      if (i < term.size()) {
        if (term[i] != '^') throw fail("expected '^' after 'u'");
        ++i;
        auto [ptr, ec] = std::from_chars(term.data() + i, term.data() + term.size(), power);
        if (ec != std::errc() || ptr != term.data() + term.size()) throw fail("bad exponent");
      }
    } else if (!has_digits) {
      throw fail("empty term");
    }
    if (power >= modulus) throw fail(fmt::format("exponent {} not below modulus {}", power, modulus));
    value.counts_[power] += coeff;
    pos = end + 1;
    if (end == compact.size()) break;
    if (pos == compact.size()) throw fail("trailing '+'");
  }
  return value;
}

}  // namespace qsum
