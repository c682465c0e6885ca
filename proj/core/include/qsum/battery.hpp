#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsum/cohomology.hpp"
#include "qsum/quandle.hpp"

namespace qsum {

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct BatterySpec {
  std::string label;
  std::filesystem::path quandle;
  std::optional<std::filesystem::path> cocycle;
};

/// One column of the invariant matrix: a quandle alone (coloring count) or a
/// quandle with a verified cocycle (state sum).
struct BatteryEntry {
  std::string label;
  std::filesystem::path quandle_path;
  std::optional<std::filesystem::path> cocycle_path;
  std::shared_ptr<const Quandle> quandle;
  std::optional<Cocycle> cocycle;
  std::string quandle_sha256;
  std::string cocycle_sha256;  // empty without a cocycle
};

struct Battery {
  std::vector<BatteryEntry> entries;
  const BatteryEntry* find(std::string_view label) const;
};

/// Loads and verifies every entry in order. A cocycle that fails
/// verify_cocycle is rejected with VerificationError naming the file and the
/// witness; duplicate labels are a DataError.
Battery load_battery(const std::vector<BatterySpec>& specs);

/// Battery file: one entry per line, "label quandle-file [cocycle-file]"
/// separated by tabs or spaces; relative paths are taken from the battery
/// file's directory; '#' comments.
std::vector<BatterySpec> parse_battery_file(const std::filesystem::path& path);
Battery load_battery_file(const std::filesystem::path& path);

}  // namespace qsum
