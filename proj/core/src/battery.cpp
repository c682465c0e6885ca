#include "qsum/battery.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include <fmt/core.h>
#include <openssl/evp.h>

#include "qsum/error.hpp"
#include "text_util.hpp"

namespace qsum {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {} for hashing", path.string()));
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 init failed");
  std::array<char, 1 << 14> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::string hex;
  for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

const BatteryEntry* Battery::find(std::string_view label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

Battery load_battery(const std::vector<BatterySpec>& specs) {
  Battery out;
  std::set<std::string> labels;
  for (const auto& spec : specs) {
    if (!labels.insert(spec.label).second) throw DataError(fmt::format("duplicate battery label '{}'", spec.label));
    BatteryEntry e;
    e.label = spec.label;
    e.quandle_path = spec.quandle;
    e.quandle = std::make_shared<const Quandle>(load_quandle(spec.quandle));
    e.quandle_sha256 = sha256_file(spec.quandle);
    if (spec.cocycle) {
      e.cocycle_path = *spec.cocycle;
      Cocycle phi = load_cocycle(*spec.cocycle);
      if (phi.order() != e.quandle->order()) {
        throw DataError(fmt::format("{}: cocycle of order {} does not fit quandle {} of order {}",
                                    spec.cocycle->string(), phi.order(), spec.quandle.string(), e.quandle->order()));
      }
      if (auto bad = verify_cocycle(*e.quandle, phi)) {
        throw VerificationError(fmt::format("{}: {}", spec.cocycle->string(), bad->describe()));
      }
      e.cocycle = std::move(phi);
      e.cocycle_sha256 = sha256_file(*spec.cocycle);
    }
    out.entries.push_back(std::move(e));
  }
  return out;
}

std::vector<BatterySpec> parse_battery_file(const std::filesystem::path& path) {
  const std::string text = detail::read_text_file(path, "battery");
  const auto base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path f(p);
    return f.is_absolute() ? f : base / f;
  };
  std::vector<BatterySpec> specs;
  std::istringstream in(text);
  std::size_t line_number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_number;
    std::istringstream fields(detail::strip_comments(raw));
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.empty()) continue;
    if (parts.size() < 2 || parts.size() > 3) {
      throw DataError(fmt::format("{}:{}: expected 'label quandle-file [cocycle-file]'", path.string(), line_number));
    }
    BatterySpec s{parts[0], resolve(parts[1]), std::nullopt};
    if (parts.size() == 3) s.cocycle = resolve(parts[2]);
    specs.push_back(std::move(s));
  }
  return specs;
}

Battery load_battery_file(const std::filesystem::path& path) { return load_battery(parse_battery_file(path)); }

}  // namespace qsum
