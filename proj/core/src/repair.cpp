#include <algorithm>
#include <map>

#include <fmt/core.h>

#include "qsum/error.hpp"
#include "qsum/quandle.hpp"

namespace qsum {

namespace {

using Column = std::vector<Element>;

std::vector<Element> inverse_of(const Column& perm) {
  Column inv(perm.size());
  for (std::size_t x = 0; x < perm.size(); ++x) inv[perm[x]] = static_cast<Element>(x);
  return inv;
}

bool is_permutation_fixing(const Column& perm, std::size_t k) {
  std::vector<bool> hit(perm.size(), false);
  for (auto v : perm) {
    if (v >= perm.size() || hit[v]) return false;
    hit[v] = true;
  }
  return perm[k] == k;
}

// Every S_k forced by axiom 3 through a pair of known columns:
// k = x*y with x != k gives S_k = S_y S_x S_y^{-1}. Candidates are returned
// with their multiplicity.
std::map<Column, std::size_t> derivations(const std::vector<std::optional<Column>>& cols, std::size_t k) {
  const std::size_t n = cols.size();
  std::map<Column, std::size_t> out;
  for (std::size_t y = 0; y < n; ++y) {
    if (y == k || !cols[y]) continue;
    const Column& sy = *cols[y];
    const Column sy_inv = inverse_of(sy);
    const std::size_t x = sy_inv[k];
    if (x == k || !cols[x]) continue;
    const Column& sx = *cols[x];
    Column sk(n);
    for (std::size_t z = 0; z < n; ++z) sk[z] = sy[sx[sy_inv[z]]];
    ++out[sk];
  }
  return out;
}

QuandleCheck check_columns(const std::vector<std::optional<Column>>& cols) {
  const std::size_t n = cols.size();
  std::vector<Element> table(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x) table[x * n + k] = (*cols[k])[x];
  return check_quandle(n, std::move(table));
}

}  // namespace

RepairResult repair_cycle_listing(const CycleListing& listing) {
  const std::size_t n = listing.order;
  std::vector<std::optional<Column>> cols(n);
  std::map<std::size_t, ColumnRepair> repairs;

  for (std::size_t k = 0; k < n; ++k) {
    const auto& line = listing.lines.at(listing.line_of_column.at(k));
    if (line.defect) {
      repairs[k] = ColumnRepair{k, line.text, *line.defect, {}};
    } else if (!is_permutation_fixing(*line.permutation, k)) {
      repairs[k] = ColumnRepair{k, line.text, fmt::format("S_{0} does not fix {0}", k + 1), {}};
    } else {
      cols[k] = *line.permutation;
    }
  }

  // Fill unparsable columns from intact ones until no progress is made.
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto& [k, rep] : repairs) {
      if (cols[k]) continue;
      const auto cands = derivations(cols, k);
      if (cands.empty()) continue;
      auto best = std::max_element(cands.begin(), cands.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
      cols[k] = best->first;
      progress = true;
    }
  }
  for (const auto& [k, rep] : repairs) {
    if (!cols[k]) {
      throw VerificationError(fmt::format("S_{} cannot be derived from the remaining columns", k + 1));
    }
  }

  auto check = check_columns(cols);
  // Well-formed columns can still be wrong. In a quandle every derivation of
  // S_k agrees with S_k, so a column that most derivations contradict is
  // replaced by the majority candidate, largest margin first.
  for (std::size_t round = 0; !check.ok() && round < 2 * n; ++round) {
    std::size_t best_k = n, best_margin = 0;
    Column best_col;
    for (std::size_t k = 0; k < n; ++k) {
      const auto cands = derivations(cols, k);
      if (cands.empty()) continue;
      auto top = std::max_element(cands.begin(), cands.end(),
                                  [](const auto& a, const auto& b) { return a.second < b.second; });
      if (top->first == *cols[k]) continue;
      const auto current = cands.count(*cols[k]) ? cands.at(*cols[k]) : 0;
      if (top->second <= current) continue;
      const std::size_t margin = top->second - current;
      if (margin > best_margin) {
        best_margin = margin;
        best_k = k;
        best_col = top->first;
      }
    }
    if (best_k == n) break;
    if (!repairs.count(best_k)) {
      const auto& line = listing.lines.at(listing.line_of_column.at(best_k));
      repairs[best_k] = ColumnRepair{best_k, line.text, "well-formed but inconsistent with the other columns", {}};
    }
    cols[best_k] = best_col;
    check = check_columns(cols);
  }
  if (!check.ok()) {
    throw VerificationError(fmt::format("listing still fails the quandle axioms after repair ({})",
                                        check.violation->describe()));
  }
  // A repair that reproduced the listed column was not needed after all.
  for (auto it = repairs.begin(); it != repairs.end();) {
    const auto& line = listing.lines.at(listing.line_of_column.at(it->first));
    if (!line.defect && line.permutation && *line.permutation == *cols[it->first]) it = repairs.erase(it);
    else ++it;
  }

  RepairResult result{std::move(*check.quandle), {}};
  for (auto& [k, rep] : repairs) {
    rep.repaired = *cols[k];
    result.repairs.push_back(std::move(rep));
  }
  return result;
}

}  // namespace qsum
