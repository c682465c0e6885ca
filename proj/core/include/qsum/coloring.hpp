#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qsum/braid.hpp"
#include "qsum/cohomology.hpp"
#include "qsum/quandle.hpp"
#include "qsum/state_sum_value.hpp"

namespace qsum {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;

struct SolverOptions {
  unsigned threads = 1;
  /// Search nodes allowed before BudgetExceeded is thrown.
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct SolverStats {
  std::uint64_t colorings = 0;
  std::uint64_t nodes = 0;
  std::size_t arcs = 0;  // variables after closing the braid
};

/// Called once per coloring with the top vector and its total weight
/// (0 when no cocycle was given). May be called from several threads when
/// options.threads > 1.
using ColoringVisitor = std::function<void(std::span<const Element> top, unsigned weight)>;

/// Enumerates the fixed points of the braid action on X^m by constraint
/// propagation over the crossing relations a*b = c of the closed braid.
SolverStats enumerate_colorings(const Quandle& q, const BraidWord& w, const SolverOptions& options,
                                const ColoringVisitor& visit, const Cocycle* phi = nullptr);

SolverStats count_colorings(const Quandle& q, const BraidWord& w, const SolverOptions& options = {});

/// All colorings as sorted top vectors.
std::vector<std::vector<Element>> list_colorings(const Quandle& q, const BraidWord& w,
                                                 const SolverOptions& options = {});

/// Brute force over all n^m top vectors using propagate(); for tests.
std::vector<std::vector<Element>> list_colorings_brute(const Quandle& q, const BraidWord& w);

/// Sum over colorings of u^(total weight).
StateSumValue state_sum(const Quandle& q, const Cocycle& phi, const BraidWord& w, const SolverOptions& options = {},
                        SolverStats* stats = nullptr);

/// State sum over the brute-force colorings; for tests.
StateSumValue state_sum_brute(const Quandle& q, const Cocycle& phi, const BraidWord& w);

}  // namespace qsum
