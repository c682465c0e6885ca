#include <mutex>

#include <fmt/core.h>

#include "coloring_internal.hpp"
#include "qsum/coloring.hpp"
#include "qsum/error.hpp"

namespace qsum {

StateSumValue state_sum(const Quandle& q, const Cocycle& phi, const BraidWord& w, const SolverOptions& options,
                        SolverStats* stats) {
  if (phi.order() != q.order()) {
    throw MismatchError(fmt::format("cocycle of order {} on a quandle of order {}", phi.order(), q.order()));
  }
  const unsigned p = phi.modulus();
  // Each worker folds into its own value; the merge is a plain sum.
  std::vector<StateSumValue> partial;
  std::mutex m;
  const auto result = detail::run_coloring_search(q, w, options, &phi, [&](unsigned) {
    StateSumValue* slot = nullptr;
    {
      std::lock_guard lock(m);
      partial.reserve(std::max<std::size_t>(options.threads, 1));
      slot = &partial.emplace_back(p);
    }
    return detail::WorkerSink([slot](std::span<const Element>, unsigned weight) { slot->insert_raw(weight); });
  });
  StateSumValue total(p);
  for (const auto& v : partial) total += v;
  if (total.total() != result.colorings) {
    throw VerificationError(fmt::format("state sum has {} terms but the search found {} colorings", total.total(),
                                        result.colorings));
  }
  if (stats) *stats = result;
  return total;
}

StateSumValue state_sum_brute(const Quandle& q, const Cocycle& phi, const BraidWord& w) {
  StateSumValue total(phi.modulus());
  for (const auto& top : list_colorings_brute(q, w)) total.insert_raw(propagate(q, top, w, &phi).weight);
  return total;
}

}  // namespace qsum
