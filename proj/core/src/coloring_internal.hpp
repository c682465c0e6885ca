#pragma once

#include <functional>
#include <span>

#include "qsum/coloring.hpp"

namespace qsum::detail {

/// Per-worker sink; each worker gets its own so no locking is needed.
using WorkerSink = std::function<void(std::span<const Element> top, unsigned weight)>;

/// Thrown inside workers once another worker failed.
struct SearchStopped {};

SolverStats run_coloring_search(const Quandle& q, const BraidWord& w, const SolverOptions& options,
                                const Cocycle* phi, const std::function<WorkerSink(unsigned)>& make_sink);

}  // namespace qsum::detail
