#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include <fmt/core.h>

#include "coloring_internal.hpp"
#include "qsum/coloring.hpp"
#include "qsum/error.hpp"

namespace qsum {

namespace {

constexpr Element kUnset = 0xFFFF;

// One crossing of the closed braid: vals a*b = c, weight sign*phi(a, b).
struct Constraint {
  std::size_t a, b, c;
  int sign;
};

struct Problem {
  std::size_t vars = 0;
  std::vector<Constraint> constraints;
  std::vector<std::size_t> top;                 // var of each top position
  std::vector<std::vector<std::size_t>> watch;  // constraints touching each var
};

std::size_t find(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

Problem build_problem(const BraidWord& w) {
  const std::size_t m = w.strands;
  std::vector<std::size_t> cur(m);
  std::iota(cur.begin(), cur.end(), 0);
  std::size_t raw = m;
  std::vector<Constraint> raw_constraints;
  for (int l : w.letters) {
    const auto i = static_cast<std::size_t>(std::abs(l) - 1);
    const std::size_t fresh = raw++;
    if (l > 0) {
      raw_constraints.push_back({cur[i], cur[i + 1], fresh, +1});
      cur[i] = cur[i + 1];
      cur[i + 1] = fresh;
    } else {
      raw_constraints.push_back({fresh, cur[i], cur[i + 1], -1});
      cur[i + 1] = cur[i];
      cur[i] = fresh;
    }
  }
  std::vector<std::size_t> parent(raw);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t j = 0; j < m; ++j) parent[find(parent, cur[j])] = find(parent, j);

  Problem p;
  std::vector<std::size_t> var_of(raw, static_cast<std::size_t>(-1));
  auto var = [&](std::size_t arc) {
    auto& v = var_of[find(parent, arc)];
    if (v == static_cast<std::size_t>(-1)) v = p.vars++;
    return v;
  };
  for (std::size_t j = 0; j < m; ++j) p.top.push_back(var(j));
  for (const auto& c : raw_constraints) p.constraints.push_back({var(c.a), var(c.b), var(c.c), c.sign});
  p.watch.resize(p.vars);
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    const auto& c = p.constraints[k];
    for (std::size_t v : {c.a, c.b, c.c}) {
      auto& list = p.watch[v];
      if (list.empty() || list.back() != k) list.push_back(k);
    }
  }
  return p;
}

// Tables shared by all workers for a quandle.
struct Tables {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> sol;       // sol[(a*n + c)*words ..]: {b : a*b = c}
  std::vector<std::uint16_t> sol_count;
  std::vector<Element> sol_single;      // the b when sol_count == 1
  std::vector<std::uint64_t> row_image; // row_image[a*words ..]: {a*b : b}

  explicit Tables(const Quandle& q) : n(q.order()), words((q.order() + 63) / 64) {
    sol.assign(n * n * words, 0);
    sol_count.assign(n * n, 0);
    sol_single.assign(n * n, kUnset);
    row_image.assign(n * words, 0);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element c = q.op(a, b);
        sol[(a * n + c) * words + b / 64] |= std::uint64_t{1} << (b % 64);
        ++sol_count[a * n + c];
        sol_single[a * n + c] = b;
        row_image[a * words + c / 64] |= std::uint64_t{1} << (c % 64);
      }
  }
};

struct Shared {
  const Quandle& q;
  const Cocycle* phi;
  const Problem& problem;
  const Tables& tables;
  std::uint64_t budget;
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
};

class Search {
 public:
  Search(Shared& shared, detail::WorkerSink& sink)
      : s_(shared), p_(shared.problem), t_(shared.tables), sink_(sink), val_(p_.vars, kUnset), domain_(t_.words) {
    top_.resize(p_.top.size());
  }

  // Picks the root branching variable of an empty assignment.
  std::size_t root_variable() {
    std::vector<std::uint64_t> dom;
    return choose(dom);
  }

  void run_from_root(std::size_t var, Element value) {
    count_node();
    if (assign(var, value) && propagate()) descend();
    undo(0);
  }

  void run() { descend(); }

  std::uint64_t colorings() const { return colorings_; }

 private:
  void count_node() {
    const auto total = s_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (total > s_.budget) {
      throw BudgetExceeded(fmt::format("coloring search exceeded the node budget of {} ({} nodes expanded)",
                                       s_.budget, total - 1));
    }
    if (s_.stop.load(std::memory_order_relaxed)) throw detail::SearchStopped{};
  }

  bool assign(std::size_t v, Element value) {
    val_[v] = value;
    trail_.push_back(v);
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = kUnset;
      trail_.pop_back();
    }
    queue_head_ = trail_.size();
  }

  // Unit propagation over the constraints of every newly assigned variable.
  bool propagate() {
    while (queue_head_ < trail_.size()) {
      const std::size_t v = trail_[queue_head_++];
      for (std::size_t k : p_.watch[v]) {
        const auto& c = p_.constraints[k];
        const Element a = val_[c.a], b = val_[c.b], cv = val_[c.c];
        if (a != kUnset && b != kUnset) {
          const Element r = s_.q.op(a, b);
          if (cv == kUnset) assign(c.c, r);
          else if (cv != r) return false;
        } else if (b != kUnset && cv != kUnset) {
          assign(c.a, s_.q.inv_op(cv, b));
        } else if (a != kUnset && cv != kUnset) {
          const auto cnt = t_.sol_count[a * t_.n + cv];
          if (cnt == 0) return false;
          if (cnt == 1) assign(c.b, t_.sol_single[a * t_.n + cv]);
        }
      }
    }
    return true;
  }

  // Smallest-domain unassigned variable; domain left in `dom` (all ones when
  // nothing constrains the choice).
  std::size_t choose(std::vector<std::uint64_t>& dom) {
    std::size_t best = p_.vars;
    std::size_t best_size = t_.n + 1;
    std::size_t best_links = 0;
    for (std::size_t v = 0; v < p_.vars; ++v) {
      if (val_[v] != kUnset) continue;
      fill_all(domain_);
      std::size_t links = 0;
      for (std::size_t k : p_.watch[v]) {
        const auto& c = p_.constraints[k];
        const Element a = val_[c.a], b = val_[c.b], cv = val_[c.c];
        if (a != kUnset || b != kUnset || cv != kUnset) ++links;
        if (c.b == v && c.a != v && c.c != v && a != kUnset && cv != kUnset) {
          intersect(domain_, &t_.sol[(a * t_.n + cv) * t_.words]);
        } else if (c.c == v && c.a != v && c.b != v && a != kUnset) {
          intersect(domain_, &t_.row_image[a * t_.words]);
        }
      }
      const std::size_t size = popcount(domain_);
      const bool better = size < best_size || (size == best_size && links > best_links) ||
                          (size == best_size && links == best_links && best < p_.vars &&
                           p_.watch[v].size() > p_.watch[best].size());
      if (best == p_.vars || better) {
        best = v;
        best_size = size;
        best_links = links;
        dom = domain_;
      }
    }
    return best;
  }

  void descend() {
    std::vector<std::uint64_t> dom;
    const std::size_t v = choose(dom);
    if (v == p_.vars) {
      emit();
      return;
    }
    const std::size_t mark = trail_.size();
    for (std::size_t w = 0; w < dom.size(); ++w) {
      for (std::uint64_t bits = dom[w]; bits; bits &= bits - 1) {
        const auto value = static_cast<Element>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        count_node();
        if (assign(v, value) && propagate()) descend();
        undo(mark);
      }
    }
  }

  void emit() {
    unsigned weight = 0;
    if (s_.phi) {
      const unsigned p = s_.phi->modulus();
      for (const auto& c : p_.constraints) {
        const unsigned phi = s_.phi->at(val_[c.a], val_[c.b]);
        weight = c.sign > 0 ? mod_add(weight, phi, p) : mod_sub(weight, phi, p);
      }
    }
    for (std::size_t j = 0; j < top_.size(); ++j) top_[j] = val_[p_.top[j]];
    ++colorings_;
    sink_(top_, weight);
  }

  void fill_all(std::vector<std::uint64_t>& d) const {
    std::fill(d.begin(), d.end(), ~std::uint64_t{0});
    if (const auto rem = t_.n % 64) d.back() = (std::uint64_t{1} << rem) - 1;
  }
  void intersect(std::vector<std::uint64_t>& d, const std::uint64_t* other) const {
    for (std::size_t w = 0; w < d.size(); ++w) d[w] &= other[w];
  }
  static std::size_t popcount(const std::vector<std::uint64_t>& d) {
    std::size_t s = 0;
    for (auto w : d) s += static_cast<std::size_t>(std::popcount(w));
    return s;
  }

  Shared& s_;
  const Problem& p_;
  const Tables& t_;
  detail::WorkerSink& sink_;
  std::vector<Element> val_;
  std::vector<std::size_t> trail_;
  std::size_t queue_head_ = 0;
  std::vector<std::uint64_t> domain_;
  std::vector<Element> top_;
  std::uint64_t colorings_ = 0;
};

}  // namespace

namespace detail {

SolverStats run_coloring_search(const Quandle& q, const BraidWord& w, const SolverOptions& options,
                                const Cocycle* phi, const std::function<WorkerSink(unsigned)>& make_sink) {
  if (phi && phi->order() != q.order()) throw MismatchError("cocycle order differs from quandle order");
  for (int l : w.letters) {
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= w.strands) throw DataError("invalid braid word");
  }
  const Problem problem = build_problem(w);
  const Tables tables(q);
  Shared shared{q, phi, problem, tables, options.node_budget};
  SolverStats stats;
  stats.arcs = problem.vars;

  const unsigned threads = std::max(1U, options.threads);
  if (threads == 1 || problem.vars == 0) {
    auto sink = make_sink(0);
    Search search(shared, sink);
    search.run();
    stats.colorings = search.colorings();
  } else {
    // Partition the domain of the root branching variable across workers.
    WorkerSink probe_sink = [](std::span<const Element>, unsigned) {};
    Search probe(shared, probe_sink);
    const std::size_t root = probe.root_variable();
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> total{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          try {
            auto sink = make_sink(t);
            Search search(shared, sink);
            for (std::size_t v; (v = next.fetch_add(1)) < q.order();) search.run_from_root(root, static_cast<Element>(v));
            total += search.colorings();
          } catch (const SearchStopped&) {
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            shared.stop = true;
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
    stats.colorings = total;
  }
  stats.nodes = shared.nodes.load();
  return stats;
}

}  // namespace detail

SolverStats enumerate_colorings(const Quandle& q, const BraidWord& w, const SolverOptions& options,
                                const ColoringVisitor& visit, const Cocycle* phi) {
  return detail::run_coloring_search(q, w, options, phi, [&](unsigned) {
    return detail::WorkerSink([&](std::span<const Element> top, unsigned weight) { visit(top, weight); });
  });
}

SolverStats count_colorings(const Quandle& q, const BraidWord& w, const SolverOptions& options) {
  return detail::run_coloring_search(q, w, options, nullptr, [](unsigned) {
    return detail::WorkerSink([](std::span<const Element>, unsigned) {});
  });
}

std::vector<std::vector<Element>> list_colorings(const Quandle& q, const BraidWord& w, const SolverOptions& options) {
  std::vector<std::vector<Element>> out;
  std::mutex m;
  enumerate_colorings(q, w, options, [&](std::span<const Element> top, unsigned) {
    std::lock_guard lock(m);
    out.emplace_back(top.begin(), top.end());
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Element>> list_colorings_brute(const Quandle& q, const BraidWord& w) {
  const std::size_t n = q.order(), m = w.strands;
  double space = 1;
  for (std::size_t i = 0; i < m; ++i) space *= static_cast<double>(n);
  if (space > 1e8) throw BudgetExceeded(fmt::format("brute-force coloring space {}^{} is too large", n, m));
  std::vector<std::vector<Element>> out;
  std::vector<Element> top(m, 0);
  while (true) {
    if (propagate(q, top, w).bottom == top) out.push_back(top);
    std::size_t i = m;
    while (i-- > 0) {
      if (++top[i] < n) break;
      top[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace qsum
