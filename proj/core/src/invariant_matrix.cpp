#include "qsum/invariant_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/core.h>

#include "qsum/error.hpp"

namespace qsum {

InvariantValue InvariantValue::count(std::uint64_t n) { return {0, {n}}; }

InvariantValue InvariantValue::from(const StateSumValue& v) { return {v.modulus(), v.counts()}; }

std::uint64_t InvariantValue::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

bool InvariantValue::is_constant() const {
  return std::all_of(counts.begin() + (counts.empty() ? 0 : 1), counts.end(), [](std::uint64_t c) { return c == 0; });
}

bool InvariantValue::operator==(const InvariantValue& other) const {
  if (modulus == other.modulus) return counts == other.counts;
  return is_constant() && other.is_constant() && total() == other.total();
}

std::string InvariantValue::to_string() const {
  if (modulus == 0) return std::to_string(total());
  return StateSumValue(modulus, counts).to_string();
}

std::string InvariantValue::encode() const { return fmt::format("{}:{}", modulus, to_string()); }

InvariantValue InvariantValue::decode(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw DataError(fmt::format("bad stored value '{}'", text));
  const std::string mod_text(text.substr(0, colon));
  const std::string_view body = text.substr(colon + 1);
  unsigned mod = 0;
  try {
    mod = static_cast<unsigned>(std::stoul(mod_text));
  } catch (const std::logic_error&) {
    throw DataError(fmt::format("bad stored modulus in '{}'", text));
  }
  if (mod == 0) {
    try {
      std::size_t used = 0;
      const std::string b(body);
      const auto n = std::stoull(b, &used);
      if (used != b.size()) throw DataError("trailing characters");
      return count(n);
    } catch (const std::logic_error&) {
      throw DataError(fmt::format("bad stored count '{}'", body));
    }
  }
  return from(StateSumValue::parse(body, mod));
}

// --- results store -----------------------------------------------------------

ResultsStore::ResultsStore(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;  // a new store
  std::size_t line_number = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw DataError(fmt::format("{}:{}: expected 'name<TAB>label<TAB>value'", path_.string(), line_number));
    }
    Cell cell;
    cell.reloaded = true;
    const std::string value = line.substr(t2 + 1);
    if (!value.empty() && value[0] == '!') {
      cell.hole = value.substr(1);
    } else {
      try {
        cell.value = InvariantValue::decode(value);
      } catch (const DataError& e) {
        throw DataError(fmt::format("{}:{}: {}", path_.string(), line_number, e.what()));
      }
    }
    cells_[{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)}] = std::move(cell);
  }
}

std::optional<Cell> ResultsStore::lookup(const std::string& name, const std::string& label) const {
  std::lock_guard lock(mutex_);
  auto it = cells_.find({name, label});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void ResultsStore::record(const std::string& name, const std::string& label, const Cell& cell) {
  std::lock_guard lock(mutex_);
  cells_[{name, label}] = cell;
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  if (!out) throw DataError(fmt::format("cannot append to results store {}", path_.string()));
  out << name << '\t' << label << '\t' << (cell.value ? cell.value->encode() : "!" + cell.hole) << '\n';
}

// --- matrix ------------------------------------------------------------------

const Cell& InvariantMatrix::at(std::string_view knot, std::string_view label) const {
  const auto canon = canonical_knot_name(knot);
  const auto r = std::find(knots.begin(), knots.end(), canon);
  const auto c = std::find(labels.begin(), labels.end(), label);
  if (r == knots.end() || c == labels.end()) {
    throw DataError(fmt::format("no matrix cell for ({}, {})", knot, label));
  }
  return cells[static_cast<std::size_t>(r - knots.begin())][static_cast<std::size_t>(c - labels.begin())];
}

Cell compute_cell(const BatteryEntry& entry, const BraidWord& braid, const SolverOptions& options) {
  Cell cell;
  try {
    SolverStats stats;
    if (entry.cocycle) {
      cell.value = InvariantValue::from(state_sum(*entry.quandle, *entry.cocycle, braid, options, &stats));
    } else {
      stats = count_colorings(*entry.quandle, braid, options);
      cell.value = InvariantValue::count(stats.colorings);
    }
    cell.nodes = stats.nodes;
  } catch (const BudgetExceeded& e) {
    cell.hole = e.what();
    cell.nodes = options.node_budget;
  }
  return cell;
}

InvariantMatrix compute_invariant_matrix(const Battery& battery, const Catalog& catalog,
                                         const std::vector<std::string>& knots, const MatrixOptions& options,
                                         ResultsStore* store) {
  InvariantMatrix m;
  std::vector<BraidWord> braids;
  std::vector<std::string> missing;
  for (const auto& name : knots) {
    auto rec = catalog.resolve(name);
    if (!rec) {
      missing.push_back(name);
      continue;
    }
    m.knots.push_back(rec->name);
    braids.push_back(rec->braid);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& n : missing) list += (list.empty() ? "" : ", ") + n;
    throw DataError(fmt::format("no braid record for: {}", list));
  }
  for (const auto& e : battery.entries) m.labels.push_back(e.label);
  m.cells.assign(m.knots.size(), std::vector<Cell>(m.labels.size()));

  const std::size_t total = m.knots.size() * m.labels.size();
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < total;) {
      const std::size_t r = k / m.labels.size(), c = k % m.labels.size();
      Cell cell;
      std::optional<Cell> cached = store ? store->lookup(m.knots[r], m.labels[c]) : std::nullopt;
      if (cached && cached->known()) {
        cell = std::move(*cached);
      } else {
        cell = compute_cell(battery.entries[c], braids[r], options.solver);
        if (store) store->record(m.knots[r], m.labels[c], cell);
      }
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(m.knots[r], m.labels[c], cell);
      }
      m.cells[r][c] = std::move(cell);
    }
  };
  const unsigned threads = std::max(1U, options.cell_threads);
  if (threads == 1 || total <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return m;
}

std::string render_matrix_tsv(const InvariantMatrix& m) {
  std::string out = "knot";
  for (const auto& l : m.labels) out += "\t" + l;
  out += "\n";
  for (std::size_t r = 0; r < m.knots.size(); ++r) {
    out += m.knots[r];
    for (const auto& cell : m.cells[r]) out += "\t" + (cell.value ? cell.value->to_string() : std::string("?"));
    out += "\n";
  }
  return out;
}

}  // namespace qsum
