#include "qsum/reports.hpp"

#include <algorithm>

#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/error.hpp"

namespace qsum {

namespace {

std::vector<std::size_t> column_indices(const InvariantMatrix& m, const std::vector<std::string>& columns) {
  std::vector<std::size_t> idx;
  if (columns.empty()) {
    for (std::size_t c = 0; c < m.labels.size(); ++c) idx.push_back(c);
    return idx;
  }
  for (const auto& name : columns) {
    auto it = std::find(m.labels.begin(), m.labels.end(), name);
    if (it == m.labels.end()) throw DataError(fmt::format("no battery column '{}'", name));
    idx.push_back(static_cast<std::size_t>(it - m.labels.begin()));
  }
  return idx;
}

bool complete(const std::vector<Cell>& row, const std::vector<std::size_t>& cols) {
  return std::all_of(cols.begin(), cols.end(), [&](std::size_t c) { return row[c].known(); });
}

// Equal on every column where both sides are known.
bool compatible(const std::vector<Cell>& a, const std::vector<Cell>& b, const std::vector<std::size_t>& cols) {
  return std::all_of(cols.begin(), cols.end(), [&](std::size_t c) {
    return !a[c].known() || !b[c].known() || *a[c].value == *b[c].value;
  });
}

std::string cell_text(const Cell& c) { return c.value ? c.value->to_string() : "?"; }

}  // namespace

bool DistinguishReport::fully_distinguished() const {
  return unresolved.empty() &&
         std::all_of(classes.begin(), classes.end(), [](const KnotClass& k) { return k.knots.size() == 1; });
}

DistinguishReport distinguish_report(const InvariantMatrix& m, const std::vector<std::string>& columns) {
  DistinguishReport r;
  const auto cols = column_indices(m, columns);
  for (auto c : cols) r.columns.push_back(m.labels[c]);

  std::vector<std::size_t> class_rep;  // representative row of each class
  for (std::size_t row = 0; row < m.knots.size(); ++row) {
    if (!complete(m.cells[row], cols)) continue;
    bool placed = false;
    for (std::size_t k = 0; k < class_rep.size() && !placed; ++k) {
      if (compatible(m.cells[class_rep[k]], m.cells[row], cols)) {
        r.classes[k].knots.push_back(m.knots[row]);
        placed = true;
      }
    }
    if (!placed) {
      class_rep.push_back(row);
      r.classes.push_back({{m.knots[row]}, cols.empty() ? std::string() : m.labels[cols.front()]});
    }
  }
  for (auto& k : r.classes)
    if (k.knots.size() == 1) k.first_agreeing_column.clear();

  for (std::size_t row = 0; row < m.knots.size(); ++row) {
    if (complete(m.cells[row], cols)) continue;
    std::vector<std::string> matches;
    for (std::size_t other = 0; other < m.knots.size(); ++other)
      if (other != row && compatible(m.cells[row], m.cells[other], cols)) matches.push_back(m.knots[other]);
    r.unresolved.emplace_back(m.knots[row], std::move(matches));
  }
  return r;
}

std::string to_string(MirrorVerdict v) {
  switch (v) {
    case MirrorVerdict::Distinguished: return "distinguished";
    case MirrorVerdict::NotDistinguished: return "not-distinguished";
    case MirrorVerdict::Unknown: return "unknown";
  }
  return "unknown";
}

std::vector<MirrorRow> mirror_report(const Battery& battery, const Catalog& catalog,
                                     const std::vector<std::string>& knots, const MatrixOptions& options,
                                     ResultsStore* store) {
  std::vector<std::string> names;
  for (const auto& k : knots) {
    const auto canon = canonical_knot_name(k);
    names.push_back(canon);
    names.push_back("m(" + canon + ")");
  }
  const auto m = compute_invariant_matrix(battery, catalog, names, options, store);
  std::vector<std::size_t> all;
  for (std::size_t c = 0; c < m.labels.size(); ++c) all.push_back(c);

  std::vector<MirrorRow> rows;
  for (std::size_t i = 0; i + 1 < m.knots.size(); i += 2) {
    MirrorRow row{m.knots[i], m.cells[i], m.cells[i + 1], MirrorVerdict::Unknown};
    bool differs = false;
    for (std::size_t c : all) {
      if (row.knot_cells[c].known() && row.mirror_cells[c].known() &&
          !(*row.knot_cells[c].value == *row.mirror_cells[c].value)) {
        differs = true;
      }
    }
    if (differs) row.verdict = MirrorVerdict::Distinguished;
    else if (complete(row.knot_cells, all) && complete(row.mirror_cells, all)) row.verdict = MirrorVerdict::NotDistinguished;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SimilarityClass> similarity_classes(const InvariantMatrix& m) {
  std::vector<SimilarityClass> out;
  std::vector<std::size_t> rep;
  for (std::size_t c = 0; c < m.labels.size(); ++c) {
    const bool full = std::all_of(m.cells.begin(), m.cells.end(), [&](const auto& row) { return row[c].known(); });
    if (!full) {
      out.push_back({{m.labels[c]}, false});
      rep.push_back(static_cast<std::size_t>(-1));
      continue;
    }
    bool placed = false;
    for (std::size_t k = 0; k < out.size() && !placed; ++k) {
      if (!out[k].complete) continue;
      const bool same = std::all_of(m.cells.begin(), m.cells.end(),
                                    [&](const auto& row) { return *row[rep[k]].value == *row[c].value; });
      if (same) {
        out[k].labels.push_back(m.labels[c]);
        placed = true;
      }
    }
    if (!placed) {
      out.push_back({{m.labels[c]}, true});
      rep.push_back(c);
    }
  }
  return out;
}

std::string render_distinguish(const DistinguishReport& r) {
  std::string out = fmt::format("columns\t{}\n", fmt::join(r.columns, ","));
  std::size_t singles = 0;
  for (const auto& k : r.classes) {
    if (k.knots.size() == 1) {
      ++singles;
      continue;
    }
    out += fmt::format("class\t{}\tagree-from\t{}\n", fmt::join(k.knots, ","), k.first_agreeing_column);
  }
  for (const auto& [knot, matches] : r.unresolved) out += fmt::format("unresolved\t{}\t{}\n", knot, fmt::join(matches, ","));
  out += fmt::format("summary\t{} classes, {} singletons, {} unresolved, fully distinguished: {}\n", r.classes.size(),
                     singles, r.unresolved.size(), r.fully_distinguished() ? "yes" : "no");
  return out;
}

std::string render_mirror_report(const std::vector<MirrorRow>& rows, const std::vector<std::string>& labels) {
  std::string out = "knot\tverdict";
  for (const auto& l : labels) out += "\t" + l + "\tm:" + l;
  out += "\n";
  for (const auto& r : rows) {
    out += r.knot + "\t" + to_string(r.verdict);
    for (std::size_t c = 0; c < r.knot_cells.size(); ++c)
      out += "\t" + cell_text(r.knot_cells[c]) + "\t" + cell_text(r.mirror_cells[c]);
    out += "\n";
  }
  return out;
}

std::string render_similarity(const std::vector<SimilarityClass>& classes) {
  std::string out;
  for (const auto& c : classes)
    out += fmt::format("{}\t{}\n", c.complete ? "class" : "incomplete", fmt::join(c.labels, " ~ "));
  return out;
}

std::string render_battery_provenance(const Battery& battery) {
  std::string out;
  for (const auto& e : battery.entries) {
    out += fmt::format("# battery {} quandle={} sha256={}", e.label, e.quandle_path.filename().string(),
                       e.quandle_sha256);
    if (e.cocycle_path) out += fmt::format(" cocycle={} sha256={}", e.cocycle_path->filename().string(), e.cocycle_sha256);
    out += "\n";
  }
  return out;
}

}  // namespace qsum
