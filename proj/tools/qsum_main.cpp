// qsum: command-line front end for the qsum library.
//
// Exit codes: 0 success, 1 data error, 2 budget exceeded, 3 axiom or
// verification failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/format.h>

#include "qsum/battery.hpp"
#include "qsum/braid.hpp"
#include "qsum/catalog.hpp"
#include "qsum/cohomology.hpp"
#include "qsum/coloring.hpp"
#include "qsum/error.hpp"
#include "qsum/invariant_matrix.hpp"
#include "qsum/quandle.hpp"
#include "qsum/reports.hpp"
#include "qsum/ring.hpp"

namespace fs = std::filesystem;
using namespace qsum;

namespace {

enum Exit { kOk = 0, kDataError = 1, kBudget = 2, kVerification = 3 };

struct Common {
  std::string quandle;
  std::string cocycle;
  std::string catalog;
  std::string battery;
  std::string out;
  unsigned threads = 1;
  std::uint64_t budget = kDefaultNodeBudget;
  std::string knots;   // comma separated
  std::string family;  // file with one knot name per line
  std::string braid;   // "m: letters"
};

void write_output(const Common& c, const std::string& file, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(c.out);
  const fs::path path = fs::path(c.out) / file;
  std::ofstream f(path);
  if (!f) throw DataError(fmt::format("cannot write {}", path.string()));
  f << text;
  std::cerr << "wrote " << path.string() << "\n";
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw DataError(fmt::format("{} is required", flag));
}

SolverOptions solver_options(const Common& c) { return {c.threads, c.budget}; }

std::vector<std::string> knot_list(const Common& c, const Catalog& catalog) {
  std::vector<std::string> names;
  if (!c.knots.empty()) {
    std::stringstream ss(c.knots);
    for (std::string n; std::getline(ss, n, ',');)
      if (!n.empty()) names.push_back(n);
  }
  if (!c.family.empty()) {
    std::ifstream f(c.family);
    if (!f) throw DataError(fmt::format("cannot open knot family {}", c.family));
    for (std::string line; std::getline(f, line);) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::stringstream ss(line);
      for (std::string n; ss >> n;) names.push_back(n);
    }
  }
  if (names.empty())
    for (const auto& r : catalog.records()) names.push_back(r.name);
  return names;
}

// The knot for colorings/statesum: --braid "m: letters" or --catalog + --knots.
KnotRecord single_knot(const Common& c) {
  if (!c.braid.empty()) {
    const auto colon = c.braid.find(':');
    if (colon == std::string::npos) throw DataError("--braid expects 'm: letters'");
    const auto m = std::stoul(c.braid.substr(0, colon));
    return {"braid", BraidWord::make(m, parse_braid_letters(c.braid.substr(colon + 1)))};
  }
  require(c.catalog, "--catalog (or --braid)");
  require(c.knots, "--knots");
  const auto catalog = load_catalog(c.catalog);
  auto rec = catalog.resolve(c.knots);
  if (!rec) throw DataError(fmt::format("knot {} is not in {}", c.knots, c.catalog));
  return *rec;
}

int cmd_check_quandle(const Common& c) {
  require(c.quandle, "--quandle");
  const std::string text = [&] {
    std::ifstream f(c.quandle);
    if (!f) throw DataError(fmt::format("cannot open {}", c.quandle));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }();
  Quandle q = [&] {
    try {
      return parse_quandle_text(text);
    } catch (const VerificationError& e) {
      fmt::print("FAIL {}\n", e.what());
      throw;
    }
  }();
  const auto orbits = inner_orbits(q);
  const auto count = orbits.empty() ? 0 : *std::max_element(orbits.begin(), orbits.end()) + 1;
  fmt::print("order {}\nquandle ok\nconnected {}\norbits {}\n", q.order(), is_connected(q) ? "yes" : "no", count);
  return kOk;
}

int cmd_idempotents(const Common& c, unsigned modulus) {
  require(c.quandle, "--quandle");
  auto q = std::make_shared<const Quandle>(load_quandle(c.quandle));
  const auto set = enumerate_idempotents(q, modulus, {c.threads, 16});
  std::cerr << fmt::format("{} idempotents among {} candidates\n", set.elements.size(), set.candidates_scanned);
  write_output(c, "idempotents.txt", render_support_listing(set));
  return kOk;
}

int cmd_idem_quandle(const Common& c, std::size_t depth) {
  require(c.quandle, "--quandle");
  const Quandle q = load_quandle(c.quandle);
  const auto result = iterate_idempotent_quandle(q, depth, {c.threads, 16});
  if (!result.ok()) {
    fmt::print("FAIL at depth {}: {}\n", result.failed_at_depth, result.failure->describe());
    return kVerification;
  }
  std::cerr << fmt::format("orders by level: {}\n", fmt::join(result.orders, " "));
  write_output(c, "idempotent-quandle.txt",
               render_quandle_table(*result.quandle, fmt::format("idempotent quandle, depth {}, from {}", depth,
                                                                 fs::path(c.quandle).filename().string())));
  return kOk;
}

int cmd_cocycles(const Common& c, unsigned p) {
  require(c.quandle, "--quandle");
  const Quandle q = load_quandle(c.quandle);
  const auto z = cocycle_space(q, p);
  const auto b = coboundary_space(q, p);
  const auto h = second_cohomology_dimension(q, p);
  fmt::print("dim Z2 {}\ndim B2 {}\ndim H2 {}\ndim H2 (boundary matrices) {}\n", z.dim(), b.dim(), z.dim() - b.dim(), h);
  if (!c.out.empty()) {
    for (std::size_t i = 0; i < z.basis.size(); ++i)
      write_output(c, fmt::format("cocycle-basis-{}.txt", i + 1), render_cocycle(z.basis[i]));
  }
  return z.dim() - b.dim() == h ? kOk : kVerification;
}

int cmd_verify_cocycle(const Common& c) {
  require(c.quandle, "--quandle");
  require(c.cocycle, "--cocycle");
  const Quandle q = load_quandle(c.quandle);
  const Cocycle phi = load_cocycle(c.cocycle);
  if (phi.order() != q.order()) throw DataError("cocycle order differs from quandle order");
  if (auto bad = verify_cocycle(q, phi)) {
    fmt::print("FAIL {}\n", bad->describe());
    return kVerification;
  }
  fmt::print("cocycle ok\ncoboundary {}\n", is_coboundary(q, phi) ? "yes" : "no");
  return kOk;
}

void write_text(const std::string& output, const std::string& text) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw DataError(fmt::format("cannot write {}", output));
  out << text;
}

int cmd_repair_cocycle(const Common& c, const std::string& output) {
  require(c.quandle, "--quandle");
  require(c.cocycle, "--cocycle");
  const Quandle q = load_quandle(c.quandle);
  const Cocycle phi = load_cocycle(c.cocycle);
  if (phi.order() != q.order()) throw DataError("cocycle order differs from quandle order");
  if (!verify_cocycle(q, phi)) {
    std::cerr << "already a cocycle, nothing to repair\n";
    return kOk;
  }
  const auto r = nearest_cocycle(q, phi);
  std::string notes = fmt::format("nearest cocycle to {} on {}: {} entr{} changed, {} cocycle(s) at that distance",
                                  fs::path(c.cocycle).filename().string(), fs::path(c.quandle).filename().string(),
                                  r.distance, r.distance == 1 ? "y" : "ies", r.ties);
  for (const auto& ch : r.changes) notes += fmt::format("\n({},{}): listed {} -> {}", ch.x, ch.y, ch.from, ch.to);
  write_text(output, render_cocycle(r.cocycle, notes));
  std::cerr << notes << "\n";
  return r.ties == 1 ? kOk : kVerification;
}

int cmd_dual_quandle(const std::string& input, const std::string& output) {
  const Quandle q = load_quandle(input);
  write_text(output, render_quandle_table(dual_quandle(q), fmt::format("dual of {}: x*y here is x*y^-1 there",
                                                                       fs::path(input).filename().string())));
  return kOk;
}

int cmd_colorings(const Common& c, bool list) {
  require(c.quandle, "--quandle");
  const Quandle q = load_quandle(c.quandle);
  const auto knot = single_knot(c);
  if (closure_components(knot.braid) > 1) std::cerr << "warning: the closure is a link\n";
  if (list) {
    std::string text;
    for (const auto& top : list_colorings(q, knot.braid, solver_options(c))) {
      std::vector<unsigned> labels(top.begin(), top.end());
      for (auto& l : labels) ++l;
      text += fmt::format("{}\n", fmt::join(labels, " "));
    }
    write_output(c, "colorings.txt", text);
    return kOk;
  }
  const auto stats = count_colorings(q, knot.braid, solver_options(c));
  fmt::print("{}\t{}\n", knot.name, stats.colorings);
  std::cerr << fmt::format("nodes {}\n", stats.nodes);
  return kOk;
}

int cmd_statesum(const Common& c) {
  require(c.quandle, "--quandle");
  require(c.cocycle, "--cocycle");
  const Quandle q = load_quandle(c.quandle);
  const Cocycle phi = load_cocycle(c.cocycle);
  if (auto bad = verify_cocycle(q, phi)) {
    fmt::print("FAIL {}\n", bad->describe());
    return kVerification;
  }
  const auto knot = single_knot(c);
  if (closure_components(knot.braid) > 1) std::cerr << "warning: the closure is a link\n";
  SolverStats stats;
  const auto v = state_sum(q, phi, knot.braid, solver_options(c), &stats);
  fmt::print("{}\t{}\n", knot.name, v.to_string());
  std::cerr << fmt::format("colorings {} nodes {}\n", stats.colorings, stats.nodes);
  return kOk;
}

struct Loaded {
  Battery battery;
  Catalog catalog;
  std::vector<std::string> knots;
  std::unique_ptr<ResultsStore> store;
  MatrixOptions options;
};

Loaded load_pipeline(const Common& c) {
  require(c.battery, "--battery");
  require(c.catalog, "--catalog");
  Loaded l{load_battery_file(c.battery), load_catalog(c.catalog), {}, nullptr, {}};
  l.knots = knot_list(c, l.catalog);
  l.options.solver = {1, c.budget};
  l.options.cell_threads = std::max(1U, c.threads);
  l.options.progress = [](const std::string& k, const std::string& label, const Cell& cell) {
    std::cerr << fmt::format("{}\t{}\t{}{}\n", k, label, cell.value ? cell.value->to_string() : "?" + cell.hole,
                             cell.reloaded ? " (stored)" : "");
  };
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    l.store = std::make_unique<ResultsStore>(fs::path(c.out) / "results.tsv");
  }
  return l;
}

int exit_for_holes(const InvariantMatrix& m) {
  for (const auto& row : m.cells)
    for (const auto& cell : row)
      if (!cell.known()) return kBudget;
  return kOk;
}

int cmd_invariant_matrix(const Common& c) {
  auto l = load_pipeline(c);
  const auto m = compute_invariant_matrix(l.battery, l.catalog, l.knots, l.options, l.store.get());
  write_output(c, "matrix.tsv", render_battery_provenance(l.battery) + render_matrix_tsv(m));
  return exit_for_holes(m);
}

int cmd_distinguish(const Common& c, const std::string& columns) {
  auto l = load_pipeline(c);
  const auto m = compute_invariant_matrix(l.battery, l.catalog, l.knots, l.options, l.store.get());
  std::vector<std::string> cols;
  std::stringstream ss(columns);
  for (std::string s; std::getline(ss, s, ',');)
    if (!s.empty()) cols.push_back(s);
  write_output(c, "distinguish.tsv",
               render_battery_provenance(l.battery) + render_distinguish(distinguish_report(m, cols)));
  return exit_for_holes(m);
}

int cmd_mirror_report(const Common& c) {
  auto l = load_pipeline(c);
  const auto rows = mirror_report(l.battery, l.catalog, l.knots, l.options, l.store.get());
  std::vector<std::string> labels;
  for (const auto& e : l.battery.entries) labels.push_back(e.label);
  write_output(c, "mirror-report.tsv", render_battery_provenance(l.battery) + render_mirror_report(rows, labels));
  for (const auto& r : rows)
    if (r.verdict == MirrorVerdict::Unknown) return kBudget;
  return kOk;
}

int cmd_similarity(const Common& c) {
  auto l = load_pipeline(c);
  const auto m = compute_invariant_matrix(l.battery, l.catalog, l.knots, l.options, l.store.get());
  write_output(c, "similarity.tsv", render_battery_provenance(l.battery) + render_similarity(similarity_classes(m)));
  return exit_for_holes(m);
}

int cmd_repair_quandle(const std::string& input, const std::string& output) {
  std::ifstream f(input);
  if (!f) throw DataError(fmt::format("cannot open {}", input));
  std::stringstream ss;
  ss << f.rdbuf();
  const auto listing = parse_cycle_listing(ss.str());
  const auto result = repair_cycle_listing(listing);
  std::string notes = fmt::format("repaired from {}", fs::path(input).filename().string());
  if (result.repairs.empty()) notes += "\nno defects found";
  for (const auto& r : result.repairs) {
    notes += fmt::format("\nS_{}: {}\n  listed:   {}\n  repaired: {}", r.column + 1, r.reason,
                         r.original_text, render_permutation(r.repaired));
  }
  const std::string text = render_quandle_table(result.quandle, notes);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw DataError(fmt::format("cannot write {}", output));
    out << text;
  }
  for (const auto& r : result.repairs) {
    std::cerr << fmt::format("S_{}: {}\n  listed:   {}\n", r.column + 1, r.reason, r.original_text);
  }
  std::cerr << fmt::format("{} column(s) repaired; connected {}\n", result.repairs.size(),
                           is_connected(result.quandle) ? "yes" : "no");
  return kOk;
}

int cmd_import_catalog(const std::string& input, const std::string& output, const std::string& name_col,
                       const std::string& braid_col, const std::string& index_col) {
  std::ifstream f(input);
  if (!f) throw DataError(fmt::format("cannot open {}", input));
  std::stringstream ss;
  ss << f.rdbuf();
  ImportReport report;
  const auto catalog = import_braid_table(ss.str(), report, name_col, braid_col, index_col);
  const std::string text = render_catalog(
      catalog, fmt::format("imported from {} (columns {}, {})", fs::path(input).filename().string(), name_col, braid_col));
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw DataError(fmt::format("cannot write {}", output));
    out << text;
  }
  std::cerr << fmt::format("{} rows, {} imported, {} skipped\n", report.rows, report.imported, report.skipped.size());
  for (const auto& s : report.skipped) std::cerr << "  skipped " << s << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quandle cocycle invariants of braid closures"};
  app.require_subcommand(1);
  Common c;
  unsigned modulus = 2;
  std::size_t depth = 1;
  bool list = false;
  std::string columns, input, output, name_col = "name", braid_col = "braid_notation", index_col;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--quandle", c.quandle, "Quandle file (table or cycle listing)");
    s->add_option("--cocycle", c.cocycle, "Cocycle file");
    s->add_option("--catalog", c.catalog, "Knot catalog file");
    s->add_option("--battery", c.battery, "Battery file");
    s->add_option("--out", c.out, "Output directory");
    s->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    s->add_option("--budget", c.budget, "Solver node budget per cell");
    s->add_option("--knots", c.knots, "Comma-separated knot names");
    s->add_option("--family", c.family, "File listing knot names");
  };

  auto* check = app.add_subcommand("check-quandle", "Verify the quandle axioms and connectedness");
  auto* idem = app.add_subcommand("idempotents", "List the idempotents of the quandle ring");
  idem->add_option("--modulus", modulus, "Field size p");
  auto* iq = app.add_subcommand("idem-quandle", "Build the quandle of idempotents over GF(2)");
  iq->add_option("--depth", depth, "Number of iterations")->check(CLI::PositiveNumber);
  auto* coc = app.add_subcommand("cocycles", "Dimensions of Z2, B2 and H2");
  coc->add_option("--modulus", modulus, "Field size p");
  auto* ver = app.add_subcommand("verify-cocycle", "Check the 2-cocycle conditions");
  auto* col = app.add_subcommand("colorings", "Count (or list) colorings of a braid closure");
  col->add_flag("--list", list, "Print every coloring as a top vector");
  col->add_option("--braid", c.braid, "Braid as 'm: letters' instead of a catalog knot");
  auto* ss = app.add_subcommand("statesum", "State-sum invariant of a braid closure");
  ss->add_option("--braid", c.braid, "Braid as 'm: letters' instead of a catalog knot");
  auto* im = app.add_subcommand("invariant-matrix", "Invariants of a knot family over a battery");
  auto* dis = app.add_subcommand("distinguish", "Partition knots by invariant vectors");
  dis->add_option("--columns", columns, "Comma-separated battery labels (default all)");
  auto* mir = app.add_subcommand("mirror-report", "Compare knots with their mirror images");
  auto* sim = app.add_subcommand("similarity", "Partition battery entries by equal invariants");
  for (auto* s : {check, idem, iq, coc, ver, col, ss, im, dis, mir, sim}) add_common(s);

  auto* rep = app.add_subcommand("repair-quandle", "Rebuild defective columns of a cycle listing");
  rep->add_option("input", input, "Cycle listing")->required();
  rep->add_option("-o,--output", output, "Quandle table to write");
  auto* rcoc = app.add_subcommand("repair-cocycle", "Replace a failing cochain by its nearest 2-cocycle");
  add_common(rcoc);
  rcoc->add_option("-o,--output", output, "Cocycle file to write");
  auto* dual = app.add_subcommand("dual-quandle", "Write the dual quandle (inverse right multiplications)");
  dual->add_option("input", input, "Quandle file")->required();
  dual->add_option("-o,--output", output, "Quandle table to write");
  auto* imp = app.add_subcommand("import-catalog", "Convert a delimited braid table into a knot catalog");
  imp->add_option("input", input, "CSV/TSV file with a header row")->required();
  imp->add_option("-o,--output", output, "Catalog file to write");
  imp->add_option("--name-column", name_col, "Column holding knot names");
  imp->add_option("--braid-column", braid_col, "Column holding braid words");
  imp->add_option("--index-column", index_col, "Column holding the braid index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDataError;
  }

  try {
    if (*check) return cmd_check_quandle(c);
    if (*idem) return cmd_idempotents(c, modulus);
    if (*iq) return cmd_idem_quandle(c, depth);
    if (*coc) return cmd_cocycles(c, modulus);
    if (*ver) return cmd_verify_cocycle(c);
    if (*col) return cmd_colorings(c, list);
    if (*ss) return cmd_statesum(c);
    if (*im) return cmd_invariant_matrix(c);
    if (*dis) return cmd_distinguish(c, columns);
    if (*mir) return cmd_mirror_report(c);
    if (*sim) return cmd_similarity(c);
    if (*rep) return cmd_repair_quandle(input, output);
    if (*rcoc) return cmd_repair_cocycle(c, output);
    if (*dual) return cmd_dual_quandle(input, output);
    if (*imp) return cmd_import_catalog(input, output, name_col, braid_col, index_col);
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const MismatchError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::logic_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  }
  return kOk;
}
