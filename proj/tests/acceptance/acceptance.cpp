// Acceptance run: one PASS/FAIL line per criterion, with timings.
//
// Criteria 4 to 9 have documented reasons to fail (see the README): the
// binary exits non-zero only when a criterion outside that set fails, or when
// one of them fails for a reason other than the documented one.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <fmt/format.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "qsum/cohomology.hpp"
#include "qsum/error.hpp"
#include "qsum/reports.hpp"
#include "qsum/ring.hpp"
#include "samples.hpp"

using namespace qsum;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::vector<std::string> notes;
  // Set when the failure is the documented one.
  bool expected_failure = false;
  // Mismatches that the documented reasons do not cover.
  std::size_t unexplained = 0;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path data(const std::string& rel) { return samples::data_dir() / rel; }

std::shared_ptr<const Quandle> shared(const std::string& rel) {
  return std::make_shared<const Quandle>(samples::load(rel));
}

// --- 1 -----------------------------------------------------------------------

Outcome axioms_and_parsing() {
  Outcome o;
  const auto t0 = Clock::now();
  bool all = true;
  std::size_t repaired = 0;
  for (const char* name : {"C6_1", "C8_1", "C12_3", "C12_4", "C12_6", "C13_4", "C13_7", "C13_10", "C16_3", "C16_4",
                           "C16_8"}) {
    const auto listing = parse_cycle_listing(read(data(std::string("quandles/appendix/") + name + ".cycles")));
    const auto r = repair_cycle_listing(listing);
    repaired += r.repairs.size();
    const auto& q = r.quandle;
    const bool ok = check_quandle(q.order(), {q.table().begin(), q.table().end()}).ok() && is_connected(q);
    const bool shipped = q == samples::load(std::string("quandles/") + name + ".quandle");
    if (!ok || !shipped) {
      all = false;
      o.notes.push_back(fmt::format("{}: check/connected {} shipped table match {}", name, ok, shipped));
    }
  }
  const double t = seconds_since(t0);
  o.notes.push_back(fmt::format("11 listings, {} columns repaired, {:.3f} s", repaired, t));
  o.pass = all && t < 1.0;
  return o;
}

// --- 2 -----------------------------------------------------------------------

Outcome c61_counterexample() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto r = idempotent_quandle(enumerate_idempotents(shared("quandles/C6_1.quandle"), 2));
  const double t = seconds_since(t0);
  if (r.ok()) {
    o.notes.push_back("idempotents of C[6,1] unexpectedly form a quandle");
    return o;
  }
  const auto text = r.failure->describe();
  o.notes.push_back(fmt::format("{} ({:.3f} s)", text, t));
  o.pass = r.failure->kind == IdempotentCertificate::Kind::RightMultiplicationNotInjective &&
           r.failure->witnesses[0].to_string() == "e1+e3+e5" && t < 1.0;
  return o;
}

// --- 3 -----------------------------------------------------------------------

Outcome idempotent_reproduction() {
  Outcome o;
  const auto t0 = Clock::now();
  bool all = true;
  for (auto [base, listed, order] : {std::tuple{"C12_3", "I_C12_3", std::size_t{24}},
                                     std::tuple{"C8_1", "I_C8_1", std::size_t{16}}}) {
    const auto r = idempotent_quandle(enumerate_idempotents(shared(std::string("quandles/") + base + ".quandle"), 2));
    if (!r.ok()) {
      all = false;
      o.notes.push_back(fmt::format("{}: {}", base, r.failure->describe()));
      continue;
    }
    const bool iso = find_isomorphism(*r.quandle, samples::load(std::string("quandles/") + listed + ".quandle")).has_value();
    o.notes.push_back(fmt::format("|I(Z2[{}])| = {} (want {}), isomorphic to listed table: {}", base, r.quandle->order(),
                                  order, iso ? "yes" : "no"));
    all = all && iso && r.quandle->order() == order;
  }
  const double t = seconds_since(t0);
  o.notes.push_back(fmt::format("{:.3f} s", t));
  o.pass = all && t < 5.0;
  return o;
}

// --- 4 -----------------------------------------------------------------------

Outcome iterated_construction() {
  Outcome o;
  const auto x = samples::load("quandles/C12_3.quandle");
  auto t0 = Clock::now();
  const auto one = iterate_idempotent_quandle(x, 2, {1, 16});
  const double t1 = seconds_since(t0);
  if (!one.ok()) {
    o.notes.push_back(fmt::format("depth-2 construction failed at depth {}: {}", one.failed_at_depth,
                                  one.failure->describe()));
    return o;
  }
  const auto& w = *one.quandle;
  const bool axioms = check_quandle(w.order(), {w.table().begin(), w.table().end()}).ok();

  t0 = Clock::now();
  const auto two = iterate_idempotent_quandle(x, 2, {2, 16});
  const double t2 = seconds_since(t0);
  const bool same = two.ok() && *two.quandle == w;

  // Brute scan: all 2^24 elements of Z2[Y] through the independent oracle.
  const auto y = samples::load("quandles/I_C12_3.quandle");
  t0 = Clock::now();
  const auto brute = oracle::idempotent_count(samples::to_table(y));
  const double tb = seconds_since(t0);

  o.notes.push_back(fmt::format("orders per level {}, W is a quandle: {}", fmt::join(one.orders, ", "), axioms));
  o.notes.push_back(fmt::format("brute scan over 2^24 finds {} idempotents ({:.1f} s)", brute, tb));
  o.notes.push_back(fmt::format("1 thread {:.2f} s, 2 threads {:.2f} s, identical result: {}", t1, t2, same));
  const bool computed_ok = axioms && same && brute == w.order() && t1 < 60.0;
  o.pass = computed_ok && w.order() == 48;
  if (!o.pass && computed_ok) {
    o.expected_failure = true;
    o.notes.push_back(fmt::format("expected order 48; the scan and the brute scan both give {}", w.order()));
  }
  return o;
}

// --- 5 -----------------------------------------------------------------------

Outcome cocycle_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  struct Item {
    const char* label;
    const char* listed_quandle;
    const char* dual_quandle;
    const char* printed;
    const char* repaired;
  };
  bool files_ok = true;
  for (const Item& it : {Item{"phi", "C12_3", "C12_3.dual", "phi_C12_3.printed", "phi_C12_3"},
                         Item{"psi", "I_C12_3", "I_C12_3.dual", "psi_Y.printed", "psi_Y"},
                         Item{"theta", "C13_4", "C13_4.dual", "theta_C13_4", "theta_C13_4"}}) {
    const auto q = samples::load(std::string("quandles/") + it.listed_quandle + ".quandle");
    const auto qd = samples::load(std::string("quandles/") + it.dual_quandle + ".quandle");
    const auto printed = load_cocycle(data(std::string("cocycles/") + it.printed + ".cocycle"));
    const auto fixed = load_cocycle(data(std::string("cocycles/") + it.repaired + ".cocycle"));
    const auto on_listed = verify_cocycle(q, printed);
    const auto on_dual = verify_cocycle(qd, printed);
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < printed.values().size(); ++i) flagged += printed.values()[i] != fixed.values()[i];
    const bool fixed_ok = !verify_cocycle(qd, fixed) &&
                          oracle::is_cocycle(samples::to_table(qd), samples::to_cochain(fixed), static_cast<int>(fixed.modulus()));
    o.notes.push_back(fmt::format("{} printed: listed table {}, dual table {}; repaired file verifies on dual: {} ({} flagged entries)",
                                  it.label, on_listed ? on_listed->describe() : "ok", on_dual ? on_dual->describe() : "ok",
                                  fixed_ok ? "yes" : "no", flagged));
    files_ok = files_ok && fixed_ok;
  }
  const auto xd = samples::load("quandles/C12_3.dual.quandle");
  const auto phi = load_cocycle(data("cocycles/phi_C12_3.cocycle"));
  const bool coboundary = is_coboundary(xd, phi);
  const double t = seconds_since(t0);
  o.notes.push_back(fmt::format("is_coboundary(phi) = {} (want false); {:.3f} s", coboundary, t));
  o.pass = files_ok && !coboundary && t < 5.0;
  if (!o.pass && files_ok && coboundary) {
    o.expected_failure = true;
    o.notes.push_back("the repaired phi is a coboundary, and so is every cocycle near the printed entries");
  }
  return o;
}

// --- 6 to 9: catalog-dependent ----------------------------------------------------

std::optional<fs::path> catalog_path() {
  if (const char* env = std::getenv("QSUM_CATALOG")) return fs::path(env);
  const auto shipped = data("knots/catalog.tsv");
  if (fs::exists(shipped)) return shipped;
  return std::nullopt;
}

struct Expected {
  std::string knot;
  std::map<std::string, std::string> values;  // battery label -> printed value
};

using CellKey = std::pair<std::string, std::string>;

// Listed cells whose printed count disagrees with the catalog braid word.
std::map<CellKey, std::string> known_discrepancies() {
  std::map<CellKey, std::string> out;
  std::istringstream in(read(QSUM_DISCREPANCIES));
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    const auto a = line.find('\t'), b = line.find('\t', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw DataError("bad discrepancy line: " + line);
    out[{line.substr(0, a), line.substr(a + 1, b - a - 1)}] = line.substr(b + 1);
  }
  return out;
}

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_power_of(std::uint64_t v, std::uint64_t p) {
  while (v > 1 && v % p == 0) v /= p;
  return v == 1;
}

// Why a mismatch between computed and printed values is expected, or an
// empty string when nothing accounts for it.
std::string explain(const BatteryEntry& entry, const BraidWord& braid, const InvariantValue& got,
                    const InvariantValue& want, const std::string* listed) {
  const auto& q = *entry.quandle;
  if (want.total() == got.total()) {
    // Equal totals: a coboundary gives a constant sum, whatever was printed.
    if (!want.is_constant() && got.is_constant() && entry.cocycle && is_coboundary(q, *entry.cocycle))
      return "cocycle is a coboundary";
    return {};
  }
  // Connected quandles of prime order are affine, so their colorings form an
  // affine space over GF(p) and every count is a power of p.
  if (is_prime(q.order()) && is_connected(q) && !is_power_of(want.total(), q.order()))
    return fmt::format("printed total {} is not a power of {}", want.total(), q.order());
  if (listed) {
    const auto brute = oracle::colorings(samples::to_table(q), samples::to_braid(braid)).size();
    if (brute == got.total()) return fmt::format("listed ({}); oracle confirms {}", *listed, brute);
  }
  return {};
}

// Compares printed values with computed cells. Returns true when every
// expected cell is known and equal; notes mismatches and holes.
bool compare(const InvariantMatrix& m, const Battery& battery, const Catalog& catalog,
             const std::vector<Expected>& rows, Outcome& o) {
  const auto listed = known_discrepancies();
  bool all = true;
  for (const auto& row : rows)
    for (const auto& [label, text] : row.values) {
      const auto& cell = m.at(row.knot, label);
      if (!cell.known()) {
        all = false;
        ++o.unexplained;
        o.notes.push_back(fmt::format("{} {}: hole ({}, {} nodes)", row.knot, label, cell.hole, cell.nodes));
        continue;
      }
      const auto& got = *cell.value;
      const InvariantValue want = got.modulus == 0 ? InvariantValue::count(std::stoull(text))
                                                   : InvariantValue::from(StateSumValue::parse(text, got.modulus));
      const auto it = listed.find({row.knot, label});
      if (got == want) {
        if (it != listed.end()) {
          ++o.unexplained;
          o.notes.push_back(fmt::format("{} {}: listed as a discrepancy but matches", row.knot, label));
        }
        continue;
      }
      all = false;
      const auto why = explain(*battery.find(label), catalog.resolve(row.knot)->braid, got, want,
                               it == listed.end() ? nullptr : &it->second);
      if (why.empty()) ++o.unexplained;
      o.notes.push_back(fmt::format("{} {}: computed {}, printed {} [{}]", row.knot, label, got.to_string(), text,
                                    why.empty() ? "unexplained" : why));
    }
  return all;
}

std::vector<std::string> knots_of(const std::vector<Expected>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.knot);
  return out;
}

Outcome missing_catalog(const std::vector<std::string>& knots) {
  Outcome o;
  o.expected_failure = true;
  o.notes.push_back(fmt::format("no knot catalog (set QSUM_CATALOG or add data/knots/catalog.tsv); braid words needed for {}",
                                fmt::join(knots, ", ")));
  return o;
}

Outcome catalog_missing_knots(const Catalog& c, const std::vector<std::string>& knots) {
  Outcome o;
  std::vector<std::string> missing;
  for (const auto& k : knots)
    if (!c.resolve(k)) missing.push_back(k);
  if (!missing.empty()) {
    o.expected_failure = true;
    o.notes.push_back(fmt::format("catalog lacks {}", fmt::join(missing, ", ")));
  }
  return o;
}

Outcome matrix_criterion(const std::optional<Catalog>& catalog, const fs::path& battery_file,
                         const std::vector<Expected>& rows, const std::function<void(Outcome&)>& extra = {}) {
  const auto knots = knots_of(rows);
  if (!catalog) return missing_catalog(knots);
  if (auto gap = catalog_missing_knots(*catalog, knots); !gap.notes.empty()) return gap;
  Outcome o;
  const auto t0 = Clock::now();
  const auto battery = load_battery_file(battery_file);
  const auto m = compute_invariant_matrix(battery, *catalog, knots);
  o.pass = compare(m, battery, *catalog, rows, o);
  o.expected_failure = !o.pass && o.unexplained == 0;
  if (extra) extra(o);
  o.notes.push_back(fmt::format("{} knots, {:.1f} s", knots.size(), seconds_since(t0)));
  return o;
}

Outcome table_one(const std::optional<Catalog>& catalog) {
  // Printed Psi and Theta columns, in row order.
  const std::vector<std::pair<std::string, std::string>> psi_theta{
      {"144", "11u^2+42u+52"},      {"144", "20u^2+5u+14"},        {"144", "69+14u"},
      {"144", "7u^2+13u+20"},       {"144", "13"},                 {"144", "45u^2+37u+13"},
      {"106+38u", "3u^2+20u+17"},   {"106+38u", "100u^2+70u+11"},  {"58+86u", "20u^2+135u+10"},
      {"120+24u", "16u^2+104u+13"}, {"64+80u", "78u^2+90u+11"}};
  const std::vector<std::string> names{"9_13",     "9_14",     "9_16",     "9_20",     "9_23",    "9_24",
                                       "10_123",   "12n_0572", "12n_0576", "12n_0578", "12n_0580"};
  std::vector<Expected> rows;
  for (std::size_t i = 0; i < names.size(); ++i)
    rows.push_back({names[i], {{"Phi_X", "72"}, {"Psi_Y", psi_theta[i].first}, {"Theta_W", psi_theta[i].second}}});
  rows.push_back({"12n_368", {{"Phi_X", "40+32u"}}});
  return matrix_criterion(catalog, data("batteries/xyw.battery"), rows);
}

Outcome table_two(const std::optional<Catalog>& catalog) {
  const std::vector<Expected> rows{
      {"12n_0573", {{"col_X", "132"}, {"Phi_X", "68+64u"}, {"Psi_Y", "136+128u"}}},
      {"12n_0575", {{"col_X", "132"}, {"Phi_X", "48+84u"}, {"Psi_Y", "172+92u"}}},
      {"12n_0577", {{"col_X", "132"}, {"Phi_X", "48+84u"}, {"Psi_Y", "144+120u"}}},
      {"12n_0579", {{"col_X", "132"}, {"Phi_X", "76+56u"}, {"Psi_Y", "96+168u"}}},
      {"12n_0581", {{"col_X", "192"}, {"Phi_X", "94+98u"}, {"Psi_Y", "196+188u"}}},
      {"12n_0594", {{"col_X", "192"}, {"Phi_X", "94+98u"}, {"Psi_Y", "240+144u"}}},
      {"12n_0574", {{"col_X", "312"}, {"Phi_X", "72+240u"}, {"Psi_Y", "320+304u"}}},
      {"12n_0737", {{"col_X", "312"}, {"Phi_X", "72+240u"}, {"Psi_Y", "324+300u"}}},
  };
  return matrix_criterion(catalog, data("batteries/xy.battery"), rows);
}

Outcome mirror_table(const std::optional<Catalog>& catalog) {
  const std::vector<Expected> rows{
      {"9_42", {{"col_X", "24"}, {"Phi_X", "24"}, {"Psi_Y", "48"}}},
      {"m(9_42)", {{"col_X", "24"}, {"Phi_X", "24"}, {"Psi_Y", "16+32u"}}},
      {"12a_669", {{"col_X", "24"}, {"Phi_X", "24"}, {"Psi_Y", "48"}}},
      {"m(12a_669)", {{"col_X", "24"}, {"Phi_X", "24"}, {"Psi_Y", "36+12u"}}},
  };
  return matrix_criterion(catalog, data("batteries/xy.battery"), rows);
}

Outcome thirteen_crossings(const std::optional<Catalog>& catalog) {
  const std::vector<Expected> rows{
      {"13a_120", {{"Phi_X", "132"}, {"Psi_Y", "264"}}},
      {"13a_482", {{"Phi_X", "132"}, {"Psi_Y", "264"}}},
      {"13a_484", {{"Phi_X", "48+84u"}, {"Psi_Y", "144+120u"}}},
      {"13a_485", {{"Phi_X", "48+84u"}, {"Psi_Y", "144+120u"}}},
      {"13a_1596", {{"Phi_X", "48+84u"}, {"Psi_Y", "144+120u"}}},
  };
  return matrix_criterion(catalog, data("batteries/xy.battery"), rows, [](Outcome& out) {
    // The third column needs a cocycle on the order-384 quandle W; none is given.
    out.pass = false;
    out.expected_failure = out.unexplained == 0;
    out.notes.push_back("Theta column (528, 280+248u, 252+276u, 240+288u, 360+168u) needs a cocycle on W; none is available");
  });
}

// --- 10 ----------------------------------------------------------------------

Outcome property_suite() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<properties::Report> reports{
      properties::markov_invariance(1001, 500),          properties::solver_matches_brute_force(1002, 500),
      properties::cohomologous_cocycles(1003, 100),      properties::trivial_quandle_counts(1004, 300),
  };
  bool all = true;
  for (const auto& r : reports) {
    o.notes.push_back(fmt::format("{}: {} cases, {} failures{}", r.name, r.cases, r.failures,
                                  r.failures ? " (first: " + r.first_failure + ")" : ""));
    all = all && r.ok();
  }
  const auto sums = properties::coefficient_sums();
  o.notes.push_back(fmt::format("{}: {} state sums, {} mismatches", sums.name, sums.cases, sums.failures));
  o.notes.push_back(fmt::format("{:.1f} s", seconds_since(t0)));
  o.pass = all && sums.ok();
  return o;
}

}  // namespace

int main() {
  std::optional<Catalog> catalog;
  if (const auto p = catalog_path()) catalog = load_catalog(*p);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"axiom and parsing suite", axioms_and_parsing},
      {"idempotent counterexample C[6,1]", c61_counterexample},
      {"idempotent quandle reproduction", idempotent_reproduction},
      {"iterated construction", iterated_construction},
      {"cocycle suite", cocycle_suite},
      {"printed invariant table", [&] { return table_one(catalog); }},
      {"non-alternating table", [&] { return table_two(catalog); }},
      {"mirror table", [&] { return mirror_table(catalog); }},
      {"13-crossing table", [&] { return thirteen_crossings(catalog); }},
      {"property suite", property_suite},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.notes.push_back(fmt::format("exception: {}", e.what()));
    }
    const bool documented = !o.pass && o.expected_failure && i + 1 >= 4 && i + 1 <= 9;
    fmt::print("{} {:2} {} ({:.2f} s){}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, seconds_since(t0),
               documented ? " [documented]" : "");
    for (const auto& n : o.notes) fmt::print("        {}\n", n);
    if (!o.pass && !documented) ++unexpected;
  }
  fmt::print("{} unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
