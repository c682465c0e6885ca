#include "doctest.h"
#include "properties.hpp"

namespace {

void require_ok(const properties::Report& r, std::size_t min_cases) {
  CAPTURE(r.name);
  CAPTURE(r.first_failure);
  CHECK(r.cases >= min_cases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("Markov moves leave state sums unchanged") { require_ok(properties::markov_invariance(101, 500), 500); }

TEST_CASE("propagation solver matches brute force") {
  require_ok(properties::solver_matches_brute_force(202, 500), 500);
}

TEST_CASE("cohomologous cocycles give equal state sums") {
  require_ok(properties::cohomologous_cocycles(303, 150), 150);
}

TEST_CASE("trivial quandles color each component freely") {
  require_ok(properties::trivial_quandle_counts(404, 300), 300);
}

TEST_CASE("coefficient sums equal coloring counts") {
  // Runs after the cases above in declaration order, so it sees their sums.
  properties::markov_invariance(505, 50);
  require_ok(properties::coefficient_sums(), 50);
}
