#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qsum/error.hpp"
#include "qsum/cohomology.hpp"
#include "samples.hpp"

using namespace qsum;

namespace {

Cocycle load(const std::string& name) { return load_cocycle(samples::data_dir() / "cocycles" / name); }

}  // namespace

TEST_CASE("cocycle and coboundary dimensions match the dense oracle") {
  for (const auto& nq : samples::small_quandles()) {
    const auto t = samples::to_table(nq.quandle);
    for (unsigned p : {2U, 3U, 5U}) {
      CAPTURE(nq.name);
      CAPTURE(p);
      const auto z = cocycle_space(nq.quandle, p);
      const auto b = coboundary_space(nq.quandle, p);
      CHECK(z.dim() == oracle::cocycle_dimension(t, static_cast<int>(p)));
      CHECK(b.dim() == oracle::coboundary_dimension(t, static_cast<int>(p)));
      for (const auto& phi : z.basis) CHECK(oracle::is_cocycle(t, samples::to_cochain(phi), static_cast<int>(p)));
      CHECK(second_cohomology_dimension(nq.quandle, p) == z.dim() - b.dim());
    }
  }
}

TEST_CASE("boundary maps compose to zero") {
  for (const char* name : {"C6_1", "C8_1", "C12_3"}) {
    const auto q = samples::load(std::string("quandles/") + name + ".quandle");
    for (unsigned p : {2U, 3U}) {
      const auto d2 = boundary_matrix(q, 2, p);
      const auto d3 = boundary_matrix(q, 3, p);
      REQUIRE(d2.cols() == d3.rows());
      bool zero = true;
      for (std::size_t r = 0; r < d2.rows(); ++r)
        for (std::size_t c = 0; c < d3.cols(); ++c) {
          unsigned acc = 0;
          for (std::size_t k = 0; k < d2.cols(); ++k) acc += d2.at(r, k) * d3.at(k, c);
          zero = zero && acc % p == 0;
        }
      CHECK(zero);
    }
  }
}

TEST_CASE("coboundaries are cocycles and test as coboundaries") {
  std::mt19937_64 rng(11);
  for (const auto& nq : samples::small_quandles()) {
    CAPTURE(nq.name);
    const unsigned p = 2 + static_cast<unsigned>(rng() % 2);
    const auto f = samples::random_cochain(rng, nq.quandle.order(), p);
    const auto d = coboundary(nq.quandle, f, p);
    for (Element x = 0; x < nq.quandle.order(); ++x)
      for (Element y = 0; y < nq.quandle.order(); ++y)
        CHECK(d.at(x, y) == (f[x] + p - f[nq.quandle.op(x, y)]) % p);
    CHECK_FALSE(verify_cocycle(nq.quandle, d).has_value());
    CHECK(is_coboundary(nq.quandle, d));
  }
}

TEST_CASE("R_3 over GF(3): two routes to H^2 and non-cocycle rejection") {
  const auto r3 = dihedral_quandle(3);
  const auto t = samples::to_table(r3);
  CHECK(cocycle_space(r3, 3).dim() == oracle::cocycle_dimension(t, 3));
  CHECK(second_cohomology_dimension(r3, 3) == oracle::cocycle_dimension(t, 3) - oracle::coboundary_dimension(t, 3));
  CHECK_THROWS_AS(is_coboundary(r3, [] {
                    Cocycle c(3, 3);
                    c.set(0, 0, 1);
                    return c;
                  }()),
                  VerificationError);
}

TEST_CASE("verification reports the first violation") {
  const auto q = dihedral_quandle(3);
  Cocycle c(3, 2);
  c.set(1, 1, 1);
  auto v = verify_cocycle(q, c);
  REQUIRE(v.has_value());
  CHECK(v->kind == CocycleViolation::Kind::Diagonal);
  CHECK(v->witnesses == std::vector<unsigned>{2});

  Cocycle d(3, 2);
  d.set(0, 1, 1);
  v = verify_cocycle(q, d);
  REQUIRE(v.has_value());
  CHECK(v->kind == CocycleViolation::Kind::Condition);
  const auto t = samples::to_table(q);
  const auto phi = samples::to_cochain(d);
  const int x = v->witnesses[0] - 1, y = v->witnesses[1] - 1, z = v->witnesses[2] - 1;
  CHECK((phi[x][y] - phi[x][z] + phi[t[x][y]][z] - phi[t[x][z]][t[y][z]] + 4) % 2 != 0);
}

TEST_CASE("nearest cocycle") {
  std::mt19937_64 rng(5);
  for (const char* name : {"C6_1", "C8_1"}) {
    const auto q = samples::load(std::string("quandles/") + name + ".quandle");
    for (int i = 0; i < 5; ++i) {
      const auto phi = samples::random_cocycle(rng, q, 2);
      auto damaged = phi;
      const Element x = static_cast<Element>(rng() % q.order());
      Element y = static_cast<Element>(rng() % q.order());
      if (y == x) y = (y + 1) % q.order();
      damaged.set(x, y, 1 - phi.at(x, y));
      const auto r = nearest_cocycle(q, damaged);
      CHECK(r.distance <= 1);
      CHECK(oracle::is_cocycle(samples::to_table(q), samples::to_cochain(r.cocycle), 2));
      CHECK(r.changes.size() == r.distance);
      if (r.distance == 0) CHECK(!verify_cocycle(q, damaged).has_value());
    }
    const auto zero = nearest_cocycle(q, Cocycle(q.order(), 2));
    CHECK(zero.distance == 0);
    CHECK(zero.ties == 1);
  }
  CHECK_THROWS_AS(nearest_cocycle(samples::load("quandles/C12_3.quandle"), Cocycle(12, 2), 2), BudgetExceeded);
}

TEST_CASE("shipped cocycle files") {
  const auto x = samples::load("quandles/C12_3.quandle");
  const auto xd = samples::load("quandles/C12_3.dual.quandle");
  const auto y = samples::load("quandles/I_C12_3.quandle");
  const auto yd = samples::load("quandles/I_C12_3.dual.quandle");
  const auto w = samples::load("quandles/C13_4.quandle");
  const auto wd = samples::load("quandles/C13_4.dual.quandle");
  CHECK(xd == dual_quandle(x));
  CHECK(yd == dual_quandle(y));
  CHECK(wd == dual_quandle(w));

  const auto phi_printed = load("phi_C12_3.printed.cocycle");
  const auto psi_printed = load("psi_Y.printed.cocycle");
  CHECK(verify_cocycle(x, phi_printed).has_value());
  CHECK(verify_cocycle(xd, phi_printed).has_value());
  CHECK(verify_cocycle(y, psi_printed).has_value());
  CHECK(verify_cocycle(yd, psi_printed).has_value());

  const auto phi = load("phi_C12_3.cocycle");
  const auto psi = load("psi_Y.cocycle");
  const auto theta = load("theta_C13_4.cocycle");
  CHECK(oracle::is_cocycle(samples::to_table(xd), samples::to_cochain(phi), 2));
  CHECK(oracle::is_cocycle(samples::to_table(yd), samples::to_cochain(psi), 2));
  CHECK(oracle::is_cocycle(samples::to_table(wd), samples::to_cochain(theta), 3));
  CHECK_FALSE(verify_cocycle(xd, phi).has_value());
  CHECK_FALSE(verify_cocycle(yd, psi).has_value());
  CHECK_FALSE(verify_cocycle(wd, theta).has_value());
  CHECK(verify_cocycle(w, theta).has_value());

  // The repaired files differ from the printed ones exactly where their headers say.
  std::size_t phi_diff = 0, psi_diff = 0;
  for (std::size_t i = 0; i < phi.values().size(); ++i) phi_diff += phi.values()[i] != phi_printed.values()[i];
  for (std::size_t i = 0; i < psi.values().size(); ++i) psi_diff += psi.values()[i] != psi_printed.values()[i];
  CHECK(phi_diff == 1);
  CHECK(psi_diff == 9);
  CHECK(nearest_cocycle(xd, phi_printed).cocycle == phi);
}

TEST_CASE("cocycle text format") {
  const auto phi = parse_cocycle("# c\ncocycle 3 3\n1 2 2\n2 3 1\n");
  CHECK(phi.at(0, 1) == 2);
  CHECK(phi.at(1, 2) == 1);
  CHECK(parse_cocycle(render_cocycle(phi, "x")) == phi);
  CHECK_THROWS_AS(parse_cocycle("cocycle 3 4\n"), DataError);
  CHECK_THROWS_AS(parse_cocycle("cocycle 3 3\n1 4 1\n"), DataError);
  CHECK_THROWS_AS(parse_cocycle("cocycle 3 3\n1 2\n"), DataError);
}
