#pragma once

// Reference implementations used only as test oracles. They are written from
// the definitions, share no code with core/src, and favour clarity over speed.

#include <cstdint>
#include <optional>
#include <vector>

namespace oracle {

// 0-based row-major Cayley table, t[x][y] = x*y.
using Table = std::vector<std::vector<int>>;

bool is_quandle(const Table& t);
bool is_connected(const Table& t);
// Inverse operation: a = x /y  iff  a*y = x.
Table inverse_table(const Table& t);

// Brute-force isomorphism test over all bijections; n <= 9.
bool isomorphic(const Table& a, const Table& b);

// Nonzero v in Z2[X] with v*v = v, as support masks in increasing order.
std::vector<std::uint64_t> idempotent_masks(const Table& t);
// Number of nonzero idempotents of Z2[X], n <= 30. Walks all 2^n elements in
// Gray-code order; over GF(2), v^2 = v + sum over pairs {x, y} in v of
// e_{x*y} + e_{y*x}, which is updated per toggled element.
std::uint64_t idempotent_count(const Table& t);
// Product in Z2[X] of two support masks.
std::uint64_t ring_product(const Table& t, std::uint64_t u, std::uint64_t v);

// phi as phi[x][y] in 0..p-1.
using Cochain = std::vector<std::vector<int>>;
bool is_cocycle(const Table& t, const Cochain& phi, int p);

// Rank of an integer matrix over GF(p) by plain Gaussian elimination.
std::size_t rank_mod_p(std::vector<std::vector<int>> m, int p);
// dim Z^2, dim B^2 computed from dense constraint matrices.
std::size_t cocycle_dimension(const Table& t, int p);
std::size_t coboundary_dimension(const Table& t, int p);

// A braid as strand count and signed letters.
struct Braid {
  int strands = 1;
  std::vector<int> letters;
};

// Closure colorings by trying all n^m top vectors; each entry is a top vector.
std::vector<std::vector<int>> colorings(const Table& t, const Braid& b);
// State sum coefficients: result[k] = number of colorings of total weight k.
std::vector<std::uint64_t> state_sum(const Table& t, const Cochain& phi, int p, const Braid& b);

}  // namespace oracle
