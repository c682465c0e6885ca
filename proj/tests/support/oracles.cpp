#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace oracle {

bool is_quandle(const Table& t) {
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x)
    if (t[x][x] != x) return false;
  for (int y = 0; y < n; ++y) {
    std::vector<int> seen(n, 0);
    for (int x = 0; x < n; ++x)
      if (seen[t[x][y]]++) return false;
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (t[t[x][y]][z] != t[t[x][z]][t[y][z]]) return false;
  return true;
}

bool is_connected(const Table& t) {
  const int n = static_cast<int>(t.size());
  std::vector<bool> reached(n, false);
  std::vector<int> stack{0};
  reached[0] = true;
  const Table inv = inverse_table(t);
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < n; ++y)
      for (int z : {t[x][y], inv[x][y]})
        if (!reached[z]) {
          reached[z] = true;
          stack.push_back(z);
        }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

Table inverse_table(const Table& t) {
  const int n = static_cast<int>(t.size());
  Table inv(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int y = 0; y < n; ++y) inv[t[a][y]][y] = a;
  return inv;
}

bool isomorphic(const Table& a, const Table& b) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != n) return false;
  if (n > 9) throw std::invalid_argument("oracle isomorphism is limited to order 9");
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      for (int y = 0; y < n && ok; ++y) ok = f[a[x][y]] == b[f[x]][f[y]];
    if (ok) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

std::uint64_t ring_product(const Table& t, std::uint64_t u, std::uint64_t v) {
  const int n = static_cast<int>(t.size());
  std::uint64_t r = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((u >> x & 1) && (v >> y & 1)) r ^= 1ULL << t[x][y];
  return r;
}

std::vector<std::uint64_t> idempotent_masks(const Table& t) {
  const int n = static_cast<int>(t.size());
  if (n > 20) throw std::invalid_argument("oracle idempotent scan is limited to order 20");
  std::vector<std::uint64_t> out;
  for (std::uint64_t u = 1; u < (1ULL << n); ++u)
    if (ring_product(t, u, u) == u) out.push_back(u);
  return out;
}

std::uint64_t idempotent_count(const Table& t) {
  const int n = static_cast<int>(t.size());
  if (n > 30) throw std::invalid_argument("oracle idempotent count is limited to order 30");
  // pair[x][y] = e_{x*y} + e_{y*x}; cross[x] = sum of pair[x][y] over y in v.
  std::vector<std::vector<std::uint64_t>> pair(n, std::vector<std::uint64_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) pair[x][y] = (1ULL << t[x][y]) ^ (1ULL << t[y][x]);
  std::vector<std::uint64_t> cross(n, 0);
  std::uint64_t v = 0, pairs_sum = 0, count = 0;
  for (std::uint64_t i = 1; i < (1ULL << n); ++i) {
    const int z = std::countr_zero(i);
    // Toggling z flips the pairs {z, y}, y in v; pair[z][z] is zero.
    pairs_sum ^= cross[z];
    v ^= 1ULL << z;
    for (int x = 0; x < n; ++x) cross[x] ^= pair[x][z];
    if (pairs_sum == 0) ++count;
  }
  return count;
}

bool is_cocycle(const Table& t, const Cochain& phi, int p) {
  const int n = static_cast<int>(t.size());
  for (int x = 0; x < n; ++x)
    if (phi[x][x] % p != 0) return false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const int r = phi[x][y] - phi[x][z] + phi[t[x][y]][z] - phi[t[x][z]][t[y][z]];
        if (((r % p) + p) % p != 0) return false;
      }
  return true;
}

std::size_t rank_mod_p(std::vector<std::vector<int>> m, int p) {
  auto power = [p](int a, int e) {
    int r = 1;
    for (a %= p; e > 0; --e) r = r * a % p;
    return r;
  };
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (auto& row : m)
    for (auto& v : row) v = ((v % p) + p) % p;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    const int inv = power(m[rank][c], p - 2);
    for (auto& v : m[rank]) v = v * inv % p;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const int f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t cocycle_dimension(const Table& t, int p) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<int>> rows;
  auto idx = [n](int x, int y) { return x * n + y; };
  for (int x = 0; x < n; ++x) {
    std::vector<int> r(n * n, 0);
    r[idx(x, x)] = 1;
    rows.push_back(r);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        std::vector<int> r(n * n, 0);
        r[idx(x, y)] += 1;
        r[idx(x, z)] -= 1;
        r[idx(t[x][y], z)] += 1;
        r[idx(t[x][z], t[y][z])] -= 1;
        rows.push_back(r);
      }
  return static_cast<std::size_t>(n * n) - rank_mod_p(rows, p);
}

std::size_t coboundary_dimension(const Table& t, int p) {
  const int n = static_cast<int>(t.size());
  std::vector<std::vector<int>> rows;
  for (int e = 0; e < n; ++e) {
    std::vector<int> r(n * n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) r[x * n + y] = (x == e) - (t[x][y] == e);
    rows.push_back(r);
  }
  return rank_mod_p(rows, p);
}

namespace {

// Pushes colors through the braid; returns false never, weight accumulates.
std::vector<int> push(const Table& t, const Table& inv, const Cochain* phi, int p, const Braid& b,
                      std::vector<int> colors, int& weight) {
  for (int letter : b.letters) {
    const int i = std::abs(letter) - 1;
    const int a = colors[i], c = colors[i + 1];
    if (letter > 0) {
      if (phi) weight += (*phi)[a][c];
      colors[i] = c;
      colors[i + 1] = t[a][c];
    } else {
      const int d = inv[c][a];
      if (phi) weight -= (*phi)[d][a];
      colors[i] = d;
      colors[i + 1] = a;
    }
  }
  if (phi) weight = ((weight % p) + p) % p;
  return colors;
}

template <class Visit>
void each_coloring(const Table& t, const Cochain* phi, int p, const Braid& b, Visit visit) {
  const int n = static_cast<int>(t.size());
  const Table inv = inverse_table(t);
  std::vector<int> top(b.strands, 0);
  while (true) {
    int weight = 0;
    if (push(t, inv, phi, p, b, top, weight) == top) visit(top, weight);
    int k = 0;
    while (k < b.strands && ++top[k] == n) top[k++] = 0;
    if (k == b.strands) break;
  }
}

}  // namespace

std::vector<std::vector<int>> colorings(const Table& t, const Braid& b) {
  std::vector<std::vector<int>> out;
  each_coloring(t, nullptr, 1, b, [&](const std::vector<int>& top, int) { out.push_back(top); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> state_sum(const Table& t, const Cochain& phi, int p, const Braid& b) {
  std::vector<std::uint64_t> out(p, 0);
  each_coloring(t, &phi, p, b, [&](const std::vector<int>&, int w) { ++out[w]; });
  return out;
}

}  // namespace oracle
