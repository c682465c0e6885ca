#include <algorithm>
#include <map>

#include "qsum/quandle.hpp"

namespace qsum {

namespace {

using Profile = std::vector<std::size_t>;

// Isomorphism-invariant fingerprint of each element: orbit size, number of
// y with x*y = x, then the sorted cycle type of S_x.
std::vector<Profile> element_profiles(const Quandle& q) {
  const std::size_t n = q.order();
  const auto orbit = inner_orbits(q);
  std::map<std::size_t, std::size_t> orbit_size;
  for (auto o : orbit) ++orbit_size[o];

  std::vector<Profile> profiles(n);
  std::vector<bool> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto ex = static_cast<Element>(x);
    std::size_t stabilizers = 0;
    for (std::size_t y = 0; y < n; ++y)
      if (q.op(ex, static_cast<Element>(y)) == ex) ++stabilizers;
    std::vector<std::size_t> cycle_type;
    std::fill(seen.begin(), seen.end(), false);
    for (std::size_t s = 0; s < n; ++s) {
      std::size_t len = 0;
      for (std::size_t z = s; !seen[z]; z = q.op(static_cast<Element>(z), ex)) {
        seen[z] = true;
        ++len;
      }
      if (len) cycle_type.push_back(len);
    }
    std::sort(cycle_type.begin(), cycle_type.end());
    Profile p{orbit_size[orbit[x]], stabilizers};
    p.insert(p.end(), cycle_type.begin(), cycle_type.end());
    profiles[x] = std::move(p);
  }
  return profiles;
}

class IsoSearch {
 public:
  IsoSearch(const Quandle& a, const Quandle& b)
      : a_(a), b_(b), n_(a.order()), pa_(element_profiles(a)), pb_(element_profiles(b)) {}

  std::optional<std::vector<Element>> run() {
    auto sa = pa_, sb = pb_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
    f_.assign(n_, kUnset);
    used_.assign(n_, false);
    if (!search()) return std::nullopt;
    return std::vector<Element>(f_.begin(), f_.end());
  }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool assign(std::size_t x, std::size_t y, std::vector<std::size_t>& trail) {
    if (f_[x] != kUnset) return f_[x] == y;
    if (used_[y] || pa_[x] != pb_[y]) return false;
    f_[x] = y;
    used_[y] = true;
    trail.push_back(x);
    return true;
  }

  // Extends f to the subquandle generated by its domain.
  bool close(std::vector<std::size_t>& trail) {
    for (std::size_t i = 0; i < trail.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const auto x = static_cast<Element>(trail[i]);
        const auto y = static_cast<Element>(trail[j]);
        const auto fx = static_cast<Element>(f_[x]);
        const auto fy = static_cast<Element>(f_[y]);
        if (!assign(a_.op(x, y), b_.op(fx, fy), trail)) return false;
        if (!assign(a_.op(y, x), b_.op(fy, fx), trail)) return false;
        if (!assign(a_.inv_op(x, y), b_.inv_op(fx, fy), trail)) return false;
        if (!assign(a_.inv_op(y, x), b_.inv_op(fy, fx), trail)) return false;
      }
    }
    return true;
  }

  void undo(const std::vector<std::size_t>& trail) {
    for (auto x : trail) {
      used_[f_[x]] = false;
      f_[x] = kUnset;
    }
  }

  bool search() {
    std::size_t x = 0;
    while (x < n_ && f_[x] != kUnset) ++x;
    if (x == n_) return true;
    for (std::size_t y = 0; y < n_; ++y) {
      if (used_[y] || pa_[x] != pb_[y]) continue;
      // The closure must include previously fixed elements so products with
      // them are checked too.
      std::vector<std::size_t> trail;
      std::vector<std::size_t> domain;
      for (std::size_t z = 0; z < n_; ++z)
        if (f_[z] != kUnset) domain.push_back(z);
      assign(x, y, trail);
      std::vector<std::size_t> work = domain;
      work.insert(work.end(), trail.begin(), trail.end());
      const std::size_t before = work.size();
      bool ok = close(work);
      trail.insert(trail.end(), work.begin() + static_cast<std::ptrdiff_t>(before), work.end());
      if (ok && search()) return true;
      undo(trail);
    }
    return false;
  }

  const Quandle& a_;
  const Quandle& b_;
  std::size_t n_;
  std::vector<Profile> pa_, pb_;
  std::vector<std::size_t> f_;
  std::vector<bool> used_;
};

}  // namespace

bool is_isomorphism(const Quandle& a, const Quandle& b, std::span<const Element> f) {
  const std::size_t n = a.order();
  if (b.order() != n || f.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto y : f) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (f[a.op(static_cast<Element>(x), static_cast<Element>(y))] != b.op(f[x], f[y])) return false;
  return true;
}

std::optional<std::vector<Element>> find_isomorphism(const Quandle& a, const Quandle& b) {
  if (a.order() != b.order()) return std::nullopt;
  auto f = IsoSearch(a, b).run();
  if (f && !is_isomorphism(a, b, *f)) return std::nullopt;
  return f;
}

}  // namespace qsum
