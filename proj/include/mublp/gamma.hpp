#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mublp/errors.hpp"

namespace mublp {

using ExponentVector = std::vector<int>;

inline int l1_norm(const ExponentVector& g) {
  int s = 0;
  for (int v : g) s += v < 0 ? -v : v;
  return s;
}

/// Canonical form under coordinate permutation and global negation:
/// sort descending, then take the lexicographically greater of +/-.
inline ExponentVector canonical_rep(ExponentVector g) {
  std::sort(g.begin(), g.end(), std::greater<int>());
  ExponentVector neg(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
  std::sort(neg.begin(), neg.end(), std::greater<int>());
  return std::max(g, neg);
}

struct GammaOrbit {
  ExponentVector rep;
  std::int64_t orbit_size = 0;
  int l1_norm = 0;
};

namespace detail {

inline std::int64_t multiset_permutation_count(const ExponentVector& sorted) {
  std::int64_t count = 1;
  std::int64_t placed = 0;
  std::int64_t run = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ++placed;
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      run = 1;
    }
    count = count * placed / run;  // always divides exactly
  }
  return count;
}

inline bool negation_is_permutation(const ExponentVector& sorted_desc) {
  ExponentVector neg(sorted_desc.size());
  for (std::size_t i = 0; i < sorted_desc.size(); ++i) neg[i] = -sorted_desc[i];
  std::sort(neg.begin(), neg.end(), std::greater<int>());
  return neg == sorted_desc;
}

}  // namespace detail

inline GammaOrbit canonicalize(const ExponentVector& g) {
  if (g.empty()) throw DimensionError("canonicalize: empty exponent vector");
  GammaOrbit o;
  o.rep = canonical_rep(g);
  o.l1_norm = l1_norm(o.rep);
  o.orbit_size = detail::multiset_permutation_count(o.rep);
  if (!detail::negation_is_permutation(o.rep)) o.orbit_size *= 2;
  return o;
}

/// All distinct lattice points in the orbit of rep.
inline std::vector<ExponentVector> expand_orbit(const ExponentVector& rep) {
  std::set<ExponentVector> pts;
  ExponentVector v = rep;
  std::sort(v.begin(), v.end());
  do {
    pts.insert(v);
    ExponentVector neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    pts.insert(neg);
  } while (std::next_permutation(v.begin(), v.end()));
  return {pts.begin(), pts.end()};
}

/// |{gamma in Z^d : |gamma|_1 <= l}| via the signed-support expansion
/// sum_j 2^j C(d,j) C(l,j).
inline std::uint64_t raw_point_count(int d, int l) {
  if (d < 1) throw DimensionError("raw_point_count: dimension must be positive");
  if (l < 0) throw DimensionError("raw_point_count: l must be nonnegative");
  std::uint64_t total = 0;
  int jmax = std::min(d, l);
  for (int j = 0; j <= jmax; ++j) {
    std::uint64_t cd = 1, cl = 1;
    for (int i = 0; i < j; ++i) cd = cd * static_cast<std::uint64_t>(d - i) / (i + 1);
    for (int i = 0; i < j; ++i) cl = cl * static_cast<std::uint64_t>(l - i) / (i + 1);
    total += (std::uint64_t{1} << j) * cd * cl;
  }
  return total;
}

namespace detail {

inline void gen_descending(int d, int budget, int hi, ExponentVector& cur,
                           const std::function<void(const ExponentVector&)>& sink) {
  if (static_cast<int>(cur.size()) == d) {
    sink(cur);
    return;
  }
  int top = std::min(hi, budget);
  for (int v = top; v >= -budget; --v) {
    cur.push_back(v);
    gen_descending(d, budget - std::abs(v), v, cur, sink);
    cur.pop_back();
  }
}

}  // namespace detail

/// All canonical orbits with l1 norm <= l, sorted by (l1, lexicographically
/// descending rep). Orbit sizes over the list sum to raw_point_count(d, l).
inline std::vector<GammaOrbit> enumerate_gamma(int d, int l) {
  if (d < 1) throw DimensionError("enumerate_gamma: dimension must be positive");
  if (l < 0) throw DimensionError("enumerate_gamma: l must be nonnegative");
  std::vector<GammaOrbit> out;
  ExponentVector cur;
  cur.reserve(d);
  detail::gen_descending(d, l, l, cur, [&](const ExponentVector& v) {
    ExponentVector neg(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
    std::sort(neg.begin(), neg.end(), std::greater<int>());
    if (v < neg) return;  // keep only the canonical one of the +/- pair
    GammaOrbit o;
    o.rep = v;
    o.l1_norm = l1_norm(v);
    o.orbit_size = detail::multiset_permutation_count(v);
    if (neg != v) o.orbit_size *= 2;
    out.push_back(std::move(o));
  });
  std::sort(out.begin(), out.end(), [](const GammaOrbit& a, const GammaOrbit& b) {
    if (a.l1_norm != b.l1_norm) return a.l1_norm < b.l1_norm;
    return a.rep > b.rep;
  });
  return out;
}

inline std::string format_exponents(const ExponentVector& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g[i]);
  }
  s += ")";
  return s;
}

}  // namespace mublp
