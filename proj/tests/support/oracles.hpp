#pragma once

// Brute-force reference implementations on machine integers. They share no
// code with the library: facets from cross products over all subsets,
// parallelepiped points from a box scan with Cramer's rule.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "conepos/exact_arith.hpp"

namespace oracle {

using I = std::int64_t;
using V = std::vector<I>;

inline V from(const conepos::IntVector& v) {
  V out;
  for (const auto& x : v) out.push_back(static_cast<I>(x));
  return out;
}

inline std::vector<V> from(const std::vector<conepos::IntVector>& vs) {
  std::vector<V> out;
  for (const auto& v : vs) out.push_back(from(v));
  return out;
}

inline I dot(const V& a, const V& b) {
  I s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline I det(const std::vector<V>& cols) {
  const std::size_t n = cols.size();
  if (n == 1) return cols[0][0];
  if (n == 2) return cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0];
  I s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<V> minor;
    for (std::size_t k = 1; k < n; ++k) {
      V col;
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) col.push_back(cols[k][i]);
      minor.push_back(col);
    }
    s += (j % 2 ? -1 : 1) * cols[0][j] * det(minor);
  }
  return s;
}

// Normal to the hyperplane through d-1 vectors in R^d (d = 2 or 3).
inline V normal(const std::vector<V>& vs, std::size_t d) {
  if (d == 2) return {-vs[0][1], vs[0][0]};
  return {vs[0][1] * vs[1][2] - vs[0][2] * vs[1][1], vs[0][2] * vs[1][0] - vs[0][0] * vs[1][2],
          vs[0][0] * vs[1][1] - vs[0][1] * vs[1][0]};
}

inline V primitive(V v) {
  I g = 0;
  for (I x : v) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (I& x : v) x /= g;
  return v;
}

/// Inequalities of a full-dimensional cone in R^2 or R^3.
inline std::vector<V> inequalities(const std::vector<V>& gens, std::size_t d) {
  std::set<V> out;
  const std::size_t n = gens.size();
  auto consider = [&](const std::vector<V>& sub) {
    V nv = normal(sub, d);
    if (std::all_of(nv.begin(), nv.end(), [](I x) { return x == 0; })) return;
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      I s = dot(nv, g);
      pos = pos && s >= 0;
      neg = neg && s <= 0;
    }
    if (pos) out.insert(primitive(nv));
    if (neg) {
      for (I& x : nv) x = -x;
      out.insert(primitive(nv));
    }
  };
  if (d == 2)
    for (std::size_t i = 0; i < n; ++i) consider({gens[i]});
  else
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) consider({gens[i], gens[j]});
  return {out.begin(), out.end()};
}

inline bool in_cone(const std::vector<V>& ineq, const V& x) {
  return std::all_of(ineq.begin(), ineq.end(), [&](const V& a) { return dot(a, x) >= 0; });
}

// Box scan over [-b_i, b_i].
template <class F>
void for_each_in_box(const V& b, F&& f) {
  const std::size_t d = b.size();
  V x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = -b[i];
  while (true) {
    f(x);
    std::size_t i = 0;
    for (; i < d; ++i) {
      if (++x[i] <= b[i]) break;
      x[i] = -b[i];
    }
    if (i == d) break;
  }
}

/// Nonzero lattice points x = sum l_i g_i with 0 <= l_i < 1, for d
/// independent vectors in Z^d.
inline std::vector<V> par_points(const std::vector<V>& g) {
  const std::size_t d = g.size();
  const I D = det(g);
  V b(d, 0);
  for (const auto& v : g)
    for (std::size_t i = 0; i < d; ++i) b[i] += std::abs(v[i]);
  std::vector<V> out;
  for_each_in_box(b, [&](const V& x) {
    if (std::all_of(x.begin(), x.end(), [](I t) { return t == 0; })) return;
    // Cramer: l_i = det(g with column i replaced by x) / D
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<V> m = g;
      m[i] = x;
      I num = det(m);
      // 0 <= num / D < 1
      if (D > 0 ? (num < 0 || num >= D) : (num > 0 || num <= D)) return;
    }
    out.push_back(x);
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Hilbert basis of a full-dimensional cone in R^2 or R^3: candidates are
/// the generators and the parallelepiped points of every independent
/// d-subset containing them; a candidate is dropped iff some other
/// candidate h has x - h in the cone.
inline std::vector<V> hilbert_basis(const std::vector<V>& gens) {
  const std::size_t d = gens[0].size(), n = gens.size();
  const auto ineq = inequalities(gens, d);
  std::set<V> cand;
  for (const auto& g : gens) cand.insert(primitive(g));
  std::vector<std::size_t> idx(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t k) {
    if (k == d) {
      std::vector<V> sub;
      for (auto i : idx) sub.push_back(gens[i]);
      if (det(sub) == 0) return;
      for (auto& p : par_points(sub)) cand.insert(p);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[k] = i;
      rec(i + 1, k + 1);
    }
  };
  rec(0, 0);
  std::vector<V> out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& h : cand) {
      if (h == x) continue;
      V r(d);
      for (std::size_t i = 0; i < d; ++i) r[i] = x[i] - h[i];
      if (std::any_of(r.begin(), r.end(), [](I t) { return t != 0; }) && in_cone(ineq, r)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// x ∈ cone(gens) for any finite set in R^2 or R^3, by Caratheodory: x is a
/// nonnegative combination of some linearly independent subset.
inline bool in_cone_of(const std::vector<V>& gens, const V& x) {
  const std::size_t d = x.size(), n = gens.size();
  if (std::all_of(x.begin(), x.end(), [](I t) { return t == 0; })) return true;
  // coordinates of x in the independent set `sub`, via a nonzero maximal minor
  auto solve = [&](const std::vector<V>& sub) -> bool {
    const std::size_t k = sub.size();
    std::vector<std::size_t> rows(k);
    bool found = false;
    std::function<bool(std::size_t, std::size_t)> pick = [&](std::size_t start, std::size_t j) -> bool {
      if (j == k) {
        auto restrict = [&](const V& v) {
          V r;
          for (auto i : rows) r.push_back(v[i]);
          return r;
        };
        std::vector<V> m;
        for (const auto& g : sub) m.push_back(restrict(g));
        const I D = det(m);
        if (D == 0) return false;
        std::vector<I> num(k);
        for (std::size_t i = 0; i < k; ++i) {
          auto mi = m;
          mi[i] = restrict(x);
          num[i] = det(mi);
          if ((D > 0 && num[i] < 0) || (D < 0 && num[i] > 0)) return true;  // solved, negative
        }
        // check the remaining coordinates: D x = sum num_i g_i
        for (std::size_t r = 0; r < d; ++r) {
          I s = 0;
          for (std::size_t i = 0; i < k; ++i) s += num[i] * sub[i][r];
          if (s != D * x[r]) return true;  // x not in the span
        }
        found = true;
        return true;
      }
      for (std::size_t i = start; i < d; ++i) {
        rows[j] = i;
        if (pick(i + 1, j + 1)) return true;
      }
      return false;
    };
    pick(0, 0);
    return found;
  };
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (!idx.empty()) {
      std::vector<V> sub;
      for (auto i : idx) sub.push_back(gens[i]);
      if (solve(sub)) return true;
    }
    if (idx.size() == d) return false;
    for (std::size_t i = start; i < n; ++i) {
      idx.push_back(i);
      if (rec(i + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  return rec(0);
}

/// All nonzero lattice points of the cone within [-b, b]^d.
inline std::vector<V> points_in_box(const std::vector<V>& ineq, std::size_t d, I b) {
  std::vector<V> out;
  for_each_in_box(V(d, b), [&](const V& x) {
    if (std::any_of(x.begin(), x.end(), [](I t) { return t != 0; }) && in_cone(ineq, x)) out.push_back(x);
  });
  return out;
}

}  // namespace oracle
