#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "conepos/cone.hpp"

namespace conepos {

struct Triangulation {
  Cone parent;
  std::vector<Cone> pieces;

  bool unimodular() const {
    return std::all_of(pieces.begin(), pieces.end(), [](const Cone& c) { return is_unimodular(c); });
  }
};

namespace detail {

using Simplex = std::vector<IntVector>;  // r independent vectors in Z^r

// Placing triangulation of a full-dimensional cone in Z^r over its extremal
// rays, inserted in the given order.
inline std::vector<Simplex> placing_triangulation(const std::vector<IntVector>& pts, std::size_t r) {
  if (r == 1) return {{pts[0]}};
  // initial simplex: first r independent points in order
  std::vector<std::size_t> first;
  std::vector<IntVector> chosen;
  for (std::size_t i = 0; i < pts.size() && first.size() < r; ++i) {
    chosen.push_back(pts[i]);
    if (rank(chosen, r) == chosen.size()) first.push_back(i);
    else chosen.pop_back();
  }
  std::vector<std::vector<std::size_t>> simplices{first};
  std::vector<bool> placed(pts.size(), false);
  for (auto i : first) placed[i] = true;

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (placed[p]) continue;
    // boundary facets of the current complex: (r-1)-faces in exactly one simplex
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> faces;  // face -> (count, opposite vertex)
    for (const auto& s : simplices)
      for (std::size_t k = 0; k < r; ++k) {
        std::vector<std::size_t> f;
        for (std::size_t j = 0; j < r; ++j)
          if (j != k) f.push_back(s[j]);
        auto& e = faces[f];
        e.first += 1;
        e.second = s[k];
      }
    std::vector<std::vector<std::size_t>> added;
    for (const auto& [f, e] : faces) {
      if (e.first != 1) continue;
      std::vector<const IntVector*> sel;
      for (auto i : f) sel.push_back(&pts[i]);
      IntVector n = cofactor_normal(sel, r);
      if (dot(n, pts[e.second]) < 0) n = -n;
      if (dot(n, pts[p]) < 0) {
        std::vector<std::size_t> s = f;
        s.push_back(p);
        std::sort(s.begin(), s.end());
        added.push_back(std::move(s));
      }
    }
    simplices.insert(simplices.end(), added.begin(), added.end());
    placed[p] = true;
  }
  std::vector<Simplex> out;
  for (const auto& s : simplices) {
    Simplex sx;
    for (auto i : s) sx.push_back(pts[i]);
    out.push_back(std::move(sx));
  }
  return out;
}

inline Int simplex_volume(const Simplex& s) { return abs(det(IntMatrix::from_columns(s))); }

// Stellar subdivision of the whole complex at p: every simplex containing p
// is replaced by the simplices obtained by swapping p in for one generator.
inline std::vector<Simplex> stellar_subdivide(const std::vector<Simplex>& tri, const IntVector& p) {
  std::vector<Simplex> out;
  for (const auto& s : tri) {
    auto inv = inverse(to_rational(IntMatrix::from_columns(s)));
    RationalVector lambda = *inv * to_rational(p);
    bool inside = std::all_of(lambda.begin(), lambda.end(), [](const Rational& x) { return x >= 0; });
    if (!inside) {
      out.push_back(s);
      continue;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (lambda[i] == 0) continue;
      Simplex t = s;
      t[i] = p;
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace detail

/// Unimodular triangulation: placing triangulation over the extremal rays,
/// then stellar subdivision at the primitive part of the shortest Lpar point
/// of the first non-unimodular piece until every piece has mu = 1.
inline Triangulation unimodular_triangulation(const Cone& c) {
  require(!c.is_zero(), ErrorKind::ZeroCone, "cannot triangulate the zero cone");
  const LatticeFrame& frame = c.frame();
  const std::size_t r = c.dim();
  std::vector<IntVector> pts;
  for (const auto& g : c.generators()) pts.push_back(frame.to_coords(g));
  auto tri = detail::placing_triangulation(pts, r);

  while (true) {
    auto bad = std::find_if(tri.begin(), tri.end(), [](const detail::Simplex& s) { return detail::simplex_volume(s) > 1; });
    if (bad == tri.end()) break;
    auto lp = lpar(*bad).points;
    std::vector<std::pair<IntVector, IntVector>> by_ambient;  // (ambient, coords)
    for (const auto& q : lp) by_ambient.emplace_back(frame.from_coords(q), q);
    auto best = std::min_element(by_ambient.begin(), by_ambient.end(),
                                 [](const auto& a, const auto& b) { return ShorterThan{}(a.first, b.first); });
    tri = detail::stellar_subdivide(tri, primitive_part(best->second));
  }

  Triangulation out{c, {}};
  for (const auto& s : tri) {
    std::vector<IntVector> g;
    for (const auto& q : s) g.push_back(frame.from_coords(q));
    out.pieces.push_back(Cone::hull(g, c.ambient_dim()));
  }
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const Cone& a, const Cone& b) { return a.generators() < b.generators(); });
  return out;
}

namespace detail {

inline std::vector<IntVector> compute_hilbert_basis(const Cone& c) {
  if (c.is_zero()) return {};
  if (c.dim() == 1) return c.generators();
  const LatticeFrame& frame = c.frame();
  const std::size_t r = c.dim();
  Cone local = restrict_to(c, frame);
  std::vector<IntVector> pts(local.generators());

  std::set<IntVector> cand(pts.begin(), pts.end());
  for (const auto& s : placing_triangulation(pts, r))
    for (auto& q : lpar(s).points) cand.insert(std::move(q));

  const IntVector& phi = local.positive_functional();
  std::vector<std::pair<Int, IntVector>> order;
  for (const auto& q : cand) order.emplace_back(dot(phi, q), q);
  std::sort(order.begin(), order.end());

  // x is reducible iff x - h ∈ C for a Hilbert element h of smaller degree
  std::vector<IntVector> basis;
  for (const auto& [deg, x] : order) {
    bool reducible = std::any_of(basis.begin(), basis.end(), [&](const IntVector& h) { return local.contains(IntVector(x - h)); });
    if (!reducible) basis.push_back(x);
  }
  std::vector<IntVector> out;
  for (const auto& q : basis) out.push_back(frame.from_coords(q));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Hilb(C): the unique minimal generating set of the monoid C ∩ Z^d, sorted
/// lexicographically. Cached on the cone.
inline const std::vector<IntVector>& hilbert_basis(const Cone& c) {
  return c.hilbert_cache([&] { return detail::compute_hilbert_basis(c); });
}

// ---------------------------------------------------------------------------
// Lattice polytopes

struct LatticePolytope {
  std::vector<IntVector> vertices;
  std::vector<IntVector> lattice_points;

  std::size_t dim_ambient() const { return vertices.empty() ? 0 : vertices[0].size(); }

  /// Convex hull of a nonempty set of lattice points.
  static LatticePolytope hull(const std::vector<IntVector>& points);
};

inline IntVector lift(const IntVector& x, const Int& height = 1) {
  IntVector y(x.size() + 1);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i];
  y[x.size()] = height;
  return y;
}

inline IntVector drop_last(const IntVector& y) {
  return IntVector(std::vector<Int>(y.begin(), y.end() - 1));
}

/// C(P) = R_+(P x {1}).
inline Cone homogenize(const LatticePolytope& p) {
  require(!p.vertices.empty(), ErrorKind::PreconditionViolated, "empty polytope");
  std::vector<IntVector> g;
  for (const auto& v : p.vertices) g.push_back(lift(v));
  return Cone::hull(g, p.dim_ambient() + 1);
}

inline LatticePolytope LatticePolytope::hull(const std::vector<IntVector>& points) {
  require(!points.empty(), ErrorKind::PreconditionViolated, "empty polytope");
  const std::size_t d = points[0].size();
  std::vector<IntVector> lifted;
  for (const auto& x : points) lifted.push_back(lift(x));
  Cone cone = Cone::hull(lifted, d + 1);

  LatticePolytope p;
  for (const auto& g : cone.generators()) p.vertices.push_back(drop_last(g));

  // bounding-box scan with exact half-space tests
  IntVector lo = p.vertices[0], hi = p.vertices[0];
  for (const auto& v : p.vertices)
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  IntVector x = lo;
  while (true) {
    if (cone.contains(lift(x))) p.lattice_points.push_back(x);
    std::size_t i = 0;
    while (i < d) {
      if (++x[i] <= hi[i]) break;
      x[i] = lo[i];
      ++i;
    }
    if (i == d) break;
  }
  std::sort(p.lattice_points.begin(), p.lattice_points.end());
  return p;
}

/// P is normal iff Hilb(C(P)) sits at height 1.
inline bool is_normal(const LatticePolytope& p) {
  const Cone c = homogenize(p);
  const auto& hb = hilbert_basis(c);
  return std::all_of(hb.begin(), hb.end(), [](const IntVector& h) { return h[h.size() - 1] == 1; });
}

}  // namespace conepos

namespace conepos {

namespace detail {

// Deterministic sample of points in the relative interior of c: positive
// integer combinations of its generators with pseudo-random weights.
inline std::vector<IntVector> interior_samples(const Cone& c, std::size_t count) {
  std::vector<IntVector> out;
  std::uint64_t state = 0x9E3779B97F4A7C15ull;
  for (std::size_t s = 0; s < count; ++s) {
    IntVector x(c.ambient_dim());
    for (const auto& g : c.generators()) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      x += Int(1 + (state >> 33) % 97) * g;
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace detail

/// Sampled check that the pieces form a triangulation of the parent: every
/// piece is simplicial and inside the parent, every sample point lies in
/// some piece and in the relative interior of at most one.
inline bool verify_triangulation(const Triangulation& t, std::size_t samples = 64) {
  const Cone& parent = t.parent;
  for (const auto& p : t.pieces)
    if (!is_simplicial(p) || p.dim() != parent.dim() || !parent.contains(p)) return false;
  std::vector<RationalMatrix> inverses;
  for (const auto& p : t.pieces) {
    std::vector<IntVector> cols;
    for (const auto& g : p.generators()) cols.push_back(parent.frame().to_coords(g));
    inverses.push_back(*inverse(to_rational(IntMatrix::from_columns(cols))));
  }
  for (const auto& x : detail::interior_samples(parent, samples)) {
    RationalVector xc = to_rational(parent.frame().to_coords(x));
    int closed = 0, open = 0;
    for (const auto& inv : inverses) {
      RationalVector lambda = inv * xc;
      bool nonneg = std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l >= 0; });
      bool pos = std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return l > 0; });
      closed += nonneg;
      open += pos;
    }
    if (closed == 0 || open > 1) return false;
  }
  return true;
}

}  // namespace conepos
