#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "conepos/exact_arith.hpp"

namespace conepos {

/// A facet together with its primitive height functional ht_F.
struct FacetData {
  IntVector height;          // ambient functional; agrees with ht_F on span(C)
  IntVector height_in_span;  // primitive functional on span-lattice coordinates
  std::vector<IntVector> generators;

  Int at(const IntVector& x) const { return dot(height, x); }
  Rational at(const RationalVector& x) const { return dot(height, x); }
};

/// Closed set {t : base + t * dir ∈ C}; nullopt bounds mean unbounded.
struct Interval {
  std::optional<Rational> lo, hi;

  bool contains(const Rational& t) const { return (!lo || *lo <= t) && (!hi || t <= *hi); }
  /// Smallest integer in the interval that is >= floor_at.
  std::optional<Int> first_integer_from(const Int& floor_at) const {
    Int k = lo ? std::max(conepos::ceil(*lo), floor_at) : floor_at;
    if (hi && Rational(k) > *hi) return std::nullopt;
    return k;
  }
};

/// What canonicalization changed relative to the raw generator list.
struct CanonicalizationNotes {
  std::vector<std::pair<IntVector, IntVector>> reduced;  // raw -> primitive part
  std::vector<IntVector> dropped;                        // zero, duplicate or non-extremal
  bool changed() const { return !reduced.empty() || !dropped.empty(); }
};

/// Pointed rational polyhedral cone in canonical form: primitive extremal
/// generators sorted lexicographically, facets with height functionals, and
/// the lattice frame of its linear span.
class Cone {
 public:
  Cone() : Cone(zero(0)) {}

  static Cone zero(std::size_t ambient) {
    Cone c{RawTag{}};
    c.ambient_ = ambient;
    c.frame_ = LatticeFrame::of({}, ambient);
    c.positive_ = IntVector(ambient);
    c.cache_ = std::make_shared<Cache>();
    return c;
  }

  static Cone hull(std::span<const IntVector> raw, std::size_t ambient,
                   CanonicalizationNotes* notes = nullptr);
  static Cone hull(const std::vector<IntVector>& raw, std::size_t ambient) {
    return hull(std::span<const IntVector>(raw), ambient);
  }
  static Cone hull(std::initializer_list<IntVector> raw) {
    std::vector<IntVector> v(raw);
    return hull(v, v.empty() ? 0 : v[0].size());
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return frame_.rank(); }
  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_full_dim() const noexcept { return dim() == ambient_; }
  const std::vector<IntVector>& generators() const noexcept { return gens_; }
  const std::vector<FacetData>& facets() const noexcept { return facets_; }
  const LatticeFrame& frame() const noexcept { return frame_; }
  /// Integer functional strictly positive on every generator (pointedness certificate).
  const IntVector& positive_functional() const noexcept { return positive_; }

  bool contains(const IntVector& x) const;
  bool contains(const RationalVector& x) const;
  bool contains(const Cone& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const IntVector& g) { return contains(g); });
  }
  Interval line_interval(const RationalVector& base, const RationalVector& dir) const;

  bool has_generator(const IntVector& g) const { return std::binary_search(gens_.begin(), gens_.end(), g); }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.gens_ == b.gens_;
  }

  /// Memoized derived data (Hilbert basis, multiplicity). Computed at most once
  /// per cone value; safe under concurrent readers.
  template <class F>
  const std::vector<IntVector>& hilbert_cache(F&& compute) const {
    std::call_once(cache_->hilbert_once, [&] { cache_->hilbert = compute(); });
    return cache_->hilbert;
  }

 private:
  struct RawTag {};
  explicit Cone(RawTag) {}

  struct Cache {
    std::once_flag hilbert_once;
    std::vector<IntVector> hilbert;
  };

  std::size_t ambient_ = 0;
  std::vector<IntVector> gens_;
  std::vector<FacetData> facets_;
  LatticeFrame frame_;
  IntVector positive_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

// Normal to the hyperplane spanned by r-1 vectors in Z^r (generalized cross
// product via cofactors). Zero iff the vectors are dependent.
inline IntVector cofactor_normal(const std::vector<const IntVector*>& vs, std::size_t r) {
  IntVector n(r);
  IntMatrix minor(r - 1, r - 1);
  for (std::size_t skip = 0; skip < r; ++skip) {
    for (std::size_t i = 0, row = 0; i < r; ++i) {
      if (i == skip) continue;
      for (std::size_t j = 0; j + 1 < r; ++j) minor(row, j) = (*vs[j])[i];
      ++row;
    }
    Int d = det(minor);
    n[skip] = (skip % 2 == 0) ? d : Int(-d);
  }
  return n;
}

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct SpanFacet {
  IntVector normal;
  std::vector<std::size_t> on;  // indices of points with normal . p == 0
};

// Facets of the cone spanned by full-rank points in Z^r, r >= 2: brute force
// over (r-1)-subsets whose hyperplane supports every point.
inline std::vector<SpanFacet> brute_force_facets(const std::vector<IntVector>& pts, std::size_t r) {
  std::vector<SpanFacet> out;
  std::set<IntVector> seen;
  std::vector<const IntVector*> sel(r - 1);
  for_each_combination(pts.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
    // a subset lying inside an already found facet cannot give a new one
    for (const auto& f : out)
      if (std::includes(f.on.begin(), f.on.end(), idx.begin(), idx.end())) return;
    for (std::size_t j = 0; j + 1 < r; ++j) sel[j] = &pts[idx[j]];
    IntVector n = cofactor_normal(sel, r);
    if (n.is_zero()) return;
    n = primitive_part(n);
    bool pos = false, neg = false;
    for (const auto& p : pts) {
      Int s = dot(n, p);
      if (s > 0) pos = true;
      else if (s < 0) neg = true;
      if (pos && neg) return;
    }
    if (neg) n = -n;
    if (!seen.insert(n).second) return;
    SpanFacet f{n, {}};
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (dot(n, pts[i]) == 0) f.on.push_back(i);
    out.push_back(std::move(f));
  });
  return out;
}

}  // namespace detail

inline Cone Cone::hull(std::span<const IntVector> raw, std::size_t ambient, CanonicalizationNotes* notes) {
  std::vector<IntVector> prim;
  std::set<IntVector> seen;
  for (const auto& x : raw) {
    require(x.size() == ambient, ErrorKind::DimensionMismatch, "generator has the wrong ambient dimension");
    if (x.is_zero()) {
      if (notes) notes->dropped.push_back(x);
      continue;
    }
    IntVector p = primitive_part(x);
    if (notes && !(p == x)) notes->reduced.emplace_back(x, p);
    if (seen.insert(p).second) prim.push_back(std::move(p));
    else if (notes) notes->dropped.push_back(x);
  }
  Cone c = zero(ambient);
  if (prim.empty()) return c;
  std::sort(prim.begin(), prim.end());

  c.frame_ = LatticeFrame::of(prim, ambient);
  const std::size_t r = c.frame_.rank();
  std::vector<IntVector> coords;
  coords.reserve(prim.size());
  for (const auto& p : prim) coords.push_back(c.frame_.to_coords(p));

  if (r == 1) {
    int sign = coords[0][0] > 0 ? 1 : -1;
    for (const auto& q : coords)
      require((q[0] > 0 ? 1 : -1) == sign, ErrorKind::NotPointed, "generators span a line in both directions");
    // all points are positive multiples of one primitive vector
    c.gens_ = {prim[0]};
    for (std::size_t i = 1; i < prim.size(); ++i)
      if (notes) notes->dropped.push_back(prim[i]);
    c.positive_ = c.frame_.pull_back(IntVector{Int(sign)});
    return c;
  }

  auto facets = detail::brute_force_facets(coords, r);
  IntVector phi(r);
  for (const auto& f : facets) phi += f.normal;
  for (const auto& q : coords)
    require(!facets.empty() && dot(phi, q) > 0, ErrorKind::NotPointed,
            "no functional is strictly positive on all generators");

  std::vector<bool> extremal(prim.size(), false);
  for (std::size_t i = 0; i < prim.size(); ++i) {
    std::vector<IntVector> normals;
    for (const auto& f : facets)
      if (std::binary_search(f.on.begin(), f.on.end(), i)) normals.push_back(f.normal);
    extremal[i] = rank(normals, r) == r - 1;
    if (!extremal[i] && notes) notes->dropped.push_back(prim[i]);
  }
  for (std::size_t i = 0; i < prim.size(); ++i)
    if (extremal[i]) c.gens_.push_back(prim[i]);

  for (const auto& f : facets) {
    FacetData fd;
    fd.height_in_span = f.normal;
    fd.height = c.frame_.pull_back(f.normal);
    for (std::size_t i : f.on)
      if (extremal[i]) fd.generators.push_back(prim[i]);
    c.facets_.push_back(std::move(fd));
  }
  std::sort(c.facets_.begin(), c.facets_.end(),
            [](const FacetData& a, const FacetData& b) { return a.height < b.height; });
  c.positive_ = c.frame_.pull_back(phi);
  return c;
}

inline bool Cone::contains(const IntVector& x) const {
  if (gens_.empty()) return x.is_zero();
  if (!frame_.in_span(x)) return false;
  if (dim() == 1) return dot(positive_, x) >= 0;
  return std::all_of(facets_.begin(), facets_.end(), [&](const FacetData& f) { return f.at(x) >= 0; });
}

inline bool Cone::contains(const RationalVector& x) const {
  if (gens_.empty()) return x.is_zero();
  if (!frame_.in_span(x)) return false;
  if (dim() == 1) return dot(positive_, x) >= 0;
  return std::all_of(facets_.begin(), facets_.end(), [&](const FacetData& f) { return f.at(x) >= 0; });
}

inline Interval Cone::line_interval(const RationalVector& base, const RationalVector& dir) const {
  Interval iv;
  bool empty = false;
  auto tighten_lo = [&](const Rational& t) { if (!iv.lo || t > *iv.lo) iv.lo = t; };
  auto tighten_hi = [&](const Rational& t) { if (!iv.hi || t < *iv.hi) iv.hi = t; };
  // a + t b >= 0
  auto inequality = [&](const Rational& a, const Rational& b) {
    if (b == 0) {
      if (a < 0) empty = true;
    } else if (b > 0) {
      tighten_lo(-a / b);
    } else {
      tighten_hi(-a / b);
    }
  };
  auto equation = [&](const Rational& a, const Rational& b) {
    inequality(a, b);
    inequality(-a, -b);
  };
  const IntMatrix& eq = gens_.empty() ? IntMatrix::identity(ambient_) : frame_.normals();
  for (std::size_t i = 0; i < eq.rows(); ++i) {
    IntVector row = eq.row(i);
    equation(dot(row, base), dot(row, dir));
  }
  if (dim() == 1) inequality(dot(positive_, base), dot(positive_, dir));
  for (const auto& f : facets_) inequality(f.at(base), f.at(dir));
  if (empty || (iv.lo && iv.hi && *iv.lo > *iv.hi)) return Interval{Rational(1), Rational(0)};
  return iv;
}

inline Cone operator+(const Cone& c, const IntVector& v) {
  std::vector<IntVector> g = c.generators();
  g.push_back(v);
  return Cone::hull(g, c.ambient_dim());
}

inline Cone hull_of_union(const Cone& a, const Cone& b) {
  std::vector<IntVector> g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return Cone::hull(g, a.ambient_dim());
}

// ---------------------------------------------------------------------------
// Coordinates on a lattice frame

/// The cone expressed in the span-lattice coordinates of `frame` (which must contain it).
inline Cone restrict_to(const Cone& c, const LatticeFrame& frame) {
  std::vector<IntVector> g;
  for (const auto& x : c.generators()) g.push_back(frame.to_coords(x));
  return Cone::hull(g, frame.rank());
}

inline Cone embed(const Cone& c, const LatticeFrame& frame) {
  std::vector<IntVector> g;
  for (const auto& x : c.generators()) g.push_back(frame.from_coords(x));
  return Cone::hull(g, frame.ambient());
}

// ---------------------------------------------------------------------------
// Visibility

struct VisibleFacets {
  std::vector<FacetData> facets;  // ht_F(v) < 0
  Rational lambda_1;              // 1 / max(-ht_F(v))
};

inline VisibleFacets visible_facets(const Cone& c, const IntVector& v) {
  require(c.is_full_dim() && !c.is_zero(), ErrorKind::NotFullDim, "visible_facets needs a full-dimensional cone");
  // F^+(v) and lambda_1 only need v outside C; callers forming C + R_+v also exclude -v.
  require(!c.contains(v), ErrorKind::VNotOutside, "v lies in the cone");
  VisibleFacets out;
  Int worst = 0;
  for (const auto& f : c.facets()) {
    Int h = f.at(v);
    if (h < 0) {
      out.facets.push_back(f);
      worst = std::max(worst, Int(-h));
    }
  }
  out.lambda_1 = Rational(1) / Rational(worst);
  return out;
}

// ---------------------------------------------------------------------------
// Fundamental parallelepiped

struct LparResult {
  std::vector<IntVector> points;  // nonzero lattice points of par, lexicographic
  Int mu;                         // |det| in span-lattice coordinates
};

inline LparResult lpar(std::span<const IntVector> gens) {
  require(!gens.empty(), ErrorKind::PreconditionViolated, "lpar of an empty generator list");
  const std::size_t d = gens[0].size();
  LatticeFrame frame = LatticeFrame::of(gens, d);
  const std::size_t r = frame.rank();
  require(r == gens.size(), ErrorKind::NotIndependent, "generators are linearly dependent");
  std::vector<IntVector> cols;
  for (const auto& g : gens) cols.push_back(frame.to_coords(g));
  IntMatrix b = IntMatrix::from_columns(cols);
  SnfResult sn = snf(b);
  auto b_inv = inverse(to_rational(b));

  LparResult out;
  out.mu = 1;
  for (const auto& s : sn.invariant_factors) out.mu *= s;

  // coset representatives u_inv * a, 0 <= a_i < s_i, folded into par
  IntVector a(r);
  while (true) {
    IntVector x = sn.u_inv * a;
    RationalVector lambda = *b_inv * to_rational(x);
    IntVector shift(r);
    for (std::size_t i = 0; i < r; ++i) shift[i] = conepos::floor(lambda[i]);
    IntVector p = x - b * shift;
    if (!p.is_zero()) out.points.push_back(frame.from_coords(p));
    std::size_t i = 0;
    while (i < r) {
      if (++a[i] < sn.invariant_factors[i]) break;
      a[i] = 0;
      ++i;
    }
    if (i == r) break;
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

inline LparResult lpar(const std::vector<IntVector>& gens) { return lpar(std::span<const IntVector>(gens)); }

inline bool is_simplicial(const Cone& c) { return c.generators().size() == c.dim(); }

/// Multiplicity of a simplicial cone.
inline Int mu(const Cone& c) {
  require(is_simplicial(c), ErrorKind::PreconditionViolated, "mu is defined for simplicial cones");
  if (c.is_zero()) return 1;
  std::vector<IntVector> cols;
  for (const auto& g : c.generators()) cols.push_back(c.frame().to_coords(g));
  return abs(det(IntMatrix::from_columns(cols)));
}

inline bool is_unimodular(const Cone& c) { return is_simplicial(c) && mu(c) == 1; }

/// Extremal generators of a 3-dimensional cone in cyclic order: consecutive
/// entries (and last/first) span the facets. Starts at the smallest generator
/// and steps to the smaller of its two neighbours.
inline std::vector<IntVector> cyclic_order(const Cone& c) {
  require(c.dim() == 3, ErrorKind::PreconditionViolated, "cyclic order needs a 3-dimensional cone");
  std::map<IntVector, std::vector<IntVector>> nbrs;
  for (const auto& f : c.facets()) {
    const auto& g = f.generators;
    nbrs[g[0]].push_back(g[1]);
    nbrs[g[1]].push_back(g[0]);
  }
  std::vector<IntVector> cycle{c.generators().front()};
  IntVector prev = cycle[0];
  IntVector cur = std::min(nbrs[prev][0], nbrs[prev][1]);
  while (!(cur == cycle[0])) {
    cycle.push_back(cur);
    const auto& nb = nbrs[cur];
    IntVector next = (nb[0] == prev) ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  return cycle;
}

/// The facet of a 3-cone spanned by two adjacent generators.
inline const FacetData& facet_through(const Cone& c, const IntVector& a, const IntVector& b) {
  for (const auto& f : c.facets())
    if (f.at(a) == 0 && f.at(b) == 0) return f;
  throw ConeError(ErrorKind::PreconditionViolated, "generators are not adjacent");
}

}  // namespace conepos
