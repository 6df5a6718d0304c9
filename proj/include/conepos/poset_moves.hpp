#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "conepos/hilbert.hpp"

namespace conepos {

enum class Verdict { Equal, Elementary, NotElementary, NotContained };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::Elementary: return "Elementary";
    case Verdict::NotElementary: return "NotElementary";
    case Verdict::NotContained: return "NotContained";
  }
  return "?";
}

/// A Hilbert-basis candidate x together with a Hilbert element h of D for
/// which no k >= 0 puts h - kx into C.
struct FailedCandidate {
  IntVector candidate;
  IntVector blocking;
};

struct ExtensionCheck {
  Verdict verdict = Verdict::NotElementary;
  std::optional<IntVector> witness;
  std::vector<FailedCandidate> failed_candidates;
};

namespace detail {

// First Hilbert element h of D with h ∉ L(C) + Z_+ x, if any.
inline std::optional<IntVector> uncovered_by(const Cone& c, const Cone& d, const IntVector& x) {
  const IntVector& phi = d.positive_functional();
  const Int phi_x = dot(phi, x);
  for (const auto& h : hilbert_basis(d)) {
    if (c.contains(h)) continue;
    // k ranges over 0 <= k <= phi(h) / phi(x)
    Int kmax = floor_div(dot(phi, h), phi_x);
    auto k = c.line_interval(to_rational(h), to_rational(IntVector(-x))).first_integer_from(0);
    if (!k || *k > kmax) return h;
  }
  return std::nullopt;
}

}  // namespace detail

/// Whether L(D) = L(C) + Z_+ x with x ∈ D \ C.
inline bool accepts_witness(const Cone& c, const Cone& d, const IntVector& x) {
  if (c.ambient_dim() != d.ambient_dim() || x.size() != d.ambient_dim()) return false;
  if (!d.contains(c) || !d.contains(x) || c.contains(x)) return false;
  return !detail::uncovered_by(c, d, x).has_value();
}

/// Decides whether C ⊂ D is an elementary extension. Any valid witness is
/// indecomposable in L(D), so only Hilb(D) \ C needs to be tried.
inline ExtensionCheck check_elementary(const Cone& c, const Cone& d) {
  require(c.ambient_dim() == d.ambient_dim(), ErrorKind::DimensionMismatch, "cones live in different spaces");
  ExtensionCheck out;
  if (!d.contains(c)) {
    out.verdict = Verdict::NotContained;
    return out;
  }
  if (c.contains(d)) {
    out.verdict = Verdict::Equal;
    return out;
  }
  for (const auto& x : hilbert_basis(d)) {
    if (c.contains(x)) continue;
    if (auto h = detail::uncovered_by(c, d, x)) {
      out.failed_candidates.push_back({x, *h});
    } else {
      out.verdict = Verdict::Elementary;
      out.witness = x;
      out.failed_candidates.clear();
      return out;
    }
  }
  out.verdict = Verdict::NotElementary;
  return out;
}

/// C ⊂ C + R_+w is a height-1 extension: C is full-dimensional in the span of
/// the larger cone and every facet of C visible from w has height -1 there.
inline bool is_height1_extension(const Cone& c, const IntVector& w) {
  if (c.is_zero()) return true;  // formal 0 ⊂ ray
  Cone d = c + w;
  const LatticeFrame& frame = d.frame();
  Cone local = restrict_to(c, frame);
  IntVector wl = frame.to_coords(w);
  if (local.dim() + 1 == frame.rank()) {
    // C spans a hyperplane of span(D) and is the facet seen from w: the
    // height of w over it is the index of span-lattice(C) + Zw
    std::vector<IntVector> cols;
    for (const auto& b : c.frame().basis().columns()) cols.push_back(frame.to_coords(b));
    cols.push_back(wl);
    return abs(det(IntMatrix::from_columns(cols))) == 1;
  }
  if (local.dim() != frame.rank()) return false;
  if (local.contains(wl) || local.contains(IntVector(-wl))) return false;
  auto vis = visible_facets(local, wl);
  return std::all_of(vis.facets.begin(), vis.facets.end(), [&](const FacetData& f) { return f.at(wl) == -1; });
}

// ---------------------------------------------------------------------------
// Height-1 layer

struct Height1Data {
  std::vector<FacetData> visible;
  Rational lambda_1;
  bool is_height_1 = false;
  std::vector<IntVector> first_layer;  // shortest first, lexicographic on ties
};

namespace detail {

// Every z ∈ Z^n with max |z_i| == b.
template <class F>
void for_each_on_shell(std::size_t n, const Int& b, F&& f) {
  IntVector z(n);
  if (b == 0) {
    f(z);
    return;
  }
  // the first coordinate reaching |b| is `lead`; earlier ones stay strictly inside
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t lead) {
    if (i == n) {
      f(z);
      return;
    }
    if (i == lead) {
      for (int s : {-1, 1}) {
        z[i] = Int(s) * b;
        rec(i + 1, lead);
      }
      return;
    }
    Int lim = i < lead ? Int(b - 1) : b;
    for (Int t = -lim; t <= lim; ++t) {
      z[i] = t;
      rec(i + 1, lead);
    }
  };
  for (std::size_t lead = 0; lead < n; ++lead) rec(0, lead);
}

}  // namespace detail

/// λ_1 layer of the pair (C, v): lattice points of λ_1 v + C^+(v). The
/// search scans free coordinates on growing shells up to `radius` and stops
/// once the `min_points` shortest points are certified complete.
inline Height1Data height1_data(const Cone& c, const IntVector& v, const Int& radius = 50,
                                std::size_t min_points = 1) {
  require(c.is_full_dim() && !c.is_zero(), ErrorKind::NotFullDim, "height1_data needs a full-dimensional cone");
  require(!c.contains(v) && !c.contains(IntVector(-v)), ErrorKind::VNotOutside, "v or -v lies in the cone");
  auto vis = visible_facets(c, v);
  require(content(v) == 1, ErrorKind::PreconditionViolated, "v must be primitive");
  Height1Data out;
  out.visible = vis.facets;
  out.lambda_1 = vis.lambda_1;
  out.is_height_1 = std::all_of(vis.facets.begin(), vis.facets.end(), [&](const FacetData& f) { return f.at(v) == -1; });

  // Only facets with -ht_F(v) maximal carry lattice points; on them ht_F(w) = -1.
  const Int m = numerator(1 / vis.lambda_1);
  std::vector<const FacetData*> layer;
  for (const auto& f : vis.facets)
    if (-f.at(v) == m) layer.push_back(&f);

  const std::size_t d = c.ambient_dim();
  std::set<IntVector, ShorterThan> found;
  auto on_layer = [&](const IntVector& w) {
    // w - λ_1 v ∈ C, i.e. m * ht_G(w) >= ht_G(v) for every facet G
    return std::all_of(c.facets().begin(), c.facets().end(),
                       [&](const FacetData& g) { return m * g.at(w) >= g.at(v); });
  };
  for (Int b = 0; b <= radius; ++b) {
    for (const FacetData* f : layer) {
      const IntVector& a = f->height;
      std::size_t j = 0;
      for (std::size_t i = 1; i < d; ++i)
        if (abs(a[i]) > abs(a[j])) j = i;
      detail::for_each_on_shell(d - 1, b, [&](const IntVector& z) {
        IntVector w(d);
        Int rest = -1;
        for (std::size_t i = 0, k = 0; i < d; ++i) {
          if (i == j) continue;
          w[i] = z[k++];
          rest -= a[i] * w[i];
        }
        if (rest % a[j] != 0) return;
        w[j] = rest / a[j];
        if (on_layer(w)) found.insert(w);
      });
    }
    if (found.size() >= min_points) {
      auto it = std::next(found.begin(), static_cast<std::ptrdiff_t>(min_points - 1));
      if (norm2(*it) <= b * b) break;
    }
  }
  require(!found.empty(), ErrorKind::LayerSearchExhausted, "no lattice point on the first layer within the search radius");
  out.first_layer.assign(found.begin(), found.end());
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert-basis descents

struct Descent {
  IntVector dropped;  // extremal generator v of D
  Cone cone;          // floor + R_+(Hilb(D) \ {v})
};

inline std::vector<Descent> hilbert_descents(const Cone& d, const Cone& floor) {
  require(d.contains(floor), ErrorKind::NotContained, "floor is not inside D");
  std::vector<Descent> out;
  const auto& hb = hilbert_basis(d);
  for (const auto& v : d.generators()) {
    if (floor.contains(v)) continue;
    // Hilbert elements inside the hull of the remaining extremal rays are
    // redundant; dropping them first keeps the facet enumeration small
    std::vector<IntVector> g = floor.generators();
    for (const auto& x : d.generators())
      if (!(x == v)) g.push_back(x);
    const Cone base = Cone::hull(g, d.ambient_dim());
    for (const auto& h : hb)
      if (!(h == v) && !base.contains(h)) g.push_back(h);
    Cone lower = Cone::hull(g, d.ambient_dim());
    if (!(lower == d)) out.push_back({v, std::move(lower)});
  }
  return out;
}

/// D > C' is a Hilbert-basis descent dropping v: v is an extremal generator
/// of D outside C' and every other Hilbert element of D lies in C'.
inline bool is_hilbert_descent(const Cone& d, const Cone& lower, const IntVector& v) {
  if (!d.has_generator(v) || lower.contains(v) || !d.contains(lower)) return false;
  const auto& hb = hilbert_basis(d);
  return std::all_of(hb.begin(), hb.end(), [&](const IntVector& h) { return h == v || lower.contains(h); });
}

// ---------------------------------------------------------------------------
// Strictly intermediate cones

/// For an elementary extension C < D with C != 0, a cone E with C < E < D.
/// When C is full-dimensional in span(D), E = C + R_+w for a first-layer
/// point w != v; otherwise w = v + (sum of the generators of C), which has
/// height 1 over span(C).
inline Cone strict_intermediate(const Cone& c, const Cone& d, const Int& radius = 50) {
  require(!c.is_zero(), ErrorKind::PreconditionViolated, "the lower cone must be nonzero");
  auto chk = check_elementary(c, d);
  require(chk.verdict == Verdict::Elementary, ErrorKind::NotElementaryInput, "C < D is not an elementary extension");
  const IntVector& v = *chk.witness;
  const LatticeFrame& frame = d.frame();
  Cone local = restrict_to(c, frame);

  IntVector w;
  if (local.dim() < frame.rank()) {
    w = v;
    for (const auto& g : c.generators()) w += g;
  } else {
    IntVector vl = frame.to_coords(v);
    auto hd = height1_data(local, vl, radius, 2);
    auto it = std::find_if(hd.first_layer.begin(), hd.first_layer.end(), [&](const IntVector& p) { return !(p == vl); });
    require(it != hd.first_layer.end(), ErrorKind::NoSecondPoint, "only v was found on the first layer");
    w = frame.from_coords(*it);
  }
  Cone e = c + w;
  require(check_elementary(c, e).verdict == Verdict::Elementary && check_elementary(e, d).verdict == Verdict::Elementary,
          ErrorKind::StepVerificationFailed, "intermediate cone failed verification");
  return e;
}

// ---------------------------------------------------------------------------
// Corner triangulation witness

namespace detail {

// An integer functional phi with phi(v) = 1 for primitive v (first column of
// the unimodular transform of the 1 x d matrix [v]).
inline IntVector splitting_functional(const IntVector& v) {
  IntMatrix row(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) row(0, j) = v[j];
  return hnf(row).u.column(0);
}

}  // namespace detail

/// Unimodular cones U_i ∋ v with D = C ∪ U_1 ∪ ... ∪ U_n whose sections
/// around v triangulate, for an elementary extension C < D = C + R_+v.
inline std::vector<Cone> corner_witness(const Cone& c, const IntVector& v) {
  require(!c.is_zero(), ErrorKind::PreconditionViolated, "the lower cone must be nonzero");
  require(content(v) == 1, ErrorKind::PreconditionViolated, "v must be primitive");
  Cone d = c + v;
  require(accepts_witness(c, d, v), ErrorKind::NotElementaryInput, "C < C + R_+v is not elementary with witness v");

  const IntVector phi = detail::splitting_functional(v);
  auto project = [&](const IntVector& x) { return IntVector(x - dot(phi, x) * v); };
  std::vector<IntVector> projected;
  for (const auto& g : c.generators()) projected.push_back(project(g));
  Cone c0 = Cone::hull(projected, c.ambient_dim());
  Triangulation tri = unimodular_triangulation(c0);

  std::vector<Cone> out;
  for (const auto& piece : tri.pieces) {
    std::vector<IntVector> lifted;
    for (const auto& g : piece.generators()) {
      Interval iv = c.line_interval(to_rational(g), to_rational(v));
      // the preimage on the part of the boundary of C that faces v
      require(iv.hi.has_value() && (!iv.lo || conepos::floor(*iv.hi) >= conepos::ceil(*iv.lo)),
              ErrorKind::NotElementaryInput, "projection has no lattice preimage in C");
      lifted.push_back(g + conepos::floor(*iv.hi) * v);
    }
    lifted.push_back(v);
    out.push_back(Cone::hull(lifted, c.ambient_dim()));
  }

  // (i) v ∈ U_i and U_i unimodular inside D
  for (const auto& u : out)
    require(u.contains(v) && is_unimodular(u) && d.contains(u), ErrorKind::StepVerificationFailed,
            "corner piece is not a unimodular cone through v inside D");
  // (ii) D = C ∪ ⋃ U_i on Hilbert elements and sampled points
  auto covered = [&](const IntVector& x) {
    return c.contains(x) || std::any_of(out.begin(), out.end(), [&](const Cone& u) { return u.contains(x); });
  };
  for (const auto& h : hilbert_basis(d))
    require(covered(h), ErrorKind::StepVerificationFailed, "Hilbert element of D not covered");
  for (const auto& x : detail::interior_samples(d, 48))
    require(covered(x), ErrorKind::StepVerificationFailed, "sample point of D not covered");
  // (iii) the sections around v are the pieces of a triangulation of C_0
  Triangulation sections{c0, {}};
  for (const auto& u : out) {
    std::vector<IntVector> g;
    for (const auto& x : u.generators())
      if (!(x == v)) g.push_back(project(x));
    sections.pieces.push_back(Cone::hull(g, c.ambient_dim()));
  }
  require(verify_triangulation(sections), ErrorKind::StepVerificationFailed, "sections do not triangulate");
  return out;
}

/// Membership in Cones^(h)(d).
inline bool height_class(const Cone& c, const Int& h) {
  if (c.is_zero()) return true;
  const std::size_t last = c.ambient_dim() - 1;
  for (const auto& g : c.generators())
    if (g[last] <= 0) return false;
  const auto& hb = hilbert_basis(c);
  return std::all_of(hb.begin(), hb.end(), [&](const IntVector& x) { return x[last] >= 0 && x[last] <= h; });
}

}  // namespace conepos
