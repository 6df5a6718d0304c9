#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "conepos/poset_moves.hpp"

namespace conepos {

enum class Direction { Up, Down };
enum class MoveKind { Height1, HilbertDescent, UnimodularExt, Generic };

constexpr std::string_view to_string(Direction d) { return d == Direction::Up ? "Up" : "Down"; }

constexpr std::string_view to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Height1: return "Height1";
    case MoveKind::HilbertDescent: return "HilbertDescent";
    case MoveKind::UnimodularExt: return "UnimodularExt";
    case MoveKind::Generic: return "Generic";
  }
  return "?";
}

/// One elementary step. Up: cones[i] < cones[i+1] with L(cones[i+1]) =
/// L(cones[i]) + Z_+ witness. Down: the same relation read backwards.
struct Move {
  Direction direction = Direction::Up;
  IntVector witness;
  MoveKind kind = MoveKind::Generic;
};

struct Chain {
  std::vector<Cone> cones;
  std::vector<Move> moves;
  bool verified = false;

  static Chain at(const Cone& c) { return Chain{{c}, {}, true}; }

  std::size_t length() const noexcept { return moves.size(); }
  const Cone& front() const { return cones.front(); }
  const Cone& back() const { return cones.back(); }
};

struct StepReport {
  std::size_t index = 0;
  bool ok = false;
  std::vector<FailedCandidate> refutation;  // filled when the step fails
};

struct ChainReport {
  bool ok = true;
  std::vector<StepReport> steps;
};

inline ChainReport verify_chain_report(const Chain& chain) {
  require(!chain.cones.empty(), ErrorKind::PreconditionViolated, "empty chain");
  ChainReport rep;
  if (chain.moves.size() + 1 != chain.cones.size()) {
    rep.ok = false;
    return rep;
  }
  for (std::size_t i = 0; i < chain.moves.size(); ++i) {
    const Move& m = chain.moves[i];
    const Cone& lower = m.direction == Direction::Up ? chain.cones[i] : chain.cones[i + 1];
    const Cone& upper = m.direction == Direction::Up ? chain.cones[i + 1] : chain.cones[i];
    StepReport s{i, accepts_witness(lower, upper, m.witness), {}};
    if (!s.ok) {
      rep.ok = false;
      if (lower.ambient_dim() == upper.ambient_dim() && upper.contains(lower))
        s.refutation = check_elementary(lower, upper).failed_candidates;
    }
    rep.steps.push_back(std::move(s));
  }
  return rep;
}

inline bool verify_chain(const Chain& chain) { return verify_chain_report(chain).ok; }

/// Chain read backwards; every extension becomes a descent and vice versa.
inline Chain reversed(const Chain& c) {
  Chain out{{c.cones.rbegin(), c.cones.rend()}, {c.moves.rbegin(), c.moves.rend()}, c.verified};
  for (auto& m : out.moves) m.direction = m.direction == Direction::Up ? Direction::Down : Direction::Up;
  return out;
}

inline Chain& operator+=(Chain& a, const Chain& b) {
  require(a.back() == b.front(), ErrorKind::PreconditionViolated, "chains do not meet");
  a.cones.insert(a.cones.end(), b.cones.begin() + 1, b.cones.end());
  a.moves.insert(a.moves.end(), b.moves.begin(), b.moves.end());
  a.verified = a.verified && b.verified;
  return a;
}

namespace detail {

// Appends a step after checking it.
inline void push_step(Chain& chain, Cone next, Move m) {
  const Cone& prev = chain.back();
  const Cone& lower = m.direction == Direction::Up ? prev : next;
  const Cone& upper = m.direction == Direction::Up ? next : prev;
  require(accepts_witness(lower, upper, m.witness), ErrorKind::StepVerificationFailed,
          "step " + std::to_string(chain.moves.size()) + " is not an elementary move");
  chain.cones.push_back(std::move(next));
  chain.moves.push_back(std::move(m));
}

// Maps every cone of an upward chain through B -> hull(base ∪ B), dropping
// steps that collapse, and re-verifies the result.
inline Chain lift_union(const Chain& sub, const Cone& base) {
  Chain out = Chain::at(hull_of_union(base, sub.front()));
  for (std::size_t i = 0; i < sub.moves.size(); ++i) {
    Cone next = hull_of_union(base, sub.cones[i + 1]);
    if (next == out.back()) continue;
    push_step(out, std::move(next), sub.moves[i]);
  }
  return out;
}

inline Int det2(const LatticeFrame& f, const IntVector& x, const IntVector& y) {
  IntVector a = f.to_coords(x), b = f.to_coords(y);
  return a[0] * b[1] - a[1] * b[0];
}

// Hilbert basis of cone(from, to) ordered by angle from `from` towards `to`.
inline std::vector<IntVector> hilbert_arc(const LatticeFrame& f, const IntVector& from, const IntVector& to) {
  Cone arc = Cone::hull({from, to});
  std::vector<IntVector> hb = hilbert_basis(arc);
  Int orient = det2(f, from, to);
  std::sort(hb.begin(), hb.end(), [&](const IntVector& x, const IntVector& y) {
    Int s = det2(f, x, y);
    return orient >= 0 ? s > 0 : s < 0;
  });
  return hb;
}

}  // namespace detail

/// Chain of height-1 extensions from C up to D when span(D) has dimension at
/// most 2: new generators are Hilbert elements of D taken in circular order.
inline Chain chain_2d(const Cone& c, const Cone& d) {
  require(c.ambient_dim() == d.ambient_dim(), ErrorKind::DimensionMismatch, "cones live in different spaces");
  require(d.dim() <= 2, ErrorKind::PreconditionViolated, "chain_2d needs dim D <= 2");
  require(d.contains(c), ErrorKind::NotContained, "C is not contained in D");
  Chain chain = Chain::at(c);
  if (c == d) return chain;
  if (c.is_zero()) {
    const IntVector& a = d.generators().front();
    detail::push_step(chain, Cone::hull({a}), {Direction::Up, a, MoveKind::Height1});
  }
  if (d.dim() == 1) return chain;

  const LatticeFrame& f = d.frame();
  IntVector a = d.generators()[0], b = d.generators()[1];
  if (detail::det2(f, a, b) < 0) std::swap(a, b);
  const Cone& start = chain.back();
  IntVector c1 = start.generators().front(), c2 = start.generators().back();
  if (detail::det2(f, c1, c2) < 0) std::swap(c1, c2);

  // a, c1, c2, b in counterclockwise order; first sweep from c2 to b
  for (const auto& h : detail::hilbert_arc(f, c2, b)) {
    if (chain.back().contains(h)) continue;
    detail::push_step(chain, Cone::hull({c1, h}), {Direction::Up, h, MoveKind::Height1});
  }
  for (const auto& h : detail::hilbert_arc(f, c1, a)) {
    if (chain.back().contains(h)) continue;
    detail::push_step(chain, Cone::hull({h, b}), {Direction::Up, h, MoveKind::Height1});
  }
  return chain;
}

namespace detail {

// Simplicial 3-cone t with facet f: a chain f < ... < t by induction on mu(t).
inline Chain basic_chain(const Cone& f, const Cone& t) {
  IntVector u;
  for (const auto& g : t.generators())
    if (!f.has_generator(g)) u = g;
  Chain chain = Chain::at(f);
  const Int mu_t = mu(t);
  if (mu_t == mu(f)) {
    push_step(chain, t, {Direction::Up, u, MoveKind::UnimodularExt});
    return chain;
  }
  std::vector<IntVector> g = f.generators();
  for (auto& p : lpar(t.generators()).points) g.push_back(std::move(p));
  Cone e = Cone::hull(g, t.ambient_dim());

  // cyclic order of E starting v0, v1 = the generators of f
  std::vector<IntVector> cyc = cyclic_order(e);
  const IntVector &fa = f.generators()[0], &fb = f.generators()[1];
  const std::size_t n = cyc.size();
  std::size_t i0 = 0;
  while (!(cyc[i0] == fa)) ++i0;
  const bool forward = cyc[(i0 + 1) % n] == fb;
  std::vector<IntVector> v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(cyc[forward ? (i0 + k) % n : (i0 + n - k) % n]);

  Cone covered = f;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    Cone di = Cone::hull({v[0], v[i], v[i + 1]});
    require(mu(di) < mu_t, ErrorKind::MuNotDecreasing, "mu did not decrease in the basic case");
    Chain sub = basic_chain(Cone::hull({v[0], v[i]}), di);
    chain += lift_union(sub, covered);
    covered = chain.back();
  }
  // E < t: every Hilbert element of t other than u lies in E
  if (!(chain.back() == t)) push_step(chain, t, {Direction::Up, u, MoveKind::HilbertDescent});
  return chain;
}

// Chain from C' up to C' + R_+v for cones in R^3.
inline Chain chain_extend(const Cone& c, const IntVector& v) {
  if (c.contains(v)) return Chain::at(c);
  Cone target = c + v;
  if (target.dim() <= 2) return chain_2d(c, target);
  if (c.dim() == 2) return basic_chain(c, target);
  auto vis = visible_facets(c, v);
  const std::size_t k = vis.facets.size();
  if (k == 1) {
    Cone f = Cone::hull(vis.facets[0].generators, c.ambient_dim());
    return lift_union(basic_chain(f, f + v), c);
  }
  // visible facets form an arc F_1..F_k between rays p_0 and p_k
  std::vector<IntVector> cyc = cyclic_order(c);
  const std::size_t n = cyc.size();
  auto visible = [&](std::size_t i) { return facet_through(c, cyc[i % n], cyc[(i + 1) % n]).at(v) < 0; };
  std::size_t s = 0;
  while (!(visible(s) && !visible(s + n - 1))) ++s;
  std::size_t e = s;
  while (visible(e + 1)) ++e;
  const IntVector& p0 = cyc[s];
  const FacetData& fk = facet_through(c, cyc[e % n], cyc[(e + 1) % n]);
  // w lies on the hyperplane of F_k inside cone(p_0, v)
  IntVector w = primitive_part(IntVector(-fk.at(v) * p0 + fk.at(p0) * v));
  require(visible_facets(c, w).facets.size() < k, ErrorKind::StepVerificationFailed, "visible facet count did not drop");
  Chain chain = chain_extend(c, w);
  Cone mid = chain.back();
  require(visible_facets(mid, v).facets.size() < k, ErrorKind::StepVerificationFailed, "visible facet count did not drop");
  chain += chain_extend(mid, v);
  return chain;
}

}  // namespace detail

/// Chain C < ... < D for cones in R^3 (or any cones with dim D <= 2).
inline Chain chain_dim3(const Cone& c, const Cone& d) {
  require(c.ambient_dim() == d.ambient_dim(), ErrorKind::DimensionMismatch, "cones live in different spaces");
  require(d.contains(c), ErrorKind::NotContained, "C is not contained in D");
  if (d.dim() <= 2) return chain_2d(c, d);
  require(d.ambient_dim() == 3, ErrorKind::PreconditionViolated, "chain_dim3 needs cones in R^3");
  Chain chain = Chain::at(c);
  if (c.is_zero()) {
    const IntVector& a = d.generators().front();
    detail::push_step(chain, Cone::hull({a}), {Direction::Up, a, MoveKind::Height1});
  }
  for (const auto& v : d.generators()) {
    if (chain.back().contains(v)) continue;
    chain += detail::chain_extend(chain.back(), v);
  }
  chain.verified = true;
  return chain;
}

// ---------------------------------------------------------------------------
// Paths between unimodular cones

/// Path between unimodular full-dimensional cones through unimodular cones,
/// from a factorization of A^-1 B into elementary matrices.
inline Chain factor_unimodular_path(const Cone& c, const Cone& d) {
  require(c.ambient_dim() == d.ambient_dim(), ErrorKind::DimensionMismatch, "cones live in different spaces");
  require(c.is_full_dim() && d.is_full_dim(), ErrorKind::NotFullDim, "cones must be full-dimensional");
  require(is_unimodular(c) && is_unimodular(d), ErrorKind::NotUnimodular, "cones must be unimodular");
  Chain chain = Chain::at(c);
  if (c == d) return chain;
  const std::size_t n = c.ambient_dim();
  require(n >= 2, ErrorKind::PreconditionViolated, "distinct unimodular rays are not connected in dimension 1");

  auto oriented = [](const Cone& k) {
    IntMatrix m = IntMatrix::from_columns(k.generators());
    if (det(m) < 0) m.swap_columns(0, 1);
    return m;
  };
  IntMatrix a = oriented(c), b = oriented(d);
  RationalMatrix q = *inverse(to_rational(a)) * to_rational(b);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = numerator(q(i, j));

  struct Op {
    std::size_t src, dst;
    Int a;  // column dst += a * column src
  };
  std::vector<Op> ops;
  auto apply = [&](std::size_t src, std::size_t dst, const Int& s) {
    if (s == 0) return;
    m.add_column(dst, src, s);
    ops.push_back({src, dst, s});
  };
  for (std::size_t r = 0; r < n; ++r) {
    // Euclid along row r over columns r..n-1, smallest entry first
    while (true) {
      auto p = detail::smallest_nonzero(r, n, [&](std::size_t j) -> const Int& { return m(r, j); });
      bool single = true;
      for (std::size_t j = r; j < n; ++j)
        if (j != *p && m(r, j) != 0) {
          single = false;
          apply(*p, j, -floor_div(m(r, j), m(r, *p)));
        }
      if (single) {
        if (*p != r) {
          apply(*p, r, 1);
          apply(r, *p, -1);
        }
        break;
      }
    }
    if (m(r, r) == -1 && r + 1 < n) {
      // (c_r, c_{r+1}) -> (-c_r, -c_{r+1}) by two quarter turns
      for (int t = 0; t < 2; ++t) {
        apply(r + 1, r, 1);
        apply(r, r + 1, -1);
        apply(r + 1, r, 1);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i < n; ++i) apply(i, j, -m(i, j));
  require(m == IntMatrix::identity(n), ErrorKind::StepVerificationFailed, "elimination did not reach the identity");

  // B = A * E_k^-1 * ... * E_1^-1
  IntMatrix cur = a;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    Int s = -it->a;
    IntVector old_col = cur.column(it->dst);
    cur.add_column(it->dst, it->src, s);
    Cone next = Cone::hull(cur.columns(), n);
    if (s > 0) detail::push_step(chain, std::move(next), {Direction::Down, old_col, MoveKind::UnimodularExt});
    else detail::push_step(chain, std::move(next), {Direction::Up, cur.column(it->dst), MoveKind::UnimodularExt});
  }
  require(chain.back() == d, ErrorKind::StepVerificationFailed, "factorization did not end at D");
  chain.verified = true;
  return chain;
}

namespace detail {

// Chain from a cone to a unimodular cone of the same span.
inline Chain reduce_in_span(const Cone& c) {
  Chain chain = Chain::at(c);
  if (c.dim() <= 1 || is_unimodular(c)) return chain;
  const FacetData& f = *std::min_element(c.facets().begin(), c.facets().end(),
                                         [](const FacetData& x, const FacetData& y) { return x.height < y.height; });
  Cone fc = Cone::hull(f.generators, c.ambient_dim());
  IntVector x(c.ambient_dim());
  for (const auto& g : f.generators) x += g;

  // w with ht_F(w) = 1 on the span lattice, then y = w + t x inside C
  IntMatrix row(1, c.dim());
  for (std::size_t j = 0; j < c.dim(); ++j) row(0, j) = f.height_in_span[j];
  IntVector w = c.frame().from_coords(hnf(row).u.column(0));
  Int t = 0;
  bool first = true;
  for (const auto& g : c.facets()) {
    if (&g == &f) continue;
    Int need = ceil_div(-g.at(w), g.at(x));
    if (first || need > t) t = need;
    first = false;
  }
  IntVector y = w + t * x;

  Int k = 0;
  auto apex = [&] { return IntVector(y - k * x); };
  auto covers = [&] {
    Cone ck = fc + apex();
    return std::all_of(c.generators().begin(), c.generators().end(), [&](const IntVector& g) { return ck.contains(g); });
  };
  while (!covers()) ++k;
  IntVector a = apex();
  Cone ck = fc + a;
  if (!(ck == c)) push_step(chain, ck, {Direction::Up, a, MoveKind::Generic});

  // unimodular moves below F lift along the apex ray
  Chain sub = reduce_in_span(fc);
  for (std::size_t i = 0; i < sub.moves.size(); ++i) push_step(chain, sub.cones[i + 1] + a, sub.moves[i]);
  return chain;
}

}  // namespace detail

/// Chain from C to a unimodular full-dimensional cone: first complete the
/// span by unimodular extensions, then at most d - 1 moves inside it.
inline Chain connect_to_unimodular(const Cone& c) {
  require(!c.is_zero(), ErrorKind::ZeroCone, "the zero cone has no unimodular neighbour");
  Chain chain = Chain::at(c);
  if (c.is_full_dim() && is_unimodular(c)) {
    chain.verified = true;
    return chain;
  }
  const std::size_t d = c.ambient_dim(), r = c.dim();
  if (r < d) {
    SnfResult sn = snf(IntMatrix::from_columns(c.generators(), d));
    for (std::size_t j = r; j < d; ++j) {
      IntVector u = sn.u_inv.column(j);
      detail::push_step(chain, chain.back() + u, {Direction::Up, u, MoveKind::UnimodularExt});
    }
  }
  chain += detail::reduce_in_span(chain.back());
  chain.verified = true;
  return chain;
}

enum class ConnectMode { ViaZero, FullDim };

namespace detail {

// Unimodular U down to 0, dropping the largest generator first.
inline Chain strip_to_zero(const Cone& u) {
  Chain chain = Chain::at(u);
  std::vector<IntVector> g = u.generators();
  while (!g.empty()) {
    IntVector top = g.back();
    g.pop_back();
    push_step(chain, Cone::hull(g, u.ambient_dim()), {Direction::Down, top, MoveKind::UnimodularExt});
  }
  return chain;
}

}  // namespace detail

/// A path of elementary moves between any two cones of the same space.
inline Chain connect(const Cone& c, const Cone& d, ConnectMode mode) {
  require(c.ambient_dim() == d.ambient_dim(), ErrorKind::DimensionMismatch, "cones live in different spaces");
  Chain chain = Chain::at(c);
  if (c == d) {
    chain.verified = true;
    return chain;
  }
  if (mode == ConnectMode::FullDim) {
    require(c.is_full_dim() && d.is_full_dim(), ErrorKind::NotFullDim, "full-dim mode needs full-dimensional cones");
    chain = connect_to_unimodular(c);
    Chain tail = reversed(connect_to_unimodular(d));
    chain += factor_unimodular_path(chain.back(), tail.front());
    chain += tail;
  } else {
    if (!c.is_zero()) {
      chain = connect_to_unimodular(c);
      chain += detail::strip_to_zero(chain.back());
    }
    if (!d.is_zero()) {
      Chain up = connect_to_unimodular(d);
      chain += reversed(detail::strip_to_zero(up.back()));
      chain += reversed(up);
    }
  }
  chain.verified = verify_chain(chain);
  return chain;
}

}  // namespace conepos
