#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "conepos/chain_builder.hpp"

namespace conepos {

enum class Procedure { BottomUp, TopDown };

constexpr std::string_view to_string(Procedure p) { return p == Procedure::BottomUp ? "BottomUp" : "TopDown"; }

struct SearchReport {
  Procedure procedure = Procedure::BottomUp;
  Cone lower;                       // C
  Cone upper;                       // C + R_+v, or D
  std::optional<IntVector> vector;  // v for bottom-up
  std::size_t steps_taken = 0;
  bool terminated = false;
  bool used_fallback = false;  // top-down only
  std::size_t nodes = 0;       // descents examined by the fallback
  std::string diagnostic;      // e.g. StuckNoDescent for the greedy rule
  Chain chain;
  std::uint64_t seed = 0;
};

/// Bottom-up height-1 procedure: repeatedly add a shortest point of the
/// first layer of (C_i, v) until v ∈ C_i.
inline SearchReport bottom_up(const Cone& c, const IntVector& v, std::size_t budget, const Int& radius = 50,
                              std::uint64_t seed = 0) {
  require(c.is_full_dim(), ErrorKind::NotFullDim, "bottom-up needs a full-dimensional cone");
  SearchReport rep;
  rep.procedure = Procedure::BottomUp;
  rep.lower = c;
  rep.upper = c + v;
  rep.vector = v;
  rep.seed = seed;
  rep.chain = Chain::at(c);
  while (!rep.chain.back().contains(v)) {
    if (rep.steps_taken == budget) return rep;
    const Cone& cur = rep.chain.back();
    IntVector w = height1_data(cur, v, radius).first_layer.front();
    detail::push_step(rep.chain, cur + w, {Direction::Up, w, MoveKind::Height1});
    ++rep.steps_taken;
  }
  rep.terminated = true;
  return rep;
}

namespace detail {

// Descents of d above floor, shortest discarded generator first.
enum class DiscardOrder { ShortestFirst, LongestFirst };

inline std::vector<Descent> ordered_descents(const Cone& d, const Cone& floor,
                                             DiscardOrder order = DiscardOrder::ShortestFirst) {
  auto ds = hilbert_descents(d, floor);
  std::sort(ds.begin(), ds.end(), [](const Descent& a, const Descent& b) { return ShorterThan{}(a.dropped, b.dropped); });
  if (order == DiscardOrder::LongestFirst) std::reverse(ds.begin(), ds.end());
  return ds;
}

inline void push_descent(Chain& chain, const Descent& ds) {
  push_step(chain, ds.cone, {Direction::Down, ds.dropped, MoveKind::HilbertDescent});
}

// Depth-limited search for a descent chain from chain.back() to floor; with
// `exact` the chain must use all `depth` steps.
inline bool descend_to(Chain& chain, const Cone& floor, std::size_t depth, std::size_t& nodes, std::size_t node_budget,
                       bool exact = false, DiscardOrder order = DiscardOrder::ShortestFirst) {
  if (chain.back() == floor) return !exact || depth == 0;
  if (depth == 0) return false;
  for (const auto& ds : ordered_descents(chain.back(), floor, order)) {
    if (++nodes > node_budget) return false;
    push_descent(chain, ds);
    if (descend_to(chain, floor, depth - 1, nodes, node_budget, exact, order)) return true;
    chain.cones.pop_back();
    chain.moves.pop_back();
  }
  return false;
}

}  // namespace detail

/// Shortest chain of Hilbert-basis descents from D to C, by iterative
/// deepening in shortest-generator-first order.
inline SearchReport shortest_descent_chain(const Cone& c, const Cone& d, std::size_t max_depth,
                                           std::size_t node_budget) {
  require(d.contains(c), ErrorKind::NotContained, "C is not contained in D");
  SearchReport rep;
  rep.procedure = Procedure::TopDown;
  rep.lower = c;
  rep.upper = d;
  rep.used_fallback = true;
  for (std::size_t depth = 0; depth <= max_depth && rep.nodes <= node_budget; ++depth) {
    Chain chain = Chain::at(d);
    if (detail::descend_to(chain, c, depth, rep.nodes, node_budget)) {
      rep.chain = std::move(chain);
      rep.steps_taken = rep.chain.length();
      rep.terminated = true;
      return rep;
    }
  }
  rep.chain = Chain::at(d);
  return rep;
}

/// A chain of exactly `length` Hilbert-basis descents from D to C. Descents
/// of the top-down form are searched first; if the shortest such chain is
/// shorter, its steps are split through strict intermediate cones: for a
/// descent D_i > D_{i+1} dropping v and D_{i+1} < E < D_i, both D_i > E
/// (dropping v) and E > D_{i+1} (dropping the new generator) are again
/// Hilbert-basis descents.
inline SearchReport descent_chain_of_length(const Cone& c, const Cone& d, std::size_t length,
                                            std::size_t node_budget, const Int& radius = 50) {
  require(d.contains(c), ErrorKind::NotContained, "C is not contained in D");
  SearchReport rep;
  rep.procedure = Procedure::TopDown;
  rep.lower = c;
  rep.upper = d;
  rep.used_fallback = true;
  Chain chain = Chain::at(d);
  if (detail::descend_to(chain, c, length, rep.nodes, node_budget, true)) {
    rep.chain = std::move(chain);
  } else {
    SearchReport sh = shortest_descent_chain(c, d, length, node_budget);
    rep.nodes += sh.nodes;
    rep.chain = Chain::at(d);
    if (!sh.terminated || sh.chain.length() == 0 || sh.chain.length() > length) return rep;
    chain = std::move(sh.chain);
    std::size_t refined = 0;
    while (chain.length() < length) {
      const std::size_t i = refined % chain.length();
      const Cone upper = chain.cones[i], lower = chain.cones[i + 1];
      const IntVector v = chain.moves[i].witness;
      Cone e = strict_intermediate(lower, upper, radius);
      IntVector w;
      for (const auto& g : e.generators())
        if (!lower.contains(g)) w = g;
      require(is_hilbert_descent(upper, e, v) && is_hilbert_descent(e, lower, w), ErrorKind::StepVerificationFailed,
              "refined step is not a Hilbert-basis descent");
      chain.cones.insert(chain.cones.begin() + static_cast<std::ptrdiff_t>(i) + 1, e);
      chain.moves[i] = {Direction::Down, v, MoveKind::HilbertDescent};
      chain.moves.insert(chain.moves.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         Move{Direction::Down, w, MoveKind::HilbertDescent});
      ++refined;
    }
    rep.diagnostic = "refined " + std::to_string(refined) + " of " + std::to_string(sh.steps_taken) + " steps";
    rep.chain = std::move(chain);
  }
  rep.chain.verified = verify_chain(rep.chain);
  rep.terminated = rep.chain.verified && rep.chain.back() == c;
  rep.steps_taken = rep.chain.length();
  return rep;
}

/// Top-down procedure: discard a shortest extremal generator outside C and
/// pass to C + R_+(Hilb(D_i) minus it). Falls back to a bounded search over
/// discard choices when the greedy rule is stuck or runs out of budget.
inline SearchReport top_down(const Cone& c, const Cone& d, std::size_t budget, std::uint64_t seed = 0) {
  require(d.contains(c), ErrorKind::NotContained, "C is not contained in D");
  SearchReport rep;
  rep.procedure = Procedure::TopDown;
  rep.lower = c;
  rep.upper = d;
  rep.seed = seed;
  rep.chain = Chain::at(d);
  while (!(rep.chain.back() == c)) {
    if (rep.steps_taken == budget) break;
    auto ds = detail::ordered_descents(rep.chain.back(), c);
    if (ds.empty()) {
      rep.diagnostic = std::string(to_string(ErrorKind::StuckNoDescent));
      break;
    }
    detail::push_descent(rep.chain, ds.front());
    ++rep.steps_taken;
  }
  if (rep.chain.back() == c) {
    rep.terminated = true;
    return rep;
  }
  // Fallback: depth-first backtracking over the discarded generator, each
  // branch capped at `budget` steps. Shortest-first drifts towards ever
  // longer Hilbert elements on some instances, so the branches are tried
  // longest-first.
  SearchReport fb = rep;
  fb.used_fallback = true;
  Chain chain = Chain::at(d);
  if (detail::descend_to(chain, c, budget, fb.nodes, budget, false, detail::DiscardOrder::LongestFirst)) {
    fb.chain = std::move(chain);
    fb.steps_taken = fb.chain.length();
    fb.terminated = true;
  }
  // otherwise the greedy prefix stays as the partial record
  return fb;
}

// ---------------------------------------------------------------------------
// Random instances

namespace detail {

inline IntVector random_vector(std::mt19937_64& rng, std::size_t d, std::int64_t bound) {
  const auto range = static_cast<std::uint64_t>(2 * bound + 1);
  IntVector x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = Int(static_cast<std::int64_t>(rng() % range) - bound);
  return x;
}

}  // namespace detail

inline constexpr std::size_t kRandomRetries = 1000;

/// Pointed full-dimensional cone generated by n vectors drawn uniformly from
/// [-bound, bound]^d; deterministic in seed.
inline Cone random_cone(std::size_t d, std::size_t n, std::int64_t bound, std::uint64_t seed) {
  require(d > 0 && n > 0 && bound > 0, ErrorKind::PreconditionViolated, "parameters must be positive");
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < kRandomRetries; ++attempt) {
    std::vector<IntVector> g;
    for (std::size_t i = 0; i < n; ++i) g.push_back(detail::random_vector(rng, d, bound));
    try {
      Cone c = Cone::hull(g, d);
      if (c.is_full_dim()) return c;
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::NotPointed) throw;
    }
  }
  throw ConeError(ErrorKind::RetriesExhausted, "no pointed full-dimensional cone found");
}

/// A bottom-up instance (C, v): C from random_cone, v primitive with ±v ∉ C
/// and C + R_+v pointed.
inline std::pair<Cone, IntVector> random_instance(std::size_t d, std::size_t n, std::int64_t bound, std::uint64_t seed) {
  Cone c = random_cone(d, n, bound, seed);
  std::mt19937_64 rng(seed ^ 0x5DEECE66Dull);
  for (std::size_t attempt = 0; attempt < kRandomRetries; ++attempt) {
    IntVector v = detail::random_vector(rng, d, bound);
    if (v.is_zero()) continue;
    v = primitive_part(v);
    if (c.contains(v) || c.contains(IntVector(-v))) continue;
    try {
      (void)(c + v);
      return {c, v};
    } catch (const ConeError& e) {
      if (e.kind() != ErrorKind::NotPointed) throw;
    }
  }
  throw ConeError(ErrorKind::RetriesExhausted, "no admissible vector found");
}

}  // namespace conepos
