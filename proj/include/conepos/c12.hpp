#pragma once

#include <algorithm>
#include <vector>

#include "conepos/experiments.hpp"

namespace conepos::c12 {

inline std::vector<IntVector> p_points() {
  return {{0, 0, 2}, {0, 0, 1}, {0, 1, 3}, {1, 0, 0}, {2, 1, 2}, {1, 2, 1}, {1, 1, 2}, {1, 1, 1}};
}

inline LatticePolytope polytope_p() { return LatticePolytope::hull(p_points()); }

/// conv(L(P) minus the listed points).
inline LatticePolytope without(const std::vector<IntVector>& removed) {
  std::vector<IntVector> pts = polytope_p().lattice_points;
  std::erase_if(pts, [&](const IntVector& x) { return std::find(removed.begin(), removed.end(), x) != removed.end(); });
  return LatticePolytope::hull(pts);
}

/// Q: the lattice points of P except the first two vertices.
inline LatticePolytope polytope_q() { return without({{0, 0, 2}, {0, 0, 1}}); }

struct Result {
  bool p_normal = false;
  bool q_normal = false;
  bool drop_first_nonnormal = false;
  bool drop_second_nonnormal = false;
  SearchReport shortest;  // top-down descents of minimal length
  SearchReport four;      // exactly four Hilbert-basis descents
  bool four_are_hilbert_descents = false;
};

inline Result run(std::size_t node_budget = 500, const Int& radius = 50) {
  Result r;
  const LatticePolytope p = polytope_p(), q = polytope_q();
  r.p_normal = is_normal(p);
  r.q_normal = is_normal(q);
  r.drop_first_nonnormal = !is_normal(without({{0, 0, 2}}));
  r.drop_second_nonnormal = !is_normal(without({{0, 0, 1}}));
  const Cone cp = homogenize(p), cq = homogenize(q);
  r.shortest = shortest_descent_chain(cq, cp, 8, node_budget);
  r.four = descent_chain_of_length(cq, cp, 4, node_budget, radius);
  const Chain& ch = r.four.chain;
  r.four_are_hilbert_descents = r.four.terminated && ch.length() == 4;
  for (std::size_t i = 0; i < ch.length() && r.four_are_hilbert_descents; ++i)
    r.four_are_hilbert_descents = ch.moves[i].direction == Direction::Down &&
                                  is_hilbert_descent(ch.cones[i], ch.cones[i + 1], ch.moves[i].witness);
  return r;
}

}  // namespace conepos::c12
