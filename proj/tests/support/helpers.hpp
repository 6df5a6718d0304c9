#pragma once

#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "conepos/cone.hpp"

namespace testing_support {

template <class F>
::testing::AssertionResult throws_kind(F&& f, conepos::ErrorKind kind) {
  try {
    f();
  } catch (const conepos::ConeError& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "threw " << e.what();
  }
  return ::testing::AssertionFailure() << "did not throw";
}

inline conepos::IntVector random_vector(std::mt19937_64& rng, std::size_t d, int bound) {
  conepos::IntVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = static_cast<int>(rng() % (2 * bound + 1)) - bound;
  return v;
}

/// Random pointed full-dimensional cone with n raw generators, or nothing if
/// the draw is not pointed or not full-dimensional.
inline std::optional<conepos::Cone> try_random_cone(std::mt19937_64& rng, std::size_t d, std::size_t n, int bound) {
  std::vector<conepos::IntVector> g;
  for (std::size_t i = 0; i < n; ++i) g.push_back(random_vector(rng, d, bound));
  try {
    conepos::Cone c = conepos::Cone::hull(g, d);
    if (!c.is_full_dim()) return std::nullopt;
    return c;
  } catch (const conepos::ConeError&) {
    return std::nullopt;
  }
}

inline conepos::Cone random_full_cone(std::mt19937_64& rng, std::size_t d, std::size_t n, int bound) {
  while (true)
    if (auto c = try_random_cone(rng, d, n, bound)) return *c;
}

}  // namespace testing_support
