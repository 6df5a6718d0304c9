#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "conepos/errors.hpp"

// Exact integer / rational linear algebra. Integers are arbitrary precision,
// so nothing in here can overflow; there is no floating point anywhere.

namespace conepos {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

/// Quotient rounded toward negative infinity; b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }
inline Int floor(const Rational& r) { return floor_div(numerator(r), denominator(r)); }
inline Int ceil(const Rational& r) { return ceil_div(numerator(r), denominator(r)); }
inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// ---------------------------------------------------------------------------
// Vectors

template <class T>
class BasicVector {
 public:
  using value_type = T;

  BasicVector() = default;
  explicit BasicVector(std::size_t n) : e_(n) {}
  BasicVector(std::initializer_list<T> xs) : e_(xs) {}
  explicit BasicVector(std::vector<T> xs) : e_(std::move(xs)) {}

  template <class U>
    requires(!std::is_same_v<U, T>)
  explicit BasicVector(const BasicVector<U>& o) : e_(o.begin(), o.end()) {}

  std::size_t size() const noexcept { return e_.size(); }
  bool empty() const noexcept { return e_.empty(); }
  T& operator[](std::size_t i) { return e_[i]; }
  const T& operator[](std::size_t i) const { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  auto begin() { return e_.begin(); }
  auto end() { return e_.end(); }
  const std::vector<T>& entries() const noexcept { return e_; }

  bool is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const T& x) { return x == 0; });
  }

  static BasicVector unit(std::size_t n, std::size_t i) {
    BasicVector v(n);
    v[i] = 1;
    return v;
  }

  BasicVector& operator+=(const BasicVector& o) {
    for (std::size_t i = 0; i < size(); ++i) e_[i] += o[i];
    return *this;
  }
  BasicVector& operator-=(const BasicVector& o) {
    for (std::size_t i = 0; i < size(); ++i) e_[i] -= o[i];
    return *this;
  }
  BasicVector& operator*=(const T& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend BasicVector operator+(BasicVector a, const BasicVector& b) { return a += b; }
  friend BasicVector operator-(BasicVector a, const BasicVector& b) { return a -= b; }
  friend BasicVector operator*(const T& s, BasicVector a) { return a *= s; }
  friend BasicVector operator-(BasicVector a) {
    for (auto& x : a.e_) x = -x;
    return a;
  }
  friend bool operator==(const BasicVector& a, const BasicVector& b) { return a.e_ == b.e_; }
  friend bool operator<(const BasicVector& a, const BasicVector& b) {
    return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicVector& v) {
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os << ')';
  }

 private:
  std::vector<T> e_;
};

using IntVector = BasicVector<Int>;
using RationalVector = BasicVector<Rational>;

template <class T>
T dot(const BasicVector<T>& a, const BasicVector<T>& b) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const IntVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

inline Int norm2(const IntVector& v) { return dot(v, v); }

inline Int content(const IntVector& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline IntVector primitive_part(const IntVector& v) {
  Int g = content(v);
  if (g == 0) return v;
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

inline RationalVector to_rational(const IntVector& v) { return RationalVector(v); }

/// Clears denominators and returns the primitive integer vector on the same ray.
inline IntVector primitive_part(const RationalVector& v) {
  Int l = 1;
  for (const auto& x : v) {
    Int d = denominator(x);
    l = l / gcd(l, d) * d;
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = numerator(v[i] * Rational(l));
  return primitive_part(out);
}

/// Shortest first (squared Euclidean norm), lexicographic on ties.
struct ShorterThan {
  bool operator()(const IntVector& a, const IntVector& b) const {
    Int na = norm2(a), nb = norm2(b);
    if (na != nb) return na < nb;
    return a < b;
  }
};

// ---------------------------------------------------------------------------
// Matrices (row-major storage, column notation [u_1|...|u_n] for constructors)

template <class T>
class BasicMatrix {
 public:
  BasicMatrix() = default;
  BasicMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static BasicMatrix identity(std::size_t n) {
    BasicMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static BasicMatrix from_columns(std::span<const BasicVector<T>> cols, std::size_t rows) {
    BasicMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static BasicMatrix from_columns(const std::vector<BasicVector<T>>& cols) {
    return from_columns(std::span<const BasicVector<T>>(cols), cols.empty() ? 0 : cols[0].size());
  }
  static BasicMatrix from_rows(const std::vector<BasicVector<T>>& rows) {
    BasicMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  BasicVector<T> column(std::size_t j) const {
    BasicVector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  BasicVector<T> row(std::size_t i) const {
    BasicVector<T> v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }
  std::vector<BasicVector<T>> columns() const {
    std::vector<BasicVector<T>> out;
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  BasicMatrix transpose() const {
    BasicMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  // column dst += s * column src
  void add_column(std::size_t dst, std::size_t src, const T& s) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += s * (*this)(i, src);
  }
  void add_row(std::size_t dst, std::size_t src, const T& s) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += s * (*this)(src, j);
  }
  void negate_column(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    BasicMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend BasicVector<T> operator*(const BasicMatrix& a, const BasicVector<T>& x) {
    BasicVector<T> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }
  friend bool operator==(const BasicMatrix& a, const BasicMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  friend std::ostream& operator<<(std::ostream& os, const BasicMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? "; " : "");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = BasicMatrix<Int>;
using RationalMatrix = BasicMatrix<Rational>;

inline RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

inline RationalVector operator*(const IntMatrix& a, const RationalVector& x) {
  RationalVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += Rational(a(i, j)) * x[j];
  return y;
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
inline Int det(IntMatrix m) {
  const std::size_t n = m.rows();
  require(n == m.cols(), ErrorKind::DimensionMismatch, "det of a non-square matrix");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

inline Rational det(RationalMatrix m) {
  const std::size_t n = m.rows();
  require(n == m.cols(), ErrorKind::DimensionMismatch, "det of a non-square matrix");
  Rational d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(k, p);
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(const IntMatrix& m) {
  RationalMatrix r = to_rational(m);
  return rref(r).size();
}

inline std::size_t rank(std::span<const IntVector> vs, std::size_t ambient) {
  if (vs.empty()) return 0;
  return rank(IntMatrix::from_columns(vs, ambient));
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv.back() >= n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// ---------------------------------------------------------------------------
// Normal forms

struct HnfResult {
  IntMatrix h;  // M * u == h
  IntMatrix u;  // unimodular
  std::vector<std::size_t> pivot_rows;  // pivot_rows[c] = row of the pivot in column c
};

namespace detail {

// Index of the smallest-|.| nonzero entry among idx, earliest on ties.
template <class Get>
std::optional<std::size_t> smallest_nonzero(std::size_t lo, std::size_t hi, Get get) {
  std::optional<std::size_t> best;
  Int best_abs;
  for (std::size_t j = lo; j < hi; ++j) {
    const Int& x = get(j);
    if (x == 0) continue;
    Int ax = abs(x);
    if (!best || ax < best_abs) {
      best = j;
      best_abs = ax;
    }
  }
  return best;
}

}  // namespace detail

/// Column-style Hermite normal form: lower echelon, positive pivots, entries
/// of a pivot row left of the pivot reduced into [0, pivot).
inline HnfResult hnf(const IntMatrix& m) {
  require(m.cols() > 0, ErrorKind::PreconditionViolated, "hnf needs at least one column");
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.cols());
  std::vector<std::size_t> pivot_rows;
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows() && c < h.cols(); ++i) {
    while (true) {
      auto p = detail::smallest_nonzero(c, h.cols(), [&](std::size_t j) -> const Int& { return h(i, j); });
      if (!p) break;
      bool others = false;
      for (std::size_t j = c; j < h.cols(); ++j) {
        if (j == *p || h(i, j) == 0) continue;
        Int q = floor_div(h(i, j), h(i, *p));
        h.add_column(j, *p, -q);
        u.add_column(j, *p, -q);
        if (h(i, j) != 0) others = true;
      }
      if (others) continue;
      h.swap_columns(*p, c);
      u.swap_columns(*p, c);
      if (h(i, c) < 0) {
        h.negate_column(c);
        u.negate_column(c);
      }
      for (std::size_t j = 0; j < c; ++j) {
        Int q = floor_div(h(i, j), h(i, c));
        if (q == 0) continue;
        h.add_column(j, c, -q);
        u.add_column(j, c, -q);
      }
      pivot_rows.push_back(i);
      ++c;
      break;
    }
  }
  return {std::move(h), std::move(u), std::move(pivot_rows)};
}

struct SnfResult {
  IntMatrix s;      // u * M * v == s
  IntMatrix u;
  IntMatrix u_inv;  // inverse of u, tracked alongside
  IntMatrix v;
  std::vector<Int> invariant_factors;  // nonzero diagonal entries, s_1 | s_2 | ...
};

/// Smith normal form with the divisibility chain on the diagonal.
inline SnfResult snf(const IntMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  IntMatrix s = m, u = IntMatrix::identity(R), ui = IntMatrix::identity(R), v = IntMatrix::identity(C);

  auto row_add = [&](std::size_t dst, std::size_t src, const Int& q) {
    s.add_row(dst, src, q);
    u.add_row(dst, src, q);
    ui.add_column(src, dst, -q);
  };
  auto row_swap = [&](std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
    ui.swap_columns(a, b);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& q) {
    s.add_column(dst, src, q);
    v.add_column(dst, src, q);
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    s.swap_columns(a, b);
    v.swap_columns(a, b);
  };

  std::vector<Int> factors;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // global smallest pivot in the remaining block
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (s(i, j) != 0 && (!best || abs(s(i, j)) < best_abs)) {
          best = {i, j};
          best_abs = abs(s(i, j));
        }
    if (!best) break;
    row_swap(t, best->first);
    col_swap(t, best->second);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (s(i, t) == 0) continue;
        row_add(i, t, -floor_div(s(i, t), s(t, t)));
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (s(t, j) == 0) continue;
        col_add(j, t, -floor_div(s(t, j), s(t, t)));
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) {
        auto pr = detail::smallest_nonzero(t, R, [&](std::size_t i) -> const Int& { return s(i, t); });
        auto pc = detail::smallest_nonzero(t, C, [&](std::size_t j) -> const Int& { return s(t, j); });
        if (pc && abs(s(t, *pc)) < abs(s(*pr, t)))
          col_swap(t, *pc);
        else
          row_swap(t, *pr);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < R && !fixed; ++i)
        for (std::size_t j = t + 1; j < C && !fixed; ++j)
          if (s(i, j) % s(t, t) != 0) {
            row_add(t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
      ui.negate_column(t);
    }
    factors.push_back(s(t, t));
  }
  return {std::move(s), std::move(u), std::move(ui), std::move(v), std::move(factors)};
}

// ---------------------------------------------------------------------------
// Linear systems

struct LinearSolution {
  RationalVector x;                      // a particular rational solution
  bool integral = false;                 // an all-integer solution exists
  std::optional<IntVector> integer_x;    // one such solution, when it exists
};

inline std::optional<LinearSolution> solve_linear(const IntMatrix& m, const IntVector& b) {
  require(b.size() == m.rows(), ErrorKind::DimensionMismatch, "solve_linear: rhs size");
  const std::size_t R = m.rows(), C = m.cols();
  RationalMatrix aug(R, C + 1);
  for (std::size_t i = 0; i < R; ++i) {
    for (std::size_t j = 0; j < C; ++j) aug(i, j) = m(i, j);
    aug(i, C) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == C) return std::nullopt;
  LinearSolution sol;
  sol.x = RationalVector(C);
  for (std::size_t r = 0; r < piv.size(); ++r) sol.x[piv[r]] = aug(r, C);
  if (C == 0) {
    sol.integral = true;
    sol.integer_x = IntVector(0);
    return sol;
  }

  // M U = H (column echelon); solve H y = b by forward substitution.
  auto [h, u, pivot_rows] = hnf(m);
  IntVector y(C);
  bool ok = true;
  for (std::size_t c = 0; c < pivot_rows.size() && ok; ++c) {
    std::size_t i = pivot_rows[c];
    Int rest = b[i];
    for (std::size_t j = 0; j < c; ++j) rest -= h(i, j) * y[j];
    if (rest % h(i, c) != 0) ok = false;
    else y[c] = rest / h(i, c);
  }
  if (ok && h * y == b) {
    sol.integral = true;
    sol.integer_x = u * y;
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Lattice frame of a linear span: a basis of span(X) ∩ Z^d together with the
// integer coordinate map and the equations cutting out the span.

class LatticeFrame {
 public:
  LatticeFrame() = default;

  static LatticeFrame of(std::span<const IntVector> vs, std::size_t ambient) {
    LatticeFrame f;
    f.ambient_ = ambient;
    if (vs.empty()) {
      f.rank_ = 0;
      f.basis_ = IntMatrix(ambient, 0);
      f.coords_ = IntMatrix(0, ambient);
      f.normals_ = IntMatrix::identity(ambient);
      return f;
    }
    IntMatrix m = IntMatrix::from_columns(vs, ambient);
    SnfResult sn = snf(m);
    f.rank_ = sn.invariant_factors.size();
    if (f.rank_ == ambient) {
      f.basis_ = f.coords_ = IntMatrix::identity(ambient);
      f.normals_ = IntMatrix(0, ambient);
      return f;
    }
    f.basis_ = IntMatrix(ambient, f.rank_);
    f.coords_ = IntMatrix(f.rank_, ambient);
    f.normals_ = IntMatrix(ambient - f.rank_, ambient);
    for (std::size_t i = 0; i < ambient; ++i)
      for (std::size_t j = 0; j < f.rank_; ++j) f.basis_(i, j) = sn.u_inv(i, j);
    for (std::size_t i = 0; i < ambient; ++i)
      for (std::size_t j = 0; j < ambient; ++j) {
        if (i < f.rank_) f.coords_(i, j) = sn.u(i, j);
        else f.normals_(i - f.rank_, j) = sn.u(i, j);
      }
    return f;
  }

  static LatticeFrame full(std::size_t ambient) {
    LatticeFrame f;
    f.ambient_ = f.rank_ = ambient;
    f.basis_ = f.coords_ = IntMatrix::identity(ambient);
    f.normals_ = IntMatrix(0, ambient);
    return f;
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return rank_; }
  bool is_full() const noexcept { return rank_ == ambient_; }
  const IntMatrix& basis() const noexcept { return basis_; }
  const IntMatrix& coords_map() const noexcept { return coords_; }
  const IntMatrix& normals() const noexcept { return normals_; }

  bool in_span(const IntVector& x) const { return (normals_ * x).is_zero(); }
  bool in_span(const RationalVector& x) const { return (normals_ * x).is_zero(); }

  IntVector to_coords(const IntVector& x) const { return coords_ * x; }
  RationalVector to_coords(const RationalVector& x) const { return coords_ * x; }
  IntVector from_coords(const IntVector& c) const { return basis_ * c; }
  RationalVector from_coords(const RationalVector& c) const { return basis_ * c; }

  /// Pulls a functional on span coordinates back to an ambient integer functional.
  IntVector pull_back(const IntVector& functional) const {
    IntVector out(ambient_);
    for (std::size_t j = 0; j < ambient_; ++j)
      for (std::size_t i = 0; i < rank_; ++i) out[j] += functional[i] * coords_(i, j);
    return out;
  }

 private:
  std::size_t ambient_ = 0, rank_ = 0;
  IntMatrix basis_, coords_, normals_;
};

}  // namespace conepos
