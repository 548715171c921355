#pragma once

// Lattice points of N_0^d, the componentwise partial order, and the graded
// lexicographic total order used everywhere a deterministic point ordering
// is needed.

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace gns {

struct Point {
  std::vector<int> c;

  Point() = default;
  explicit Point(std::vector<int> coords) : c(std::move(coords)) {}
  Point(std::initializer_list<int> coords) : c(coords) {}

  int dim() const { return static_cast<int>(c.size()); }
  int operator[](int i) const { return c[static_cast<size_t>(i)]; }
  int& operator[](int i) { return c[static_cast<size_t>(i)]; }

  long long degree() const {
    return std::accumulate(c.begin(), c.end(), 0LL);
  }
  bool is_zero() const {
    for (int v : c)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point zero_point(int dim) { return Point(std::vector<int>(static_cast<size_t>(dim), 0)); }

inline Point unit_point(int dim, int axis) {
  Point p = zero_point(dim);
  p[axis] = 1;
  return p;
}

// Componentwise a <= b.
inline bool leq(const Point& a, const Point& b) {
  for (int i = 0; i < a.dim(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Point add(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < r.dim(); ++i) r[i] += b[i];
  return r;
}

// Requires b <= a componentwise.
inline Point sub(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < r.dim(); ++i) r[i] -= b[i];
  return r;
}

// Graded lexicographic: lower total degree first, ties broken
// lexicographically on coordinates (first coordinate most significant).
inline bool graded_lex_less(const Point& a, const Point& b) {
  long long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.c < b.c;
}

struct GradedLexLess {
  bool operator()(const Point& a, const Point& b) const { return graded_lex_less(a, b); }
};

// Colexicographic: last coordinate most significant.  Canonical order for
// partition entries.
inline bool colex_less(const Point& a, const Point& b) {
  for (int i = a.dim() - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct ColexLess {
  bool operator()(const Point& a, const Point& b) const { return colex_less(a, b); }
};

// Visits every point of the box [0, bound[0]] x ... x [0, bound[dim-1]]
// in colexicographic order (first coordinate varies fastest).
template <class F>
void for_each_point_in_box(const std::vector<int>& bound_incl, F&& visit) {
  const int dim = static_cast<int>(bound_incl.size());
  for (int b : bound_incl)
    if (b < 0) return;
  Point x = zero_point(dim);
  if (dim == 0) {
    visit(x);
    return;
  }
  while (true) {
    visit(x);
    int i = 0;
    while (i < dim && x[i] == bound_incl[static_cast<size_t>(i)]) {
      x[i] = 0;
      ++i;
    }
    if (i == dim) return;
    ++x[i];
  }
}

}  // namespace gns
