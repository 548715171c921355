#pragma once

// Generalized numerical semigroups: cofinite additive submonoids of N_0^d,
// represented by their finite gap set (the complement).
//
// Key invariants and notions:
//  - multset M: the componentwise-minimal nonzero elements of the monoid;
//    an antichain containing a multiple of every axis unit.
//  - shape: the dim-(d-1) partition pi^1 with pi^1(v) = least t such that
//    (v, t) lies above some multset point; shapes of total s biject with
//    multsets whose first region has size s.
//  - depth-k regions: R_{<=k}(M) = points not dominating any sum of k
//    multset points; R_k = R_{<=k} \ R_{<=k-1} (0 sits in R_0 by convention).
//    pi^k, the k-fold min-sum of pi^1, carves R_{<=k} out of the lattice:
//    x in R_{<=k} iff x_d < pi^k(x_1..x_{d-1}).
//  - depth: the largest region index attained by a gap (0 for the full
//    monoid).

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "gns/bigint.hpp"
#include "gns/common.hpp"
#include "gns/partition.hpp"
#include "gns/point.hpp"

namespace gns {

class Gns {
 public:
  // Canonicalizes (graded-lex sort, dedupe) and checks structural sanity;
  // closure is checked separately by validate_gns.
  static Gns make(int dim, std::vector<Point> gaps) {
    if (dim < 1) throw std::invalid_argument("Gns: dim must be >= 1");
    for (const Point& g : gaps) {
      if (g.dim() != dim) throw std::invalid_argument("Gns: gap dimension mismatch");
      for (int i = 0; i < dim; ++i)
        if (g[i] < 0) throw std::invalid_argument("Gns: gap coordinates must be >= 0");
    }
    std::sort(gaps.begin(), gaps.end(), GradedLexLess{});
    gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
    Gns s;
    s.dim_ = dim;
    s.gaps_ = std::move(gaps);
    return s;
  }

  int dim() const { return dim_; }
  long long genus() const { return static_cast<long long>(gaps_.size()); }
  const std::vector<Point>& gaps() const { return gaps_; }

  bool is_gap(const Point& x) const {
    auto it = std::lower_bound(gaps_.begin(), gaps_.end(), x, GradedLexLess{});
    return it != gaps_.end() && *it == x;
  }
  // Monoid membership for nonnegative points.
  bool contains(const Point& x) const { return !is_gap(x); }

  friend bool operator==(const Gns&, const Gns&) = default;

 private:
  int dim_ = 1;
  std::vector<Point> gaps_;
};

struct GnsViolation {
  enum class Kind { zero_gap, not_closed };
  Kind kind = Kind::not_closed;
  Point gap, a, b;  // for not_closed: gap = a + b with both summands in the monoid
};

struct GnsValidation {
  bool ok = true;
  std::optional<GnsViolation> violation;
};

// A gap set defines a GNS iff 0 is not a gap and no gap splits as a sum of
// two nonzero monoid elements.  Scans gaps and candidate summands in
// graded-lex order, so the reported violation is deterministic.
inline GnsValidation validate_gns(const Gns& s) {
  for (const Point& g : s.gaps()) {
    if (g.is_zero())
      return {false, GnsViolation{GnsViolation::Kind::zero_gap, g, Point{}, Point{}}};
  }
  for (const Point& g : s.gaps()) {
    // Split summands a <= g componentwise; degree-halving covers each pair once.
    std::vector<Point> candidates;
    for_each_point_in_box(g.c, [&](const Point& a) {
      if (a.is_zero() || a == g) return;
      if (2 * a.degree() > g.degree()) return;
      candidates.push_back(a);
    });
    std::sort(candidates.begin(), candidates.end(), GradedLexLess{});
    for (const Point& a : candidates) {
      Point b = sub(g, a);
      if (s.contains(a) && s.contains(b))
        return {false, GnsViolation{GnsViolation::Kind::not_closed, g, a, b}};
    }
  }
  return {};
}

class Multset {
 public:
  static Multset make(int dim, std::vector<Point> pts) {
    if (dim < 1) throw std::invalid_argument("Multset: dim must be >= 1");
    for (const Point& p : pts)
      if (p.dim() != dim) throw std::invalid_argument("Multset: point dimension mismatch");
    std::sort(pts.begin(), pts.end(), GradedLexLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Multset m;
    m.dim_ = dim;
    m.points_ = std::move(pts);
    return m;
  }

  int dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  size_t size() const { return points_.size(); }

  friend bool operator==(const Multset&, const Multset&) = default;
  friend bool operator<(const Multset& a, const Multset& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return std::lexicographical_compare(a.points_.begin(), a.points_.end(),
                                        b.points_.begin(), b.points_.end(), GradedLexLess{});
  }

 private:
  int dim_ = 1;
  std::vector<Point> points_;
};

struct MultsetCheck {
  bool ok = true;
  std::string reason;
};

// A point set is a valid multset iff it is a nonempty antichain of nonzero
// points containing a multiple of every axis unit.
inline MultsetCheck is_valid_multset(const Multset& m) {
  const auto& pts = m.points();
  if (pts.empty()) return {false, "empty point set"};
  for (const Point& p : pts)
    if (p.is_zero()) return {false, "contains the origin"};
  for (const Point& a : pts)
    for (const Point& b : pts)
      if (!(a == b) && leq(a, b)) return {false, "not an antichain"};
  for (int i = 0; i < m.dim(); ++i) {
    bool found = false;
    for (const Point& p : pts) {
      bool axis = p[i] > 0;
      for (int j = 0; axis && j < m.dim(); ++j)
        if (j != i && p[j] != 0) axis = false;
      if (axis) {
        found = true;
        break;
      }
    }
    if (!found) return {false, "missing an axis multiple"};
  }
  return {};
}

// Least positive t with t*e_i in the monoid.  Exists by cofiniteness.
inline int axis_multiplicity(const Gns& s, int axis) {
  Point p = zero_point(s.dim());
  for (int t = 1;; ++t) {
    p[axis] = t;
    if (s.contains(p)) return t;
  }
}

// Componentwise-minimal nonzero monoid elements.  They all lie in the box
// prod [0, m_i] (a point with x_i > m_i dominates m_i * e_i), so a graded-lex
// box scan that keeps non-dominating points finds exactly the multset.
inline Multset multset(const Gns& s) {
  const int d = s.dim();
  std::vector<int> bound(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) bound[static_cast<size_t>(i)] = axis_multiplicity(s, i);
  std::vector<Point> box;
  for_each_point_in_box(bound, [&](const Point& x) {
    if (!x.is_zero() && s.contains(x)) box.push_back(x);
  });
  std::sort(box.begin(), box.end(), GradedLexLess{});
  std::vector<Point> minimal;
  for (const Point& x : box) {
    bool dominated = false;
    for (const Point& y : minimal)
      if (leq(y, x)) {
        dominated = true;
        break;
      }
    if (!dominated) minimal.push_back(x);
  }
  return Multset::make(d, std::move(minimal));
}

// Shape of a multset: pi^1 as a dim-(d-1) partition, pi^1(v) = min of the
// last coordinate over multset points whose prefix is <= v.
inline MultiPartition shape(const Multset& m) {
  const int d = m.dim();
  const int e = d - 1;
  std::vector<int> bound(static_cast<size_t>(e), 0);
  for (const Point& p : m.points())
    for (int i = 0; i < e; ++i) bound[static_cast<size_t>(i)] = std::max(bound[static_cast<size_t>(i)], p[i]);
  std::vector<MultiPartition::Entry> entries;
  for_each_point_in_box(bound, [&](const Point& v) {
    int best = INT_MAX;
    for (const Point& p : m.points()) {
      bool pref = true;
      for (int i = 0; i < e; ++i)
        if (p[i] > v[i]) {
          pref = false;
          break;
        }
      if (pref) best = std::min(best, p[d - 1]);
    }
    if (best == INT_MAX)
      throw std::invalid_argument("shape: point set has no axis-d multiple");
    if (best > 0) entries.emplace_back(v, best);
  });
  return MultiPartition::make(e, std::move(entries));
}

// Inverse of shape: level-minimal support indices give points (v, value),
// and the minimal zero indices give points (c, 0).
inline Multset multset_from_shape(const MultiPartition& p) {
  if (p.is_zero())
    throw std::invalid_argument("multset_from_shape: partition must be nonzero");
  const int e = p.dim();
  const int d = e + 1;
  std::vector<Point> pts;
  for (const auto& [idx, v] : p.entries()) {
    bool level_minimal = true;
    for (int i = 0; i < e && level_minimal; ++i) {
      if (idx[i] == 0) continue;
      Point par = idx;
      --par[i];
      if (p.entry(par) == v) level_minimal = false;
    }
    if (!level_minimal) continue;
    std::vector<int> c(idx.c);
    c.push_back(v);
    pts.emplace_back(std::move(c));
  }
  for (const Point& z : support_complement_min(p)) {
    std::vector<int> c(z.c);
    c.push_back(0);
    pts.emplace_back(std::move(c));
  }
  return Multset::make(d, std::move(pts));
}

// Cached region machinery for one multset: pi^k partitions (k-fold min-sums
// of the shape), region sizes and region indices.  Thread-safe.
class RegionEngine {
 public:
  explicit RegionEngine(const Multset& m) : shape_(shape(m)) {}

  // k >= 1.  Returns by value: the internal cache may grow concurrently.
  MultiPartition pi(int k) const {
    if (k < 1) throw std::invalid_argument("pi: k must be >= 1");
    std::scoped_lock lk(mu_);
    while (static_cast<int>(pis_.size()) < k) {
      pis_.push_back(pis_.empty() ? shape_ : min_sum(pis_.back(), shape_));
    }
    return pis_[static_cast<size_t>(k - 1)];
  }

  // s_1..s_kmax where s_k = |R_k| = total(pi^k) - total(pi^(k-1)).
  std::vector<long long> region_sizes(int k_max) const {
    std::vector<long long> out;
    long long prev = 0;
    for (int k = 1; k <= k_max; ++k) {
      long long cur = pi(k).total();
      out.push_back(cur - prev);
      prev = cur;
    }
    return out;
  }

  // Least k with x in R_{<=k}; 0 for the origin.
  int region_index(const Point& x) const {
    if (x.is_zero()) return 0;
    const int d = x.dim();
    Point prefix(std::vector<int>(x.c.begin(), x.c.end() - 1));
    const int last = x[d - 1];
    const int cap = static_cast<int>(x.degree()) + 1;
    for (int k = 1; k <= cap; ++k)
      if (last < pi(k).entry(prefix)) return k;
    throw std::logic_error("region_index: no region found below the degree cap");
  }

 private:
  MultiPartition shape_;
  mutable std::vector<MultiPartition> pis_;
  mutable std::mutex mu_;
};

namespace detail {

struct RegionEngineCache {
  std::mutex mu;
  std::map<Multset, std::shared_ptr<RegionEngine>> engines;
};

inline RegionEngineCache& region_engine_cache() {
  static RegionEngineCache c;
  return c;
}

}  // namespace detail

// Shared, memoized engine per multset.
inline std::shared_ptr<RegionEngine> region_engine(const Multset& m) {
  auto& cache = detail::region_engine_cache();
  std::scoped_lock lk(cache.mu);
  auto it = cache.engines.find(m);
  if (it != cache.engines.end()) return it->second;
  auto eng = std::make_shared<RegionEngine>(m);
  cache.engines.emplace(m, eng);
  return eng;
}

inline MultiPartition pi_k(const Multset& m, int k) { return region_engine(m)->pi(k); }

inline std::vector<long long> region_sizes(const Multset& m, int k_max) {
  return region_engine(m)->region_sizes(k_max);
}

inline int region_index(const Multset& m, const Point& x) {
  return region_engine(m)->region_index(x);
}

// Depth: max region index over the gaps; 0 for the full monoid.
inline int depth(const Gns& s) {
  if (s.gaps().empty()) return 0;
  auto eng = region_engine(multset(s));
  int q = 0;
  for (const Point& g : s.gaps()) q = std::max(q, eng->region_index(g));
  return q;
}

// The box-bounded region A_g = {x : prod (x_i + 1) <= 2g}, which contains
// every gap of every genus-g GNS.
class ARegion {
 public:
  ARegion(int dim, long long g) : dim_(dim), g_(g) {
    if (dim < 1 || g < 0) throw std::invalid_argument("ARegion: bad arguments");
  }

  bool contains(const Point& x) const {
    if (x.dim() != dim_) return false;
    long long prod = 1;
    for (int i = 0; i < dim_; ++i) {
      if (x[i] < 0) return false;
      prod *= x[i] + 1;
      if (prod > 2 * g_) return false;
    }
    return true;
  }

  // Exact cardinality: sum over the first d-1 coordinates of
  // floor(2g / prod (x_i + 1)).
  BigCount cardinality() const {
    BigCount total = 0;
    std::function<void(int, long long)> rec = [&](int axis, long long prod) {
      if (axis == dim_ - 1) {
        total += 2 * g_ / prod;
        return;
      }
      for (long long x = 0; (x + 1) * prod <= 2 * g_; ++x) rec(axis + 1, (x + 1) * prod);
    };
    rec(0, 1);
    return total;
  }

  // Visits all members in graded-lex order.
  template <class F>
  void for_each(F&& visit, long long cap = 50'000'000) const {
    std::vector<Point> pts;
    std::function<void(Point&, int, long long)> rec = [&](Point& x, int axis, long long prod) {
      if (axis == dim_) {
        pts.push_back(x);
        if (static_cast<long long>(pts.size()) > cap)
          throw resource_limit_error("ARegion::for_each: too many points");
        return;
      }
      for (int v = 0; (v + 1) * prod <= 2 * g_; ++v) {
        x[axis] = v;
        rec(x, axis + 1, (v + 1) * prod);
      }
      x[axis] = 0;
    };
    Point x = zero_point(dim_);
    rec(x, 0, 1);
    std::sort(pts.begin(), pts.end(), GradedLexLess{});
    for (const Point& p : pts) visit(p);
  }

 private:
  int dim_;
  long long g_;
};

// Gaps maximal under the componentwise order. The gap-free monoid has no
// maximal gap, so it is rejected rather than answered with an empty list.
inline std::vector<Point> frobenius_allowable_gaps(const Gns& s) {
  if (s.gaps().empty())
    throw std::invalid_argument("frobenius_allowable_gaps: monoid has no gaps");
  std::vector<Point> out;
  for (const Point& g : s.gaps()) {
    bool dominated = false;
    for (const Point& h : s.gaps())
      if (!(h == g) && leq(g, h)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(g);
  }
  return out;
}

// All points of N_0^d with coordinate sum k (the simplex layer), as a multset.
inline Multset simplex_multset(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("simplex_multset: bad arguments");
  std::vector<Point> pts;
  Point x = zero_point(d);
  std::function<void(int, int)> rec = [&](int axis, int remaining) {
    if (axis == d - 1) {
      x[axis] = remaining;
      pts.push_back(x);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      x[axis] = v;
      rec(axis + 1, remaining - v);
    }
  };
  rec(0, k);
  return Multset::make(d, std::move(pts));
}

// A family of deep GNSs: gaps are the nonzero points below the simplex layer
// k, the first-axis points t*e_1 with t <= (q-1)k + 1 not divisible by k, and
// an optional extra batch from the second region.  Multset M_k, depth q.
inline Gns axial_family(int d, int k, int q, const std::vector<Point>& extra) {
  if (d < 2 || k < 2 || q < 3)
    throw std::invalid_argument("axial_family: requires d >= 2, k >= 2, q >= 3");
  Multset mk = simplex_multset(d, k);
  std::vector<Point> gaps;
  // R_1 \ {0}: nonzero points with coordinate sum < k.
  {
    std::vector<int> bound(static_cast<size_t>(d), k - 1);
    for_each_point_in_box(bound, [&](const Point& x) {
      if (!x.is_zero() && x.degree() < k) gaps.push_back(x);
    });
  }
  // Axis gaps.
  std::vector<Point> axis_set;
  for (int t = 1; t <= (q - 1) * k + 1; ++t) {
    if (t % k == 0) continue;
    Point p = zero_point(d);
    p[0] = t;
    axis_set.push_back(p);
    if (t >= k) gaps.push_back(p);
  }
  // Extra gaps: must lie in R_2(M_k) \ M_k (coordinate sum in (k, 2k)) and
  // stay clear of the axis set.
  for (const Point& x : extra) {
    if (x.dim() != d) throw std::invalid_argument("axial_family: extra point dimension mismatch");
    long long s = x.degree();
    if (s <= k || s >= 2 * k)
      throw std::invalid_argument("axial_family: extra point not in the second region");
    if (std::find(axis_set.begin(), axis_set.end(), x) != axis_set.end())
      throw std::invalid_argument("axial_family: extra point overlaps the axis gaps");
    gaps.push_back(x);
  }
  return Gns::make(d, std::move(gaps));
}

}  // namespace gns
