#pragma once

// Multidimensional partitions, stored sparsely.
//
// A dim-e partition assigns a nonnegative integer to every index of N_0^e,
// weakly decreasing along every axis, with finite total.  dim-0 partitions
// are single nonnegative integers, dim-1 partitions are the classical ones
// (weakly decreasing part lists), dim-2 partitions are plane partitions.
//
// Only nonzero entries are stored, sorted colexicographically, so equality
// of entry lists is equality of partitions.  The support of a partition is
// downward closed; its complement is an upward-closed "staircase" generated
// by finitely many minimal zero indices (see support_complement_min).

#include <algorithm>
#include <cassert>
#include <climits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gns/point.hpp"

namespace gns {

class MultiPartition {
 public:
  using Entry = std::pair<Point, int>;

  MultiPartition() = default;  // dim-0 zero partition

  static MultiPartition empty(int dim) {
    MultiPartition p;
    p.dim_ = dim;
    return p;
  }

  // dim-0 partition holding a single value.
  static MultiPartition of_value(int v) {
    if (v < 0) throw std::invalid_argument("partition value must be >= 0");
    MultiPartition p;
    p.dim_ = 0;
    if (v > 0) p.entries_.emplace_back(zero_point(0), v);
    return p;
  }

  // dim-1 partition from a weakly decreasing list of positive parts.
  static MultiPartition from_parts(const std::vector<int>& parts) {
    MultiPartition p;
    p.dim_ = 1;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw std::invalid_argument("parts must be positive");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("parts must be weakly decreasing");
      p.entries_.emplace_back(Point{static_cast<int>(i)}, parts[i]);
    }
    return p;
  }

  // Canonicalizes (drops zeros, sorts colex) and validates that the entry
  // map really is a partition.
  static MultiPartition make(int dim, std::vector<Entry> entries) {
    MultiPartition p;
    p.dim_ = dim;
    for (auto& [idx, v] : entries) {
      if (idx.dim() != dim) throw std::invalid_argument("entry index dimension mismatch");
      for (int i = 0; i < dim; ++i)
        if (idx[i] < 0) throw std::invalid_argument("entry index must be nonnegative");
      if (v < 0) throw std::invalid_argument("entry value must be nonnegative");
    }
    std::erase_if(entries, [](const Entry& e) { return e.second == 0; });
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return colex_less(a.first, b.first); });
    for (size_t i = 1; i < entries.size(); ++i)
      if (entries[i].first == entries[i - 1].first)
        throw std::invalid_argument("duplicate entry index");
    p.entries_ = std::move(entries);
    if (!p.well_formed()) throw std::invalid_argument("entries do not form a partition");
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return entries_.empty(); }
  size_t support_size() const { return entries_.size(); }

  long long total() const {
    long long t = 0;
    for (const auto& [idx, v] : entries_) t += v;
    return t;
  }

  // Value at an index; 0 outside the stored support.
  int entry(const Point& idx) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), idx,
        [](const Entry& e, const Point& q) { return colex_less(e.first, q); });
    if (it != entries_.end() && it->first == idx) return it->second;
    return 0;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  // dim-1 convenience: the weakly decreasing part list.
  std::vector<int> parts() const {
    if (dim_ != 1) throw std::invalid_argument("parts() requires a dim-1 partition");
    std::vector<int> out;
    out.reserve(entries_.size());
    for (const auto& [idx, v] : entries_) out.push_back(v);
    return out;
  }

  friend bool operator==(const MultiPartition&, const MultiPartition&) = default;

  // Total order for use as a map key: dim, then entry lists.
  friend bool operator<(const MultiPartition& a, const MultiPartition& b) {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    return std::lexicographical_compare(
        a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
        [](const Entry& x, const Entry& y) {
          if (x.first != y.first) return colex_less(x.first, y.first);
          return x.second < y.second;
        });
  }

  // Internal: entries already canonical (positive, colex-sorted, valid).
  static MultiPartition trusted(int dim, std::vector<Entry> entries) {
    MultiPartition p;
    p.dim_ = dim;
    p.entries_ = std::move(entries);
    assert(p.well_formed());
    return p;
  }

 private:
  bool well_formed() const {
    // Weakly decreasing along every axis, support downward closed: each
    // stored index must have every lower neighbor stored with a value >= its
    // own.  Transitivity makes the neighbor check sufficient.
    for (const auto& [idx, v] : entries_) {
      for (int i = 0; i < dim_; ++i) {
        if (idx[i] == 0) continue;
        Point par = idx;
        --par[i];
        if (entry(par) < v) return false;
      }
    }
    return true;
  }

  int dim_ = 0;
  std::vector<Entry> entries_;
};

// p >= q pointwise.
inline bool dominates(const MultiPartition& p, const MultiPartition& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("dominates: dimension mismatch");
  for (const auto& [idx, v] : q.entries())
    if (p.entry(idx) < v) return false;
  return true;
}

// Pointwise minimum of two partitions (again a partition).
inline MultiPartition partition_min(const MultiPartition& p, const MultiPartition& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("partition_min: dimension mismatch");
  std::vector<MultiPartition::Entry> out;
  for (const auto& [idx, v] : p.entries()) {
    int m = std::min(v, q.entry(idx));
    if (m > 0) out.emplace_back(idx, m);
  }
  return MultiPartition::trusted(p.dim(), std::move(out));
}

// Minimal indices (componentwise) outside the support.  These generate the
// upward-closed complement of the support.  For the zero partition this is
// {0}; for a nonzero dim-0 partition it is empty.
inline std::vector<Point> support_complement_min(const MultiPartition& p) {
  const int e = p.dim();
  if (p.is_zero()) return {zero_point(e)};
  if (e == 0) return {};
  std::vector<Point> cands;
  for (const auto& [idx, v] : p.entries()) {
    for (int i = 0; i < e; ++i) {
      Point u = idx;
      ++u[i];
      cands.push_back(std::move(u));
    }
  }
  std::sort(cands.begin(), cands.end(), ColexLess{});
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<Point> out;
  for (const Point& u : cands) {
    if (p.entry(u) != 0) continue;
    bool minimal = true;
    for (int i = 0; i < e && minimal; ++i) {
      if (u[i] == 0) continue;
      Point par = u;
      --par[i];
      if (p.entry(par) == 0) minimal = false;
    }
    if (minimal) out.push_back(u);
  }
  return out;
}

namespace detail {

// Dense dim-1 min-sum: tau_x = min_{i+j=x} (a_i + b_j), reading 0 past the
// end of either part list.
inline MultiPartition min_sum_1d(const MultiPartition& p, const MultiPartition& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  std::vector<int> a = p.parts(), b = q.parts();
  const int r = static_cast<int>(a.size()), t = static_cast<int>(b.size());
  std::vector<MultiPartition::Entry> out;
  out.reserve(static_cast<size_t>(r + t));
  for (int x = 0; x <= r + t - 1; ++x) {
    int best = INT_MAX;
    const int ilo = std::max(0, x - t), ihi = std::min(x, r);
    for (int i = ilo; i <= ihi; ++i) {
      const int va = i < r ? a[static_cast<size_t>(i)] : 0;
      const int j = x - i;
      const int vb = j < t ? b[static_cast<size_t>(j)] : 0;
      best = std::min(best, va + vb);
    }
    assert(best > 0 && best != INT_MAX);
    out.emplace_back(Point{x}, best);
  }
  return MultiPartition::trusted(1, std::move(out));
}

inline bool dominates_any(const Point& x, const std::vector<Point>& set) {
  for (const Point& c : set)
    if (leq(c, x)) return true;
  return false;
}

// Keep only the componentwise-minimal points.
inline std::vector<Point> minimalize(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), GradedLexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Point> out;
  for (const Point& p : pts)
    if (!dominates_any(p, out)) out.push_back(p);
  return out;
}

}  // namespace detail

// Min-sum: (p ⊞ q)_x = min_{a+b=x} (p_a + q_b).  Associative, commutative;
// the zero partition is the identity.  The support of the result is the
// complement of (C_p + C_q), where C_p is the upward closure of the minimal
// zero indices of p — the staircases add under min-sum.
inline MultiPartition min_sum(const MultiPartition& p, const MultiPartition& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("min_sum: dimension mismatch");
  const int e = p.dim();
  if (e == 0) {
    long long v = p.entry(zero_point(0)) + q.entry(zero_point(0));
    return MultiPartition::of_value(static_cast<int>(v));
  }
  if (e == 1) return detail::min_sum_1d(p, q);
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;

  const std::vector<Point> sp = support_complement_min(p);
  const std::vector<Point> sq = support_complement_min(q);
  std::vector<Point> s;
  s.reserve(sp.size() * sq.size());
  for (const Point& a : sp)
    for (const Point& b : sq) s.push_back(add(a, b));
  s = detail::minimalize(std::move(s));

  // Axis bounds: the first zero of p along axis i plus the first zero of q
  // along axis i caps coordinate i of the result's support.
  std::vector<int> bound(static_cast<size_t>(e), 0);
  for (int i = 0; i < e; ++i) {
    int hp = 0, hq = 0;
    Point ax = zero_point(e);
    while (true) {
      ax[i] = hp;
      if (p.entry(ax) == 0) break;
      ++hp;
    }
    ax = zero_point(e);
    while (true) {
      ax[i] = hq;
      if (q.entry(ax) == 0) break;
      ++hq;
    }
    bound[static_cast<size_t>(i)] = hp + hq - 1;
  }

  std::vector<MultiPartition::Entry> out;
  for_each_point_in_box(bound, [&](const Point& x) {
    if (detail::dominates_any(x, s)) return;
    int best = INT_MAX;
    for (const auto& [a, va] : p.entries()) {
      if (!leq(a, x)) continue;
      best = std::min(best, va + q.entry(sub(x, a)));
    }
    for (const Point& c : sp) {
      if (!leq(c, x)) continue;
      best = std::min(best, q.entry(sub(x, c)));
    }
    assert(best > 0 && best != INT_MAX);
    out.emplace_back(x, best);
  });
  return MultiPartition::trusted(e, std::move(out));
}

// Shave sh_X for X ⊆ {1, ..., e+1} (1-based).  Indices in X up to e shift
// the partition one step along that axis; index e+1 decrements every value
// (clipping at 0).
inline MultiPartition shave(const MultiPartition& p, const std::vector<int>& x_set) {
  const int e = p.dim();
  Point shift = zero_point(e);
  int dec = 0;
  {
    std::vector<int> xs = x_set;
    std::sort(xs.begin(), xs.end());
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i > 0 && xs[i] == xs[i - 1]) throw std::invalid_argument("shave: duplicate index");
      if (xs[i] < 1 || xs[i] > e + 1) throw std::invalid_argument("shave: index out of range");
      if (xs[i] <= e)
        ++shift[xs[i] - 1];
      else
        dec = 1;
    }
  }
  std::vector<MultiPartition::Entry> out;
  for (const auto& [idx, v] : p.entries()) {
    bool ok = true;
    for (int i = 0; i < e; ++i)
      if (idx[i] < shift[i]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    int nv = v - dec;
    if (nv > 0) out.emplace_back(sub(idx, shift), nv);
  }
  return MultiPartition::trusted(e, std::move(out));
}

}  // namespace gns
