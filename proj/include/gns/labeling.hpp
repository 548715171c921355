#pragma once

// Partition labelings: the higher-dimensional generalization of Kunz words.
//
// Fix positive integers m_1..m_d with m_i * e_i in the monoid.  Every point
// of N_0^d decomposes uniquely as x + (m_1 v_1, ..., m_{d-1} v_{d-1}, m_d l)
// with x in the grid prod [0, m_i - 1].  Recording, for each grid point x and
// each v, the least l whose decomposed point lies in the monoid yields one
// (d-1)-dimensional partition per grid point; the family determines the
// monoid completely.  For d = 1 the labels are single integers and the grid
// reading is the classical Kunz word.

#include <climits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gns/common.hpp"
#include "gns/partition.hpp"
#include "gns/semigroup.hpp"

namespace gns {

class PartitionLabeling {
 public:
  // Validates dims and label coverage: exactly one (d-1)-dimensional label
  // per grid point of prod [0, m_i - 1], in any order.
  static PartitionLabeling make(std::vector<int> dims,
                                std::vector<std::pair<Point, MultiPartition>> labels) {
    PartitionLabeling L = empties(std::move(dims));
    std::vector<char> seen(static_cast<size_t>(L.volume()), 0);
    for (auto& [at, p] : labels) {
      const size_t i = L.index_of(at);
      if (seen[i]) throw std::invalid_argument("PartitionLabeling: duplicate grid point");
      seen[i] = 1;
      if (p.dim() != L.dim() - 1)
        throw std::invalid_argument("PartitionLabeling: label dimension must be dim - 1");
      L.labels_[i] = std::move(p);
    }
    if (labels.size() != seen.size())
      throw std::invalid_argument("PartitionLabeling: every grid point needs a label");
    return L;
  }

  // All-empty labeling on the given grid (the labeling of N_0^d when all
  // dims are 1).
  static PartitionLabeling empties(std::vector<int> dims) {
    if (dims.empty()) throw std::invalid_argument("PartitionLabeling: dims must be nonempty");
    long long vol = 1;
    for (int m : dims) {
      if (m < 1) throw std::invalid_argument("PartitionLabeling: dims must be positive");
      vol *= m;
      if (vol > (1LL << 24)) throw resource_limit_error("PartitionLabeling: grid too large");
    }
    PartitionLabeling L;
    L.dims_ = std::move(dims);
    L.labels_.assign(static_cast<size_t>(vol),
                     MultiPartition::empty(static_cast<int>(L.dims_.size()) - 1));
    return L;
  }

  int dim() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  long long volume() const { return static_cast<long long>(labels_.size()); }

  const MultiPartition& label(const Point& x) const { return labels_[index_of(x)]; }

  // Grid points in graded lexicographic order (the canonical serialization
  // and violation-reporting order).
  std::vector<Point> grid_points() const {
    std::vector<int> bound(dims_.size());
    for (size_t i = 0; i < dims_.size(); ++i) bound[i] = dims_[i] - 1;
    std::vector<Point> pts;
    pts.reserve(labels_.size());
    for_each_point_in_box(bound, [&](const Point& x) { pts.push_back(x); });
    std::sort(pts.begin(), pts.end(), GradedLexLess{});
    return pts;
  }

  // Sum of all label totals; equals the genus of the reconstruction.
  long long genus() const {
    long long t = 0;
    for (const MultiPartition& p : labels_) t += p.total();
    return t;
  }

  friend bool operator==(const PartitionLabeling&, const PartitionLabeling&) = default;

 private:
  size_t index_of(const Point& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("PartitionLabeling: point dimension mismatch");
    size_t idx = 0, stride = 1;
    for (size_t i = 0; i < dims_.size(); ++i) {
      if (x[static_cast<int>(i)] < 0 || x[static_cast<int>(i)] >= dims_[i])
        throw std::invalid_argument("PartitionLabeling: point outside the grid");
      idx += static_cast<size_t>(x[static_cast<int>(i)]) * stride;
      stride *= static_cast<size_t>(dims_[i]);
    }
    return idx;
  }

  std::vector<int> dims_;
  std::vector<MultiPartition> labels_;  // odometer order, first coordinate fastest
};

// The labeling of a monoid with respect to its least axis elements:
// dims_i = min{t >= 1 : t * e_i in the monoid} and
// (L^x)_v = min{l : x + (m_1 v_1, ..., m_{d-1} v_{d-1}, m_d l) in the monoid}.
inline PartitionLabeling labeling_from_gns(const Gns& s) {
  const int d = s.dim();
  std::vector<int> dims(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) dims[static_cast<size_t>(i)] = axis_multiplicity(s, i);

  // Beyond the gap hull every point is in the monoid, so label supports are
  // confined to v with x_j + m_j v_j <= (max gap coordinate j).
  std::vector<int> maxc(static_cast<size_t>(d), -1);
  for (const Point& g : s.gaps())
    for (int i = 0; i < d; ++i)
      maxc[static_cast<size_t>(i)] = std::max(maxc[static_cast<size_t>(i)], g[i]);

  std::vector<std::pair<Point, MultiPartition>> labels;
  std::vector<int> grid_bound(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) grid_bound[static_cast<size_t>(i)] = dims[static_cast<size_t>(i)] - 1;
  for_each_point_in_box(grid_bound, [&](const Point& x) {
    std::vector<int> vbound(static_cast<size_t>(d - 1));
    for (int j = 0; j + 1 < d; ++j)
      vbound[static_cast<size_t>(j)] =
          (maxc[static_cast<size_t>(j)] - x[j]) / dims[static_cast<size_t>(j)];
    std::vector<MultiPartition::Entry> entries;
    bool in_range = true;
    for (int b : vbound)
      if (b < 0) in_range = false;
    if (in_range)
      for_each_point_in_box(vbound, [&](const Point& v) {
        Point y = x;
        for (int j = 0; j + 1 < d; ++j) y[j] += dims[static_cast<size_t>(j)] * v[j];
        int l = 0;
        while (s.is_gap(y)) {
          ++l;
          y[d - 1] += dims[static_cast<size_t>(d - 1)];
        }
        if (l > 0) entries.emplace_back(v, l);
      });
    labels.emplace_back(x, MultiPartition::make(d - 1, std::move(entries)));
  });
  return PartitionLabeling::make(std::move(dims), std::move(labels));
}

// Expand a labeling back into its gap set: every positive label entry
// (L^x)_v contributes the gaps x + (m v, m_d l) for 0 <= l < (L^x)_v.  The
// decomposition is unique, so no duplicates arise.  With require_closed the
// reconstruction is checked to be additively closed, which by the validity
// theorem is exactly when the labeling is valid.
inline Gns gns_from_labeling(const PartitionLabeling& L, bool require_closed = false) {
  const int d = L.dim();
  std::vector<Point> gaps;
  for (const Point& x : L.grid_points()) {
    for (const auto& [v, val] : L.label(x).entries()) {
      Point y = x;
      for (int j = 0; j + 1 < d; ++j) {
        long long c = static_cast<long long>(x[j]) +
                      static_cast<long long>(L.dims()[static_cast<size_t>(j)]) * v[j];
        if (c > INT_MAX) throw resource_limit_error("gns_from_labeling: coordinate overflow");
        y[j] = static_cast<int>(c);
      }
      for (int l = 0; l < val; ++l) {
        long long c = static_cast<long long>(x[d - 1]) +
                      static_cast<long long>(L.dims()[static_cast<size_t>(d - 1)]) * l;
        if (c > INT_MAX) throw resource_limit_error("gns_from_labeling: coordinate overflow");
        y[d - 1] = static_cast<int>(c);
        gaps.push_back(y);
      }
    }
  }
  Gns s = Gns::make(d, std::move(gaps));
  if (require_closed && !validate_gns(s).ok)
    throw std::invalid_argument("gns_from_labeling: reconstruction is not additively closed");
  return s;
}

struct LabelingCheck {
  bool ok = true;
  std::string reason;
  Point x, y;  // for pair violations: the offending grid points, x <= y graded-lex
};

// A labeling is the labeling of some monoid iff the origin label is empty
// and, for every pair of grid points x, y,
//     L^x min-sum L^y  >=  sh_X(L^z)
// where z = (x + y) mod m componentwise and X holds the axes j with
// x_j + y_j >= m_j (axis d selects the value-decrement branch of the shave).
// The condition is symmetric in x and y, so unordered pairs (including the
// diagonal) suffice; the first violation in graded-lex pair order is
// reported.
inline LabelingCheck is_valid_labeling(const PartitionLabeling& L) {
  const int d = L.dim();
  const Point origin = zero_point(d);
  if (!L.label(origin).is_zero())
    return {false, "label at the origin is nonempty", origin, origin};
  const std::vector<Point> order = L.grid_points();
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = i; j < order.size(); ++j) {
      const Point& x = order[i];
      const Point& y = order[j];
      Point z = zero_point(d);
      std::vector<int> wrap;
      for (int k = 0; k < d; ++k) {
        const int sum = x[k] + y[k];
        const int m = L.dims()[static_cast<size_t>(k)];
        z[k] = sum % m;
        if (sum >= m) wrap.push_back(k + 1);
      }
      const MultiPartition& target = L.label(z);
      if (target.is_zero()) continue;  // shaving keeps it empty; always dominated
      if (!dominates(min_sum(L.label(x), L.label(y)), shave(target, wrap)))
        return {false, "min-sum of the pair fails to dominate the shaved target", x, y};
    }
  }
  return {};
}

// Classical Kunz word of a one-dimensional monoid with least positive
// element m: the word w_1 ... w_{m-1} where m * w_i + i is the least monoid
// element congruent to i mod m.
inline std::vector<int> kunz_word(const Gns& s) {
  if (s.dim() != 1) throw std::invalid_argument("kunz_word: monoid must be one-dimensional");
  const int m = axis_multiplicity(s, 0);
  std::vector<int> word;
  word.reserve(static_cast<size_t>(m - 1));
  for (int i = 1; i < m; ++i) {
    int w = 0;
    while (s.is_gap(Point{i + m * w})) ++w;
    word.push_back(w);
  }
  return word;
}

// Kunz conditions for a word of positive integers (length m - 1): the word
// is the Kunz word of a monoid with least positive element m iff
//     w_i + w_j     >= w_{i+j}      whenever i + j < m, and
//     w_i + w_j + 1 >= w_{i+j-m}    whenever i + j > m.
inline bool kunz_valid(const std::vector<int>& word) {
  for (int w : word)
    if (w < 1) throw std::invalid_argument("kunz_valid: entries must be positive");
  const int m = static_cast<int>(word.size()) + 1;
  auto w = [&](int i) { return word[static_cast<size_t>(i - 1)]; };
  for (int i = 1; i < m; ++i)
    for (int j = i; j < m; ++j) {
      if (i + j < m && w(i) + w(j) < w(i + j)) return false;
      if (i + j > m && w(i) + w(j) + 1 < w(i + j - m)) return false;
    }
  return true;
}

// Depth of a monoid whose multset is {m_i * e_i} (one minimal element per
// axis), read directly off the labeling:
//     depth = max over positive entries of  v_1 + ... + v_{d-1} + (L^x)_v,
// and 0 when every label is empty.
inline int rectangular_depth(const PartitionLabeling& L) {
  if (multset(gns_from_labeling(L)).size() != static_cast<size_t>(L.dim()))
    throw std::invalid_argument("rectangular_depth: labeling is not rectangular");
  int depth = 0;
  for (const Point& x : L.grid_points()) {
    for (const auto& [v, val] : L.label(x).entries()) {
      int c = val;
      for (int j = 0; j + 1 < L.dim(); ++j) c += v[j];
      depth = std::max(depth, c);
    }
  }
  return depth;
}

}  // namespace gns
