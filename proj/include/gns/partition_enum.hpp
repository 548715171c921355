#pragma once

// Enumeration and counting of multidimensional partitions.
//
// Canonical enumeration order: a dim-e partition decomposes into rows along
// its first axis (each row a dim-(e-1) partition, rows weakly decreasing).
// Rows are chosen greedily: larger first-row totals first, and within a
// total, first rows in the same recursive order.  For dim 1 this yields
// [4], [3,1], [2,2], [2,1,1], [1,1,1,1] for n = 4.  The order is total and
// deterministic, which makes index-windowed streaming well defined.

#include <functional>
#include <map>
#include <mutex>
#include <optional>

#include "gns/bigint.hpp"
#include "gns/common.hpp"
#include "gns/partition.hpp"

namespace gns {

namespace detail {

// Row i of a dim-e partition (slice at first coordinate = i), as a
// dim-(e-1) partition.
inline MultiPartition partition_row(const MultiPartition& p, int i) {
  std::vector<MultiPartition::Entry> out;
  for (const auto& [idx, v] : p.entries()) {
    if (idx[0] != i) continue;
    Point r(std::vector<int>(idx.c.begin() + 1, idx.c.end()));
    out.emplace_back(std::move(r), v);
  }
  return MultiPartition::trusted(p.dim() - 1, std::move(out));
}

// Enumerates dim-e partitions of n with entries bounded above by *bound
// (nullptr = unbounded), calling visit for each; visit returns false to
// abort.  Returns false iff aborted.
inline bool enum_bounded(int e, int n, const MultiPartition* bound,
                         const std::function<bool(const MultiPartition&)>& visit) {
  if (n == 0) return visit(MultiPartition::empty(e));
  if (e == 0) {
    if (bound && bound->entry(zero_point(0)) < n) return true;
    return visit(MultiPartition::of_value(n));
  }

  // Assemble rows along the first axis.
  std::vector<MultiPartition> rows;
  std::function<bool(int, int)> rec = [&](int row_idx, int remaining) -> bool {
    if (remaining == 0) {
      std::vector<MultiPartition::Entry> entries;
      for (size_t i = 0; i < rows.size(); ++i) {
        for (const auto& [idx, v] : rows[i].entries()) {
          std::vector<int> full;
          full.reserve(idx.c.size() + 1);
          full.push_back(static_cast<int>(i));
          full.insert(full.end(), idx.c.begin(), idx.c.end());
          entries.emplace_back(Point(std::move(full)), v);
        }
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return colex_less(a.first, b.first); });
      return visit(MultiPartition::trusted(e, std::move(entries)));
    }
    // Bound for this row: previous row, capped by the corresponding row of
    // the overall bound.
    std::optional<MultiPartition> row_bound;
    if (bound) row_bound = partition_row(*bound, row_idx);
    if (row_idx > 0) {
      row_bound = row_bound ? partition_min(*row_bound, rows[static_cast<size_t>(row_idx - 1)])
                            : rows[static_cast<size_t>(row_idx - 1)];
    }
    long long cap = remaining;
    if (row_bound) cap = std::min<long long>(cap, row_bound->total());
    for (long long t = cap; t >= 1; --t) {
      bool go = enum_bounded(e - 1, static_cast<int>(t),
                             row_bound ? &*row_bound : nullptr,
                             [&](const MultiPartition& rho) -> bool {
                               rows.push_back(rho);
                               bool ok = rec(row_idx + 1, remaining - static_cast<int>(t));
                               rows.pop_back();
                               return ok;
                             });
      if (!go) return false;
    }
    return true;
  };
  return rec(0, n);
}

}  // namespace detail

// Streams every dim-e partition of n in the canonical order.  The visitor
// returns false to stop early.
inline void enumerate_partitions(int e, int n,
                                 const std::function<bool(const MultiPartition&)>& visit) {
  if (e < 0 || n < 0) throw std::invalid_argument("enumerate_partitions: bad arguments");
  detail::enum_bounded(e, n, nullptr, visit);
}

// Index-windowed variant: emits only items with position in [start, end)
// (0-based, in canonical order).  Windows partition the stream, so chunked
// consumers see exactly the full stream.
inline void enumerate_partitions(int e, int n, long long start, long long end,
                                 const std::function<bool(const MultiPartition&)>& visit) {
  if (start < 0 || end < start) throw std::invalid_argument("enumerate_partitions: bad window");
  long long pos = 0;
  detail::enum_bounded(e, n, nullptr, [&](const MultiPartition& p) -> bool {
    if (pos >= end) return false;
    bool go = true;
    if (pos >= start) go = visit(p);
    ++pos;
    return go && pos < end;
  });
}

// Coefficients [x^0..x^N] of the partition generating series:
//   e = 0: 1/(1-x);  e = 1: prod 1/(1-x^k);  e = 2: prod 1/(1-x^k)^k.
// Only these closed product forms exist; e >= 3 is rejected.
inline std::vector<BigCount> series_coefficients(int e, int n_max) {
  if (n_max < 0) throw std::invalid_argument("series_coefficients: n_max < 0");
  if (e < 0 || e > 2)
    throw std::invalid_argument("series_coefficients: closed product forms exist only for dim 0, 1, 2");
  std::vector<BigCount> c(static_cast<size_t>(n_max) + 1);
  c[0] = 1;
  if (e == 0) {
    for (int i = 1; i <= n_max; ++i) c[static_cast<size_t>(i)] = 1;
    return c;
  }
  for (int k = 1; k <= n_max; ++k) {
    const int reps = (e == 1) ? 1 : k;
    for (int rep = 0; rep < reps; ++rep)
      for (int i = k; i <= n_max; ++i)
        c[static_cast<size_t>(i)] += c[static_cast<size_t>(i - k)];
  }
  return c;
}

namespace detail {

struct PartitionCountCache {
  std::mutex mu;
  std::vector<BigCount> dim1, dim2;                      // series-backed
  std::map<std::pair<int, int>, BigCount> higher;        // enumeration-backed
};

inline PartitionCountCache& partition_count_cache() {
  static PartitionCountCache c;
  return c;
}

}  // namespace detail

// Default weight cap for enumeration-backed counting in dims >= 3, where no
// product series exists and item counts grow past 10^8 soon after.
inline constexpr int kPartitionEnumCap = 28;

// p_e(n): the number of dim-e partitions of n.  dims 0..2 via the product
// series (memoized); higher dims by enumeration (memoized), with a cap to
// keep accidental huge runs from hanging.
inline BigCount count_partitions(int e, int n, int enum_cap = kPartitionEnumCap) {
  if (e < 0 || n < 0) throw std::invalid_argument("count_partitions: bad arguments");
  if (n == 0 || e == 0) return BigCount(1);
  auto& cache = detail::partition_count_cache();
  if (e <= 2) {
    std::scoped_lock lk(cache.mu);
    auto& vec = (e == 1) ? cache.dim1 : cache.dim2;
    if (static_cast<int>(vec.size()) <= n) {
      int grow = std::max(n, static_cast<int>(vec.size() * 2));
      vec = series_coefficients(e, grow);
    }
    return vec[static_cast<size_t>(n)];
  }
  if (n > enum_cap)
    throw resource_limit_error("count_partitions: n too large for enumeration-backed dims");
  {
    std::scoped_lock lk(cache.mu);
    auto it = cache.higher.find({e, n});
    if (it != cache.higher.end()) return it->second;
  }
  BigCount total = 0;
  enumerate_partitions(e, n, [&](const MultiPartition&) {
    ++total;
    return true;
  });
  std::scoped_lock lk(cache.mu);
  cache.higher[{e, n}] = total;
  return total;
}

// Fast dim-1 enumeration over raw part lists (descending), same order as
// enumerate_partitions(1, n).  Used by the counting engines.
template <class V>
void for_each_partition_1d_rec(std::vector<int>& buf, int remaining, int max_part, V&& visit) {
  if (remaining == 0) {
    visit(const_cast<const std::vector<int>&>(buf));
    return;
  }
  for (int f = std::min(remaining, max_part); f >= 1; --f) {
    buf.push_back(f);
    for_each_partition_1d_rec(buf, remaining - f, f, visit);
    buf.pop_back();
  }
}

template <class V>
void for_each_partition_1d(int n, V&& visit) {
  std::vector<int> buf;
  for_each_partition_1d_rec(buf, n, n, visit);
}

// Only partitions whose first (largest) part is exactly `first`.  The
// (n, first) families partition the full stream: deterministic work chunks.
template <class V>
void for_each_partition_1d_first(int n, int first, V&& visit) {
  if (first < 1 || first > n) return;
  std::vector<int> buf{first};
  for_each_partition_1d_rec(buf, n - first, first, visit);
}

}  // namespace gns
