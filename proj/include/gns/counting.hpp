#pragma once

// Exact counting engines for the monoid census: the closed form for gaps
// confined to the first two regions, the genus tree (every monoid of genus
// <= g reached exactly once), pair counts for the multsets whose shape has
// total 3, and the degree-simplex bound family.

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gns/bigint.hpp"
#include "gns/common.hpp"
#include "gns/parallel.hpp"
#include "gns/partition.hpp"
#include "gns/partition_enum.hpp"
#include "gns/point.hpp"
#include "gns/semigroup.hpp"

namespace gns {

// ---------------------------------------------------------------------------
// Count tables

// Address of one counted statistic.  q (a depth class) and shape (a
// generator-grid shape such as "[2,1]") are optional refinements; q = -1 and
// an empty shape mean "not applicable".
struct CountKey {
  std::string stat;
  int d = 0;
  long long g = 0;
  long long q = -1;
  std::string shape;

  friend auto operator<=>(const CountKey&, const CountKey&) = default;
};

class CountTable {
 public:
  void set(const CountKey& k, BigCount v) { cells_[k] = std::move(v); }

  std::optional<BigCount> get(const CountKey& k) const {
    auto it = cells_.find(k);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const CountKey& k) const { return cells_.find(k) != cells_.end(); }
  size_t size() const { return cells_.size(); }
  const std::map<CountKey, BigCount>& cells() const { return cells_; }

  // Last write wins, so merging a fresh table over a stale one refreshes it.
  void merge(const CountTable& other) {
    for (const auto& [k, v] : other.cells_) cells_[k] = v;
  }

 private:
  std::map<CountKey, BigCount> cells_;
};

namespace detail {

inline long long to_ll_checked(const BigCount& v, const char* what) {
  if (v < 0 || v > BigCount(std::numeric_limits<long long>::max()))
    throw resource_limit_error(std::string(what) + ": value does not fit a machine integer");
  return v.template convert_to<long long>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gaps within the first two regions
//
// A monoid whose gaps all lie in the first two regions of its multset M is
// exactly: the first region minus the origin (always gaps), plus any subset
// of the second region avoiding M.  So for fixed M the genus-g count is
// C(s2 - |M|, g + 1 - s1), and summing over multsets -- equivalently over
// shapes -- of first-region size s1 <= g counts the monoids whose gaps reach
// the second region.

namespace detail {

// total of p [+] p for a dim-1 partition given as its descending parts.
// Splits (i, j) with i <= j suffice: the pair is symmetric, and any split
// reading a zero on the left is dominated by (x - r, r).
inline long long self_min_sum_total(const std::vector<int>& a) {
  const int r = static_cast<int>(a.size());
  long long tot = 0;
  for (int x = 0; x <= 2 * r - 1; ++x) {
    int best = INT_MAX;
    for (int i = std::max(0, x - r); 2 * i <= x; ++i) {
      const int j = x - i;
      const int v = a[static_cast<size_t>(i)] + (j < r ? a[static_cast<size_t>(j)] : 0);
      best = std::min(best, v);
    }
    tot += best;
  }
  return tot;
}

// The slice of the two-region sum contributed by shapes of total s.
inline BigCount depth2_slice(int d, int s, long long g) {
  const long long pick = g + 1 - s;  // gaps still to choose in the second region
  if (d == 1) return binomial(s - 1, pick);
  BigCount acc = 0;
  if (d == 2) {
    // Dense parts lists: |M| is one horizontal point plus one vertical point
    // per distinct part value, and s2 = total(shape [+] shape) - s.
    for_each_partition_1d(s, [&](const std::vector<int>& a) {
      int distinct = 1;
      for (size_t i = 1; i < a.size(); ++i) distinct += a[i] != a[i - 1];
      const long long s2 = self_min_sum_total(a) - s;
      acc += binomial(s2 - (distinct + 1), pick);
    });
    return acc;
  }
  enumerate_partitions(d - 1, s, [&](const MultiPartition& p) {
    const Multset m = multset_from_shape(p);
    const RegionEngine eng(m);
    const auto sizes = eng.region_sizes(2);
    acc += binomial(sizes[1] - static_cast<long long>(m.size()), pick);
    return true;
  });
  return acc;
}

inline void check_depth2_caps(int d, long long g) {
  if (d < 1) throw std::invalid_argument("depth2_count: dim must be >= 1");
  if (g < 0) throw std::invalid_argument("depth2_count: genus must be >= 0");
  if (d > 4) throw resource_limit_error("depth2_count: dim capped at 4");
  static constexpr long long caps[] = {0, 4000, 120, 40, 25};
  if (g > caps[d])
    throw resource_limit_error("depth2_count: genus capped at " + std::to_string(caps[d]) +
                               " in dim " + std::to_string(d));
}

}  // namespace detail

struct Depth2Options {
  int threads = 1;
  // Also count the monoids whose gaps stop at the first region (one per
  // shape of total g + 1).
  bool include_depth1 = false;
};

// Number of genus-g monoids in dim d whose gaps reach exactly the second
// region.  Exact for every g; work grows with the number of shapes of total
// <= g, so large g in dims >= 3 is refused.
inline BigCount depth2_count(int d, long long g, const Depth2Options& opt = {}) {
  detail::check_depth2_caps(d, g);
  const int s_hi = static_cast<int>(opt.include_depth1 ? g + 1 : g);
  std::vector<BigCount> slice(static_cast<size_t>(s_hi) + 1);
  run_indexed_tasks(static_cast<size_t>(s_hi), opt.threads, [&](size_t i) {
    const int s = static_cast<int>(i) + 1;
    slice[static_cast<size_t>(s)] = detail::depth2_slice(d, s, g);
  });
  BigCount total = 0;
  for (int s = 1; s <= s_hi; ++s) total += slice[static_cast<size_t>(s)];
  return total;
}

// ---------------------------------------------------------------------------
// The genus tree
//
// Sorting a monoid's gaps in graded-lex order and removing them from N_0^d
// one at a time passes through additively closed sets only: a violation
// x + y = h with h removed and x, y present would need deg(x), deg(y) <
// deg(h), so x and y precede h in graded-lex order and are either gaps
// already removed or elements of the final monoid, whose closure rules the
// sum out.  The element removed at each step is irreducible in the current
// monoid, and conversely removing any irreducible beyond the newest gap
// extends the chain.  Hence the tree below visits every monoid of genus
// <= g_max exactly once.

namespace detail {

// Is x (a nonzero element of s) irreducible, i.e. not a + b with a, b
// nonzero elements of s?  One summand may be assumed of degree at most
// deg(x) / 2, so only that half of the box below x is scanned.
inline bool irreducible_in(const Gns& s, const Point& x) {
  const long long dx = x.degree();
  bool reducible = false;
  std::vector<int> bound(x.c.begin(), x.c.end());
  for_each_point_in_box(bound, [&](const Point& a) {
    if (reducible || a.is_zero()) return;
    if (2 * a.degree() > dx) return;
    if (s.contains(a) && s.contains(sub(x, a))) reducible = true;
  });
  return !reducible;
}

inline void check_tree_caps(int d, int g_max) {
  if (d < 1 || g_max < 0) throw std::invalid_argument("enumerate_gns_tree: bad arguments");
  if (d > 4) throw resource_limit_error("enumerate_gns_tree: dim capped at 4");
  static constexpr int caps[] = {0, 26, 16, 9, 6};
  if (g_max > caps[d])
    throw resource_limit_error("enumerate_gns_tree: genus capped at " + std::to_string(caps[d]) +
                               " in dim " + std::to_string(d));
}

}  // namespace detail

// Irreducible elements of s (its unique minimal generating set).  Every
// irreducible x outside the multset M has x - m a gap for each m in M below
// it, so M together with M + gap covers all candidates.
inline std::vector<Point> minimal_generators(const Gns& s) {
  const Multset m = multset(s);
  std::vector<Point> cand = m.points();
  for (const Point& a : m.points())
    for (const Point& h : s.gaps()) cand.push_back(add(a, h));
  std::sort(cand.begin(), cand.end(), GradedLexLess{});
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  std::vector<Point> out;
  for (const Point& x : cand)
    if (s.contains(x) && detail::irreducible_in(s, x)) out.push_back(x);
  return out;
}

// Depth-first walk of the genus tree, in genus order along each branch and
// graded-lex order across siblings.  visit sees each monoid of genus <=
// g_max exactly once, the gapless monoid first.
inline void enumerate_gns_tree(int d, int g_max,
                               const std::function<void(const Gns&)>& visit) {
  detail::check_tree_caps(d, g_max);
  // Every gap of every monoid counted lives in the box-bounded region for
  // g_max, which keeps the candidate boxes small.
  const ARegion allowed(d, std::max<long long>(g_max, 1));
  std::function<void(const Gns&, const Point*)> rec = [&](const Gns& s, const Point* last) {
    visit(s);
    if (s.genus() == g_max) return;
    const Multset m = multset(s);
    std::vector<Point> cand = m.points();
    for (const Point& a : m.points())
      for (const Point& h : s.gaps()) cand.push_back(add(a, h));
    std::sort(cand.begin(), cand.end(), GradedLexLess{});
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const Point& x : cand) {
      if (last && !graded_lex_less(*last, x)) continue;
      if (!allowed.contains(x)) continue;
      if (!s.contains(x)) continue;
      if (!detail::irreducible_in(s, x)) continue;
      std::vector<Point> child_gaps = s.gaps();
      child_gaps.push_back(x);
      rec(Gns::make(d, std::move(child_gaps)), &x);
    }
  };
  rec(Gns::make(d, {}), nullptr);
}

// Monoids at each genus 0..g_max: keys ("total", d, g).
inline CountTable tree_counts(int d, int g_max) {
  std::vector<BigCount> n(static_cast<size_t>(g_max) + 1);
  enumerate_gns_tree(d, g_max, [&](const Gns& s) { ++n[static_cast<size_t>(s.genus())]; });
  CountTable t;
  for (int g = 0; g <= g_max; ++g)
    t.set({"total", d, g, -1, ""}, n[static_cast<size_t>(g)]);
  return t;
}

// Census refined by depth: keys ("by-depth", d, g, q) for every observed
// (genus, depth) pair; the gapless monoid lands at q = 0.
inline CountTable count_by_depth(int d, int g_max) {
  std::map<std::pair<long long, long long>, BigCount> acc;
  enumerate_gns_tree(d, g_max, [&](const Gns& s) {
    long long q = 0;
    if (!s.gaps().empty()) {
      const RegionEngine eng(multset(s));  // local: keeps the shared cache small
      for (const Point& h : s.gaps()) q = std::max<long long>(q, eng.region_index(h));
    }
    ++acc[{s.genus(), q}];
  });
  CountTable t;
  for (const auto& [k, v] : acc) t.set({"by-depth", d, k.first, k.second, ""}, v);
  return t;
}

// Monoids of genus 0..g_max whose multset is exactly m, as one traversal.
inline std::vector<BigCount> count_by_multset_series(const Multset& m, int g_max) {
  std::vector<BigCount> out(static_cast<size_t>(g_max) + 1);
  enumerate_gns_tree(m.dim(), g_max, [&](const Gns& s) {
    if (multset(s) == m) ++out[static_cast<size_t>(s.genus())];
  });
  return out;
}

inline BigCount count_by_multset(const Multset& m, int g) {
  if (g < 0) throw std::invalid_argument("count_by_multset: genus must be >= 0");
  return count_by_multset_series(m, g)[static_cast<size_t>(g)];
}

// Monoids whose multset has exactly one point per axis (a full labeling
// grid): keys ("rectangular", d, g).  In dim 1 this is every monoid.
inline CountTable rectangular_counts(int d, int g_max) {
  std::vector<BigCount> n(static_cast<size_t>(g_max) + 1);
  enumerate_gns_tree(d, g_max, [&](const Gns& s) {
    if (static_cast<int>(multset(s).size()) == d) ++n[static_cast<size_t>(s.genus())];
  });
  CountTable t;
  for (int g = 0; g <= g_max; ++g)
    t.set({"rectangular", d, g, -1, ""}, n[static_cast<size_t>(g)]);
  return t;
}

// ---------------------------------------------------------------------------
// Shapes of total 3
//
// A dim-2 monoid whose multset has shape [3] is a pair of partitions (the
// labels of the two gap classes, both nonempty); likewise for [2,1].  The
// [1,1,1] column equals the [3] column: transposing the plane is a
// genus-preserving bijection between the two families.

// Rule used for the pair conditions.
//   closure: the condition set certified equivalent to additive closure of
//     the reconstructed monoid (see is_valid_labeling); counts are exact.
//   symmetric_shave: a variant that applies the index shift in place of the
//     value decrement for [3], and the shift and decrement together on both
//     sides for [2,1].  For [3] it selects a different pair set whose count
//     nevertheless coincides with the closure rule (verified equal for all
//     g <= 40); for [2,1] it admits gap sets that are not additively closed
//     (first at genus 4: 10 vs 8).  Provided because reference tables for
//     [2,1] computed this way are in circulation.
enum class Shape3Rule { closure, symmetric_shave };

namespace detail {

// One dim-1 partition with the derived views the pair conditions consult.
struct Shape3Part {
  std::vector<int> parts;
  std::vector<int> self;       // parts of p [+] p
  std::vector<int> dec;        // every part minus one, zeros dropped
  std::vector<int> shift;      // parts[1..]
  std::vector<int> shift_dec;  // parts[1..], every part minus one
};

inline std::vector<int> self_min_sum_parts(const std::vector<int>& a) {
  const int r = static_cast<int>(a.size());
  std::vector<int> out;
  out.reserve(static_cast<size_t>(2 * r));
  for (int x = 0; x <= 2 * r - 1; ++x) {
    int best = INT_MAX;
    for (int i = std::max(0, x - r); 2 * i <= x; ++i) {
      const int j = x - i;
      const int v = a[static_cast<size_t>(i)] + (j < r ? a[static_cast<size_t>(j)] : 0);
      best = std::min(best, v);
    }
    out.push_back(best);
  }
  return out;
}

// u >= w componentwise, reading zeros past the ends (parts are positive, so
// a longer w can never be dominated).
inline bool parts_geq(const std::vector<int>& u, const std::vector<int>& w) {
  if (w.size() > u.size()) return false;
  for (size_t i = 0; i < w.size(); ++i)
    if (u[i] < w[i]) return false;
  return true;
}

inline std::vector<Shape3Part> shape3_universe(int total) {
  std::vector<Shape3Part> out;
  for_each_partition_1d(total, [&](const std::vector<int>& a) {
    Shape3Part p;
    p.parts = a;
    p.self = self_min_sum_parts(a);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i > 0) p.shift.push_back(a[i]);
      if (a[i] > 1) {
        p.dec.push_back(a[i] - 1);
        if (i > 0) p.shift_dec.push_back(a[i] - 1);
      }
    }
    out.push_back(std::move(p));
  });
  return out;
}

}  // namespace detail

// Genus-g counts for the shapes [3] and [2,1]: keys ("shape3", 2, g, -1,
// "[3]") and ("shape3", 2, g, -1, "[2,1]") for g = 0..g_max.
inline CountTable shape3_counts(int g_max, Shape3Rule rule = Shape3Rule::closure,
                                int threads = 1) {
  if (g_max < 0) throw std::invalid_argument("shape3_counts: g_max must be >= 0");
  if (g_max > 40) throw resource_limit_error("shape3_counts: genus capped at 40");
  std::vector<std::vector<detail::Shape3Part>> universe(static_cast<size_t>(g_max));
  for (int t = 1; t <= g_max - 1; ++t)
    universe[static_cast<size_t>(t)] = detail::shape3_universe(t);

  const bool strict = rule == Shape3Rule::closure;
  std::vector<BigCount> n3(static_cast<size_t>(g_max) + 1), n21(static_cast<size_t>(g_max) + 1);
  run_indexed_tasks(static_cast<size_t>(g_max) + 1, threads, [&](size_t gi) {
    const int g = static_cast<int>(gi);
    BigCount c3 = 0, c21 = 0;
    for (int a = 1; a <= g - 1; ++a) {
      for (const auto& p : universe[static_cast<size_t>(a)]) {
        for (const auto& q : universe[static_cast<size_t>(g - a)]) {
          // p labels the class nearer the origin, q the farther one.
          if (detail::parts_geq(p.self, q.parts) &&
              detail::parts_geq(q.self, strict ? p.dec : p.shift))
            ++c3;
          if (strict ? detail::parts_geq(p.parts, q.dec) && detail::parts_geq(q.parts, p.shift)
                     : detail::parts_geq(p.parts, q.shift_dec) &&
                           detail::parts_geq(q.parts, p.shift_dec))
            ++c21;
        }
      }
    }
    n3[gi] = std::move(c3);
    n21[gi] = std::move(c21);
  });

  CountTable t;
  for (int g = 0; g <= g_max; ++g) {
    t.set({"shape3", 2, g, -1, "[3]"}, n3[static_cast<size_t>(g)]);
    t.set({"shape3", 2, g, -1, "[2,1]"}, n21[static_cast<size_t>(g)]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// The degree-simplex family and coarse bounds

// The multset of all points of degree k has closed-form region sizes:
// s1 = C(k+d-1, d) and, already net of the multset itself,
// s2 = C(2k+d-1, d) - C(k+d, d).  count is the number of genus-g monoids
// with that multset and gaps within two regions, C(s2, g + 1 - s1).
struct SimplexFamily {
  long long s1 = 0;
  long long s2 = 0;
  BigCount count;
};

inline SimplexFamily simplex_family(int d, int k, long long g) {
  if (d < 1 || k < 1 || g < 0)
    throw std::invalid_argument("simplex_family: bad arguments");
  SimplexFamily f;
  f.s1 = detail::to_ll_checked(binomial(k + d - 1, d), "simplex_family");
  f.s2 = detail::to_ll_checked(binomial(2LL * k + d - 1, d) - binomial(k + d, d),
                               "simplex_family");
  f.count = binomial(f.s2, g + 1 - f.s1);
  return f;
}

// Largest simplex-family count at genus g: a lower bound for the full
// genus-g census in dim d.
inline BigCount lower_bound_value(int d, long long g) {
  if (d < 1 || g < 0) throw std::invalid_argument("lower_bound_value: bad arguments");
  BigCount best = 0;
  for (int k = 1;; ++k) {
    if (binomial(k + d - 1, d) > g + 1) break;
    const BigCount c = simplex_family(d, k, g).count;
    if (c > best) best = c;
  }
  return best;
}

// Every gap set is a g-subset of the box-bounded region, so C(|A_g|, g)
// bounds the census from above.  Reported: the exact |A_g|, the analytic
// bound 2g * H_{2g}^(d-1) on it, and log2 C(|A_g|, g).
struct UpperBoundDiagnostics {
  BigCount a_cardinality;
  double harmonic_bound = 0.0;
  double log2_subsets = 0.0;
};

inline UpperBoundDiagnostics upper_bound_diagnostics(int d, long long g) {
  if (d < 1 || g < 1) throw std::invalid_argument("upper_bound_diagnostics: bad arguments");
  static constexpr long long caps[] = {0, 1'000'000'000'000LL, 50'000'000, 2'000'000, 100'000};
  if (d > 4) throw resource_limit_error("upper_bound_diagnostics: dim capped at 4");
  if (g > caps[d])
    throw resource_limit_error("upper_bound_diagnostics: genus capped at " +
                               std::to_string(caps[d]) + " in dim " + std::to_string(d));
  UpperBoundDiagnostics out;
  out.a_cardinality = ARegion(d, g).cardinality();
  double h = 0.0;
  if (d > 1)
    for (long long i = 1; i <= 2 * g; ++i) h += 1.0 / static_cast<double>(i);
  out.harmonic_bound = 2.0 * static_cast<double>(g) * std::pow(h, d - 1);
  const double n = out.a_cardinality.template convert_to<double>();
  const double gg = static_cast<double>(g);
  out.log2_subsets =
      (std::lgamma(n + 1.0) - std::lgamma(gg + 1.0) - std::lgamma(n - gg + 1.0)) / std::log(2.0);
  return out;
}

}  // namespace gns
