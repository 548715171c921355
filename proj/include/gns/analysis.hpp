#pragma once

// Root-finding and analytic diagnostics: the growth constants r_k, the
// density functions F_k with their roots c_k, the binomial profile G_k with
// its exact argmax, the truncated-series constants r'_e, and the scaled
// growth series behind the census plot.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "gns/bigint.hpp"
#include "gns/common.hpp"
#include "gns/counting.hpp"
#include "gns/partition_enum.hpp"

namespace gns {

struct RootResult {
  double value = 0.0;
  double residual = 0.0;  // |f(value)| on the bisected function
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

namespace detail {

// Bisection with both exit conditions enforced: final bracket width <= tol
// and |f| <= 10 * tol at the reported point.  Either sign orientation is
// accepted; equal signs at the endpoints signal a caller bug.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("bisect: tolerance must be positive");
  const double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0, lo, lo};
  if (fhi == 0.0) return {hi, 0.0, 0, hi, hi};
  if ((flo < 0) == (fhi < 0))
    throw std::logic_error("bisect: endpoints do not bracket a root");
  const double s = flo < 0 ? 1.0 : -1.0;
  for (int it = 1; it <= 200; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;  // double resolution exhausted
    const double fm = s * f(mid);
    if (fm <= 0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= tol && std::abs(fm) <= 10 * tol) return {mid, std::abs(fm), it, lo, hi};
  }
  throw precision_error("bisect: cannot reach the tolerance in double precision");
}

}  // namespace detail

// The unique root >= 1 of x^k = (x+1)^(k-1), bisected on [1, k] in the log
// domain (k ln x - (k-1) ln(x+1): the same root, no overflow, and a bounded
// derivative, so the residual contract is meaningful for every k).
inline RootResult r_k(int k, double tol = 1e-12) {
  if (k < 1) throw std::invalid_argument("r_k: k must be >= 1");
  if (!(tol > 0)) throw std::invalid_argument("r_k: tolerance must be positive");
  if (k == 1) return {1.0, 0.0, 0, 1.0, 1.0};  // x = (x+1)^0
  auto f = [k](double x) { return k * std::log(x) - (k - 1) * std::log(x + 1); };
  return detail::bisect(f, 1.0, static_cast<double>(k), tol);
}

// F_k(x) = k^k (1-x) x^k / ((k+1)x - 1)^(k+1); log-domain with explicit
// sign bookkeeping once k^k would overflow.
inline double f_k_eval(int k, double x) {
  if (k < 1) throw std::invalid_argument("f_k_eval: k must be >= 1");
  const double den = (k + 1.0) * x - 1.0;
  if (den == 0.0) throw std::invalid_argument("f_k_eval: pole at x = 1/(k+1)");
  if (k <= 80)
    return std::pow(static_cast<double>(k), k) * (1 - x) * std::pow(x, k) /
           std::pow(den, k + 1);
  double sign = 1.0;
  double mag = k * std::log(static_cast<double>(k));
  auto factor = [&](double v, double p) {
    if (sign == 0.0) return;
    if (v == 0.0) {
      sign = 0.0;
      return;
    }
    if (v < 0) {
      if (std::fmod(p, 2.0) != 0.0) sign = -sign;
      v = -v;
    }
    mag += p * std::log(v);
  };
  factor(1 - x, 1.0);
  factor(x, static_cast<double>(k));
  factor(den, -(k + 1.0));
  return sign == 0.0 ? 0.0 : sign * std::exp(mag);
}

// The largest root of F_k(x) = 1, inside (1/(k+1), k/(k+1)): F_k blows up
// just right of the pole and sits below 1 at the right end.  The right end
// degenerates for k = 1, where F_1(1) = 0 serves instead.
inline RootResult c_k(int k, double tol = 1e-12) {
  if (k < 1) throw std::invalid_argument("c_k: k must be >= 1");
  const double pole = 1.0 / (k + 1);
  const double hi = k == 1 ? 1.0 : static_cast<double>(k) / (k + 1);
  const double lo = pole + (hi - pole) * 1e-9;
  auto f = [k](double x) { return f_k_eval(k, x) - 1.0; };
  return detail::bisect(f, lo, hi, tol);
}

// G_k(x, g) = C(kx, g+1-x), exactly.
inline BigCount g_k(int k, long long x, long long g) {
  if (k < 1 || g < 0 || x < 1 || x > g + 1)
    throw std::invalid_argument("g_k: need k >= 1 and 1 <= x <= g+1");
  return binomial(static_cast<long long>(k) * x, g + 1 - x);
}

// The x in [1, g+1] maximizing G_k(x, g), smallest on ties.  Values left of
// ceil((g+1)/(k+1)) vanish; from there on each step multiplies by the exact
// integer ratio G(x+1)/G(x) = (g+1-x) prod_{i<=k}(kx+i) / prod_{i<=k+1}
// ((k+1)x - g - 1 + i), so the scan stays exact without recomputing
// binomials.
inline long long argmax_r(int k, long long g) {
  if (k < 1 || g < 0) throw std::invalid_argument("argmax_r: bad arguments");
  const long long x0 = (g + 1 + k) / (k + 1);  // first x with kx >= g+1-x
  BigCount cur = g_k(k, x0, g);
  BigCount best = cur;
  long long best_x = x0;
  for (long long x = x0; x < g + 1; ++x) {
    BigCount num = g + 1 - x;
    for (long long i = 1; i <= k; ++i) num *= static_cast<long long>(k) * x + i;
    BigCount den = 1;
    for (long long i = 1; i <= k + 1; ++i) den *= (k + 1) * x - g - 1 + i;
    cur = cur * num / den;
    if (cur > best) {
      best = cur;
      best_x = x + 1;
    }
  }
  return best_x;
}

// Truncated-series constant: the root > 1 of sum_{1 <= n <= N} p_e(n) x^-n
// = 1.  Dropped tail terms are positive, so the result is a lower estimate
// of the exact constant, improving as N grows.  Dims 0..2 use the product
// series; higher dims enumerate (and inherit its truncation cap).
inline RootResult r_prime(int e, int n_max, double tol = 1e-12) {
  if (e < 0 || n_max < 1) throw std::invalid_argument("r_prime: bad arguments");
  if (e >= 3 && n_max > kPartitionEnumCap)
    throw resource_limit_error("r_prime: truncation too deep for enumeration-backed dims");
  std::vector<double> p(static_cast<size_t>(n_max) + 1);
  if (e <= 2) {
    const auto c = series_coefficients(e, n_max);
    for (int n = 0; n <= n_max; ++n)
      p[static_cast<size_t>(n)] = c[static_cast<size_t>(n)].template convert_to<double>();
  } else {
    for (int n = 0; n <= n_max; ++n)
      p[static_cast<size_t>(n)] = count_partitions(e, n).template convert_to<double>();
  }
  auto h = [&](double x) {
    double s = 0.0;
    for (int n = n_max; n >= 1; --n) s = (s + p[static_cast<size_t>(n)]) / x;
    return s - 1.0;
  };
  const double lo = 1.0 + 1e-9;
  if (!(h(lo) > 0))
    throw std::invalid_argument("r_prime: truncation too small to bracket a root > 1");
  double hi = 2.0;
  while (h(hi) >= 0) hi *= 2;
  return detail::bisect(h, lo, hi, tol);
}

// r_k * ln(k) / k: the growth constants scale like k / ln k, so this ratio
// tends to 1.
inline double rk_asymptotic_ratio(int k, double tol = 1e-12) {
  if (k < 2) throw std::invalid_argument("rk_asymptotic_ratio: k must be >= 2");
  return r_k(k, tol).value * std::log(static_cast<double>(k)) / k;
}

// ---------------------------------------------------------------------------
// Scaled growth series for the two-region census plot

struct Fig5Row {
  long long g = 0;
  double inv_g = 0.0;
  double scaled = 0.0;  // r_4^(-sqrt g) * n^(1/sqrt g)
};

// One row per genus 2..g_max, reading ("depth2", 2, g) cells from counts.
// Log-domain throughout: exp(ln(n)/sqrt(g) - sqrt(g) ln(r_4)).
inline std::vector<Fig5Row> fig5_series(long long g_max, const CountTable& counts) {
  if (g_max < 2) throw std::invalid_argument("fig5_series: g_max must be >= 2");
  const double ln_r4 = std::log(r_k(4).value);
  std::vector<Fig5Row> out;
  out.reserve(static_cast<size_t>(g_max) - 1);
  for (long long g = 2; g <= g_max; ++g) {
    const auto cell = counts.get({"depth2", 2, g, -1, ""});
    if (!cell || *cell <= 0)
      throw std::invalid_argument("fig5_series: missing depth2 count for g=" +
                                  std::to_string(g));
    const double root_g = std::sqrt(static_cast<double>(g));
    const double ln_n = std::log(cell->template convert_to<double>());
    out.push_back({g, 1.0 / static_cast<double>(g), std::exp(ln_n / root_g - root_g * ln_r4)});
  }
  return out;
}

}  // namespace gns
