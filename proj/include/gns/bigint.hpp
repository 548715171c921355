#pragma once

// Exact unbounded-integer arithmetic for counting results.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace gns {

using BigCount = boost::multiprecision::cpp_int;

// C(n, k), exactly; 0 whenever k < 0 or k > n (with n >= 0).
inline BigCount binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return BigCount(0);
  if (n - k < k) k = n - k;
  BigCount r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // exact at every step: r is C(n-k+i, i)
  }
  return r;
}

inline std::string to_decimal(const BigCount& v) { return v.str(); }

inline BigCount from_decimal(const std::string& s) { return BigCount(s); }

}  // namespace gns
