#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace forestpat {

// Counts overflow 64 bits quickly (n!, Bell-type values), so every count in
// the library is an arbitrary-precision integer.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt ipow(BigInt base, int exp) {
    BigInt r = 1;
    while (exp > 0) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

// (m)(m+1)...(m+len-1); the number of increasing forests on [len] with m pots.
inline BigInt rising_factorial(int m, int len) {
    BigInt r = 1;
    for (int i = 0; i < len; ++i) r *= (m + i);
    return r;
}

} // namespace forestpat
