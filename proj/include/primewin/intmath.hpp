#pragma once

#include <cstdint>
#include <stdexcept>

// Exact integer arithmetic for the closed-form interval formulas.
// Everything here is pure and integer-only; no floating point.

namespace primewin::intmath {

enum class SquareClass { PerfectSquare, SetA, SetB };

// n together with s = floor(sqrt(n)) and its band classification.
struct SquareContext {
    uint64_t n;
    uint64_t s;
    SquareClass cls;
};

// Inclusive integer interval, normalized so lo <= hi.
struct Interval {
    uint64_t lo;
    uint64_t hi;

    bool operator==(const Interval&) const = default;
    uint64_t length() const { return hi - lo + 1; }
    bool contains(uint64_t x) const { return lo <= x && x <= hi; }
};

// floor(sqrt(n)), exact for the full uint64_t range.
uint64_t isqrt(uint64_t n);

// Splits n >= 1 into its square context. Every n falls into exactly one of
// PerfectSquare, SetA (s^2 < n <= s^2+s+1) or SetB (s^2+s+2 <= n < (s+1)^2).
SquareContext classify(uint64_t n);

// Perfect-square indicator: 1 iff n is a perfect square.
int g(uint64_t n);

// Sign of n - s^2 - s - beta for any beta strictly between 1 and 2.
// The expression n - s^2 - s is an integer, so the sign depends only on
// whether it is <= 1 (SetA or perfect square, -1) or >= 2 (SetB, +1).
int beta_sign(uint64_t n);

// beta_sign(n) * (1 - isqrt(n)), may be negative.
int64_t f(uint64_t n);

// The unified one-prime interval [n+g(n), n+f(n)+g(n)], endpoints normalized
// so lo <= hi. Equals the band-specific interval for each class:
//   PerfectSquare: [n+1, n+s]
//   SetA:          [n,   n+s-1]
//   SetB:          [n-s+1, n]
Interval theorem3_interval(uint64_t n);

// k(k+1)/2
uint64_t triangular(uint64_t k);

// k^2 + 1
uint64_t square_plus_one(uint64_t k);

// Largest x with x(x+1)/2 <= m, i.e. the group that row m falls into.
uint64_t group_index(uint64_t m);

// m-th term of the ascending enumeration of all SetA bands:
// S_m = m + (x^2 - x)/2 + 1 with x = group_index(m).
uint64_t s_term(uint64_t m);

// [S_m, S_m + isqrt(S_m) - 1]; always nonempty.
Interval theorem4_interval(uint64_t m);

} // namespace primewin::intmath
