#include "primewin/intmath.hpp"

#include <bit>
#include <string>

namespace primewin::intmath {

namespace {

using u128 = unsigned __int128;

void require_positive(uint64_t n, const char* what) {
    if (n == 0) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

} // namespace

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    // Integer Newton iteration from an over-estimate; floating-point sqrt is
    // off by one for some n near 2^53 and above, so it is not used at all.
    uint64_t r = uint64_t{1} << ((std::bit_width(n) + 1) / 2);
    while (true) {
        uint64_t next = (r + n / r) / 2;
        if (next >= r) break;
        r = next;
    }
    while (u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

SquareContext classify(uint64_t n) {
    require_positive(n, "n");
    const uint64_t s = isqrt(n);
    SquareClass cls;
    if (s * s == n)
        cls = SquareClass::PerfectSquare;
    else if (n <= s * s + s + 1)
        cls = SquareClass::SetA;
    else
        cls = SquareClass::SetB;
    return {n, s, cls};
}

int g(uint64_t n) {
    require_positive(n, "n");
    const uint64_t s = isqrt(n);
    return s * s == n ? 1 : 0;
}

int beta_sign(uint64_t n) {
    require_positive(n, "n");
    const uint64_t s = isqrt(n);
    // n - s^2 - s is an integer; beta in (1,2) is never one, so the sign of
    // n - s^2 - s - beta is fixed by whether n - s^2 - s <= 1.
    return n <= s * s + s + 1 ? -1 : +1;
}

int64_t f(uint64_t n) {
    require_positive(n, "n");
    return int64_t(beta_sign(n)) * (1 - int64_t(isqrt(n)));
}

Interval theorem3_interval(uint64_t n) {
    require_positive(n, "n");
    const int64_t gn = g(n);
    const int64_t lo = int64_t(n) + gn;
    const int64_t hi = int64_t(n) + f(n) + gn;
    if (lo <= hi) return {uint64_t(lo), uint64_t(hi)};
    return {uint64_t(hi), uint64_t(lo)};
}

uint64_t triangular(uint64_t k) {
    require_positive(k, "k");
    const u128 t = u128(k) * (k + 1) / 2;
    if (t > ~uint64_t{0}) throw std::overflow_error("triangular overflows 64 bits");
    return uint64_t(t);
}

uint64_t square_plus_one(uint64_t k) {
    require_positive(k, "k");
    const u128 u = u128(k) * k + 1;
    if (u > ~uint64_t{0}) throw std::overflow_error("square_plus_one overflows 64 bits");
    return uint64_t(u);
}

uint64_t group_index(uint64_t m) {
    require_positive(m, "m");
    // Largest x with x(x+1)/2 <= m. Products taken in 128 bits, so no
    // overflow anywhere in the search range.
    uint64_t lo = 1, hi = 6074001000; // T_x > 2^64 beyond this
    while (lo < hi) {
        const uint64_t mid = lo + (hi - lo + 1) / 2;
        if (u128(mid) * (mid + 1) / 2 <= m)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

uint64_t s_term(uint64_t m) {
    require_positive(m, "m");
    const uint64_t x = group_index(m);
    const u128 s = u128(m) + (u128(x) * x - x) / 2 + 1;
    if (s > ~uint64_t{0}) throw std::overflow_error("s_term overflows 64 bits");
    return uint64_t(s);
}

Interval theorem4_interval(uint64_t m) {
    require_positive(m, "m");
    const uint64_t s = s_term(m);
    return {s, s + isqrt(s) - 1};
}

} // namespace primewin::intmath
