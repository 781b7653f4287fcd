#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "primewin/intmath.hpp"

using namespace primewin::intmath;
using u128 = unsigned __int128;

namespace {

// Test-only oracle: the unique r with r^2 <= n < (r+1)^2, checked by
// big-integer squaring rather than by any root-finding of its own.
bool isqrt_correct(uint64_t n, uint64_t r) {
    return u128(r) * r <= n && u128(r + 1) * (r + 1) > n;
}

} // namespace

TEST_CASE("isqrt exact values and boundaries") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt_correct(1425172824437699411ULL, isqrt(1425172824437699411ULL)));
    CHECK(isqrt(1425172824437699411ULL) == 1193806024ULL);
    CHECK(isqrt(~uint64_t{0}) == 4294967295ULL);
}

TEST_CASE("isqrt against squaring oracle, random and adversarial") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20000; ++i) {
        const uint64_t n = rng();
        CHECK(isqrt_correct(n, isqrt(n)));
    }
    // values around perfect squares near 2^53, where double sqrt goes wrong
    for (uint64_t r = 94906265; r < 94906270; ++r) {
        const uint64_t sq = r * r;
        for (int64_t d = -2; d <= 2; ++d) {
            const uint64_t n = sq + uint64_t(d);
            CHECK(isqrt_correct(n, isqrt(n)));
        }
    }
}

TEST_CASE("classify splits each band correctly") {
    auto c5 = classify(5);
    CHECK(c5.s == 2);
    CHECK(c5.cls == SquareClass::SetA);
    auto c8 = classify(8);
    CHECK(c8.s == 2);
    CHECK(c8.cls == SquareClass::SetB);
    auto c9 = classify(9);
    CHECK(c9.s == 3);
    CHECK(c9.cls == SquareClass::PerfectSquare);
    CHECK_THROWS_AS(classify(0), std::invalid_argument);
}

TEST_CASE("classify is exhaustive and exclusive up to 10^5") {
    for (uint64_t n = 1; n <= 100000; ++n) {
        const auto ctx = classify(n);
        CHECK(ctx.s * ctx.s <= n);
        CHECK(n < (ctx.s + 1) * (ctx.s + 1));
        switch (ctx.cls) {
            case SquareClass::PerfectSquare: CHECK(ctx.s * ctx.s == n); break;
            case SquareClass::SetA:
                CHECK(ctx.s * ctx.s < n);
                CHECK(n <= ctx.s * ctx.s + ctx.s + 1);
                break;
            case SquareClass::SetB:
                CHECK(ctx.s * ctx.s + ctx.s + 2 <= n);
                CHECK(n < (ctx.s + 1) * (ctx.s + 1));
                break;
        }
    }
}

TEST_CASE("g is the perfect-square indicator") {
    CHECK(g(1) == 1);
    CHECK(g(10) == 0);
    CHECK(g(1000000) == 1);
    for (uint64_t n = 1; n <= 100000; ++n) {
        const uint64_t r = isqrt(n);
        CHECK(g(n) == (r * r == n ? 1 : 0));
    }
    CHECK_THROWS_AS(g(0), std::invalid_argument);
}

TEST_CASE("beta_sign examples and beta-independence in rational arithmetic") {
    CHECK(beta_sign(5) == -1);
    CHECK(beta_sign(8) == +1);
    CHECK(beta_sign(9) == -1);
    // sign of n - s^2 - s - p/q computed as sign of q(n - s^2 - s) - p
    const std::pair<int64_t, int64_t> betas[] = {{101, 100}, {3, 2}, {199, 100}};
    for (uint64_t n = 1; n <= 100000; ++n) {
        const int64_t d = int64_t(n) - int64_t(isqrt(n) * isqrt(n)) - int64_t(isqrt(n));
        for (auto [p, q] : betas) {
            const int64_t scaled = q * d - p;
            CHECK(beta_sign(n) == (scaled < 0 ? -1 : +1));
            CHECK(scaled != 0); // the denominator in the paper form is never zero
        }
    }
}

TEST_CASE("f examples") {
    CHECK(f(5) == 1);
    CHECK(f(8) == -1);
    CHECK(f(1) == 0);
    CHECK_THROWS_AS(f(0), std::invalid_argument);
}

TEST_CASE("theorem3_interval matches the per-band branch") {
    CHECK(theorem3_interval(9) == Interval{10, 12});
    CHECK(theorem3_interval(5) == Interval{5, 6});
    CHECK(theorem3_interval(8) == Interval{7, 8});
    CHECK(theorem3_interval(1) == Interval{2, 2});
    for (uint64_t n = 2; n <= 1000000; ++n) {
        const auto ctx = classify(n);
        Interval branch{0, 0};
        switch (ctx.cls) {
            case SquareClass::PerfectSquare: branch = {n + 1, n + ctx.s}; break;
            case SquareClass::SetA: branch = {n, n + ctx.s - 1}; break;
            case SquareClass::SetB: branch = {n - ctx.s + 1, n}; break;
        }
        CHECK(theorem3_interval(n) == branch);
    }
}

TEST_CASE("triangular and square_plus_one") {
    CHECK(triangular(1) == 1);
    CHECK(triangular(4) == 10);
    uint64_t sum = 0;
    for (uint64_t k = 1; k <= 1000; ++k) {
        sum += k;
        CHECK(triangular(k) == sum);
    }
    CHECK(triangular(1000) == 500500);
    CHECK(square_plus_one(1) == 2);
    CHECK(square_plus_one(4) == 17);
    CHECK(square_plus_one(10) == 101);
}

TEST_CASE("group_index brackets m between consecutive triangulars") {
    CHECK(group_index(1) == 1);
    CHECK(group_index(10) == 4);
    CHECK(group_index(9) == 3);
    for (uint64_t m = 1; m <= 20000; ++m) {
        const uint64_t x = group_index(m);
        CHECK(triangular(x) <= m);
        CHECK(m < triangular(x + 1));
    }
    CHECK_THROWS_AS(group_index(0), std::invalid_argument);
}

TEST_CASE("s_term reproduces the listed sequence and the generator") {
    const uint64_t listed[] = {2,  3,  5,  6,  7,  10, 11, 12, 13, 17,
                               18, 19, 20, 21, 26, 27, 28, 29, 30, 31};
    for (uint64_t m = 1; m <= 20; ++m) CHECK(s_term(m) == listed[m - 1]);
    CHECK(s_term(6) == 10);
    CHECK(s_term(15) == 26);

    // independent generator: walk k = 1, 2, ... emitting k^2+1 .. k^2+k+1
    uint64_t m = 0, prev = 0;
    for (uint64_t k = 1; m < 100000; ++k) {
        for (uint64_t v = k * k + 1; v <= k * k + k + 1 && m < 100000; ++v) {
            ++m;
            CHECK(s_term(m) == v);
            CHECK(s_term(m) > prev); // strictly increasing
            prev = v;
        }
    }
}

TEST_CASE("s_term offset identity s_term(m) - m = (x^2 - x)/2 + 1") {
    for (uint64_t m = 1; m <= 10000; ++m) {
        const uint64_t x = group_index(m);
        CHECK(s_term(m) - m == (x * x - x) / 2 + 1);
        // which is exactly U_x - T_x
        CHECK(square_plus_one(x) - triangular(x) == (x * x - x) / 2 + 1);
    }
}

TEST_CASE("theorem4_interval examples and window shape") {
    CHECK(theorem4_interval(1) == Interval{2, 2});
    CHECK(theorem4_interval(6) == Interval{10, 12});
    CHECK(theorem4_interval(10) == Interval{17, 20});
    for (uint64_t m = 1; m <= 20000; ++m) {
        const Interval ivl = theorem4_interval(m);
        const uint64_t k = isqrt(s_term(m));
        CHECK(ivl.length() == k);
        CHECK(ivl.lo >= k * k + 1);
        CHECK(ivl.hi <= k * k + 2 * k);
    }
}
