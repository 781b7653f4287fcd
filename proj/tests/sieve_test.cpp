#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "primewin/sieve.hpp"

using namespace primewin;
using namespace primewin::sieve;

namespace {

// Trial-division oracle, independent of the sieve and of is_prime.
bool trial_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t trial_count(uint64_t lo, uint64_t hi) {
    uint64_t c = 0;
    for (uint64_t v = lo; v <= hi; ++v)
        if (trial_prime(v)) ++c;
    return c;
}

} // namespace

TEST_CASE("is_prime basics") {
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK(is_prime(2));
    CHECK(is_prime(23));
    CHECK_FALSE(is_prime(25));
    CHECK(is_prime(1425172824437699411ULL));
    CHECK(is_prime(1425172824437699411ULL + 1476));
    CHECK_FALSE(is_prime(1425172824437699411ULL + 2));
    // strong pseudoprimes to single bases
    CHECK_FALSE(is_prime(2047));       // spsp(2)
    CHECK_FALSE(is_prime(3215031751)); // spsp(2,3,5,7)
}

TEST_CASE("is_prime agrees with a monolithic sieve up to 10^7") {
    const uint64_t limit = 10000000;
    const auto primes = primes_up_to(limit);
    size_t i = 0;
    uint64_t mismatches = 0;
    for (uint64_t n = 0; n <= limit; ++n) {
        const bool in_list = i < primes.size() && primes[i] == n;
        if (in_list) ++i;
        if (is_prime(n) != in_list) ++mismatches;
    }
    CHECK(mismatches == 0);
    CHECK(i == primes.size());
    CHECK(primes.size() == 664579); // pi(10^7)
}

TEST_CASE("primes_up_to small values") {
    CHECK(primes_up_to(1).empty());
    CHECK(primes_up_to(2) == std::vector<uint64_t>{2});
    CHECK(primes_up_to(10) == std::vector<uint64_t>{2, 3, 5, 7});
}

TEST_CASE("count_primes_in examples") {
    auto c = count_primes_in({2, 10});
    CHECK(c.count == 4);
    CHECK(c.first_prime == 2);
    c = count_primes_in({10, 12});
    CHECK(c.count == 1);
    CHECK(c.first_prime == 11);
    c = count_primes_in({24, 28});
    CHECK(c.count == 0);
    CHECK_FALSE(c.first_prime.has_value());
}

TEST_CASE("count_primes_in agrees with trial division on random intervals") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        const uint64_t lo = rng() % 10000 + 1;
        const uint64_t hi = lo + rng() % 200;
        const auto c = count_primes_in({lo, hi});
        CHECK(c.count == trial_count(lo, hi));
        if (c.count > 0) {
            CHECK(c.first_prime.has_value());
            uint64_t first = lo;
            while (!trial_prime(first)) ++first;
            CHECK(*c.first_prime == first);
        }
    }
}

TEST_CASE("segmentation invariance") {
    const Interval ivl{100000, 300000};
    const uint64_t reference = count_primes_in(ivl).count;
    for (uint64_t flags : {64, 1000, 4096, 65536}) {
        Config config;
        config.segment_flags = flags;
        CHECK(count_primes_in(ivl, config).count == reference);
    }
}

TEST_CASE("ceiling is enforced") {
    Config config;
    config.ceiling = 1000;
    CHECK_THROWS_AS(count_primes_in({1, 2000}, config), RangeTooLarge);
    CHECK(count_primes_in({1, 1000}, config).count == 168);
}

TEST_CASE("pi_identity_check examples and sampled pairs") {
    CHECK(pi_identity_check(2, 10));
    CHECK(pi_identity_check(4, 4));
    CHECK(pi_identity_check(7, 7));
    CHECK_THROWS_AS(pi_identity_check(10, 2), std::invalid_argument);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const uint64_t x = rng() % 10000 + 1;
        const uint64_t y = x + rng() % 10000;
        CHECK(pi_identity_check(x, y));
    }
}

TEST_CASE("max_gap_below oracle values") {
    // brute force over the oracle primes
    auto oracle = [](uint64_t limit) {
        uint64_t best_gap = 0, best_start = 0, prev = 0;
        for (uint64_t v = 2; v <= limit; ++v) {
            if (!trial_prime(v)) continue;
            if (prev && v - prev > best_gap) {
                best_gap = v - prev;
                best_start = prev;
            }
            prev = v;
        }
        return std::pair{best_gap, best_start};
    };
    CHECK(max_gap_below(30) == oracle(30));
    CHECK(max_gap_below(30) == std::pair<uint64_t, uint64_t>{6, 23});
    CHECK(max_gap_below(10) == oracle(10));
    CHECK(max_gap_below(100) == std::pair<uint64_t, uint64_t>{8, 89});
    CHECK(max_gap_below(1000) == oracle(1000));
}

TEST_CASE("for_each_prime spans segment boundaries correctly") {
    Config config;
    config.segment_flags = 16; // force many tiny segments
    SegmentedSieve sv(config);
    std::vector<uint64_t> got;
    sv.for_each_prime(1, 200, [&](uint64_t p) { got.push_back(p); });
    CHECK(got == primes_up_to(200));
}
