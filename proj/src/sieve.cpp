#include "primewin/sieve.hpp"

namespace primewin::sieve {

namespace {

using u128 = unsigned __int128;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t(u128(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool strong_probable_prime(uint64_t n, uint64_t a, uint64_t d, int r) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

} // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for all n < 2^64 (Sorenson & Webster).
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!strong_probable_prime(n, a, d, r)) return false;
    return true;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    primes.push_back(2);
    if (limit < 3) return primes;
    // flags[i] corresponds to the odd number 2i+1; index 0 (the number 1)
    // is never read.
    const uint64_t n_odd = (limit - 1) / 2 + 1;
    std::vector<uint8_t> flags(n_odd, 1);
    for (uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (!flags[i]) continue;
        const uint64_t p = 2 * i + 1;
        for (uint64_t j = (p * p - 1) / 2; j < n_odd; j += p)
            flags[j] = 0;
    }
    for (uint64_t i = 1; i < n_odd; ++i)
        if (flags[i]) primes.push_back(2 * i + 1);
    return primes;
}

SegmentedSieve::SegmentedSieve(Config config) : config_(config) {}

void SegmentedSieve::ensure_base_primes(uint64_t limit) {
    if (limit <= base_limit_) return;
    // Grow geometrically so a run of slowly increasing requests does not
    // rebuild the cache every call.
    limit = std::max(limit, 2 * base_limit_);
    auto all = primes_up_to(limit);
    base_primes_.assign(all.begin() + (all.empty() ? 0 : 1), all.end()); // skip 2
    base_limit_ = limit;
}

void SegmentedSieve::sieve_odd_segment(uint64_t base, std::vector<uint8_t>& flags) {
    const uint64_t span = flags.size();
    if (span == 0) return;
    const uint64_t last = base + 2 * (span - 1);
    ensure_base_primes(intmath::isqrt(last));
    if (base == 1) flags[0] = 0;
    for (uint64_t p : base_primes_) {
        if (u128(p) * p > last) break;
        // first odd multiple of p that is >= max(base, p*p)
        uint64_t start = p * p;
        if (start < base) {
            uint64_t k = (base + p - 1) / p;
            if ((k & 1) == 0) ++k;
            start = k * p;
        }
        for (uint64_t j = start; j <= last; j += 2 * p) {
            flags[(j - base) / 2] = 0;
            if (j > last - 2 * p) break; // overflow guard near 2^64
        }
    }
}

IntervalCount count_primes_in(Interval interval, const Config& config) {
    IntervalCount result;
    result.interval = interval;
    SegmentedSieve sieve(config);
    sieve.for_each_prime(interval.lo, interval.hi, [&](uint64_t p) {
        if (result.count == 0) result.first_prime = p;
        ++result.count;
    });
    return result;
}

bool pi_identity_check(uint64_t x, uint64_t y) {
    if (x == 0 || x > y) throw std::invalid_argument("require 1 <= x <= y");
    if (y > 10'000'000) throw std::invalid_argument("pi_identity_check is test-scale only");
    auto primes = primes_up_to(y);
    const auto pi_of = [&](uint64_t v) {
        return uint64_t(std::upper_bound(primes.begin(), primes.end(), v) - primes.begin());
    };
    const uint64_t identity = pi_of(y) - pi_of(x) + (is_prime(x) ? 1 : 0);
    return count_primes_in({x, y}).count == identity;
}

std::pair<uint64_t, uint64_t> max_gap_below(uint64_t limit, const Config& config) {
    if (limit < 3) throw std::invalid_argument("need at least two primes <= limit");
    uint64_t best_gap = 0, best_start = 0, prev = 0;
    SegmentedSieve sieve(config);
    sieve.for_each_prime(2, limit, [&](uint64_t p) {
        if (prev != 0 && p - prev > best_gap) {
            best_gap = p - prev;
            best_start = prev;
        }
        prev = p;
    });
    return {best_gap, best_start};
}

} // namespace primewin::sieve
