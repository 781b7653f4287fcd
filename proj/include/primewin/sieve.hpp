#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "primewin/intmath.hpp"

// Prime generation and interval prime counting via an odd-only segmented
// sieve, plus deterministic 64-bit primality for spot checks beyond sieve
// range.

namespace primewin::sieve {

using intmath::Interval;

// Interval hi beyond the configured direct-sieve ceiling.
struct RangeTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntervalCount {
    Interval interval{1, 1};
    uint64_t count = 0;
    std::optional<uint64_t> first_prime;
};

struct Config {
    uint64_t segment_flags = uint64_t{1} << 22; // odd flags per segment
    uint64_t ceiling = 100'000'000'000;         // refuse to sieve beyond this
};

// Deterministic Miller-Rabin, exact for all n < 2^64.
bool is_prime(uint64_t n);

// All primes <= limit, by a monolithic odd-only sieve. Intended for base
// primes and test oracles; limit is bounded by available memory.
std::vector<uint64_t> primes_up_to(uint64_t limit);

// Streams the primality flags of every odd number in [lo, hi] through
// `visit(p)` for each prime p in order (2 included when in range).
// Used by the counting and gap-scanning entry points below.
class SegmentedSieve {
public:
    explicit SegmentedSieve(Config config = {});

    // Calls visit(p) for every prime p in [lo, hi], ascending.
    template <typename Visitor>
    void for_each_prime(uint64_t lo, uint64_t hi, Visitor&& visit);

    // Fills `flags` so flags[i] != 0 iff (base + 2i) is prime, for the
    // odd base..base+2(n-1). base must be odd and >= 3.
    void sieve_odd_segment(uint64_t base, std::vector<uint8_t>& flags);

    const Config& config() const { return config_; }

private:
    void ensure_base_primes(uint64_t limit);

    Config config_;
    std::vector<uint64_t> base_primes_; // odd primes, ascending
    uint64_t base_limit_ = 0;
};

IntervalCount count_primes_in(Interval interval, const Config& config = {});

// Checks count_primes_in against the cumulative identity
// pi[x,y] = pi(y) - pi(x) + (1 if x prime else 0). Test-scale oracle.
bool pi_identity_check(uint64_t x, uint64_t y);

// Largest difference between consecutive primes p < p' <= limit, with the
// smallest starting p achieving it. Requires at least two primes <= limit.
std::pair<uint64_t, uint64_t> max_gap_below(uint64_t limit, const Config& config = {});

// --- template implementation ---

template <typename Visitor>
void SegmentedSieve::for_each_prime(uint64_t lo, uint64_t hi, Visitor&& visit) {
    if (lo > hi) return;
    if (hi > config_.ceiling)
        throw RangeTooLarge("interval end exceeds direct-sieve ceiling");
    if (lo <= 2 && hi >= 2) visit(uint64_t{2});
    uint64_t base = lo < 3 ? 3 : (lo | 1);
    if (base > hi) return;
    ensure_base_primes(intmath::isqrt(hi));
    std::vector<uint8_t> flags;
    while (base <= hi) {
        const uint64_t span = std::min(config_.segment_flags, (hi - base) / 2 + 1);
        flags.assign(span, 1);
        sieve_odd_segment(base, flags);
        for (uint64_t i = 0; i < span; ++i)
            if (flags[i]) visit(base + 2 * i);
        if (base > hi - 2 * span) break; // avoid overflow near 2^64
        base += 2 * span;
    }
}

} // namespace primewin::sieve
