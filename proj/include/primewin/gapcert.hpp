#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "primewin/sieve.hpp"

// Certificate-based verification from a table of first-occurrence maximal
// prime gaps: derives the largest N such that the conjecture holds for all
// n <= N, at scales far beyond direct sieving.

namespace primewin::gapcert {

struct ParseError : std::runtime_error {
    ParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    size_t line;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BeyondVerifiedLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GapRecord {
    uint64_t gap;   // p' - p
    uint64_t start; // the prime p opening the gap
};

struct GapTable {
    std::vector<GapRecord> records; // ascending in both gap and start
    uint64_t verified_limit = 0;    // gap completeness known below this
    std::string source;             // provenance, from the file header
};

// Parses and validates the text format:
//   '#' comment lines, a "verified_limit <integer>" header line, then
//   "<gap> <start_prime>" records in ascending order.
// Validation covers monotonicity, the verified_limit invariant, and
// deterministic primality of both endpoints of every record.
GapTable load_gap_table(const std::string& path);

// Same validation applied to an in-memory table (used when the table is
// generated locally rather than loaded).
void validate(const GapTable& table);

// Largest record gap whose start is < x: an upper bound on every prime gap
// starting below x, by the table's completeness premise.
uint64_t envelope(const GapTable& table, uint64_t x);

// Builds a table from sieve data: every first-occurrence maximal gap among
// primes <= limit, with verified_limit = limit.
GapTable build_local_table(uint64_t limit, const sieve::Config& config = {});

// A gap record that would place n consecutive composites strictly inside
// (n^2, (n+1)^2), disproving the conjecture for that n.
struct Violation {
    uint64_t n;
    GapRecord record;
};

// Largest N such that the table rules out a counterexample for every n <= N.
// Any violations found along the way are appended to *violations when given.
uint64_t certify_bound(const GapTable& table, std::vector<Violation>* violations = nullptr);

} // namespace primewin::gapcert
