#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "primewin/intmath.hpp"
#include "primewin/sieve.hpp"

// Per-index checks for the conjecture's three equivalent forms plus the
// two-primes-between-doubled-triangulars statement, and a resumable range
// driver over any of them.

namespace primewin::verifier {

using intmath::Interval;

enum class Statement {
    Conj1Direct,
    Theorem3,
    Theorem4,
    TwoPrimesBetweenDoubledTriangulars,
};

const char* statement_name(Statement s);
std::optional<Statement> statement_from_name(const std::string& name);

// How many primes the statement requires per index.
uint64_t required_count(Statement s);

struct VerificationOutcome {
    uint64_t index = 0;
    Statement statement = Statement::Conj1Direct;
    // For Conj1Direct this is the whole band (n^2+1, (n+1)^2-1) and `count`
    // is the minimum prime count over the n+1 windows inside it. For the
    // other statements it is the checked interval and its prime count.
    Interval interval{1, 1};
    uint64_t count = 0;
    std::optional<uint64_t> witness;
    bool pass = false;
};

struct Checkpoint {
    Statement statement = Statement::Conj1Direct;
    uint64_t next_index = 1;
    uint64_t completed_through = 0; // next_index - 1
    uint64_t min_count_seen = 0;
    uint64_t argmin_index = 0;
    int64_t created_at = 0; // unix epoch seconds
    int format_version = 1;
};

struct CheckpointMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Atomic write (temp file then rename) of the versioned key-value format.
void save_checkpoint(const std::string& path, const Checkpoint& cp);
Checkpoint load_checkpoint(const std::string& path);

struct RangeSummary {
    Statement statement = Statement::Conj1Direct;
    uint64_t from = 0;
    uint64_t to = 0;
    uint64_t completed_through = 0;
    bool all_pass = false;
    uint64_t min_count = 0;
    uint64_t argmin_index = 0;
    std::optional<VerificationOutcome> counterexample;
};

struct RangeOptions {
    sieve::Config sieve_config;
    uint64_t block = uint64_t{1} << 16; // checkpoint cadence, in indices
    unsigned threads = 0;               // 0 = hardware concurrency
    std::string checkpoint_path;        // empty = no checkpointing
    // Called after each completed block with (last completed index, range end).
    std::function<void(uint64_t, uint64_t)> on_progress;
    // Called for every evaluated index, in order. Used by the CLI's
    // per-index output formats; leave empty for summary-only runs.
    std::function<void(uint64_t index, uint64_t count)> on_index;
};

// Every n-length window strictly inside (n^2, (n+1)^2) contains a prime.
VerificationOutcome check_conjecture1(uint64_t n, const sieve::Config& config = {});

// count_primes_in(theorem3_interval(n)) >= 1.
VerificationOutcome check_theorem3(uint64_t n, const sieve::Config& config = {});

// count_primes_in(theorem4_interval(m)) >= 1; count is h(m).
VerificationOutcome check_theorem4(uint64_t m, const sieve::Config& config = {});

// At least two primes strictly between 2T_k and 2T_{k+1}.
VerificationOutcome check_two_primes_between_doubled_triangulars(
    uint64_t k, const sieve::Config& config = {});

// (a) Conjecture-1 windows for n coincide with the theorem-4 intervals of the
// indices m whose S_m lands in SetA(n^2); (b) the unified interval matches
// the band-specific branch for every integer in [n^2, (n+1)^2).
bool check_equivalence(uint64_t n, const sieve::Config& config = {});

// Evaluates `statement` for every index in [from, to], halting on the first
// counterexample. Resumes from `resume` when present.
RangeSummary run_range(Statement statement, uint64_t from, uint64_t to,
                       const RangeOptions& options = {},
                       const std::optional<Checkpoint>& resume = std::nullopt);

} // namespace primewin::verifier
