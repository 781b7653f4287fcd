#include "primewin/verifier.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

namespace primewin::verifier {

namespace {

using u128 = unsigned __int128;
using intmath::isqrt;
using intmath::s_term;
using intmath::theorem3_interval;
using intmath::theorem4_interval;
using intmath::triangular;

// Band of integers strictly inside (n^2, (n+1)^2).
Interval conj1_band(uint64_t n) {
    return {n * n + 1, n * n + 2 * n};
}

Interval two_primes_band(uint64_t k) {
    return {2 * triangular(k) + 1, 2 * triangular(k + 1) - 1};
}

Interval statement_interval(Statement st, uint64_t i) {
    switch (st) {
        case Statement::Conj1Direct: return conj1_band(i);
        case Statement::Theorem3: return theorem3_interval(i);
        case Statement::Theorem4: return theorem4_interval(i);
        case Statement::TwoPrimesBetweenDoubledTriangulars: return two_primes_band(i);
    }
    throw std::logic_error("unknown statement");
}

void require_within_ceiling(uint64_t n, const sieve::Config& config, Statement st) {
    const uint64_t hi = statement_interval(st, n).hi;
    if (hi > config.ceiling)
        throw sieve::RangeTooLarge("index " + std::to_string(n) +
                                   " needs sieving past the configured ceiling");
}

// Minimum prime count over the n+1 windows [a, a+n-1], a in
// [lo, lo+n], given the sorted primes inside [lo, lo+2n-2].
// The count only drops just past a prime, so checking a = lo and
// a = q+1 for each prime q covers every local minimum.
uint64_t min_window_count(uint64_t lo, uint64_t n, const std::vector<uint64_t>& primes) {
    uint64_t min_count = ~uint64_t{0};
    size_t begin = 0, end = 0; // primes in [a, a+n-1] are [begin, end)
    auto eval = [&](uint64_t a) {
        while (begin < primes.size() && primes[begin] < a) ++begin;
        if (end < begin) end = begin;
        while (end < primes.size() && primes[end] <= a + n - 1) ++end;
        min_count = std::min(min_count, uint64_t(end - begin));
    };
    eval(lo);
    for (uint64_t q : primes) {
        if (q + 1 > lo + n) break;
        eval(q + 1);
    }
    return min_count;
}

uint64_t conjecture1_count(uint64_t n, sieve::SegmentedSieve& sv,
                           std::vector<uint64_t>& primes) {
    if (u128(n + 1) * (n + 1) > sv.config().ceiling)
        throw sieve::RangeTooLarge("(n+1)^2 exceeds the configured ceiling");
    const Interval band = conj1_band(n);
    primes.clear();
    sv.for_each_prime(band.lo, band.hi, [&](uint64_t p) { primes.push_back(p); });
    return min_window_count(band.lo, n, primes);
}

VerificationOutcome from_interval_count(Statement st, uint64_t index,
                                        const sieve::IntervalCount& ic) {
    VerificationOutcome out;
    out.index = index;
    out.statement = st;
    out.interval = ic.interval;
    out.count = ic.count;
    out.witness = ic.first_prime;
    out.pass = ic.count >= required_count(st);
    return out;
}

} // namespace

const char* statement_name(Statement s) {
    switch (s) {
        case Statement::Conj1Direct: return "conj1";
        case Statement::Theorem3: return "theorem3";
        case Statement::Theorem4: return "theorem4";
        case Statement::TwoPrimesBetweenDoubledTriangulars: return "two-primes";
    }
    return "unknown";
}

std::optional<Statement> statement_from_name(const std::string& name) {
    if (name == "conj1") return Statement::Conj1Direct;
    if (name == "theorem3") return Statement::Theorem3;
    if (name == "theorem4") return Statement::Theorem4;
    if (name == "two-primes") return Statement::TwoPrimesBetweenDoubledTriangulars;
    return std::nullopt;
}

uint64_t required_count(Statement s) {
    return s == Statement::TwoPrimesBetweenDoubledTriangulars ? 2 : 1;
}

VerificationOutcome check_conjecture1(uint64_t n, const sieve::Config& config) {
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    sieve::SegmentedSieve sv(config);
    std::vector<uint64_t> primes;
    VerificationOutcome out;
    out.index = n;
    out.statement = Statement::Conj1Direct;
    out.interval = conj1_band(n);
    out.count = conjecture1_count(n, sv, primes);
    if (!primes.empty()) out.witness = primes.front();
    out.pass = out.count >= 1;
    return out;
}

VerificationOutcome check_theorem3(uint64_t n, const sieve::Config& config) {
    require_within_ceiling(n, config, Statement::Theorem3);
    return from_interval_count(Statement::Theorem3, n,
                               sieve::count_primes_in(theorem3_interval(n), config));
}

VerificationOutcome check_theorem4(uint64_t m, const sieve::Config& config) {
    require_within_ceiling(m, config, Statement::Theorem4);
    return from_interval_count(Statement::Theorem4, m,
                               sieve::count_primes_in(theorem4_interval(m), config));
}

VerificationOutcome check_two_primes_between_doubled_triangulars(
    uint64_t k, const sieve::Config& config) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    require_within_ceiling(k, config, Statement::TwoPrimesBetweenDoubledTriangulars);
    return from_interval_count(Statement::TwoPrimesBetweenDoubledTriangulars, k,
                               sieve::count_primes_in(two_primes_band(k), config));
}

bool check_equivalence(uint64_t n, const sieve::Config& config) {
    if (n < 2) throw std::invalid_argument("check_equivalence requires n >= 2");
    if (u128(n + 1) * (n + 1) > config.ceiling)
        throw sieve::RangeTooLarge("(n+1)^2 exceeds the configured ceiling");

    // (a) Window-set identity: the n+1 direct windows for parameter n vs the
    // theorem-4 intervals of the indices whose S_m lands in SetA(n^2).
    std::vector<Interval> direct;
    for (uint64_t a = n * n + 1; a <= n * n + n + 1; ++a)
        direct.push_back({a, a + n - 1});
    std::vector<Interval> via_s;
    for (uint64_t m = triangular(n); m < triangular(n + 1); ++m) {
        const uint64_t s = s_term(m);
        if (s < n * n + 1 || s > n * n + n + 1) return false;
        via_s.push_back(theorem4_interval(m));
    }
    auto by_lo = [](const Interval& x, const Interval& y) { return x.lo < y.lo; };
    std::sort(direct.begin(), direct.end(), by_lo);
    std::sort(via_s.begin(), via_s.end(), by_lo);
    if (direct != via_s) return false;

    // (b) The unified interval must match the band-specific branch for n^2
    // and every integer strictly inside (n^2, (n+1)^2).
    for (uint64_t x = n * n; x < (n + 1) * (n + 1); ++x) {
        const auto ctx = intmath::classify(x);
        Interval branch{0, 0};
        switch (ctx.cls) {
            case intmath::SquareClass::PerfectSquare: branch = {x + 1, x + ctx.s}; break;
            case intmath::SquareClass::SetA: branch = {x, x + ctx.s - 1}; break;
            case intmath::SquareClass::SetB: branch = {x - ctx.s + 1, x}; break;
        }
        if (theorem3_interval(x) != branch) return false;
    }
    return true;
}

void save_checkpoint(const std::string& path, const Checkpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << "format_version " << cp.format_version << '\n'
            << "statement " << statement_name(cp.statement) << '\n'
            << "next_index " << cp.next_index << '\n'
            << "completed_through " << cp.completed_through << '\n'
            << "min_count_seen " << cp.min_count_seen << '\n'
            << "argmin_index " << cp.argmin_index << '\n'
            << "created_at " << cp.created_at << '\n';
        if (!out.flush()) throw std::runtime_error("checkpoint write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("checkpoint rename failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint: " + path);
    Checkpoint cp;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key >> value))
            throw std::runtime_error("malformed checkpoint line: " + line);
        if (key == "format_version") cp.format_version = std::stoi(value);
        else if (key == "statement") {
            auto st = statement_from_name(value);
            if (!st) throw std::runtime_error("unknown statement in checkpoint: " + value);
            cp.statement = *st;
        }
        else if (key == "next_index") cp.next_index = std::stoull(value);
        else if (key == "completed_through") cp.completed_through = std::stoull(value);
        else if (key == "min_count_seen") cp.min_count_seen = std::stoull(value);
        else if (key == "argmin_index") cp.argmin_index = std::stoull(value);
        else if (key == "created_at") cp.created_at = std::stoll(value);
        else throw std::runtime_error("unknown checkpoint field: " + key);
    }
    if (cp.format_version != 1)
        throw std::runtime_error("unsupported checkpoint format_version");
    if (cp.completed_through + 1 != cp.next_index)
        throw std::runtime_error("inconsistent checkpoint indices");
    return cp;
}

namespace {

// Per-index prime counts for a contiguous index block, ascending. Interval
// statements are batched: a covering range is sieved once and the counts
// read off the sorted prime list.
std::vector<uint64_t> bulk_counts(Statement st, uint64_t a, uint64_t b,
                                  const sieve::Config& config) {
    std::vector<uint64_t> counts;
    counts.reserve(b - a + 1);
    sieve::SegmentedSieve sv(config);
    if (st == Statement::Conj1Direct) {
        std::vector<uint64_t> primes;
        for (uint64_t n = a; n <= b; ++n)
            counts.push_back(conjecture1_count(n, sv, primes));
        return counts;
    }
    constexpr uint64_t kSpanBudget = uint64_t{1} << 24;
    std::vector<uint64_t> primes;
    uint64_t i = a;
    while (i <= b) {
        Interval cover = statement_interval(st, i);
        uint64_t j = i;
        while (j < b) {
            const Interval next = statement_interval(st, j + 1);
            const uint64_t lo = std::min(cover.lo, next.lo);
            const uint64_t hi = std::max(cover.hi, next.hi);
            if (hi - lo + 1 > kSpanBudget) break;
            cover = {lo, hi};
            ++j;
        }
        if (cover.hi > config.ceiling)
            throw sieve::RangeTooLarge("index " + std::to_string(i) +
                                       " needs sieving past the configured ceiling");
        primes.clear();
        sv.for_each_prime(cover.lo, cover.hi, [&](uint64_t p) { primes.push_back(p); });
        for (uint64_t k = i; k <= j; ++k) {
            const Interval v = statement_interval(st, k);
            const auto lo_it = std::lower_bound(primes.begin(), primes.end(), v.lo);
            const auto hi_it = std::upper_bound(primes.begin(), primes.end(), v.hi);
            counts.push_back(uint64_t(hi_it - lo_it));
        }
        i = j + 1;
    }
    return counts;
}

VerificationOutcome recheck_index(Statement st, uint64_t index, const sieve::Config& config) {
    switch (st) {
        case Statement::Conj1Direct: return check_conjecture1(index, config);
        case Statement::Theorem3: return check_theorem3(index, config);
        case Statement::Theorem4: return check_theorem4(index, config);
        case Statement::TwoPrimesBetweenDoubledTriangulars:
            return check_two_primes_between_doubled_triangulars(index, config);
    }
    throw std::logic_error("unknown statement");
}

} // namespace

RangeSummary run_range(Statement statement, uint64_t from, uint64_t to,
                       const RangeOptions& options,
                       const std::optional<Checkpoint>& resume) {
    if (from == 0 || from > to) throw std::invalid_argument("require 1 <= from <= to");

    RangeSummary summary;
    summary.statement = statement;
    summary.from = from;
    summary.to = to;
    summary.min_count = ~uint64_t{0};

    uint64_t start = from;
    if (resume) {
        if (resume->statement != statement)
            throw CheckpointMismatch("checkpoint statement does not match run");
        if (resume->next_index < from || resume->next_index > to + 1)
            throw CheckpointMismatch("checkpoint index outside requested range");
        start = resume->next_index;
        summary.min_count = resume->min_count_seen;
        summary.argmin_index = resume->argmin_index;
        summary.completed_through = resume->completed_through;
        if (start > to) { // already finished
            summary.all_pass = true;
            return summary;
        }
    }

    unsigned threads = options.threads ? options.threads
                                       : std::max(1u, std::thread::hardware_concurrency());
    const uint64_t threshold = required_count(statement);
    const uint64_t block = std::max<uint64_t>(1, options.block);

    uint64_t next_block_start = start;
    while (next_block_start <= to) {
        // One wave of up to `threads` blocks, merged in index order so the
        // outcome is identical regardless of scheduling.
        struct Pending {
            uint64_t first;
            uint64_t last;
            std::future<std::vector<uint64_t>> counts;
        };
        std::vector<Pending> wave;
        for (unsigned t = 0; t < threads && next_block_start <= to; ++t) {
            const uint64_t first = next_block_start;
            const uint64_t last = std::min(to, first + block - 1);
            next_block_start = last + 1;
            wave.push_back({first, last,
                            std::async(std::launch::async, bulk_counts, statement, first,
                                       last, std::cref(options.sieve_config))});
        }
        for (auto& pending : wave) {
            const auto counts = pending.counts.get();
            for (uint64_t k = 0; k < counts.size(); ++k) {
                const uint64_t index = pending.first + k;
                const uint64_t count = counts[k];
                if (options.on_index) options.on_index(index, count);
                if (count < summary.min_count) {
                    summary.min_count = count;
                    summary.argmin_index = index;
                }
                if (count < threshold) {
                    summary.all_pass = false;
                    summary.completed_through = index;
                    summary.counterexample =
                        recheck_index(statement, index, options.sieve_config);
                    return summary;
                }
            }
            summary.completed_through = pending.last;
            if (!options.checkpoint_path.empty()) {
                Checkpoint cp;
                cp.statement = statement;
                cp.next_index = pending.last + 1;
                cp.completed_through = pending.last;
                cp.min_count_seen = summary.min_count;
                cp.argmin_index = summary.argmin_index;
                cp.created_at = int64_t(std::time(nullptr));
                save_checkpoint(options.checkpoint_path, cp);
            }
            if (options.on_progress) options.on_progress(pending.last, to);
        }
    }
    summary.all_pass = true;
    return summary;
}

} // namespace primewin::verifier
