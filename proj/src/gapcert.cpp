#include "primewin/gapcert.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "primewin/intmath.hpp"

namespace primewin::gapcert {

namespace {

using intmath::isqrt;

uint64_t parse_u64(const std::string& token, size_t line) {
    uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line, "expected base-10 integer, got '" + token + "'");
    return value;
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(uint8_t(line[i]))) ++i;
        size_t j = i;
        while (j < line.size() && !std::isspace(uint8_t(line[j]))) ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

} // namespace

GapTable load_gap_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open gap table: " + path);
    GapTable table;
    bool have_limit = false;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '#') {
            if (table.source.empty() && line.size() > 1)
                table.source = line.substr(line.find_first_not_of("# \t"));
            continue;
        }
        const auto tokens = split_ws(line);
        if (tokens.empty()) continue;
        if (!have_limit) {
            if (tokens.size() != 2 || tokens[0] != "verified_limit")
                throw ParseError(lineno, "expected header 'verified_limit <integer>'");
            table.verified_limit = parse_u64(tokens[1], lineno);
            have_limit = true;
            continue;
        }
        if (tokens.size() != 2)
            throw ParseError(lineno, "expected '<gap> <start_prime>'");
        const uint64_t gap = parse_u64(tokens[0], lineno);
        const uint64_t start = parse_u64(tokens[1], lineno);
        if (start > ~uint64_t{0} - gap)
            throw ParseError(lineno, "record end exceeds 64 bits");
        table.records.push_back({gap, start});
    }
    if (!have_limit) throw ParseError(lineno, "missing 'verified_limit' header");
    validate(table);
    return table;
}

void validate(const GapTable& table) {
    if (table.verified_limit == 0)
        throw ValidationError("verified_limit must be positive");
    uint64_t prev_gap = 0, prev_start = 0;
    for (size_t i = 0; i < table.records.size(); ++i) {
        const auto& r = table.records[i];
        const std::string where = "record " + std::to_string(i + 1) + " (gap " +
                                  std::to_string(r.gap) + ", start " +
                                  std::to_string(r.start) + ")";
        if (r.gap <= prev_gap)
            throw ValidationError(where + ": gaps must be strictly increasing");
        if (r.start <= prev_start)
            throw ValidationError(where + ": starts must be strictly increasing");
        if (r.start > 2 && r.gap % 2 != 0)
            throw ValidationError(where + ": gap must be even past start 2");
        if (!sieve::is_prime(r.start))
            throw ValidationError(where + ": start is not prime");
        if (!sieve::is_prime(r.start + r.gap))
            throw ValidationError(where + ": end is not prime");
        prev_gap = r.gap;
        prev_start = r.start;
    }
    if (!table.records.empty() && table.verified_limit < table.records.back().start)
        throw ValidationError("verified_limit below last record start");
}

uint64_t envelope(const GapTable& table, uint64_t x) {
    if (x > table.verified_limit)
        throw BeyondVerifiedLimit("x exceeds the table's verified_limit");
    // Records ascend in both start and gap, so the last record starting
    // below x carries the largest gap seen there.
    uint64_t best = 0;
    for (const auto& r : table.records) {
        if (r.start >= x) break;
        best = r.gap;
    }
    return best;
}

GapTable build_local_table(uint64_t limit, const sieve::Config& config) {
    GapTable table;
    table.verified_limit = limit;
    table.source = "generated locally from primes <= " + std::to_string(limit);
    sieve::SegmentedSieve sv(config);
    uint64_t prev = 0, record = 0;
    sv.for_each_prime(2, limit, [&](uint64_t p) {
        if (prev != 0 && p - prev > record) {
            record = p - prev;
            table.records.push_back({record, prev});
        }
        prev = p;
    });
    return table;
}

uint64_t certify_bound(const GapTable& table, std::vector<Violation>* violations) {
    validate(table);
    // Largest n whose whole band (n^2, (n+1)^2) lies below the limit.
    const uint64_t n0 = isqrt(table.verified_limit) - 1;
    if (n0 == 0) return 0;

    uint64_t first_violation = 0;
    for (const auto& r : table.records) {
        if (r.gap < 2) continue; // gap 1 has no interior composites
        // Composite run opened by this record.
        const uint64_t run_lo = r.start + 1;
        const uint64_t run_hi = r.start + r.gap - 1;
        // Only n with n^2 near the run can host it; scan a small window of
        // candidates around isqrt of the run.
        const uint64_t n_max = std::min(n0, r.gap - 1);
        uint64_t n_lo = isqrt(run_lo);
        n_lo = n_lo > 2 ? n_lo - 2 : 1;
        const uint64_t n_hi = std::min(n_max, isqrt(run_hi) + 2);
        for (uint64_t n = n_lo; n <= n_hi; ++n) {
            const uint64_t band_lo = n * n + 1;
            const uint64_t band_hi = n * n + 2 * n;
            const uint64_t lo = std::max(run_lo, band_lo);
            const uint64_t hi = std::min(run_hi, band_hi);
            if (lo > hi || hi - lo + 1 < n) continue;
            if (violations) violations->push_back({n, r});
            if (first_violation == 0 || n < first_violation) first_violation = n;
        }
    }
    return first_violation ? first_violation - 1 : n0;
}

} // namespace primewin::gapcert

