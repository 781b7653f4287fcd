// primewin: verification tool for primes in n-length windows between
// consecutive squares. See README.md for the command overview.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "primewin/gapcert.hpp"
#include "primewin/intmath.hpp"
#include "primewin/sieve.hpp"
#include "primewin/verifier.hpp"

namespace {

using namespace primewin;

enum class Format { Human, Csv, JsonLines };

struct CommonArgs {
    uint64_t from = 1;
    uint64_t to = 1;
    Format format = Format::Human;
    uint64_t segment_flags = 0; // 0 = library default
    uint64_t ceiling = 0;       // 0 = library default
    std::string checkpoint;
    std::string resume;
};

sieve::Config make_config(const CommonArgs& args) {
    sieve::Config config;
    if (args.segment_flags) config.segment_flags = args.segment_flags;
    if (args.ceiling) config.ceiling = args.ceiling;
    return config;
}

// Throttled liveness line on stderr; results stay on stdout.
struct ProgressReporter {
    using clock = std::chrono::steady_clock;
    clock::time_point started = clock::now();
    clock::time_point last = clock::now();
    uint64_t first_index;

    explicit ProgressReporter(uint64_t from) : first_index(from) {}

    void operator()(uint64_t done, uint64_t total) {
        const auto now = clock::now();
        if (now - last < std::chrono::seconds(2)) return;
        last = now;
        const double secs = std::chrono::duration<double>(now - started).count();
        const double rate = secs > 0 ? double(done - first_index + 1) / secs : 0;
        std::cerr << "progress: " << done << "/" << total << " (" << uint64_t(rate)
                  << " idx/s)\n";
    }
};

void print_csv_header(verifier::Statement st, std::ostream& out) {
    switch (st) {
        case verifier::Statement::Theorem4: out << "m,S_m,lo,hi,h\n"; break;
        case verifier::Statement::Conj1Direct: out << "n,band_lo,band_hi,min_window_count\n"; break;
        default: out << "index,lo,hi,count\n"; break;
    }
}

void print_index_row(verifier::Statement st, uint64_t index, uint64_t count,
                     Format format, std::ostream& out) {
    const intmath::Interval ivl =
        st == verifier::Statement::Conj1Direct
            ? intmath::Interval{index * index + 1, index * index + 2 * index}
        : st == verifier::Statement::Theorem3 ? intmath::theorem3_interval(index)
        : st == verifier::Statement::Theorem4
            ? intmath::theorem4_interval(index)
            : intmath::Interval{index * index + index + 1, index * index + 3 * index + 1};
    switch (format) {
        case Format::Csv:
            if (st == verifier::Statement::Theorem4)
                out << index << ',' << ivl.lo << ',' << ivl.lo << ',' << ivl.hi << ','
                    << count << '\n';
            else
                out << index << ',' << ivl.lo << ',' << ivl.hi << ',' << count << '\n';
            break;
        case Format::JsonLines:
            out << "{\"statement\":\"" << verifier::statement_name(st)
                << "\",\"index\":" << index << ",\"lo\":" << ivl.lo << ",\"hi\":" << ivl.hi
                << ",\"count\":" << count
                << ",\"pass\":" << (count >= verifier::required_count(st) ? "true" : "false")
                << "}\n";
            break;
        case Format::Human:
            break; // summary only
    }
}

int run_verify(const std::string& statement_name, const CommonArgs& args) {
    const auto st = verifier::statement_from_name(statement_name);
    if (!st) {
        std::cerr << "error: unknown statement '" << statement_name << "'\n";
        return 2;
    }
    if (args.from == 0 || args.from > args.to) {
        std::cerr << "error: require 1 <= from <= to\n";
        return 2;
    }

    verifier::RangeOptions options;
    options.sieve_config = make_config(args);
    options.checkpoint_path = args.checkpoint;
    ProgressReporter progress(args.from);
    options.on_progress = std::ref(progress);
    if (args.format != Format::Human) {
        if (args.format == Format::Csv) print_csv_header(*st, std::cout);
        options.on_index = [&](uint64_t index, uint64_t count) {
            print_index_row(*st, index, count, args.format, std::cout);
        };
    }

    std::optional<verifier::Checkpoint> resume;
    try {
        if (!args.resume.empty()) resume = verifier::load_checkpoint(args.resume);
        const auto summary = verifier::run_range(*st, args.from, args.to, options, resume);
        if (!summary.all_pass) {
            const auto& cx = *summary.counterexample;
            std::cerr << "COUNTEREXAMPLE at index " << cx.index << ": interval ["
                      << cx.interval.lo << ", " << cx.interval.hi << "] has " << cx.count
                      << " prime(s), needs " << verifier::required_count(*st) << '\n';
            return 1;
        }
        if (args.format == Format::Human)
            std::cout << "statement " << verifier::statement_name(*st) << ": all "
                      << (args.to - args.from + 1) << " indices pass; min count "
                      << summary.min_count << " at index " << summary.argmin_index << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_plot_data(uint64_t to, const std::string& out_path, const CommonArgs& args) {
    if (to == 0) {
        std::cerr << "error: --to must be >= 1\n";
        return 2;
    }
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty() && out_path != "-") {
        file.open(out_path, std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << '\n';
            return 2;
        }
        out = &file;
    }
    verifier::RangeOptions options;
    options.sieve_config = make_config(args);
    ProgressReporter progress(1);
    options.on_progress = std::ref(progress);
    *out << "m,S_m,lo,hi,h\n";
    options.on_index = [&](uint64_t m, uint64_t h) {
        const auto ivl = intmath::theorem4_interval(m);
        *out << m << ',' << ivl.lo << ',' << ivl.lo << ',' << ivl.hi << ',' << h << '\n';
    };
    try {
        const auto summary =
            verifier::run_range(verifier::Statement::Theorem4, 1, to, options);
        out->flush();
        if (!summary.all_pass) {
            std::cerr << "h(m) = " << summary.counterexample->count << " < 1 at m = "
                      << summary.counterexample->index << '\n';
            return 1;
        }
        std::cerr << "min h = " << summary.min_count << " at m = " << summary.argmin_index
                  << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_gap_cert(std::string table_path, const CommonArgs& args) {
    if (table_path.empty()) {
        if (const char* env = std::getenv("PRIMEWIN_GAP_TABLE")) table_path = env;
    }
    if (table_path.empty()) {
        std::cerr << "error: no gap table given (use --table or PRIMEWIN_GAP_TABLE)\n";
        return 2;
    }
    (void)args;
    try {
        const auto table = gapcert::load_gap_table(table_path);
        std::vector<gapcert::Violation> violations;
        const uint64_t bound = gapcert::certify_bound(table, &violations);
        std::cout << "records " << table.records.size() << '\n'
                  << "verified_limit " << table.verified_limit << '\n'
                  << "certified_bound " << bound << '\n';
        if (!violations.empty()) {
            for (const auto& v : violations)
                std::cerr << "violation at n = " << v.n << " from record (gap "
                          << v.record.gap << ", start " << v.record.start << ")\n";
            return 1;
        }
        return bound >= 1 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_s_seq(uint64_t single, const CommonArgs& args) {
    try {
        if (single != 0) {
            std::cout << intmath::s_term(single) << '\n';
            return 0;
        }
        if (args.from == 0 || args.from > args.to) {
            std::cerr << "error: require 1 <= from <= to\n";
            return 2;
        }
        std::cout << "m,S_m\n";
        for (uint64_t m = args.from; m <= args.to; ++m)
            std::cout << m << ',' << intmath::s_term(m) << '\n';
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_equivalence(const CommonArgs& args) {
    if (args.from < 2 || args.from > args.to) {
        std::cerr << "error: require 2 <= from <= to\n";
        return 2;
    }
    try {
        const auto config = make_config(args);
        for (uint64_t n = args.from; n <= args.to; ++n) {
            if (!verifier::check_equivalence(n, config)) {
                std::cerr << "equivalence FAILED at n = " << n << '\n';
                return 1;
            }
        }
        std::cout << "equivalence holds for n in [" << args.from << ", " << args.to
                  << "]\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for primes in windows between consecutive squares"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string statement = "conj1";
    std::string table_path;
    std::string out_path;
    uint64_t plot_to = 0;
    uint64_t single_index = 0;

    auto add_common = [&](CLI::App* cmd, bool with_range = true) {
        if (with_range) {
            cmd->add_option("--from", args.from, "first index (default 1)");
            cmd->add_option("--to", args.to, "last index")->required();
        }
        cmd->add_option("--segment-size", args.segment_flags,
                        "odd flags per sieve segment");
        cmd->add_option("--ceiling", args.ceiling, "direct-sieve ceiling override");
    };

    auto* verify = app.add_subcommand("verify", "run a statement over an index range");
    verify->add_option("--statement", statement,
                       "conj1 | theorem3 | theorem4 | two-primes");
    add_common(verify);
    verify
        ->add_option_function<std::string>(
            "--format",
            [&](const std::string& v) {
                if (v == "human") args.format = Format::Human;
                else if (v == "csv") args.format = Format::Csv;
                else if (v == "json-lines") args.format = Format::JsonLines;
                else throw CLI::ValidationError("--format", "unknown format " + v);
            },
            "human | csv | json-lines")
        ->expected(1);
    verify->add_option("--checkpoint", args.checkpoint, "checkpoint file to write");
    verify->add_option("--resume", args.resume, "checkpoint file to resume from");

    auto* plot = app.add_subcommand("plot-data", "emit m,S_m,lo,hi,h CSV rows");
    plot->add_option("--to", plot_to, "last index")->required();
    plot->add_option("--out", out_path, "output file (default stdout)");
    add_common(plot, false);

    auto* cert = app.add_subcommand("gap-cert", "certify a bound from a maximal-gap table");
    cert->add_option("--table", table_path, "gap table path (or PRIMEWIN_GAP_TABLE)");

    auto* sseq = app.add_subcommand("s-seq", "print terms of the sequence S");
    sseq->add_option("index", single_index, "single index m (prints S_m)");
    sseq->add_option("--from", args.from, "range start");
    sseq->add_option("--to", args.to, "range end");

    auto* equiv = app.add_subcommand("equivalence",
                                     "check the window-set identity over a range");
    add_common(equiv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (verify->parsed()) return run_verify(statement, args);
    if (plot->parsed()) return run_plot_data(plot_to, out_path, args);
    if (cert->parsed()) return run_gap_cert(table_path, args);
    if (sseq->parsed()) {
        if (single_index == 0 && sseq->count("index")) {
            std::cerr << "error: index must be >= 1\n";
            return 2;
        }
        return run_s_seq(single_index, args);
    }
    if (equiv->parsed()) return run_equivalence(args);
    return 2;
}
