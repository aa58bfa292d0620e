// lucky: command-line front end for the lucky-number sieve, the exact
// count/n-th formulas, the star/circle arithmetic and the verification sweeps.
//
// Commands auto-size their tables and regrow geometrically on demand; an
// explicit --limit pins the table instead, and table-too-small errors then
// surface with a hint to raise it. Exit codes: 0 success (including sweeps
// with no counterexample), 2 a verification sweep found a counterexample,
// 1 usage or runtime errors.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lucky/analysis.hpp"
#include "lucky/arithmetic.hpp"
#include "lucky/formulas.hpp"
#include "lucky/lucky_primes.hpp"
#include "lucky/sieve.hpp"

using json = nlohmann::ordered_json;

namespace {

struct GlobalOptions {
    std::uint64_t limit = 0; // 0 = auto-size
    std::string engine = "indexed";
    std::string format = "text";
    unsigned threads = 1;
    std::string cache_path;
};

lucky::SieveEngine parse_engine(const std::string& name) {
    if (name == "compact") return lucky::SieveEngine::compact;
    if (name == "indexed") return lucky::SieveEngine::indexed;
    throw lucky::Error(lucky::ErrorCode::invalid_argument, "unknown engine: " + name);
}

void emit(const GlobalOptions& opts, const json& j, const std::string& text) {
    if (opts.format == "json")
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

// Runs fn(table) with a table covering at least `initial` values; grows
// geometrically on needs_larger_table unless the user pinned --limit.
template <typename Fn>
int with_table(const GlobalOptions& opts, std::uint64_t initial, Fn&& fn) {
    lucky::SieveEngine engine = parse_engine(opts.engine);
    if (opts.limit != 0) {
        if (initial > opts.limit)
            lucky::throw_needs_larger_table(initial, "this query does not fit the pinned table");
        lucky::LuckyTable table = lucky::LuckyTable::sieve_upto(opts.limit, engine);
        return fn(table);
    }
    std::optional<lucky::LuckyTable> seed;
    if (!opts.cache_path.empty() && std::filesystem::exists(opts.cache_path))
        seed = lucky::LuckyTable::load_file(opts.cache_path);
    lucky::GrowingTable grower = seed ? lucky::GrowingTable(std::move(*seed), engine)
                                      : lucky::GrowingTable(
                                            std::max<std::uint64_t>(initial, 4096), engine);
    grower.at_least(initial == 0 ? 1 : initial);
    int rc = grower.retrying([&](const lucky::LuckyTable& table) { return fn(table); });
    if (!opts.cache_path.empty() && !std::filesystem::exists(opts.cache_path))
        grower.current().save_file(opts.cache_path);
    return rc;
}

// Same, but guarantees the table holds at least `count` survivors.
template <typename Fn>
int with_table_count(const GlobalOptions& opts, std::uint64_t count, Fn&& fn) {
    // prime-like density: l_n sits near n (ln n + ln ln n)
    double n = static_cast<double>(std::max<std::uint64_t>(count, 8));
    std::uint64_t guess =
        static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n))) * 1.15) + 64;
    lucky::SieveEngine engine = parse_engine(opts.engine);
    if (opts.limit != 0) {
        lucky::LuckyTable table = lucky::LuckyTable::sieve_upto(opts.limit, engine);
        return fn(table);
    }
    lucky::GrowingTable grower(guess, engine);
    grower.with_count(count);
    return grower.retrying([&](const lucky::LuckyTable& table) {
        if (table.count() < count)
            lucky::throw_needs_larger_table(table.limit() * 2, "not enough survivors yet");
        return fn(table);
    });
}

std::uint64_t parse_real_floor(const std::string& text) {
    try {
        std::size_t pos = 0;
        if (text.find_first_of(".eE") == std::string::npos) {
            std::uint64_t v = std::stoull(text, &pos);
            if (pos == text.size()) return v;
        } else {
            long double v = std::stold(text, &pos);
            if (pos == text.size() && v >= 1.0L && v < 1e18L)
                return static_cast<std::uint64_t>(std::floor(v));
        }
    } catch (const std::exception&) {
    }
    throw lucky::Error(lucky::ErrorCode::invalid_argument, "cannot parse number: " + text);
}

// l1*(l2*(...*lk)...) with explicit right-nesting
std::string render_chain(const std::vector<std::uint64_t>& elements) {
    std::string nested;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        nested += std::to_string(elements[i]);
        if (i + 1 < elements.size()) nested += elements.size() - i > 2 ? "*(" : "*";
    }
    nested += std::string(elements.size() >= 2 ? elements.size() - 2 : 0, ')');
    return nested;
}

json sweep_json(const lucky::SweepReport& report) {
    json j;
    j["name"] = report.name;
    j["range"] = {report.lo, report.hi};
    j["counterexample_count"] = report.counterexample_count;
    j["counterexamples"] = report.counterexamples;
    json stats = json::object();
    for (const auto& [k, v] : report.stats) stats[k] = v;
    j["stats"] = stats;
    return j;
}

int finish_sweep(const GlobalOptions& opts, const lucky::SweepReport& report) {
    std::ostringstream text;
    text << report.name << ": range [" << report.lo << ", " << report.hi << "], "
         << report.counterexample_count << " counterexample(s)";
    for (const auto& [k, v] : report.stats) text << ", " << k << "=" << v;
    text << '\n';
    if (!report.counterexamples.empty()) {
        text << "  first counterexamples:";
        for (std::uint64_t x : report.counterexamples) text << ' ' << x;
        text << '\n';
    }
    emit(opts, sweep_json(report), text.str());
    return report.passed() ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lucky number sieve, exact formulas, star/circle arithmetic and verification sweeps"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    app.add_option("--limit", opts.limit, "pin the sieve table limit (default: auto-size)");
    app.add_option("--engine", opts.engine, "sieve engine: compact|indexed")
        ->check(CLI::IsMember({"compact", "indexed"}));
    app.add_option("--format", opts.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--threads", opts.threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache", opts.cache_path, "sieve table cache file (loaded if present, else written)");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "generate the table up to a limit");
    std::uint64_t sieve_limit = 0;
    std::string sieve_out;
    sieve_cmd->add_option("--limit", sieve_limit, "sieve bound")->required();
    sieve_cmd->add_option("--out", sieve_out, "write the table cache file");

    // nth / count
    auto* nth_cmd = app.add_subcommand("nth", "n-th value of the sieve sequence (index 1 = 2)");
    std::uint64_t nth_n = 0;
    std::string nth_method = "sieve";
    nth_cmd->add_option("N", nth_n, "index")->required();
    nth_cmd->add_option("--method", nth_method, "sieve|ceil|floor")
        ->check(CLI::IsMember({"sieve", "ceil", "floor"}));

    auto* count_cmd = app.add_subcommand("count", "how many lucky numbers are <= X");
    std::string count_x;
    std::string count_method = "sieve";
    count_cmd->add_option("X", count_x, "threshold (real values are floored)")->required();
    count_cmd->add_option("--method", count_method, "sieve|formula")
        ->check(CLI::IsMember({"sieve", "formula"}));

    // star / factor / divisors / arith
    auto* star_cmd = app.add_subcommand("star", "star operator L*N (L a sieve value: 2 or a lucky >= 3)");
    std::uint64_t star_l = 0, star_n = 0;
    star_cmd->add_option("L", star_l, "left operand")->required();
    star_cmd->add_option("N", star_n, "right operand")->required();

    auto* factor_cmd = app.add_subcommand("factor", "unique factorization into a star chain");
    std::uint64_t factor_n = 0;
    factor_cmd->add_option("N", factor_n, "value")->required();

    auto* div_cmd = app.add_subcommand("divisors", "divisor values under the circle operator");
    std::uint64_t div_n = 0;
    div_cmd->add_option("N", div_n, "value")->required();

    auto* arith_cmd = app.add_subcommand("arith", "arithmetic functions of N");
    std::uint64_t arith_n = 0;
    arith_cmd->add_option("N", arith_n, "value")->required();

    // mixed / order
    auto* mixed_cmd = app.add_subcommand("mixed", "factor N down to lucky-prime leaves");
    std::uint64_t mixed_n = 0;
    std::string mixed_start = "prime";
    mixed_cmd->add_option("N", mixed_n, "value")->required();
    mixed_cmd->add_option("--start", mixed_start, "prime|lucky")
        ->check(CLI::IsMember({"prime", "lucky"}));

    auto* order_cmd = app.add_subcommand("order", "fractional order of a prime or lucky number");
    std::uint64_t order_n = 0;
    order_cmd->add_option("N", order_n, "value")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "verification sweeps (exit 2 on counterexample)");
    verify_cmd->require_subcommand(1);
    std::uint64_t verify_max = 1000;
    auto* v_bertrand = verify_cmd->add_subcommand("bertrand", "a lucky number in [x, 2x] for x in [4, max]");
    auto* v_bounds = verify_cmd->add_subcommand("bounds", "sandwich bounds on the count function");
    auto* v_ident = verify_cmd->add_subcommand("identities", "formula = sieve oracle identities");
    auto* v_divb = verify_cmd->add_subcommand("divisor-bounds", "divisor-count bounds");
    for (auto* sub : {v_bertrand, v_bounds, v_ident, v_divb})
        sub->add_option("--max", verify_max, "sweep upper bound");

    // gaps / bench
    auto* gaps_cmd = app.add_subcommand("gaps", "gap records between consecutive values");
    std::uint64_t gaps_max_n = 1000;
    gaps_cmd->add_option("--max-n", gaps_max_n, "largest index n");

    auto* bench_cmd = app.add_subcommand("bench", "compare the sieve engines");
    std::uint64_t bench_limit = 1000000;
    bench_cmd->add_option("--limit", bench_limit, "sieve bound");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sieve_cmd) {
            lucky::SieveEngine engine = parse_engine(opts.engine);
            auto t0 = std::chrono::steady_clock::now();
            lucky::LuckyTable table = lucky::LuckyTable::sieve_upto(sieve_limit, engine);
            auto t1 = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            if (!sieve_out.empty()) table.save_file(sieve_out);
            json j;
            j["limit"] = table.limit();
            j["count"] = table.count();
            j["last"] = table.survivors().back();
            j["stages"] = table.stages_applied();
            j["engine"] = opts.engine;
            j["ms"] = lucky::format_real(ms);
            std::ostringstream text;
            text << "limit=" << table.limit() << " count=" << table.count()
                 << " last=" << table.survivors().back() << " stages=" << table.stages_applied()
                 << " engine=" << opts.engine << " ms=" << lucky::format_real(ms) << '\n';
            emit(opts, j, text.str());
            return 0;
        }

        if (*nth_cmd) {
            if (nth_method == "sieve") {
                return with_table_count(opts, nth_n == 0 ? 1 : nth_n, [&](const lucky::LuckyTable& t) {
                    std::uint64_t v = t.l_index(nth_n);
                    emit(opts, json{{"n", nth_n}, {"value", v}, {"method", nth_method}},
                         std::to_string(v) + "\n");
                    return 0;
                });
            }
            return with_table(opts, nth_n, [&](const lucky::LuckyTable& t) {
                std::uint64_t v = nth_method == "ceil" ? lucky::nth_formula_ceil(t, nth_n)
                                                       : lucky::nth_formula_floor(t, nth_n);
                emit(opts, json{{"n", nth_n}, {"value", v}, {"method", nth_method}},
                     std::to_string(v) + "\n");
                return 0;
            });
        }

        if (*count_cmd) {
            std::uint64_t x = parse_real_floor(count_x);
            return with_table(opts, x, [&](const lucky::LuckyTable& t) {
                std::uint64_t v =
                    count_method == "sieve" ? t.count_upto(x) : lucky::count_formula(t, x);
                emit(opts, json{{"x", x}, {"count", v}, {"method", count_method}},
                     std::to_string(v) + "\n");
                return 0;
            });
        }

        if (*star_cmd) {
            return with_table(opts, star_l, [&](const lucky::LuckyTable& t) {
                std::uint64_t v = lucky::star(t, star_l, star_n);
                emit(opts, json{{"l", star_l}, {"n", star_n}, {"value", v}},
                     std::to_string(v) + "\n");
                return 0;
            });
        }

        if (*factor_cmd) {
            return with_table(opts, factor_n, [&](const lucky::LuckyTable& t) {
                lucky::FactorChain chain = lucky::factor(t, factor_n);
                json j;
                j["n"] = factor_n;
                j["chain"] = chain.elements;
                j["rendered"] = render_chain(chain.elements);
                emit(opts, j,
                     std::to_string(factor_n) + " = " + render_chain(chain.elements) + "\n");
                return 0;
            });
        }

        if (*div_cmd) {
            return with_table(opts, div_n, [&](const lucky::LuckyTable& t) {
                std::vector<std::uint64_t> d = lucky::divisors(t, div_n);
                json j;
                j["n"] = div_n;
                j["divisors"] = d;
                j["tuple_count"] = lucky::divisor_tuples(t, div_n).size();
                j["distinct_tuple_count"] = lucky::distinct_tuple_count(t, div_n);
                std::ostringstream text;
                for (std::size_t i = 0; i < d.size(); ++i) text << (i ? " " : "") << d[i];
                text << '\n';
                emit(opts, j, text.str());
                return 0;
            });
        }

        if (*arith_cmd) {
            return with_table(opts, arith_n, [&](const lucky::LuckyTable& t) {
                std::uint64_t w = lucky::omega_small(t, arith_n);
                std::uint64_t W = lucky::omega_big(t, arith_n);
                std::uint64_t d0 = lucky::sigma(t, arith_n, 0);
                std::uint64_t s1 = lucky::sigma(t, arith_n, 1);
                std::uint64_t phi = lucky::totient(t, arith_n);
                json j;
                j["n"] = arith_n;
                j["omega"] = w;
                j["omega_total"] = W;
                j["divisor_count"] = d0;
                j["sigma1"] = s1;
                j["totient"] = phi;
                std::ostringstream text;
                text << "omega*(" << arith_n << ") = " << w << '\n'
                     << "Omega*(" << arith_n << ") = " << W << '\n'
                     << "d_circ(" << arith_n << ") = " << d0 << '\n'
                     << "sigma1(" << arith_n << ") = " << s1 << '\n'
                     << "phi_circ(" << arith_n << ") = " << phi << '\n';
                emit(opts, j, text.str());
                return 0;
            });
        }

        if (*mixed_cmd) {
            return with_table(opts, mixed_n, [&](const lucky::LuckyTable& t) {
                lucky::MixedStart start = mixed_start == "lucky" ? lucky::MixedStart::lucky_first
                                                                 : lucky::MixedStart::prime_first;
                lucky::MixedExpr expr = lucky::mixed_factor(t, mixed_n, start);
                std::string rendered = lucky::render_mixed(expr);
                json j;
                j["n"] = mixed_n;
                j["start"] = mixed_start;
                j["rendered"] = rendered;
                j["value"] = lucky::eval_mixed(t, expr);
                emit(opts, j, std::to_string(mixed_n) + " = " + rendered + "\n");
                return 0;
            });
        }

        if (*order_cmd) {
            return with_table(opts, order_n, [&](const lucky::LuckyTable& t) {
                lucky::OrderValue o = lucky::ord(t, order_n);
                json j;
                j["n"] = order_n;
                if (o.defined())
                    j["reciprocal"] = *o.reciprocal;
                else
                    j["reciprocal"] = nullptr;
                std::string text =
                    o.defined() ? (*o.reciprocal == 1 ? "1" : "1/" + std::to_string(*o.reciprocal))
                                : "undefined";
                emit(opts, j, text + "\n");
                return 0;
            });
        }

        if (*v_bertrand) {
            return with_table(opts, 2 * verify_max, [&](const lucky::LuckyTable& t) {
                return finish_sweep(opts, lucky::verify_bertrand(t, verify_max, opts.threads));
            });
        }

        if (*v_bounds) {
            return with_table(opts, verify_max, [&](const lucky::LuckyTable& t) {
                return finish_sweep(opts, lucky::sandwich_bounds_check(t, verify_max, opts.threads));
            });
        }

        if (*v_divb) {
            return with_table(opts, verify_max, [&](const lucky::LuckyTable& t) {
                return finish_sweep(opts, lucky::divisor_bound_check(t, verify_max, opts.threads));
            });
        }

        if (*v_ident) {
            // formula == sieve oracle over [1, max]; n-th values over
            // [2, max/10]; the partition identity over [1, min(max, 1000)]
            std::uint64_t nth_hi = std::max<std::uint64_t>(2, verify_max / 10);
            return with_table_count(opts, nth_hi + 1, [&](const lucky::LuckyTable& t) {
                if (t.limit() < verify_max)
                    lucky::throw_needs_larger_table(verify_max, "identities sweep");
                lucky::SweepReport report;
                report.name = "identities";
                report.lo = 1;
                report.hi = verify_max;
                for (std::uint64_t x = 1; x <= verify_max; ++x)
                    if (lucky::count_formula(t, x) != t.count_upto(x))
                        report.add_counterexample(x);
                std::uint64_t nth_checked = 0;
                for (std::uint64_t n = 2; n <= nth_hi && n < t.count(); ++n, ++nth_checked) {
                    std::uint64_t c = lucky::nth_formula_ceil(t, n);
                    if (c != lucky::nth_formula_floor(t, n) || c != t.l_index(n))
                        report.add_counterexample(n);
                }
                std::uint64_t expansion_hi = std::min<std::uint64_t>(verify_max, 1000);
                for (std::uint64_t x = 1; x <= expansion_hi; ++x)
                    if (!lucky::omega_sum_expansion_check(t, x)) report.add_counterexample(x);
                report.stats.emplace_back("count_checked", std::to_string(verify_max));
                report.stats.emplace_back("nth_checked", std::to_string(nth_checked));
                report.stats.emplace_back("expansion_checked", std::to_string(expansion_hi));
                return finish_sweep(opts, report);
            });
        }

        if (*gaps_cmd) {
            return with_table_count(opts, gaps_max_n + 1, [&](const lucky::LuckyTable& t) {
                lucky::GapStats stats = lucky::gap_stats(t, gaps_max_n);
                if (opts.format == "csv") {
                    lucky::write_gap_csv(std::cout, stats);
                    return 0;
                }
                json j;
                j["n_range"] = {stats.summary.n_lo, stats.summary.n_hi};
                j["max_ratio"] = lucky::format_real(stats.summary.max_ratio);
                j["witness_n"] = stats.summary.witness_n;
                j["max_gap"] = stats.summary.max_gap;
                j["max_gap_n"] = stats.summary.max_gap_n;
                json cps = json::array();
                for (auto [n, r] : stats.summary.checkpoints)
                    cps.push_back({{"n", n}, {"running_max", lucky::format_real(r)}});
                j["checkpoints"] = cps;
                std::ostringstream text;
                text << "n in [" << stats.summary.n_lo << ", " << stats.summary.n_hi
                     << "] max_ratio=" << lucky::format_real(stats.summary.max_ratio)
                     << " at n=" << stats.summary.witness_n << " max_gap=" << stats.summary.max_gap
                     << " at n=" << stats.summary.max_gap_n << '\n';
                emit(opts, j, text.str());
                return 0;
            });
        }

        if (*bench_cmd) {
            using Clock = std::chrono::steady_clock;
            auto t0 = Clock::now();
            lucky::LuckyTable compact = lucky::LuckyTable::sieve_upto(bench_limit, lucky::SieveEngine::compact);
            auto t1 = Clock::now();
            lucky::LuckyTable indexed = lucky::LuckyTable::sieve_upto(bench_limit, lucky::SieveEngine::indexed);
            auto t2 = Clock::now();
            bool equal = compact.count() == indexed.count() &&
                         std::equal(compact.survivors().begin(), compact.survivors().end(),
                                    indexed.survivors().begin());
            double compact_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            double indexed_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
            json j;
            j["limit"] = bench_limit;
            j["count"] = compact.count();
            j["equal"] = equal;
            j["compact_ms"] = lucky::format_real(compact_ms);
            j["indexed_ms"] = lucky::format_real(indexed_ms);
            j["ratio_compact_over_indexed"] = lucky::format_real(compact_ms / indexed_ms);
            std::ostringstream text;
            text << "limit=" << bench_limit << " count=" << compact.count() << " equal="
                 << (equal ? "yes" : "no") << " compact=" << lucky::format_real(compact_ms)
                 << "ms indexed=" << lucky::format_real(indexed_ms)
                 << "ms ratio=" << lucky::format_real(compact_ms / indexed_ms) << '\n';
            emit(opts, j, text.str());
            return equal ? 0 : 2;
        }
    } catch (const lucky::Error& e) {
        std::cerr << "error (" << lucky::to_string(e.code()) << "): " << e.what() << '\n';
        if (e.code() == lucky::ErrorCode::needs_larger_table ||
            (e.code() == lucky::ErrorCode::out_of_range && opts.limit != 0))
            std::cerr << "hint: raise --limit (or drop it to let the table auto-size)\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
