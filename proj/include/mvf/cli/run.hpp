#pragma once

#include <CLI11.hpp>

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mvf/io/csv.hpp"
#include "mvf/io/json_report.hpp"
#include "mvf/io/svg.hpp"
#include "mvf/zeta/checks.hpp"

namespace mvf::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_failure = 2;

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

inline std::vector<MultFn> parse_fns(const std::string& text) {
    if (text == "all") return {all_functions.begin(), all_functions.end()};
    std::vector<MultFn> out;
    for (const auto& item : split(text)) {
        auto fn = parse_fn(item);
        if (!fn) throw std::invalid_argument("unknown function '" + item + "' (expected f1..f4 or all)");
        out.push_back(*fn);
    }
    if (out.empty()) throw std::invalid_argument("no function selected");
    return out;
}

/// Non-negative integer, also accepting forms like 1e10.
inline std::uint64_t parse_count(const std::string& text) {
    std::size_t used = 0;
    long double v = 0;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size() || !(v >= 0) || v != std::floor(v) || v > 9.2233720368547758e18L)
        throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

inline double parse_real(const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + text + "'");
    return v;
}

/// "x^0.7" gives floor(x^0.7); a plain number is a fixed h.
inline std::uint64_t apply_h_rule(const std::string& rule, std::uint64_t x) {
    if (rule.rfind("x^", 0) == 0) {
        const double p = parse_real(rule.substr(2));
        if (!(p > 0 && p <= 1)) throw std::invalid_argument("h-rule exponent must lie in (0, 1]");
        return static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(x), p)));
    }
    return parse_count(rule);
}

/// Writes through a temporary file and a rename, so readers never see a partial report.
inline void write_atomic(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        out << text;
        if (!out.flush()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw std::runtime_error("write failed for " + path.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

struct Options {
    std::string fn = "all";
    std::string x = "0";
    std::string h;
    std::size_t N = 2;
    std::string Ts;
    std::string xs;
    std::string h_rule = "x^0.7";
    std::string precision;
    std::string out;
    std::string format = "json";
    unsigned threads = 0;
    bool timing = false;
    double tol = 0.05;
    double C1 = 1.0;
    double C2 = 1.0;
    std::size_t order = 12;
};

/// Runs one CLI invocation; the report goes to `out` unless --out names a file.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Mean values of multiplicative functions in short intervals"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output path (default: stdout)");
        sub->add_option("--format", o.format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
        sub->add_option("--threads", o.threads, "worker threads (default: MVF_THREADS or all cores)");
        sub->add_flag("--timing", o.timing, "include wall-clock timings (breaks byte-identical output)");
    };

    auto* sum = app.add_subcommand("sum", "exact sum of f over x < n <= x + h");
    sum->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    sum->add_option("--x", o.x, "left end (exclusive)");
    sum->add_option("--h", o.h, "interval length")->required();
    common(sum);

    auto* constants = app.add_subcommand("constants", "Pi_n and K_n of the main term");
    constants->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    constants->add_option("--N", o.N, "highest coefficient (0..8)");
    constants->add_option("--precision", o.precision, "extended (default) or double")
        ->check(CLI::IsMember({"extended", "double"}));
    common(constants);

    auto* predict = app.add_subcommand("predict", "main-term prediction for the interval sum");
    predict->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    predict->add_option("--x", o.x, "left end; 0 predicts the full sum up to h");
    predict->add_option("--h", o.h, "interval length")->required();
    predict->add_option("--N", o.N, "number of correction terms");
    predict->add_option("--C1", o.C1, "constant in D(x) = exp(C1 (ln x)^0.8)");
    predict->add_option("--C2", o.C2, "constant in the derived h threshold");
    common(predict);

    auto* compare = app.add_subcommand("compare", "sieve truth against the prediction");
    compare->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    compare->add_option("--x", o.x, "left end; 0 compares the full sum up to h");
    compare->add_option("--h", o.h, "interval length")->required();
    compare->add_option("--N", o.N, "number of correction terms");
    compare->add_option("--tol", o.tol, "relative tolerance for pass/fail");
    common(compare);

    auto* perron = app.add_subcommand("perron", "truncated Perron integral error scan");
    perron->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    perron->add_option("--x", o.x, "half-integer x (default 1000.5)");
    perron->add_option("--T", o.Ts, "comma list of heights (default 100,200,...,6400,10000)");
    common(perron);

    auto* moment = app.add_subcommand("zeta-moment", "second moment on the critical line, growth and arc checks");
    moment->add_option("--T", o.Ts, "comma list of heights (default 100,1000,3000)");
    common(moment);

    auto* series = app.add_subcommand("series", "exact Euler-form coefficients a, b, g_n");
    series->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    series->add_option("--N", o.order, "series order (>= 3)");
    common(series);

    auto* sweep = app.add_subcommand("sweep", "compare over a list of x with h from a rule");
    sweep->add_option("--fn", o.fn, "f1..f4, a comma list, or all");
    sweep->add_option("--xs", o.xs, "comma list of x values")->required();
    sweep->add_option("--h-rule", o.h_rule, "x^p or a fixed h");
    sweep->add_option("--N", o.N, "number of correction terms");
    sweep->add_option("--tol", o.tol, "relative tolerance for pass/fail");
    common(sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    auto* active = app.get_subcommands().front();
    const std::string cmd = active->get_name();
    if (o.threads) ::setenv("MVF_THREADS", std::to_string(o.threads).c_str(), 1);

    try {
        const auto t0 = std::chrono::steady_clock::now();
        auto elapsed = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };
        const bool svg = o.format == "svg";
        const bool csv = o.format == "csv";
        auto reject_format = [&](bool bad) {
            if (bad) throw std::invalid_argument("format " + o.format + " is not available for " + cmd);
        };
        io::Json report = io::envelope(cmd);
        std::string text;

        if (cmd == "sum") {
            reject_format(svg);
            const auto fns = detail::parse_fns(o.fn);
            const auto sums = interval_sums(fns, detail::parse_count(o.x), detail::parse_count(o.h));
            if (csv) {
                text = io::sum_csv(sums);
            } else {
                io::Json rows = io::Json::array();
                for (const auto& s : sums) rows.push_back(io::to_json(s));
                report["results"] = rows;
            }
        } else if (cmd == "series") {
            reject_format(svg || csv);
            const auto fns = detail::parse_fns(o.fn);
            if (o.order < 3 || o.order > 200) throw std::invalid_argument("series order must lie in [3, 200]");
            io::Json rows = io::Json::array();
            for (auto fn : fns) {
                const auto f = euler_form(fn, o.order);
                rows.push_back(io::to_json(f, tail_report(f)));
            }
            report["order"] = o.order;
            report["results"] = rows;
            report["discrepancies"] = io::exponent_flags(fns);
        } else if (cmd == "constants") {
            reject_format(svg || csv);
            const auto fns = detail::parse_fns(o.fn);
            const bool extended = o.precision != "double";
            TaylorConfig tc;
            if (!extended) tc.tolerance = 1e-13;
            std::vector<LocalRule> rules;
            for (auto fn : fns) rules.push_back(rule_of(fn));
            const bool with_a0 = fns.size() == all_functions.size();
            if (with_a0) rules.push_back(inv_tau_rule());
            const auto ex = pi_taylor(rules, o.N, tc);
            io::Json rows = io::Json::array();
            for (std::size_t i = 0; i < fns.size(); ++i) rows.push_back(io::to_json(ex[i], extended));
            report["N"] = o.N;
            report["precision"] = extended ? "extended" : "double";
            report["results"] = rows;
            if (with_a0) {
                RamanujanA0 a0;
                const auto prod = ramanujan_A0_product(1000000);
                a0.product = prod.value;
                a0.product_bound = prod.tail_bound;
                a0.euler_form = ex.back().K[0];
                a0.euler_form_bound = ex.back().error_budget;
                a0.prime_limit = 1000000;
                report["ramanujan_A0"] = io::to_json(a0);
            }
            report["discrepancies"] = io::exponent_flags(fns);
        } else if (cmd == "predict") {
            reject_format(svg || csv);
            const auto fns = detail::parse_fns(o.fn);
            const std::uint64_t x = detail::parse_count(o.x), h = detail::parse_count(o.h);
            const auto models = make_models(std::max<std::size_t>(o.N, 1));
            io::Json rows = io::Json::array();
            for (auto fn : fns) {
                const auto& m = models[static_cast<std::size_t>(fn)];
                const auto p = mvf::predict(m, x, h, o.N);
                io::Json K = io::Json::array();
                for (std::size_t n = 0; n <= o.N; ++n) K.push_back(x == 0 ? m.K_full[n] : m.K[n]);
                io::Json row = {{"fid", std::string(tag(fn))}, {"x", x},           {"h", h},
                                {"N", o.N},                    {"a", to_string(m.a)}, {"K", K},
                                {"prediction", p.value},       {"budget", p.remainder}, {"lagrange", p.lagrange}};
                if (x >= 10) {
                    const auto th = h_threshold(fn, static_cast<double>(x), o.C2);
                    const auto ct = choose_T(static_cast<double>(x), zeta_power_denominator(fn), o.C1);
                    row["thresholds"] = {{"theorem", th.theorem}, {"proof", th.proof}};
                    row["contour"] = {{"T", ct.T}, {"h_threshold", ct.h_threshold}};
                    row["alpha"] = to_string(admissible_alpha(zeta_power_denominator(fn)));
                } else {
                    row["thresholds"] = nullptr;
                }
                rows.push_back(row);
            }
            report["results"] = rows;
            auto flags = io::exponent_flags(fns);
            if (x >= 10) flags.push_back(io::discrepancy_json(io::threshold_discrepancy()));
            report["discrepancies"] = flags;
        } else if (cmd == "compare" || cmd == "sweep") {
            const auto fns = detail::parse_fns(o.fn);
            reject_format(cmd == "compare" && svg);
            const auto all = make_models(std::max<std::size_t>(o.N, 1));
            std::vector<AsymptoticModel> models;
            for (auto fn : fns) models.push_back(all[static_cast<std::size_t>(fn)]);
            std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
            if (cmd == "compare") {
                ranges.emplace_back(detail::parse_count(o.x), detail::parse_count(o.h));
            } else {
                for (const auto& item : detail::split(o.xs)) {
                    const auto x = detail::parse_count(item);
                    ranges.emplace_back(x, detail::apply_h_rule(o.h_rule, x));
                }
                if (ranges.empty()) throw std::invalid_argument("--xs is empty");
            }
            std::vector<PredictionReport> rows;
            for (auto [x, h] : ranges) {
                if (h == 0) throw std::invalid_argument("h must be at least 1");
                for (auto& r : mvf::compare(models, x, h, o.N, o.tol)) rows.push_back(r);
            }
            if (csv) {
                text = io::sweep_csv(rows);
            } else if (svg) {
                text = io::render_svg(io::sweep_plot(rows));
            } else {
                io::Json arr = io::Json::array();
                for (const auto& r : rows) arr.push_back(io::to_json(r, o.timing));
                if (cmd == "sweep") {
                    report["h_rule"] = o.h_rule;
                    report["N"] = o.N;
                }
                report["results"] = arr;
                auto flags = io::exponent_flags(fns);
                bool thresholds = false;
                for (const auto& r : rows) thresholds = thresholds || r.thresholds.has_value();
                if (thresholds) flags.push_back(io::discrepancy_json(io::threshold_discrepancy()));
                report["discrepancies"] = flags;
            }
        } else if (cmd == "perron") {
            const auto fns = detail::parse_fns(o.fn == "all" ? std::string("f3,f4") : o.fn);
            const double x = o.x == "0" ? 1000.5 : detail::parse_real(o.x);
            std::vector<double> Ts;
            for (const auto& item : detail::split(o.Ts)) Ts.push_back(detail::parse_real(item));
            if (Ts.empty()) Ts = default_perron_heights();
            const auto scans = perron_error_scan(fns, x, Ts);
            if (csv) {
                text = io::perron_csv(scans);
            } else if (svg) {
                text = io::render_svg(io::perron_plot(scans));
            } else {
                io::Json arr = io::Json::array();
                for (const auto& sc : scans) arr.push_back(io::to_json(sc));
                report["results"] = arr;
            }
        } else if (cmd == "zeta-moment") {
            reject_format(svg);
            std::vector<double> Ts;
            for (const auto& item : detail::split(o.Ts)) Ts.push_back(detail::parse_real(item));
            if (Ts.empty()) Ts = {100, 1000, 3000};
            const auto growth = growth_envelope(GridSpec::rectangle(0.5, 1.0, 6, 10.0, 1e4, 13));
            if (csv) {
                text = io::growth_csv(growth);
            } else {
                io::Json arr = io::Json::array();
                for (double T : Ts) {
                    const double m = second_moment(T);
                    arr.push_back({{"T", T}, {"moment", m}, {"ratio", m / (T * std::log(T))}});
                }
                report["results"] = arr;
                report["growth"] = {{"c", to_string(growth.c)},
                                    {"fittedK", growth.fitted_k},
                                    {"samples", growth.samples.size()}};
                const auto arc = arc_bounds_check(0.02);
                report["arc"] = {{"delta", arc.delta},
                                 {"max_zeta", arc.max_zeta},
                                 {"min_zeta2_scaled", arc.min_zeta2_scaled},
                                 {"zeta_bound_ok", arc.zeta_bound_ok},
                                 {"zeta2_bound_ok", arc.zeta2_bound_ok}};
            }
        }

        if (text.empty()) {
            if (o.timing) report["runtime_ms"] = elapsed();
            text = io::dump(report);
        }
        if (o.out.empty())
            out << text;
        else
            detail::write_atomic(o.out, text);
        return exit_ok;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const capacity_error& e) {
        err << "capacity error: " << e.what() << "\n";
        return exit_failure;
    } catch (const precision_error& e) {
        err << "precision error: " << e.what() << "\n";
        return exit_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

}  // namespace mvf::cli
