#pragma once

// Command-line front end. Exit codes: 0 success/match, 2 invalid input,
// 3 verification mismatch, 4 budget exceeded.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "newton_forge/report.hpp"

namespace newton_forge::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kMismatch = 3, kBudgetExceeded = 4, kInternal = 5 };

inline std::string read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(file), {});
}

/// --budget, then the instance's "budget", then NEWTON_FORGE_BUDGET, then the default.
inline std::uint64_t resolve_budget(std::uint64_t flag, const ProblemInstance& inst) {
    if (flag != 0) return flag;
    if (inst.budget) return *inst.budget;
    if (const char* env = std::getenv("NEWTON_FORGE_BUDGET")) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size() && v > 0) return v;
        } catch (const std::exception&) {
        }
        throw Error(ErrorCode::InvalidInput, std::string("NEWTON_FORGE_BUDGET is not a positive integer: ") + env);
    }
    return kDefaultBudget;
}

inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = lo; p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

struct ScanRow {
    std::uint64_t p;
    bool stable;
    Rational max_gap;
};

inline std::vector<ScanRow> scan(const IntMatrix& matrix, std::uint64_t p_min, std::uint64_t p_max) {
    ExponentMatrix j(matrix);
    FundamentalDomain domain = fundamental_domain(j);
    LowerPolygon hp = hodge_polygon(domain, hodge_numbers(domain));
    std::vector<ScanRow> rows;
    for (auto p : primes_between(p_min, p_max)) {
        if (gcd(Integer(p), j.det()) != 1) continue;
        PrimeContext ctx(p, j);
        bool stable = is_p_stable(ctx, domain).stable;
        Comparison cmp = compare(newton_polygon_theoretical(orbit_decomposition(ctx, domain)), hp);
        rows.push_back(ScanRow{p, stable, cmp.max_gap});
    }
    return rows;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in = std::cin) {
    CLI::App app{"Newton and Hodge polygons of diagonal exponential sums over finite fields", "newton_forge"};
    app.require_subcommand(1);
    bool as_json = false;
    bool timing = false;
    app.add_flag("--json", as_json, "Emit the structured JSON report");
    app.add_flag("--timing", timing, "Include wall-clock timing in reports");

    std::string file;
    std::uint64_t budget_flag = 0;
    std::uint64_t p_min = 2, p_max = 0;
    std::string what = "both", format = "tsv", out_path;
    unsigned threads = 0;

    auto* analyze_cmd = app.add_subcommand("analyze", "Theoretical analysis: domain, orbits, stability, polygons");
    analyze_cmd->add_option("file", file, "Instance JSON (default: stdin)");

    auto* verify_cmd = app.add_subcommand("verify", "Theoretical analysis plus character-sum verification");
    verify_cmd->add_option("file", file, "Instance JSON (default: stdin)");
    verify_cmd->add_option("--budget", budget_flag, "Maximum torus points per character sum");
    verify_cmd->add_option("--threads", threads, "Worker threads for torus enumeration (0 = all cores)");

    auto* scan_cmd = app.add_subcommand("scan", "Stability verdict and NP-HP gap over a range of primes");
    scan_cmd->add_option("file", file, "Instance JSON; only \"matrix\" is used (default: stdin)");
    scan_cmd->add_option("--pmin", p_min, "Smallest prime")->required();
    scan_cmd->add_option("--pmax", p_max, "Largest prime")->required();

    auto* emit_cmd = app.add_subcommand("emit", "Write Hodge/Newton polygon vertices as TSV or SVG");
    emit_cmd->add_option("file", file, "Instance JSON (default: stdin)");
    emit_cmd->add_option("--what", what, "hp | np | both");
    emit_cmd->add_option("--format", format, "tsv | svg");
    emit_cmd->add_option("--out", out_path, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count(); };

    try {
        if (scan_cmd->parsed()) {
            ProblemInstance inst = parse_instance(read_input(file, in), false);
            auto rows = scan(inst.matrix, p_min, p_max);
            if (as_json) {
                json arr = json::array();
                for (const auto& r : rows)
                    arr.push_back(json{{"p", r.p}, {"stable", r.stable}, {"max_gap", to_string(r.max_gap)}});
                out << arr.dump(2) << "\n";
            } else {
                out << "p\tstable\tmax_gap\n";
                for (const auto& r : rows)
                    out << r.p << "\t" << (r.stable ? "true" : "false") << "\t" << to_string(r.max_gap) << "\n";
            }
            return kOk;
        }

        ProblemInstance inst = parse_instance(read_input(file, in));

        if (emit_cmd->parsed()) {
            if (what != "hp" && what != "np" && what != "both") {
                err << "error: --what must be hp, np or both\n";
                return kInvalidInput;
            }
            if (format != "tsv" && format != "svg") {
                err << "error: unsupported format '" << format << "' (expected tsv or svg)\n";
                return kInvalidInput;
            }
            Analysis a = analyze(inst);
            std::string body;
            if (format == "tsv") {
                if (what == "both") body = "# hp\n" + polygon_tsv(a.hodge_polygon) + "# np\n" + polygon_tsv(a.newton_polygon);
                else body = polygon_tsv(what == "hp" ? a.hodge_polygon : a.newton_polygon);
            } else {
                std::vector<SvgLayer> layers;
                if (what != "np") layers.push_back({"HP", "#1f77b4", &a.hodge_polygon});
                if (what != "hp") layers.push_back({"NP", "#d62728", &a.newton_polygon});
                body = polygon_svg(layers);
            }
            std::ofstream file_out(out_path, std::ios::binary);
            if (!file_out) {
                err << "error: cannot write '" << out_path << "'\n";
                return kInvalidInput;
            }
            file_out << body;
            if (!file_out.flush()) {
                err << "error: write failed for '" << out_path << "'\n";
                return kInvalidInput;
            }
            return kOk;
        }

        Report report{analyze(inst), std::nullopt, std::nullopt, std::nullopt};
        if (verify_cmd->parsed()) {
            OracleOptions opts;
            opts.budget = resolve_budget(budget_flag, inst);
            opts.threads = threads;
            report = verify(inst, opts);
        }
        if (timing) report.seconds = elapsed();
        if (as_json)
            out << to_json(report).dump(2) << "\n";
        else
            out << to_text(report);

        if (verify_cmd->parsed()) {
            if (report.budget) return kBudgetExceeded;
            return report.empirical_match() ? kOk : kMismatch;
        }
        return kOk;
    } catch (const Error& e) {
        switch (e.code()) {
        case ErrorCode::InvalidInput:
        case ErrorCode::DetZero:
        case ErrorCode::NotPrime:
        case ErrorCode::NotCoprime:
            err << "error: " << e.what() << "\n";
            return kInvalidInput;
        case ErrorCode::BudgetExceeded:
            err << "budget exceeded: " << e.what() << "\n";
            return kBudgetExceeded;
        default:
            err << "internal error (" << to_string(e.code()) << "): " << e.what() << "\n";
            return kInternal;
        }
    }
}

}  // namespace newton_forge::cli
