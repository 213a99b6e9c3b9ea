// Command-line front end over the nevlab C interface.

#include "nevlab/nevlab.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kVerdictFailed = 1, kInputError = 2, kNumericalError = 3 };

struct RunConfig {
    std::string command;
    std::string input;
    std::string out = "nevlab_out";
    double r_min = 1.0;
    double r_max = 20.0;
    int grid = 16;
    double tol = 1e-8;
    double epsilon = 0.01;
    std::uint64_t seed = 0;
    int count = 1000;
};

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using CurvePtr = std::unique_ptr<nl_curve, Deleter<nl_curve, nl_curve_free>>;
using TablePtr = std::unique_ptr<nl_table, Deleter<nl_table, nl_table_free>>;
using LocusPtr = std::unique_ptr<nl_locus, Deleter<nl_locus, nl_locus_free>>;
using HarnessPtr = std::unique_ptr<nl_harness, Deleter<nl_harness, nl_harness_free>>;
using ReportPtr = std::unique_ptr<nl_report, Deleter<nl_report, nl_report_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, nl_string_free>>;

/// Thrown for a failing C call; carries the exit code it maps to.
struct CallFailed {
    int exit_code;
};

void check(nl_status st, const char* operation, const std::string& input = {})
{
    if (st == NL_OK)
        return;
    if (st == NL_ERR_PARSE && !input.empty())
        std::cerr << input << ": " << nl_last_error() << "\n";
    else
        std::cerr << "error: " << operation << ": " << nl_status_name(st) << ": " << nl_last_error() << "\n";
    const bool input_problem = st == NL_ERR_PARSE || st == NL_ERR_VALIDATION || st == NL_ERR_ARGUMENT;
    throw CallFailed{input_problem ? kInputError : kNumericalError};
}

void write_file(const fs::path& path, const char* text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
}

std::vector<double> radius_grid(const RunConfig& cfg)
{
    std::vector<double> radii(static_cast<std::size_t>(cfg.grid));
    for (int k = 0; k < cfg.grid; ++k)
        radii[static_cast<std::size_t>(k)] = cfg.r_min + (cfg.r_max - cfg.r_min) * k / (cfg.grid - 1);
    return radii;
}

CurvePtr load_curve(const RunConfig& cfg)
{
    if (cfg.input.empty()) {
        std::cerr << "error: --input is required for " << cfg.command << "\n";
        throw CallFailed{kInputError};
    }
    nl_curve* raw = nullptr;
    check(nl_curve_load(cfg.input.c_str(), &raw), "load curve", cfg.input);
    return CurvePtr(raw);
}

bool run_characteristic(const RunConfig& cfg, const nl_curve* curve)
{
    const auto radii = radius_grid(cfg);
    nl_table* raw = nullptr;
    check(nl_table_compute(curve, radii.data(), radii.size(), cfg.tol, &raw), "characteristic table");
    TablePtr table(raw);

    char* text = nullptr;
    check(nl_table_csv(table.get(), &text), "characteristic csv");
    StringPtr csv(text);
    write_file(fs::path(cfg.out) / "characteristic.csv", csv.get());
    check(nl_table_json(table.get(), &text), "characteristic json");
    StringPtr json(text);
    write_file(fs::path(cfg.out) / "characteristic.json", json.get());

    double gap = 0.0;
    std::printf("%12s %18s %18s %18s\n", "r", "T_area", "T_jensen", "n(t)");
    for (std::size_t k = 0; k < nl_table_rows(table.get()); ++k) {
        double r, ta, tj, nt;
        check(nl_table_row(table.get(), k, &r, &ta, &tj, &nt), "table row");
        std::printf("%12.6g %18.10g %18.10g %18.10g\n", r, ta, tj, nt);
        gap = std::max(gap, std::abs(ta - tj));
    }
    const bool ok = gap <= 1e-6;
    std::printf("route gap %.3g (gate 1e-6) %s\n", gap, ok ? "ok" : "FAIL");
    return ok;
}

bool run_locus(const RunConfig& cfg, const nl_curve* curve)
{
    if (nl_curve_dimension(curve) < 2) {
        std::printf("locus: n = 1, u* is harmonic and the locus is empty\n");
        return true;
    }
    nl_locus* raw = nullptr;
    const nl_status st = nl_locus_trace(curve, cfg.r_max, &raw);
    if (st == NL_ERR_LOCUS && std::string(nl_last_error()).find("locus empty") != std::string::npos) {
        std::printf("locus: all exponent differences are constant; the locus is empty\n");
        return true;
    }
    check(st, "trace locus");
    LocusPtr locus(raw);

    char* text = nullptr;
    check(nl_locus_json(locus.get(), &text), "locus_summary.json");
    StringPtr json(text);
    write_file(fs::path(cfg.out) / "locus_summary.json", json.get());

    std::printf("r0 = %.6g, %zu branches\n", nl_locus_r0(locus.get()), nl_locus_branch_count(locus.get()));
    for (std::size_t k = 0; k < nl_locus_branch_count(locus.get()); ++k) {
        check(nl_locus_branch_csv(locus.get(), k, &text), "branch csv");
        StringPtr csv(text);
        write_file(fs::path(cfg.out) / ("branch_" + std::to_string(k) + ".csv"), csv.get());
        int i, j, active;
        double b, c;
        check(nl_locus_branch_info(locus.get(), k, &i, &j, &b, &c, &active), "branch info");
        std::printf("  branch %zu  pair (%d,%d)  b_k = %g  c_k = %.6g  %s\n", k, i, j, b, c,
                    active ? "active" : "inactive");
    }
    return true;
}

bool run_verify(const RunConfig& cfg, const nl_curve* curve)
{
    const auto radii = radius_grid(cfg);
    nl_report* raw = nullptr;
    check(nl_verify_bound(curve, radii.data(), radii.size(), cfg.epsilon, cfg.tol, &raw), "verify bound");
    ReportPtr report(raw);

    char* text = nullptr;
    check(nl_report_json(report.get(), &text), "report json");
    StringPtr json(text);
    write_file(fs::path(cfg.out) / "bound_report.json", json.get());
    check(nl_report_summary(report.get(), &text), "report summary");
    StringPtr summary(text);
    std::fputs(summary.get(), stdout);
    return nl_report_ok(report.get()) == 1;
}

bool run_growth(const RunConfig& cfg, const nl_curve* curve)
{
    double sigma_hat = 0.0, K_hat = 0.0;
    check(nl_curve_estimate_growth(curve, cfg.r_min, cfg.r_max, std::max(4, std::min(cfg.grid, 12)), &sigma_hat,
                                   &K_hat),
          "estimate growth");
    nlohmann::ordered_json j;
    j["r_min"] = cfg.r_min;
    j["r_max"] = cfg.r_max;
    j["sigma_hat"] = sigma_hat;
    j["K_hat"] = K_hat;
    write_file(fs::path(cfg.out) / "growth.json", (j.dump(2) + "\n").c_str());
    std::printf("growth: sigma_hat = %.6g, K_hat = %.6g\n", sigma_hat, K_hat);
    return true;
}

bool run_lemmas(const RunConfig& cfg)
{
    nl_harness* raw = nullptr;
    check(nl_harness_run(cfg.seed, cfg.count, &raw), "lemma harness");
    HarnessPtr harness(raw);
    char* text = nullptr;
    check(nl_harness_json(harness.get(), &text), "harness json");
    StringPtr json(text);
    write_file(fs::path(cfg.out) / "lemmas.json", json.get());

    double m1 = 0.0, m2 = 0.0;
    check(nl_harness_min_margins(harness.get(), &m1, &m2), "harness margins");
    const std::size_t failures = nl_harness_failures(harness.get());
    std::printf("lemma 1: %d instances, min margin %.6g\n", cfg.count, m1);
    std::printf("lemma 2: %d instances, min margin %.6g\n", cfg.count, m2);
    std::printf("failures: %zu\n", failures);
    return failures == 0;
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"nevlab: Nevanlinna-Cartan characteristics and growth bounds for holomorphic curves"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        auto* in = sub->add_option("--input,-i", cfg.input, "curve specification (YAML)");
        if (needs_input)
            in->required()->check(CLI::ExistingFile);
        sub->add_option("--out,-o", cfg.out, "output directory")->capture_default_str();
        sub->add_option("--rmin", cfg.r_min, "smallest radius of the grid")->capture_default_str();
        sub->add_option("--rmax", cfg.r_max, "largest radius of the grid")->capture_default_str();
        sub->add_option("--grid", cfg.grid, "number of radii (>= 8)")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "quadrature tolerance")->capture_default_str();
        sub->add_option("--epsilon", cfg.epsilon, "slack in the (2 + epsilon) factor of the bound")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "growth estimate, characteristic table, locus and bound check");
    add_common(analyze, true);
    auto* characteristic = app.add_subcommand("characteristic", "T(r) by both routes and n(t) on the grid");
    add_common(characteristic, true);
    auto* locus = app.add_subcommand("locus", "trace the equal-value locus of max Re P_j");
    add_common(locus, true);
    auto* lemmas = app.add_subcommand("lemmas", "randomized checks of the two disc lemmas");
    add_common(lemmas, false);
    lemmas->add_option("--count", cfg.count, "instances per lemma")->capture_default_str();
    auto* verify = app.add_subcommand("verify-bound", "check T(r) <= K C(n, sigma) r^(sigma+1) and its ingredients");
    add_common(verify, true);

    CLI11_PARSE(app, argc, argv);
    cfg.command = app.get_subcommands().front()->get_name();

    if (!(cfg.r_min > 0.0 && cfg.r_min < cfg.r_max)) {
        std::cerr << "error: need 0 < --rmin < --rmax\n";
        return kInputError;
    }
    if (!(cfg.tol > 0.0) || !(cfg.epsilon > 0.0)) {
        std::cerr << "error: --tol and --epsilon must be positive\n";
        return kInputError;
    }
    if (cfg.grid < 8) {
        std::cerr << "error: --grid must be at least 8\n";
        return kInputError;
    }
    if (cfg.count < 0) {
        std::cerr << "error: --count must be nonnegative\n";
        return kInputError;
    }

    try {
        fs::create_directories(cfg.out);
        bool ok = true;
        if (cfg.command == "lemmas") {
            ok = run_lemmas(cfg);
        } else {
            const CurvePtr curve = load_curve(cfg);
            if (cfg.command == "characteristic") {
                ok = run_characteristic(cfg, curve.get());
            } else if (cfg.command == "locus") {
                ok = run_locus(cfg, curve.get());
            } else if (cfg.command == "verify-bound") {
                ok = run_verify(cfg, curve.get());
            } else {
                ok = run_growth(cfg, curve.get());
                ok = run_characteristic(cfg, curve.get()) && ok;
                ok = run_locus(cfg, curve.get()) && ok;
                ok = run_verify(cfg, curve.get()) && ok;
            }
        }
        return ok ? kOk : kVerdictFailed;
    } catch (const CallFailed& e) {
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
