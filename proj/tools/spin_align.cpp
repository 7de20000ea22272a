// spin-align: command-line front end over the spin_align C API.
//
// Exit codes: 0 = relation holds / all checks pass, 1 = usage or input
// error, 2 = a majorization violation was found (the expected outcome for
// the built-in instance under `check`, and for a successful free-mode
// `search`).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spin_align.h"

namespace {

struct ReportDeleter {
    void operator()(sa_report* r) const { sa_report_free(r); }
};
struct ProblemDeleter {
    void operator()(sa_problem* p) const { sa_problem_free(p); }
};
using ReportPtr = std::unique_ptr<sa_report, ReportDeleter>;
using ProblemPtr = std::unique_ptr<sa_problem, ProblemDeleter>;

int fail(const std::string& message) {
    std::cerr << "spin-align: " << message << "\n";
    return 1;
}

int fail_status(sa_status status) {
    std::cerr << "spin-align: " << sa_status_name(status) << ": " << sa_last_error() << "\n";
    return 1;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return out.good();
}

ProblemPtr load_problem(const std::string& path, int& error) {
    std::string text;
    if (!read_file(path, text)) {
        error = fail("cannot read problem file '" + path + "'");
        return nullptr;
    }
    sa_problem* raw = nullptr;
    if (sa_status s = sa_problem_parse_json(text.c_str(), &raw); s != SA_OK) {
        error = fail_status(s);
        return nullptr;
    }
    return ProblemPtr(raw);
}

// spectra as flat CSV (series,index,value); only offered for the commands
// whose reports are spectrum-shaped
std::string spectra_csv(const std::string& report_json) {
    const nlohmann::json j = nlohmann::json::parse(report_json);
    std::ostringstream out;
    out << "series,index,value\n";
    out.precision(17);
    for (const char* key : {"target_spectrum", "h_spectrum", "operator_spectrum"}) {
        if (!j.contains(key)) continue;
        const auto& arr = j.at(key);
        for (std::size_t i = 0; i < arr.size(); ++i)
            out << key << "," << (i + 1) << "," << arr[i].get<double>() << "\n";
    }
    return out.str();
}

int emit_report(const sa_report* report, const std::string& out_path, const std::string& format) {
    std::string text;
    if (format == "csv") {
        text = spectra_csv(sa_report_json(report));
    } else {
        text = sa_report_json(report);
        text += "\n";
    }
    std::cout << text;
    if (!out_path.empty() && !write_file(out_path, text))
        return fail("cannot write '" + out_path + "'");
    return sa_report_exit_code(report);
}

int default_threads() {
    if (const char* env = std::getenv("SPIN_ALIGN_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin alignment toolkit: majorization checks, two-body proposition "
                 "verification, and violation search"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    bool no_timestamp = false;
    double tol = 0.0;  // 0 = library default
    int threads = default_threads();

    // reproduce
    auto* reproduce = app.add_subcommand(
        "reproduce", "rebuild the built-in three-qubit instance and check reference values");
    std::string emit_problem_path;
    reproduce->add_option("--out", out_path, "write the report to this path");
    reproduce->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    reproduce->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");
    reproduce->add_option("--emit-problem", emit_problem_path,
                          "also write the instance as a problem file");

    // check
    auto* check = app.add_subcommand("check", "majorization verdict for a problem file");
    std::string problem_path;
    check->add_option("problem", problem_path, "problem file (JSON)")->required();
    check->add_option("--tol", tol, "majorization tolerance (default 1e-9)");
    check->add_option("--out", out_path, "write the report to this path");
    check->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a problem's operators");
    spectrum->add_option("problem", problem_path, "problem file (JSON)")->required();
    spectrum->add_option("--out", out_path, "write the report to this path");
    spectrum->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    spectrum->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

    // verify-prop
    auto* verify = app.add_subcommand(
        "verify-prop", "sampling campaign over the two-body majorization statement");
    long trials = 1000;
    std::uint64_t seed = 1;
    std::string ensemble = "pure";
    verify->add_option("--trials", trials, "number of sampled instances")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "campaign seed");
    verify->add_option("--ensemble", ensemble, "pure or mixed")
        ->check(CLI::IsMember({"pure", "mixed"}));
    verify->add_option("--tol", tol, "majorization tolerance (default 1e-9)");
    verify->add_option("--threads", threads, "worker threads (env SPIN_ALIGN_THREADS)");
    verify->add_option("--out", out_path, "write the report to this path");
    verify->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

    // search
    auto* search = app.add_subcommand("search", "random-restart search for violations");
    std::string mode = "free";
    int n = 3, d = 2;
    long restarts = 100, iters = 2000;
    std::uint64_t search_seed = 42;
    double step_init = 0.25, step_decay = 0.9;
    std::string mu_arg, report_path;
    search->add_option("--mode", mode, "free or compatible")
        ->check(CLI::IsMember({"free", "compatible"}));
    search->add_option("--n", n, "number of parties")->check(CLI::PositiveNumber);
    search->add_option("--d", d, "local dimension")->check(CLI::Range(2, 64));
    search->add_option("--restarts", restarts, "independent restarts")
        ->check(CLI::PositiveNumber);
    search->add_option("--iters", iters, "iterations per restart")
        ->check(CLI::NonNegativeNumber);
    search->add_option("--seed", search_seed, "search seed");
    search->add_option("--step-init", step_init, "initial proposal step");
    search->add_option("--step-decay", step_decay, "step decay factor in (0,1)");
    search->add_option("--tol", tol, "violation threshold (default 1e-9)");
    search->add_option("--threads", threads, "worker threads (env SPIN_ALIGN_THREADS)");
    search->add_option("--mu", mu_arg,
                       "subset measure: JSON array or a path to one (required when n != 3)");
    search->add_option("--out", out_path, "write the winning configuration as a problem file");
    search->add_option("--report", report_path, "write the full search report to this path");
    search->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    const int with_timestamp = no_timestamp ? 0 : 1;

    if (reproduce->parsed()) {
        sa_report* raw = nullptr;
        if (sa_status s = sa_reproduce(with_timestamp, &raw); s != SA_OK) return fail_status(s);
        ReportPtr report(raw);
        if (!emit_problem_path.empty()) {
            sa_problem* fixture = nullptr;
            if (sa_status s = sa_report_problem(report.get(), &fixture); s != SA_OK)
                return fail_status(s);
            ProblemPtr fp(fixture);
            char* text = nullptr;
            if (sa_status s = sa_problem_to_json(fp.get(), &text); s != SA_OK)
                return fail_status(s);
            const bool ok = write_file(emit_problem_path, std::string(text) + "\n");
            sa_string_free(text);
            if (!ok) return fail("cannot write '" + emit_problem_path + "'");
        }
        return emit_report(report.get(), out_path, format);
    }

    if (check->parsed()) {
        int error = 0;
        ProblemPtr problem = load_problem(problem_path, error);
        if (!problem) return error;
        sa_report* raw = nullptr;
        if (sa_status s = sa_check(problem.get(), tol, with_timestamp, &raw); s != SA_OK)
            return fail_status(s);
        ReportPtr report(raw);
        return emit_report(report.get(), out_path, "json");
    }

    if (spectrum->parsed()) {
        int error = 0;
        ProblemPtr problem = load_problem(problem_path, error);
        if (!problem) return error;
        sa_report* raw = nullptr;
        if (sa_status s = sa_spectrum(problem.get(), with_timestamp, &raw); s != SA_OK)
            return fail_status(s);
        ReportPtr report(raw);
        return emit_report(report.get(), out_path, format);
    }

    if (verify->parsed()) {
        sa_report* raw = nullptr;
        if (sa_status s = sa_verify_proposition(trials, seed, ensemble.c_str(), tol, threads,
                                                with_timestamp, &raw);
            s != SA_OK)
            return fail_status(s);
        ReportPtr report(raw);
        return emit_report(report.get(), out_path, "json");
    }

    if (search->parsed()) {
        std::string mu_json;
        if (!mu_arg.empty()) {
            if (mu_arg.front() == '[') {
                mu_json = mu_arg;  // inline JSON
            } else if (!read_file(mu_arg, mu_json)) {
                return fail("cannot read measure file '" + mu_arg + "'");
            }
        }
        sa_search_options opt;
        sa_search_options_init(&opt);
        opt.mode = mode.c_str();
        opt.n = n;
        opt.d = d;
        opt.restarts = restarts;
        opt.iters = iters;
        opt.step_init = step_init;
        opt.step_decay = step_decay;
        opt.seed = search_seed;
        opt.tol = tol;
        opt.threads = threads;
        opt.mu_json = mu_json.empty() ? nullptr : mu_json.c_str();

        sa_report* raw = nullptr;
        if (sa_status s = sa_search(&opt, with_timestamp, &raw); s != SA_OK)
            return fail_status(s);
        ReportPtr report(raw);

        if (!out_path.empty()) {
            sa_problem* winner = nullptr;
            if (sa_status s = sa_report_problem(report.get(), &winner); s != SA_OK)
                return fail_status(s);
            ProblemPtr wp(winner);
            char* text = nullptr;
            if (sa_status s = sa_problem_to_json(wp.get(), &text); s != SA_OK)
                return fail_status(s);
            const bool ok = write_file(out_path, std::string(text) + "\n");
            sa_string_free(text);
            if (!ok) return fail("cannot write '" + out_path + "'");
        }
        return emit_report(report.get(), report_path, "json");
    }

    return fail("no subcommand given");
}
