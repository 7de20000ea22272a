#include "spin_align.h"

#include <cstring>
#include <new>
#include <string>

#include "commands.hpp"
#include "errors.hpp"

using namespace spinalign;

struct sa_problem {
    AlignmentProblem value;
};

struct sa_report {
    std::string json;
    int exit_code = 0;
    std::optional<AlignmentProblem> problem;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <typename Fn>
sa_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return SA_OK;
    } catch (const nlohmann::json::parse_error& e) {
        set_error(e.what());
        return SA_ERR_PARSE;
    } catch (const DimensionError& e) {
        set_error(e.what());
        return SA_ERR_DIMENSION;
    } catch (const NotHermitianError& e) {
        set_error(e.what());
        return SA_ERR_NOT_HERMITIAN;
    } catch (const NotAStateError& e) {
        set_error(e.what());
        return SA_ERR_NOT_A_STATE;
    } catch (const nlohmann::json::exception& e) {
        set_error(e.what());
        return SA_ERR_PARSE;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return SA_ERR_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return SA_ERR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return SA_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return SA_ERR_INTERNAL;
    }
}

sa_report* make_report(CommandResult&& result) {
    auto* r = new sa_report;
    r->json = result.report.dump(2);
    r->exit_code = result.exit_code;
    r->problem = std::move(result.problem);
    return r;
}

sa_status require(bool ok, const char* message) {
    if (!ok) {
        set_error(message);
        return SA_ERR_ARGUMENT;
    }
    return SA_OK;
}

}  // namespace

extern "C" {

const char* sa_version(void) { return "0.1.0"; }

const char* sa_status_name(sa_status status) {
    switch (status) {
        case SA_OK: return "ok";
        case SA_ERR_ARGUMENT: return "invalid argument";
        case SA_ERR_PARSE: return "parse error";
        case SA_ERR_DIMENSION: return "dimension mismatch";
        case SA_ERR_NOT_HERMITIAN: return "not Hermitian";
        case SA_ERR_NOT_A_STATE: return "not a state";
        case SA_ERR_NO_VIOLATION: return "not a violation";
        case SA_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* sa_last_error(void) { return g_last_error.c_str(); }

sa_status sa_problem_parse_json(const char* json_text, sa_problem** out) {
    if (sa_status s = require(json_text && out, "null argument"); s != SA_OK) return s;
    return guarded([&] { *out = new sa_problem{problem_from_string(json_text)}; });
}

sa_status sa_problem_counterexample(sa_problem** out) {
    if (sa_status s = require(out != nullptr, "null argument"); s != SA_OK) return s;
    return guarded([&] { *out = new sa_problem{counterexample_fixture()}; });
}

sa_status sa_problem_to_json(const sa_problem* p, char** out_json) {
    if (sa_status s = require(p && out_json, "null argument"); s != SA_OK) return s;
    return guarded([&] {
        const std::string text = problem_to_json(p->value).dump(2);
        char* buf = new char[text.size() + 1];
        std::memcpy(buf, text.c_str(), text.size() + 1);
        *out_json = buf;
    });
}

sa_status sa_problem_violation_score(const sa_problem* p, double* out_score) {
    if (sa_status s = require(p && out_score, "null argument"); s != SA_OK) return s;
    return guarded([&] { *out_score = violation_score(p->value); });
}

sa_status sa_problem_polish(const sa_problem* p, long iters, uint64_t seed, sa_problem** out) {
    if (sa_status s = require(p && out, "null argument"); s != SA_OK) return s;
    double score = 0.0;
    if (sa_status s = guarded([&] { score = violation_score(p->value); }); s != SA_OK) return s;
    if (score <= 0.0) {
        set_error("polish: input problem does not violate the majorization relation");
        return SA_ERR_NO_VIOLATION;
    }
    return guarded([&] {
        *out = new sa_problem{polish_counterexample(p->value, iters, seed)};
    });
}

void sa_problem_free(sa_problem* p) { delete p; }

sa_status sa_reproduce(int with_timestamp, sa_report** out) {
    if (sa_status s = require(out != nullptr, "null argument"); s != SA_OK) return s;
    return guarded([&] { *out = make_report(cmd_reproduce(with_timestamp != 0)); });
}

sa_status sa_check(const sa_problem* p, double tol, int with_timestamp, sa_report** out) {
    if (sa_status s = require(p && out, "null argument"); s != SA_OK) return s;
    const double effective_tol = tol > 0.0 ? tol : kDefaultMajorizationTol;
    return guarded([&] {
        *out = make_report(cmd_check(p->value, effective_tol, with_timestamp != 0));
    });
}

sa_status sa_spectrum(const sa_problem* p, int with_timestamp, sa_report** out) {
    if (sa_status s = require(p && out, "null argument"); s != SA_OK) return s;
    return guarded([&] { *out = make_report(cmd_spectrum(p->value, with_timestamp != 0)); });
}

sa_status sa_verify_proposition(long trials, uint64_t seed, const char* ensemble, double tol,
                                int threads, int with_timestamp, sa_report** out) {
    if (sa_status s = require(out != nullptr, "null argument"); s != SA_OK) return s;
    const double effective_tol = tol > 0.0 ? tol : kDefaultMajorizationTol;
    return guarded([&] {
        const Ensemble e = ensemble ? ensemble_from_name(ensemble) : Ensemble::pure;
        *out = make_report(
            cmd_verify_prop(trials, seed, e, effective_tol, threads, with_timestamp != 0));
    });
}

void sa_search_options_init(sa_search_options* opt) {
    if (!opt) return;
    opt->mode = "free";
    opt->n = 3;
    opt->d = 2;
    opt->restarts = 100;
    opt->iters = 2000;
    opt->step_init = 0.25;
    opt->step_decay = 0.9;
    opt->seed = 42;
    opt->tol = kDefaultMajorizationTol;
    opt->threads = 1;
    opt->mu_json = nullptr;
}

sa_status sa_search(const sa_search_options* opt, int with_timestamp, sa_report** out) {
    if (sa_status s = require(opt && out, "null argument"); s != SA_OK) return s;
    return guarded([&] {
        SearchConfig config;
        config.mode = search_mode_from_name(opt->mode ? opt->mode : "free");
        config.n = opt->n;
        config.d = opt->d;
        config.restarts = opt->restarts;
        config.iters_per_restart = opt->iters;
        config.step_init = opt->step_init;
        config.step_decay = opt->step_decay;
        config.seed = opt->seed;
        config.tol = opt->tol > 0.0 ? opt->tol : kDefaultMajorizationTol;
        config.threads = opt->threads;
        if (opt->mu_json)
            config.mu = measure_from_json(nlohmann::json::parse(opt->mu_json), config.n);
        *out = make_report(cmd_search(config, with_timestamp != 0));
    });
}

const char* sa_report_json(const sa_report* r) { return r ? r->json.c_str() : ""; }

int sa_report_exit_code(const sa_report* r) { return r ? r->exit_code : 1; }

sa_status sa_report_problem(const sa_report* r, sa_problem** out) {
    if (sa_status s = require(r && out, "null argument"); s != SA_OK) return s;
    if (!r->problem) {
        set_error("report carries no problem");
        return SA_ERR_ARGUMENT;
    }
    return guarded([&] { *out = new sa_problem{*r->problem}; });
}

void sa_report_free(sa_report* r) { delete r; }

void sa_string_free(char* s) { delete[] s; }

}  // extern "C"
