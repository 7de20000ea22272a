#include "commands.hpp"

#include <array>
#include <cmath>

namespace spinalign {

namespace {

// reference values for the built-in three-qubit instance
constexpr double kTargetTopEigenvalue = 0.5;
constexpr double kTargetMidEigenvalue = 1.0 / 6.0;
constexpr std::array<double, 3> kCounterexampleTop{0.32276, 0.31510, 0.19654};
constexpr double kEigenvalueTol = 5e-6;
constexpr double kTopSumLo = 0.834395;
constexpr double kTopSumHi = 0.834405;
constexpr double kEntropyH = 2.064;
constexpr double kEntropyTarget = 1.792;
constexpr double kEntropyTol = 1e-3;

ojson check_entry(const char* name, double expected, double actual, double tol, bool pass) {
    ojson j;
    j["name"] = name;
    j["expected"] = expected;
    j["actual"] = actual;
    j["tol"] = tol;
    j["pass"] = pass;
    return j;
}

void attach_timestamp(ojson& report, bool with_timestamp) {
    if (with_timestamp) report["timestamp"] = current_timestamp();
}

}  // namespace

CommandResult cmd_reproduce(bool with_timestamp) {
    const AlignmentProblem fixture = counterexample_fixture();
    const ComplexMatrix h = build_alignment_operator(fixture);
    const ComplexMatrix target = build_target_operator(fixture);
    const Spectrum h_spec = hermitian_eigenvalues(h);
    const Spectrum t_spec = hermitian_eigenvalues(target);

    ojson checks = ojson::array();
    bool all_pass = true;
    auto push = [&checks, &all_pass](ojson entry) {
        all_pass = all_pass && entry.at("pass").get<bool>();
        checks.push_back(std::move(entry));
    };

    // aligned target spectrum is exactly (1/2, 1/6, 1/6, 1/6, 0, 0, 0, 0)
    {
        double worst = std::abs(t_spec.values[0] - kTargetTopEigenvalue);
        for (int i = 1; i < 4; ++i)
            worst = std::max(worst, std::abs(t_spec.values[i] - kTargetMidEigenvalue));
        for (int i = 4; i < 8; ++i) worst = std::max(worst, std::abs(t_spec.values[i]));
        push(check_entry("target_spectrum_max_abs_err", 0.0, worst, 1e-12, worst <= 1e-12));
    }
    for (int i = 0; i < 3; ++i) {
        const double actual = h_spec.values[i];
        const std::string name = "lambda" + std::to_string(i + 1);
        push(check_entry(name.c_str(), kCounterexampleTop[i], actual, kEigenvalueTol,
                         std::abs(actual - kCounterexampleTop[i]) <= kEigenvalueTol));
    }
    const double top3 = h_spec.kyfan[2];
    push(check_entry("kyfan3", 0.8344, top3, kTopSumHi - kTopSumLo,
                     top3 >= kTopSumLo && top3 <= kTopSumHi));
    const double target_top3 = t_spec.kyfan[2];
    push(check_entry("kyfan3_exceeds_target", 5.0 / 6.0, top3, 0.0, top3 > target_top3));

    const double s_h = von_neumann_entropy(h_spec);
    const double s_t = von_neumann_entropy(t_spec);
    const double s_t_closed = 0.5 + 0.5 * std::log2(6.0);
    push(check_entry("entropy_h_bits", kEntropyH, s_h, kEntropyTol,
                     std::abs(s_h - kEntropyH) <= kEntropyTol));
    push(check_entry("entropy_target_bits", kEntropyTarget, s_t, kEntropyTol,
                     std::abs(s_t - kEntropyTarget) <= kEntropyTol));
    push(check_entry("entropy_target_closed_form", s_t_closed, s_t, 1e-12,
                     std::abs(s_t - s_t_closed) <= 1e-12));

    const MajorizationReport report = majorized_by(h, target);
    push(check_entry("majorization_fails", 0.0, report.holds ? 1.0 : 0.0, 0.0, !report.holds));
    push(check_entry("first_violation_at_3", 3.0,
                     report.first_violation ? double(*report.first_violation) : 0.0, 0.0,
                     report.first_violation && *report.first_violation == 3));

    CommandResult out;
    out.report["command"] = "reproduce";
    out.report["all_pass"] = all_pass;
    out.report["target_spectrum"] = spectrum_values_json(t_spec);
    out.report["h_spectrum"] = spectrum_values_json(h_spec);
    out.report["kyfan3"] = top3;
    out.report["kyfan3_target"] = target_top3;
    out.report["kyfan3_gap"] = top3 - target_top3;
    out.report["entropy_h_bits"] = s_h;
    out.report["entropy_target_bits"] = s_t;
    out.report["majorization"] = majorization_report_to_json(report);
    out.report["checks"] = checks;
    attach_timestamp(out.report, with_timestamp);
    out.exit_code = all_pass ? kExitHolds : kExitError;
    out.problem = fixture;
    return out;
}

CommandResult cmd_check(const AlignmentProblem& p, double tol, bool with_timestamp) {
    p.validate();
    const ComplexMatrix h = build_operator(p);
    const ComplexMatrix target = build_target_operator(p);
    const Spectrum h_spec = hermitian_eigenvalues(h);
    const Spectrum t_spec = hermitian_eigenvalues(target);
    const MajorizationReport report = majorized_by_spectra(h_spec, t_spec, tol);

    CommandResult out;
    out.report["command"] = "check";
    out.report["kind"] = p.kind() == ProblemKind::compatible ? "compatible" : "free";
    out.report["tol"] = tol;
    out.report["holds"] = report.holds;
    out.report["report"] = majorization_report_to_json(report);
    out.report["operator_spectrum"] = spectrum_values_json(h_spec);
    out.report["target_spectrum"] = spectrum_values_json(t_spec);
    attach_timestamp(out.report, with_timestamp);
    out.exit_code = report.holds ? kExitHolds : kExitViolation;
    return out;
}

CommandResult cmd_spectrum(const AlignmentProblem& p, bool with_timestamp) {
    p.validate();
    const Spectrum h_spec = hermitian_eigenvalues(build_operator(p));
    const Spectrum t_spec = hermitian_eigenvalues(build_target_operator(p));

    CommandResult out;
    out.report["command"] = "spectrum";
    out.report["kind"] = p.kind() == ProblemKind::compatible ? "compatible" : "free";
    out.report["operator_spectrum"] = spectrum_values_json(h_spec);
    out.report["operator_kyfan"] = h_spec.kyfan;
    out.report["target_spectrum"] = spectrum_values_json(t_spec);
    out.report["target_kyfan"] = t_spec.kyfan;
    attach_timestamp(out.report, with_timestamp);
    return out;
}

CommandResult cmd_verify_prop(long trials, std::uint64_t seed, Ensemble ensemble, double tol,
                              int threads, bool with_timestamp) {
    CampaignConfig config;
    config.trials = trials;
    config.seed = seed;
    config.ensemble = ensemble;
    config.tol = tol;
    config.threads = threads;
    const CampaignSummary summary = run_campaign(config);

    CommandResult out;
    out.report["command"] = "verify-prop";
    ojson body = campaign_summary_to_json(summary);
    for (auto& [key, value] : body.items()) out.report[key] = std::move(value);
    attach_timestamp(out.report, with_timestamp);
    out.exit_code = summary.all_pass() ? kExitHolds : kExitViolation;
    return out;
}

CommandResult cmd_search(const SearchConfig& config, bool with_timestamp) {
    const SearchConfig resolved = config.resolved();
    const SearchResult result = run_search(resolved);

    CommandResult out;
    out.report["command"] = "search";
    ojson body = search_result_to_json(result, resolved);
    for (auto& [key, value] : body.items()) out.report[key] = std::move(value);
    attach_timestamp(out.report, with_timestamp);
    out.exit_code = result.violation_found ? kExitViolation : kExitHolds;
    out.problem = result.best_problem;
    return out;
}

}  // namespace spinalign
