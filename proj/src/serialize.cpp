#include "serialize.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include "errors.hpp"

namespace spinalign {

namespace {

ojson number_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

ojson check_stat_json(const CheckStat& stat, const char* worst_key) {
    ojson j;
    j["passes"] = stat.passes();
    j["failures"] = stat.failures;
    j[worst_key] = number_or_null(stat.worst);
    return j;
}

}  // namespace

ojson matrix_to_json(const ComplexMatrix& m) {
    ojson rows = ojson::array();
    for (const cplx& v : m.entries()) rows.push_back(ojson::array({v.real(), v.imag()}));
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("matrix: expected an array of [re, im] pairs");
    std::vector<cplx> entries;
    entries.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw std::invalid_argument("matrix: each entry must be an [re, im] number pair");
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(double(entries.size()))));
    if (dim * dim != entries.size())
        throw DimensionError("matrix: entry count is not a perfect square");
    return ComplexMatrix(dim, std::move(entries));
}

ojson amplitudes_to_json(const std::vector<cplx>& amps) {
    ojson arr = ojson::array();
    for (const cplx& v : amps) arr.push_back(ojson::array({v.real(), v.imag()}));
    return arr;
}

std::vector<cplx> amplitudes_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("amplitudes: expected an array of [re, im] pairs");
    std::vector<cplx> amps;
    amps.reserve(j.size());
    for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
            throw std::invalid_argument("amplitudes: each entry must be an [re, im] number pair");
        amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return amps;
}

std::vector<int> mask_to_parties(std::uint32_t mask) {
    std::vector<int> parties;
    for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) parties.push_back(i + 1);
    return parties;
}

std::uint32_t parties_to_mask(const nlohmann::json& parties, int n) {
    if (!parties.is_array())
        throw std::invalid_argument("subset: expected an array of 1-based party indices");
    std::uint32_t mask = 0;
    for (const auto& p : parties) {
        if (!p.is_number_integer())
            throw std::invalid_argument("subset: party indices must be integers");
        const long v = p.get<long>();
        if (v < 1 || v > n)
            throw std::invalid_argument("subset: party index " + std::to_string(v) +
                                        " out of range 1.." + std::to_string(n));
        const std::uint32_t bit = 1u << (v - 1);
        if (mask & bit) throw std::invalid_argument("subset: duplicate party index");
        mask |= bit;
    }
    return mask;
}

ojson measure_to_json(const SubsetMeasure& mu) {
    ojson arr = ojson::array();
    for (const auto& [mask, w] : mu.weights) {
        ojson entry;
        entry["subset"] = mask_to_parties(mask);
        entry["weight"] = w;
        arr.push_back(std::move(entry));
    }
    return arr;
}

SubsetMeasure measure_from_json(const nlohmann::json& j, int n) {
    if (!j.is_array()) throw std::invalid_argument("mu: expected an array of {subset, weight}");
    SubsetMeasure mu;
    mu.n = n;
    for (const auto& entry : j) {
        if (!entry.contains("subset") || !entry.contains("weight"))
            throw std::invalid_argument("mu: each entry needs subset and weight");
        const std::uint32_t mask = parties_to_mask(entry.at("subset"), n);
        if (mu.weights.contains(mask)) throw std::invalid_argument("mu: duplicate subset");
        mu.weights[mask] = entry.at("weight").get<double>();
    }
    mu.validate();
    return mu;
}

ojson problem_to_json(const AlignmentProblem& p) {
    ojson j;
    j["n"] = p.n;
    j["d"] = p.d;
    j["Q"] = matrix_to_json(p.q);
    j["mu"] = measure_to_json(p.mu);
    if (p.kind() == ProblemKind::compatible) {
        j["global_state"] = matrix_to_json(*p.global_state);
    } else {
        ojson states = ojson::array();
        for (const auto& [mask, psi] : p.free_states) {
            ojson s;
            s["subset"] = mask_to_parties(mask);
            s["amplitudes"] = amplitudes_to_json(psi.amplitudes);
            states.push_back(std::move(s));
        }
        j["states"] = states;
    }
    return j;
}

AlignmentProblem problem_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("problem: expected a JSON object");
    for (const char* key : {"n", "d", "Q", "mu"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("problem: missing field '") + key + "'");

    AlignmentProblem p;
    p.n = j.at("n").get<int>();
    p.d = j.at("d").get<int>();
    p.q = matrix_from_json(j.at("Q"));
    p.mu = measure_from_json(j.at("mu"), p.n);

    if (j.contains("global_state")) {
        if (j.contains("states"))
            throw std::invalid_argument("problem: states and global_state are mutually exclusive");
        p.global_state = matrix_from_json(j.at("global_state"));
    } else if (j.contains("states")) {
        for (const auto& entry : j.at("states")) {
            if (!entry.contains("subset") || !entry.contains("amplitudes"))
                throw std::invalid_argument("problem: each state needs subset and amplitudes");
            const std::uint32_t mask = parties_to_mask(entry.at("subset"), p.n);
            if (p.free_states.contains(mask))
                throw std::invalid_argument("problem: duplicate state subset");
            std::vector<cplx> amps = amplitudes_from_json(entry.at("amplitudes"));
            std::vector<std::size_t> dims(mask_to_parties(mask).size(), std::size_t(p.d));
            p.free_states.emplace(mask, PureState::checked(std::move(dims), std::move(amps)));
        }
    } else {
        throw std::invalid_argument("problem: needs either states or global_state");
    }
    p.validate();
    return p;
}

AlignmentProblem problem_from_string(const std::string& text) {
    return problem_from_json(nlohmann::json::parse(text));
}

ojson majorization_report_to_json(const MajorizationReport& r) {
    ojson j;
    j["holds"] = r.holds;
    j["worst_gap"] = r.worst_gap;
    if (r.first_violation)
        j["first_violation"] = *r.first_violation;
    else
        j["first_violation"] = nullptr;
    j["trace_mismatch"] = r.trace_mismatch;
    j["tol"] = r.tol;
    j["weak"] = r.weak;
    j["gaps"] = r.gaps;
    return j;
}

ojson spectrum_values_json(const Spectrum& s) {
    ojson arr = ojson::array();
    for (double v : s.values) arr.push_back(v);
    return arr;
}

ojson campaign_summary_to_json(const CampaignSummary& s) {
    ojson j;
    j["trials"] = s.trials_run;
    j["ensemble"] = ensemble_name(s.config.ensemble);
    j["seed"] = s.config.seed;
    j["tol"] = s.config.tol;
    j["all_pass"] = s.all_pass();
    ojson checks;
    checks["final_majorization"] = check_stat_json(s.final_majorization, "worst_gap");
    checks["x1_majorization"] = check_stat_json(s.x1_majorization, "worst_gap");
    checks["x2_majorization"] = check_stat_json(s.x2_majorization, "worst_gap");
    checks["x3_majorization"] = check_stat_json(s.x3_majorization, "worst_gap");
    checks["d_spectrum_consistency"] = check_stat_json(s.d_consistency, "worst_abs_diff");
    checks["kyfan_d_bounds"] = check_stat_json(s.kyfan_d_bounds, "worst_excess");
    checks["x3_bounds"] = check_stat_json(s.x3_bounds, "worst_excess");
    checks["p_positivity"] = check_stat_json(s.p_positivity, "worst_negativity");
    checks["polygon_inequalities"] = check_stat_json(s.polygon, "worst_violation");
    checks["h8_identity"] = check_stat_json(s.h8_identity, "worst_abs_dev");
    checks["two_summand"] = check_stat_json(s.two_summand, "worst_gap");
    j["checks"] = checks;
    return j;
}

ojson search_result_to_json(const SearchResult& r, const SearchConfig& config) {
    ojson j;
    j["mode"] = search_mode_name(config.mode);
    j["n"] = config.n;
    j["d"] = config.d;
    j["restarts"] = config.restarts;
    j["iters_per_restart"] = config.iters_per_restart;
    j["step_init"] = config.step_init;
    j["step_decay"] = config.step_decay;
    j["seed"] = config.seed;
    j["tol"] = config.tol;
    j["verdict"] = r.violation_found ? "violation_found" : "none_found";
    j["best_score"] = r.best_score;
    j["best_restart"] = r.best_restart;
    j["evaluations"] = r.evaluations;
    j["history"] = r.history;
    j["best_problem"] = problem_to_json(r.best_problem);
    return j;
}

std::string current_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace spinalign
