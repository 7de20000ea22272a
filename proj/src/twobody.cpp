#include "twobody.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace spinalign {

namespace {

constexpr double kPolygonTol = 1e-10;
constexpr double kPurityTol = 1e-10;
const std::vector<std::size_t> kQubits{2, 2, 2};

ComplexMatrix projector_00_two_qubits() {
    ComplexMatrix p(4);
    p.at(0, 0) = 1.0;
    return p;
}

// weights live on the two-party subsets; index them by the missing party
// (a <-> C missing, b <-> B missing, c <-> A missing)
std::array<double, 3> weights_by_missing_party(double a, double b, double c) {
    return {c, b, a};
}

}  // namespace

TwoBodyInstance TwoBodyInstance::make(double a, double b, double c, ComplexMatrix rho) {
    if (a < -1e-12 || b < -1e-12 || c < -1e-12)
        throw std::invalid_argument("TwoBodyInstance: weights must be nonnegative");
    if (std::abs(a + b + c - 1.0) > 1e-12)
        throw std::invalid_argument("TwoBodyInstance: weights must sum to 1");
    if (rho.dim() != 8) throw DimensionError("TwoBodyInstance: state must be 8x8");
    if (!rho.is_hermitian(1e-12)) throw NotHermitianError("TwoBodyInstance: state is not Hermitian");
    {
        const Spectrum spec = hermitian_eigenvalues(rho);
        if (spec.values.back() < -1e-10) throw NotAStateError("TwoBodyInstance: state is not PSD");
        if (std::abs(spec.sum() - 1.0) > 1e-10)
            throw NotAStateError("TwoBodyInstance: state does not have unit trace");
    }

    // canonical order a >= b >= c; permuting the parties permutes the
    // missing-party weights alongside
    const std::array<double, 3> by_missing = weights_by_missing_party(a, b, c);
    std::array<std::size_t, 3> perm{0, 1, 2};
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
        return by_missing[i] < by_missing[j];
    });
    // perm[k] = input party placed at canonical slot k; slot order makes the
    // missing-party weights (c', b', a') nondecreasing, i.e. a' >= b' >= c'.

    TwoBodyInstance inst;
    inst.permutation = perm;
    inst.c = by_missing[perm[0]];
    inst.b = by_missing[perm[1]];
    inst.a = by_missing[perm[2]];
    inst.rho = permute_subsystems(rho, kQubits, {perm.begin(), perm.end()});
    return inst;
}

std::array<double, 8> d_level_values(const MarginalTriple& m) {
    const double s = m.s();
    return {2.0 - s,
            1.0 - m.r_a - m.r_b + m.r_c,
            1.0 - m.r_a + m.r_b - m.r_c,
            1.0 + m.r_a - m.r_b - m.r_c,
            -m.r_a + m.r_b + m.r_c,
            m.r_a - m.r_b + m.r_c,
            m.r_a + m.r_b - m.r_c,
            s - 1.0};
}

std::array<double, 8> d_spectrum_analytic(const MarginalTriple& m) {
    if (!m.polygon_ok(kPolygonTol))
        throw std::invalid_argument(
            "d_spectrum_analytic: marginal triple violates the polygon inequalities");
    std::array<double, 8> values = d_level_values(m);
    std::sort(values.begin(), values.end(), std::greater<double>());
    return values;
}

std::array<bool, 3> check_kyfan_d_bounds(const MarginalTriple& m) {
    const std::array<double, 8> values = d_spectrum_analytic(m);
    const double delta = m.delta();
    std::array<bool, 3> ok{};
    double prefix = 0.0;
    for (int r = 0; r < 3; ++r) {
        prefix += values[r];
        ok[r] = prefix <= (r + 1) + delta + kPolygonTol;
    }
    return ok;
}

X3Bounds check_x3_bounds(const ComplexMatrix& rho) {
    if (rho.dim() != 8) throw DimensionError("check_x3_bounds: state must be 8x8");
    const Spectrum rho_spec = hermitian_eigenvalues(rho);
    if (rho_spec.values.size() < 2 || rho_spec.values[1] > kPurityTol)
        throw NotAStateError("check_x3_bounds: state is not pure within tolerance");

    const ComplexMatrix x3 = embed_on_subset(partial_trace(rho, kQubits, 0b011), 0b011, kQubits) +
                             embed_on_subset(partial_trace(rho, kQubits, 0b101), 0b101, kQubits) +
                             embed_on_subset(partial_trace(rho, kQubits, 0b110), 0b110, kQubits);
    const Spectrum spec = hermitian_eigenvalues(x3);
    const MarginalTriple triple = marginal_triple_of(rho);
    const std::array<double, 8> levels = d_spectrum_analytic(triple);
    const double delta = triple.delta();

    X3Bounds out;
    constexpr double tol = 1e-9;
    for (int r = 0; r < 3; ++r) {
        out.kyfan[r] = spec.kyfan[r];
        out.within[r] = spec.kyfan[r] <= (r + 1) + 2.0 + tol;
    }
    out.trace_ok = std::abs(spec.sum() - 6.0) <= 1e-10;
    out.psd_ok = spec.values.back() >= -1e-10;
    out.weyl_ok = true;
    for (int i = 0; i < 8; ++i)
        if (spec.values[i] < levels[i] - tol) out.weyl_ok = false;
    out.floor_ok = spec.values[7] >= levels[7] + delta - tol;
    return out;
}

MajorizationReport check_two_summand(const PureState& phi_ab, const PureState& psi_ac,
                                     double tol) {
    const std::vector<std::size_t> two_qubits{2, 2};
    if (phi_ab.dims != two_qubits || psi_ac.dims != two_qubits)
        throw DimensionError("check_two_summand: states must be two-qubit");
    const ComplexMatrix lhs = embed_on_subset(phi_ab.projector(), 0b011, kQubits) +
                              embed_on_subset(psi_ac.projector(), 0b101, kQubits);
    const ComplexMatrix p00 = projector_00_two_qubits();
    const ComplexMatrix rhs =
        embed_on_subset(p00, 0b011, kQubits) + embed_on_subset(p00, 0b101, kQubits);
    return majorized_by(lhs, rhs, tol);
}

TwoBodyTrace decompose(const TwoBodyInstance& inst) {
    TwoBodyTrace trace;
    trace.permutation = inst.permutation;

    const ComplexMatrix rho_ab = partial_trace(inst.rho, kQubits, 0b011);
    const ComplexMatrix rho_ac = partial_trace(inst.rho, kQubits, 0b101);
    const ComplexMatrix rho_bc = partial_trace(inst.rho, kQubits, 0b110);

    const ComplexMatrix e_ab = embed_on_subset(rho_ab, 0b011, kQubits);
    const ComplexMatrix e_ac = embed_on_subset(rho_ac, 0b101, kQubits);
    const ComplexMatrix e_bc = embed_on_subset(rho_bc, 0b110, kQubits);

    trace.x1 = e_ab;
    trace.x2 = e_ab + e_ac;
    trace.x3 = trace.x2 + e_bc;

    const ComplexMatrix p00 = projector_00_two_qubits();
    const ComplexMatrix f_ab = embed_on_subset(p00, 0b011, kQubits);
    const ComplexMatrix f_ac = embed_on_subset(p00, 0b101, kQubits);
    const ComplexMatrix f_bc = embed_on_subset(p00, 0b110, kQubits);
    trace.t1 = f_ab;
    trace.t2 = f_ab + f_ac;
    trace.t3 = trace.t2 + f_bc;

    const double a = inst.a, b = inst.b, c = inst.c;
    const ComplexMatrix lhs = a * e_ab + b * e_ac + c * e_bc;
    const ComplexMatrix lhs_telescoped =
        (a - b) * trace.x1 + (b - c) * trace.x2 + c * trace.x3;
    trace.telescoping_residual = lhs.max_abs_diff(lhs_telescoped);

    const ComplexMatrix target = a * f_ab + b * f_ac + c * f_bc;
    const ComplexMatrix target_telescoped =
        (a - b) * trace.t1 + (b - c) * trace.t2 + c * trace.t3;
    trace.target_residual = target.max_abs_diff(target_telescoped);

    trace.d_op = embed_on_subset(partial_trace(inst.rho, kQubits, 0b001), 0b001, kQubits) +
                 embed_on_subset(partial_trace(inst.rho, kQubits, 0b010), 0b010, kQubits) +
                 embed_on_subset(partial_trace(inst.rho, kQubits, 0b100), 0b100, kQubits) -
                 ComplexMatrix::identity(8);
    const Spectrum d_spec = hermitian_eigenvalues(trace.d_op);
    for (int i = 0; i < 8; ++i) trace.levels[i] = d_spec.values[i];

    trace.triple = marginal_triple_of(inst.rho);
    trace.s = trace.triple.s();
    trace.delta = trace.triple.delta();

    const Spectrum rho_spec = hermitian_eigenvalues(inst.rho);
    trace.pure = rho_spec.values[1] <= kPurityTol;

    const double delta = trace.delta;
    const Spectrum x3_spec = hermitian_eigenvalues(trace.x3);
    for (int r = 0; r < 3; ++r) {
        trace.x3_kyfan[r] = x3_spec.kyfan[r];
        trace.kyfan_d_ok[r] = d_spec.kyfan[r] <= (r + 1) + delta + kPolygonTol;
    }
    return trace;
}

TwoBodyTrace verify_two_body(const TwoBodyInstance& inst, double tol) {
    TwoBodyTrace trace = decompose(inst);
    trace.x1_report = majorized_by(trace.x1, trace.t1, tol);
    trace.x2_report = majorized_by(trace.x2, trace.t2, tol);
    trace.x3_report = majorized_by(trace.x3, trace.t3, tol);

    const double a = inst.a, b = inst.b, c = inst.c;
    const ComplexMatrix lhs =
        (a - b) * trace.x1 + (b - c) * trace.x2 + c * trace.x3;
    const ComplexMatrix rhs =
        (a - b) * trace.t1 + (b - c) * trace.t2 + c * trace.t3;
    trace.final_report = majorized_by(lhs, rhs, tol);
    return trace;
}

// ---------------------------------------------------------------------------

std::string ensemble_name(Ensemble e) { return e == Ensemble::pure ? "pure" : "mixed"; }

Ensemble ensemble_from_name(const std::string& name) {
    if (name == "pure") return Ensemble::pure;
    if (name == "mixed") return Ensemble::mixed;
    throw std::invalid_argument("unknown ensemble '" + name + "' (expected pure or mixed)");
}

void CheckStat::record(bool ok, double margin) {
    ++runs;
    if (!ok) ++failures;
    worst = std::max(worst, margin);
}

void CheckStat::merge(const CheckStat& other) {
    runs += other.runs;
    failures += other.failures;
    worst = std::max(worst, other.worst);
}

bool CampaignSummary::all_pass() const {
    return final_majorization.failures == 0 && x1_majorization.failures == 0 &&
           x2_majorization.failures == 0 && x3_majorization.failures == 0 &&
           d_consistency.failures == 0 && kyfan_d_bounds.failures == 0 &&
           x3_bounds.failures == 0 && p_positivity.failures == 0 && polygon.failures == 0 &&
           h8_identity.failures == 0 && two_summand.failures == 0;
}

namespace {

void run_campaign_trial(const CampaignConfig& config, std::uint64_t trial,
                        CampaignSummary& acc) {
    Rng rng(derive_seed(config.seed, trial));

    ComplexMatrix rho;
    if (config.ensemble == Ensemble::pure) {
        rho = haar_random_pure(kQubits, rng).projector();
    } else {
        rho = random_density(8, 8, rng);
    }
    const std::array<double, 3> w = rng.simplex3();
    const TwoBodyInstance inst = TwoBodyInstance::make(w[0], w[1], w[2], rho);
    const TwoBodyTrace trace = verify_two_body(inst, config.tol);

    acc.final_majorization.record(trace.final_report.holds, trace.final_report.worst_gap);
    acc.x1_majorization.record(trace.x1_report.holds, trace.x1_report.worst_gap);
    acc.x2_majorization.record(trace.x2_report.holds, trace.x2_report.worst_gap);
    acc.x3_majorization.record(trace.x3_report.holds, trace.x3_report.worst_gap);

    // closed-form levels against the solver, valid for any ensemble
    {
        std::array<double, 8> analytic = d_level_values(trace.triple);
        std::sort(analytic.begin(), analytic.end(), std::greater<double>());
        double worst = 0.0;
        for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(analytic[i] - trace.levels[i]));
        acc.d_consistency.record(worst <= 1e-12, worst);
    }

    {
        const ComplexMatrix p = p_operator(inst.rho);
        const Spectrum p_spec = hermitian_eigenvalues(p);
        const double min_eig = p_spec.values.back();
        acc.p_positivity.record(min_eig >= -1e-10, -min_eig);
    }

    if (config.ensemble == Ensemble::pure) {
        const double poly = trace.triple.polygon_worst();
        acc.polygon.record(poly <= kPolygonTol, poly);

        const double h8_dev = std::abs(trace.levels[7] - (trace.s - 1.0));
        acc.h8_identity.record(h8_dev <= 1e-10, h8_dev);

        double kd_excess = -std::numeric_limits<double>::infinity();
        bool kd_ok = true;
        double prefix = 0.0;
        for (int r = 0; r < 3; ++r) {
            prefix += trace.levels[r];
            kd_excess = std::max(kd_excess, prefix - ((r + 1) + trace.delta));
            kd_ok = kd_ok && trace.kyfan_d_ok[r];
        }
        acc.kyfan_d_bounds.record(kd_ok, kd_excess);

        const X3Bounds xb = check_x3_bounds(inst.rho);
        double x3_excess = -std::numeric_limits<double>::infinity();
        bool x3_ok = xb.trace_ok && xb.psd_ok && xb.weyl_ok && xb.floor_ok;
        for (int r = 0; r < 3; ++r) {
            x3_excess = std::max(x3_excess, xb.kyfan[r] - ((r + 1) + 2.0));
            x3_ok = x3_ok && xb.within[r];
        }
        acc.x3_bounds.record(x3_ok, x3_excess);
    }

    {
        const PureState phi = haar_random_pure({2, 2}, rng);
        const PureState psi = haar_random_pure({2, 2}, rng);
        const MajorizationReport rep = check_two_summand(phi, psi, config.tol);
        acc.two_summand.record(rep.holds, rep.worst_gap);
    }
}

void merge_summary(CampaignSummary& into, const CampaignSummary& from) {
    into.trials_run += from.trials_run;
    into.final_majorization.merge(from.final_majorization);
    into.x1_majorization.merge(from.x1_majorization);
    into.x2_majorization.merge(from.x2_majorization);
    into.x3_majorization.merge(from.x3_majorization);
    into.d_consistency.merge(from.d_consistency);
    into.kyfan_d_bounds.merge(from.kyfan_d_bounds);
    into.x3_bounds.merge(from.x3_bounds);
    into.p_positivity.merge(from.p_positivity);
    into.polygon.merge(from.polygon);
    into.h8_identity.merge(from.h8_identity);
    into.two_summand.merge(from.two_summand);
}

}  // namespace

CampaignSummary run_campaign(const CampaignConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_campaign: trials must be >= 1");
    const int threads = std::max(1, config.threads);

    auto run_range = [&config](std::uint64_t begin, std::uint64_t end) {
        CampaignSummary partial;
        partial.config = config;
        for (std::uint64_t t = begin; t < end; ++t) {
            run_campaign_trial(config, t, partial);
            ++partial.trials_run;
        }
        return partial;
    };

    CampaignSummary total;
    total.config = config;
    if (threads == 1) {
        total = run_range(0, static_cast<std::uint64_t>(config.trials));
    } else {
        const std::uint64_t n = static_cast<std::uint64_t>(config.trials);
        const std::uint64_t chunk = (n + threads - 1) / threads;
        std::vector<CampaignSummary> partials(threads);
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) {
            const std::uint64_t begin = std::min(n, i * chunk);
            const std::uint64_t end = std::min(n, begin + chunk);
            pool.emplace_back([&partials, i, begin, end, &run_range] {
                partials[i] = run_range(begin, end);
            });
        }
        for (std::thread& t : pool) t.join();
        for (const CampaignSummary& p : partials) merge_summary(total, p);
    }
    return total;
}

}  // namespace spinalign
