#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "complex_matrix.hpp"
#include "majorization.hpp"
#include "states.hpp"

namespace spinalign {

// Verifier for the three-qubit compatible-marginal majorization statement
//
//   a rho_AB (x) I_C + b rho_AC (x) I_B + c I_A (x) rho_BC
//     <=  a |00><00|_AB (x) I_C + b |00><00|_AC (x) I_B + c I_A (x) |00><00|_BC
//
// for weights a + b + c = 1, together with every quantitative step of the
// telescoping argument that proves it.

/// Weighted instance; construction permutes the parties so that
/// a >= b >= c (the weight of a two-party term follows its missing party).
struct TwoBodyInstance {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    ComplexMatrix rho;                        // canonically permuted 8x8 state
    std::array<std::size_t, 3> permutation{0, 1, 2};  // canonical slot -> input party

    static TwoBodyInstance make(double a, double b, double c, ComplexMatrix rho);
};

/// Ky Fan bounds on X3 = rho_AB (x) I_C + rho_AC (x) I_B + I_A (x) rho_BC
/// for a pure input, plus the eigenvalue floors inherited from D.
struct X3Bounds {
    std::array<double, 3> kyfan{};     // K_1..K_3 of X3
    std::array<bool, 3> within{};      // K_r <= r + 2
    bool trace_ok = false;             // tr X3 = 6
    bool psd_ok = false;               // X3 >= 0
    bool weyl_ok = false;              // lambda_i(X3) >= h_i for all i
    bool floor_ok = false;             // lambda_8(X3) >= h_8 + delta
};

/// Everything the step-by-step verification produces.
struct TwoBodyTrace {
    ComplexMatrix x1, x2, x3;          // partial sums of the two-body terms
    ComplexMatrix t1, t2, t3;          // aligned counterparts
    ComplexMatrix d_op;                // rho_A(x)I(x)I + I(x)rho_B(x)I + I(x)I(x)rho_C - I
    std::array<double, 8> levels{};    // spectrum of d_op, nonincreasing
    MarginalTriple triple;
    double s = 0.0;
    double delta = 0.0;
    bool pure = false;

    double telescoping_residual = 0.0;  // lhs vs (a-b)X1 + (b-c)X2 + cX3
    double target_residual = 0.0;       // same identity on the aligned side

    std::array<bool, 3> kyfan_d_ok{};   // K_r(D) <= r + delta (meaningful for pure inputs)
    std::array<double, 3> x3_kyfan{};   // K_1..K_3 of X3

    MajorizationReport x1_report, x2_report, x3_report, final_report;
    std::array<std::size_t, 3> permutation{0, 1, 2};
};

/// The eight closed-form eigenvalues of D for a marginal triple, sorted
/// nonincreasing. Rejects triples violating the polygon inequalities
/// (those cannot come from a pure three-qubit state).
std::array<double, 8> d_spectrum_analytic(const MarginalTriple& m);

/// Same formulas without the polygon gate; valid for any state's triple.
std::array<double, 8> d_level_values(const MarginalTriple& m);

/// K_r(D) <= r + delta for r = 1, 2, 3.
std::array<bool, 3> check_kyfan_d_bounds(const MarginalTriple& m);

/// Bounds on X3 built from a pure 8x8 state (second eigenvalue <= 1e-10).
X3Bounds check_x3_bounds(const ComplexMatrix& rho);

/// |phi><phi|_AB (x) I_C + |psi><psi|_AC (x) I_B against its aligned
/// counterpart; a theorem for every pair of pure states.
MajorizationReport check_two_summand(const PureState& phi_ab, const PureState& psi_ac,
                                     double tol = kDefaultMajorizationTol);

/// Builds the operators, levels, and identity residuals (no majorization
/// reports).
TwoBodyTrace decompose(const TwoBodyInstance& inst);

/// decompose plus the four majorization reports (X1, X2, X3, weighted sum).
TwoBodyTrace verify_two_body(const TwoBodyInstance& inst,
                             double tol = kDefaultMajorizationTol);

// ---------------------------------------------------------------------------
// sampling campaigns

enum class Ensemble { pure, mixed };

std::string ensemble_name(Ensemble e);
Ensemble ensemble_from_name(const std::string& name);

struct CampaignConfig {
    long trials = 1000;
    std::uint64_t seed = 1;
    Ensemble ensemble = Ensemble::pure;
    double tol = kDefaultMajorizationTol;
    int threads = 1;
};

/// Aggregate over one named check: how often it ran and failed, plus the
/// worst observed margin (sign convention per check, see field comments
/// below). Checks that do not apply to an ensemble keep runs = 0.
struct CheckStat {
    long runs = 0;
    long failures = 0;
    double worst = -std::numeric_limits<double>::infinity();

    long passes() const { return runs - failures; }
    void record(bool ok, double margin);
    void merge(const CheckStat& other);
};

struct CampaignSummary {
    CampaignConfig config;
    long trials_run = 0;

    CheckStat final_majorization;   // worst = max Ky Fan gap
    CheckStat x1_majorization;
    CheckStat x2_majorization;
    CheckStat x3_majorization;
    CheckStat d_consistency;        // worst = max |analytic - numeric| level
    CheckStat kyfan_d_bounds;       // worst = max_r K_r(D) - (r + delta); pure only
    CheckStat x3_bounds;            // worst = max_r K_r(X3) - (r + 2); pure only
    CheckStat p_positivity;         // worst = -min eigenvalue of P
    CheckStat polygon;              // worst = polygon violation; pure only
    CheckStat h8_identity;          // worst = |h_8 - (s - 1)|; pure only
    CheckStat two_summand;          // worst = max Ky Fan gap

    bool all_pass() const;
};

/// Samples instances from the requested ensemble and runs every check that
/// applies to it. Deterministic for a fixed seed regardless of thread count.
CampaignSummary run_campaign(const CampaignConfig& config);

}  // namespace spinalign
