#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alignment.hpp"
#include "majorization.hpp"

namespace spinalign {

enum class SearchMode { free_states, compatible };

std::string search_mode_name(SearchMode m);
SearchMode search_mode_from_name(const std::string& name);

/// Random-restart stochastic hill climbing over state parameters.
struct SearchConfig {
    SearchMode mode = SearchMode::free_states;
    int n = 3;
    int d = 2;
    SubsetMeasure mu;      // empty weights: defaults to uniform 2-subsets for n = 3
    ComplexMatrix q;       // empty: defaults to I/d
    long restarts = 100;
    long iters_per_restart = 2000;
    double step_init = 0.25;
    double step_decay = 0.9;
    std::uint64_t seed = 42;
    double tol = kDefaultMajorizationTol;
    int threads = 1;

    /// Fills the mu/q defaults and validates ranges.
    SearchConfig resolved() const;
};

struct SearchResult {
    double best_score = 0.0;
    AlignmentProblem best_problem;
    std::vector<double> history;   // best score per restart
    bool violation_found = false;
    long best_restart = 0;
    long evaluations = 0;
};

/// max_k K_k(H) - K_k(H_target) over the interior indices k < dim. The
/// full-trace gap is identically zero for unit-trace problems, so it is
/// excluded; a positive score certifies a majorization violation.
double violation_score(const AlignmentProblem& p);

SearchResult run_search(const SearchConfig& config);

/// Local refinement around a violation; the returned problem scores at
/// least as high as the input. Rejects non-violations.
AlignmentProblem polish_counterexample(const AlignmentProblem& p, long iters,
                                       std::uint64_t seed = 0x705e11,
                                       double step_init = 0.05, double step_decay = 0.9);

}  // namespace spinalign
