#include "search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "errors.hpp"
#include "rng.hpp"

namespace spinalign {

namespace {

// Non-improving proposals tolerated before the step shrinks.
constexpr int kShrinkStreak = 20;
// Weight of the mean interior gap mixed into the climbing objective. The
// raw max-gap is identically zero on the whole majorized region whenever
// the alignment operator is rank deficient, so a secondary concentration
// term is needed to give the climber a direction there.
constexpr double kSecondaryWeight = 1e-3;

struct Scored {
    double primary;    // max interior Ky Fan gap (the reported score)
    double objective;  // primary + secondary drift term
};

// Parameter block: the free amplitudes being perturbed, one entry per
// weighted subset (free mode) or a single global pure state (compatible).
struct ParamBlock {
    std::uint32_t mask = 0;
    std::vector<cplx> amps;
};

class Evaluator {
public:
    explicit Evaluator(const SearchConfig& config) : config_(config) {
        AlignmentProblem probe = problem_shell();
        if (config_.mode == SearchMode::compatible) {
            probe.global_state = ComplexMatrix::identity(probe.total_dimension());
            *probe.global_state *= cplx(1.0 / probe.total_dimension());
        }
        target_ = hermitian_eigenvalues(build_target_operator(probe));
    }

    AlignmentProblem problem_shell() const {
        AlignmentProblem p;
        p.n = config_.n;
        p.d = config_.d;
        p.q = config_.q;
        p.mu = config_.mu;
        return p;
    }

    std::vector<ParamBlock> init_params(Rng& rng) const {
        std::vector<ParamBlock> blocks;
        if (config_.mode == SearchMode::compatible) {
            ParamBlock b;
            b.mask = (1u << config_.n) - 1u;
            b.amps = haar_random_pure(std::vector<std::size_t>(config_.n, config_.d), rng).amplitudes;
            blocks.push_back(std::move(b));
            return blocks;
        }
        for (const auto& [mask, w] : config_.mu.weights) {
            if (mask == 0 || w == 0.0) continue;
            ParamBlock b;
            b.mask = mask;
            const std::size_t sub_dim = subset_dim(mask, std::vector<std::size_t>(config_.n, config_.d));
            b.amps = haar_random_pure({sub_dim}, rng).amplitudes;
            blocks.push_back(std::move(b));
        }
        return blocks;
    }

    AlignmentProblem to_problem(const std::vector<ParamBlock>& blocks) const {
        AlignmentProblem p = problem_shell();
        if (config_.mode == SearchMode::compatible) {
            const PureState psi = PureState::normalized(
                std::vector<std::size_t>(config_.n, config_.d), blocks.front().amps);
            p.global_state = psi.projector();
            return p;
        }
        for (const ParamBlock& b : blocks) {
            std::vector<std::size_t> dims(std::popcount(b.mask), std::size_t(config_.d));
            p.free_states.emplace(b.mask, PureState::normalized(std::move(dims), b.amps));
        }
        return p;
    }

    Scored score(const std::vector<ParamBlock>& blocks) const {
        const ComplexMatrix h = build_operator_unchecked(blocks);
        const Spectrum spec = hermitian_eigenvalues(h);
        double primary = -std::numeric_limits<double>::infinity();
        double mean = 0.0;
        const std::size_t dim = spec.size();
        if (dim <= 1) return {0.0, 0.0};
        for (std::size_t k = 0; k + 1 < dim; ++k) {
            const double gap = spec.kyfan[k] - target_.kyfan[k];
            primary = std::max(primary, gap);
            mean += gap;
        }
        mean /= static_cast<double>(dim - 1);
        return {primary, primary + kSecondaryWeight * mean};
    }

    const Spectrum& target() const { return target_; }

private:
    // builder bypassing AlignmentProblem validation; the parameters are
    // normalized by construction and validation per proposal would dominate
    // the runtime
    ComplexMatrix build_operator_unchecked(const std::vector<ParamBlock>& blocks) const {
        const std::vector<std::size_t> dims(config_.n, std::size_t(config_.d));
        const std::uint32_t full = (1u << config_.n) - 1u;
        ComplexMatrix h(total_dim(dims));

        if (config_.mode == SearchMode::compatible) {
            const PureState psi = PureState::normalized(dims, blocks.front().amps);
            const ComplexMatrix rho = psi.projector();
            for (const auto& [mask, w] : config_.mu.weights) {
                if (w == 0.0) continue;
                h += w * term(partial_trace(rho, dims, mask), mask, full, dims);
            }
            return h;
        }

        for (const ParamBlock& b : blocks) {
            const PureState psi = PureState::normalized(
                std::vector<std::size_t>(std::popcount(b.mask), std::size_t(config_.d)), b.amps);
            h += config_.mu.weight(b.mask) * term(psi.projector(), b.mask, full, dims);
        }
        const double w_empty = config_.mu.weight(0);
        if (w_empty > 0.0) h += w_empty * tensor_power(config_.q, config_.n);
        return h;
    }

    ComplexMatrix term(const ComplexMatrix& subset_op, std::uint32_t mask, std::uint32_t full,
                       const std::vector<std::size_t>& dims) const {
        if (mask == 0 || mask > full) throw std::invalid_argument("search: bad subset mask");
        const std::uint32_t comp = full & ~mask;
        ComplexMatrix t = embed_on_subset(subset_op, mask, dims);
        if (comp != 0)
            t = t * embed_on_subset(tensor_power(config_.q, std::popcount(comp)), comp, dims);
        return t;
    }

    SearchConfig config_;
    Spectrum target_;
};

struct RestartOutcome {
    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<ParamBlock> best_params;
    long evaluations = 0;
};

RestartOutcome climb(const Evaluator& eval, const SearchConfig& config,
                     std::vector<ParamBlock> params, Rng& rng, long iters, double step_init) {
    RestartOutcome out;
    Scored current = eval.score(params);
    ++out.evaluations;
    out.best_score = current.primary;
    out.best_params = params;

    double step = step_init;
    int streak = 0;
    std::vector<ParamBlock> proposal = params;
    for (long it = 0; it < iters; ++it) {
        for (std::size_t bi = 0; bi < params.size(); ++bi) {
            for (std::size_t ai = 0; ai < params[bi].amps.size(); ++ai)
                proposal[bi].amps[ai] = params[bi].amps[ai] + step * rng.complex_gaussian();
        }
        const Scored next = eval.score(proposal);
        ++out.evaluations;
        if (next.objective > current.objective) {
            params = proposal;
            current = next;
            streak = 0;
            if (next.primary > out.best_score) {
                out.best_score = next.primary;
                out.best_params = params;
            }
        } else if (++streak >= kShrinkStreak) {
            step *= config.step_decay;
            streak = 0;
        }
    }
    return out;
}

}  // namespace

std::string search_mode_name(SearchMode m) {
    return m == SearchMode::free_states ? "free" : "compatible";
}

SearchMode search_mode_from_name(const std::string& name) {
    if (name == "free") return SearchMode::free_states;
    if (name == "compatible") return SearchMode::compatible;
    throw std::invalid_argument("unknown search mode '" + name + "' (expected free or compatible)");
}

SearchConfig SearchConfig::resolved() const {
    SearchConfig c = *this;
    if (c.n < 1) throw std::invalid_argument("search: need n >= 1");
    if (c.d < 2) throw std::invalid_argument("search: need d >= 2");
    if (c.restarts < 1) throw std::invalid_argument("search: need restarts >= 1");
    if (c.iters_per_restart < 0) throw std::invalid_argument("search: iters must be >= 0");
    if (c.step_init <= 0.0) throw std::invalid_argument("search: step_init must be positive");
    if (c.step_decay <= 0.0 || c.step_decay >= 1.0)
        throw std::invalid_argument("search: step_decay must lie in (0, 1)");

    if (c.q.empty()) {
        c.q = ComplexMatrix::identity(c.d);
        c.q *= cplx(1.0 / c.d);
    }
    if (c.mu.weights.empty()) {
        if (c.n != 3)
            throw std::invalid_argument("search: mu must be supplied when n != 3");
        c.mu = SubsetMeasure::uniform_two_subsets(3);
    }
    if (c.mu.n == 0) c.mu.n = c.n;
    if (c.mu.n != c.n) throw std::invalid_argument("search: mu party count mismatch");
    c.mu.validate();
    return c;
}

double violation_score(const AlignmentProblem& p) {
    p.validate();
    const Spectrum h = hermitian_eigenvalues(build_operator(p));
    const Spectrum t = hermitian_eigenvalues(build_target_operator(p));
    double score = 0.0;
    bool first = true;
    for (std::size_t k = 0; k + 1 < h.size(); ++k) {
        const double gap = h.kyfan[k] - t.kyfan[k];
        if (first || gap > score) score = gap;
        first = false;
    }
    return first ? 0.0 : score;
}

SearchResult run_search(const SearchConfig& raw) {
    const SearchConfig config = raw.resolved();
    const Evaluator eval(config);

    std::vector<RestartOutcome> outcomes(config.restarts);
    auto run_restart = [&](long r) {
        Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
        std::vector<ParamBlock> params = eval.init_params(rng);
        outcomes[r] = climb(eval, config, std::move(params), rng, config.iters_per_restart,
                            config.step_init);
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1) {
        for (long r = 0; r < config.restarts; ++r) run_restart(r);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                for (long r = next.fetch_add(1); r < config.restarts; r = next.fetch_add(1))
                    run_restart(r);
            });
        for (std::thread& t : pool) t.join();
    }

    SearchResult result;
    result.history.reserve(config.restarts);
    long best = 0;
    for (long r = 0; r < config.restarts; ++r) {
        result.history.push_back(outcomes[r].best_score);
        result.evaluations += outcomes[r].evaluations;
        if (outcomes[r].best_score > outcomes[best].best_score) best = r;
    }
    result.best_restart = best;
    result.best_score = outcomes[best].best_score;
    result.best_problem = eval.to_problem(outcomes[best].best_params);
    result.violation_found = result.best_score > config.tol;
    return result;
}

AlignmentProblem polish_counterexample(const AlignmentProblem& p, long iters, std::uint64_t seed,
                                       double step_init, double step_decay) {
    const double start_score = violation_score(p);
    if (start_score <= 0.0)
        throw std::invalid_argument("polish_counterexample: input problem is not a violation");

    SearchConfig config;
    config.mode = p.kind() == ProblemKind::compatible ? SearchMode::compatible
                                                      : SearchMode::free_states;
    config.n = p.n;
    config.d = p.d;
    config.mu = p.mu;
    config.q = p.q;
    config.seed = seed;
    config.step_init = step_init;
    config.step_decay = step_decay;
    const SearchConfig resolved = config.resolved();
    const Evaluator eval(resolved);

    std::vector<ParamBlock> params;
    if (resolved.mode == SearchMode::compatible) {
        // restrict to pure global states: polishing keeps the input's
        // eigenvector of largest eigenvalue as the pure representative
        const EigenSystem sys = hermitian_eigensystem(*p.global_state);
        ParamBlock b;
        b.mask = (1u << p.n) - 1u;
        b.amps.resize(sys.vectors.dim());
        for (std::size_t i = 0; i < b.amps.size(); ++i) b.amps[i] = sys.vectors.at(i, 0);
        params.push_back(std::move(b));
    } else {
        for (const auto& [mask, psi] : p.free_states) {
            if (resolved.mu.weight(mask) == 0.0) continue;
            params.push_back(ParamBlock{mask, psi.amplitudes});
        }
    }

    Rng rng(derive_seed(seed, 0));
    RestartOutcome out = climb(eval, resolved, std::move(params), rng, iters, step_init);
    if (out.best_score < start_score) return p;  // keep the input when nothing improved
    return eval.to_problem(out.best_params);
}

}  // namespace spinalign
