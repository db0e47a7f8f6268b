#include "ubb/solvers.hpp"

#include "ubb/operators.hpp"

#include <algorithm>
#include <optional>

namespace ubb {

namespace {

std::size_t max_block_for(int k)
{
    return (std::size_t{1} << (k - 1)) - 1;
}

void check_generic(int k)
{
    if (k < 3)
        throw std::invalid_argument("generic solver needs k >= 3, got " + std::to_string(k));
    if (k > 16 || max_block_for(k) > max_block_length)
        throw UnsupportedAlgorithm("generic solver: k = " + std::to_string(k) + " needs blocks of " +
                                   std::to_string(max_block_for(std::min(k, 16))) +
                                   " bits, the consistency engine handles at most " +
                                   std::to_string(max_block_length));
}

} // namespace

std::uint64_t solve_generic(OneMaxInstance& instance, const GenericOptions& options, RandomSource& rng,
                            const BlockObserver& observer)
{
    check_generic(options.k);
    Processor proc(instance, rng, options.k);
    const std::size_t n = proc.n();

    SolverState state;
    state.x = proc.random_point();
    state.y = state.x;
    state.undecided = n;
    if (proc.solved())
        return proc.queries();

    const auto flip_one = ops::flip_one_where_same();
    const auto xor3 = ops::xor3();
    UnrestrictedOptions unrestricted;
    unrestricted.stop_on_optimum = options.sampler_shortcut;
    unrestricted.consistency = options.consistency;

    while (!proc.solved()) {
        if (state.undecided == 1) {
            proc.apply(flip_one, {state.x, state.y});
            break;
        }
        BlockTrace trace;
        trace.ell = std::min(state.undecided, max_block_for(options.k));
        trace.arity = arity_for_block(trace.ell);
        const std::size_t ell = trace.ell;
        const auto start = proc.queries();

        const EvaluatedPoint& x = state.x;
        EvaluatedPoint y0 = choose_block(proc, x, state.y, ell);
        std::optional<EvaluatedPoint> adopted;
        std::vector<EvaluatedPoint> coords;
        if (!proc.solved()) {
            const int delta = block_delta(x, y0, ell);
            const auto optimal = [&](const EvaluatedPoint& p) {
                return static_cast<std::size_t>(p.fitness() - delta) == ell;
            };
            const auto shortcut = options.seeding ? detect_shortcut(x, y0, ell) : BlockShortcut::none;
            if (shortcut == BlockShortcut::base_optimal)
                adopted = x;
            else if (shortcut == BlockShortcut::block_optimal)
                adopted = y0;
            else {
                coords = build_coordinates(proc, x, y0, trace.arity,
                                           options.seeding ? std::function<bool(const EvaluatedPoint&)>(optimal)
                                                           : std::function<bool(const EvaluatedPoint&)>());
                trace.frame_complete = static_cast<int>(coords.size()) == trace.arity - 1;
                if (options.seeding && !proc.solved() && optimal(coords.back()))
                    adopted = coords.back();
            }
        }
        trace.frame_queries = proc.queries() - start;

        if (!proc.solved() && !adopted) {
            CoordinateFrame frame(proc, x, y0, coords);
            const auto seeds = options.seeding ? frame.seed_constraints() : std::vector<Constraint>{};
            EvaluatedPoint last;
            const BlockOracle oracle = [&](const BitString& w) -> std::optional<int> {
                last = frame.query_virtual(proc, w);
                if (proc.solved())
                    return std::nullopt;
                return frame.effective_fitness(last);
            };
            const auto found = solve_unrestricted(oracle, ell, options.mode, seeds, rng, unrestricted);
            trace.sampler_queries = found.queries;
            if (!found.terminated) {
                if (found.optimum_observed) {
                    if (found.queries == 0)
                        throw std::logic_error("solve_generic: a seed scored l but was not adopted");
                    adopted = last;
                } else {
                    adopted = frame.query_virtual(proc, found.w_opt);
                    trace.adopt_queries = 1;
                }
            }
        }

        if (!proc.solved()) {
            const auto before = proc.queries();
            state.y = proc.apply(xor3, {state.y, y0, *adopted});
            trace.update_queries = proc.queries() - before;
            state.x = *adopted;
            state.undecided -= ell;
        }
        trace.total_queries = proc.queries() - start;
        trace.terminated = proc.solved();
        if (observer)
            observer(trace, state);
    }
    if (!proc.solved())
        throw std::logic_error("solve_generic: finished without querying the optimum");
    return proc.queries();
}

std::uint64_t solve_generic(std::size_t n, int k, SamplerMode mode, bool seeding, RandomSource& rng)
{
    auto instance = OneMaxInstance::random(n, rng);
    GenericOptions options;
    options.k = k;
    options.mode = mode;
    options.seeding = seeding;
    return solve_generic(instance, options, rng);
}

std::uint64_t solve_custom3(OneMaxInstance& instance, RandomSource& rng, const BlockObserver& observer)
{
    Processor proc(instance, rng, 3);
    const int n = static_cast<int>(proc.n());

    const auto same1 = ops::same_x(1);
    const auto same2 = ops::same_x(2);
    const auto same3 = ops::same_x(3);
    const auto one_where_equal = ops::one_where_equal();
    const auto one_where_2nd = ops::one_where_2nd_differs();
    const auto one_where_3rd = ops::one_where_3rd_differs();
    const auto two_where_3rd = ops::two_where_3rd_differs();
    const auto complicated = ops::complicated();
    const auto xor3 = ops::xor3();

    SolverState s;
    s.x = proc.random_point();
    s.y = s.x;
    s.undecided = proc.n();

    while (!proc.solved()) {
        if (s.undecided == 1) {
            proc.apply(same1, {s.x, s.y});
            break;
        }
        if (s.undecided == 2) {
            if (s.x.fitness() == n - 2) {
                proc.apply(same2, {s.x, s.y});
            } else {
                const auto z = proc.apply(same1, {s.x, s.y});
                if (!proc.solved() && z.fitness() == n - 2)
                    proc.apply(one_where_equal, {s.x, s.y, z});
            }
            break;
        }

        const auto start = proc.queries();
        const EvaluatedPoint x = s.x;
        const auto m = proc.apply(same3, {x, s.y});
        const int diff = m.fitness() - x.fitness();
        if (proc.solved() || diff == 3) {
            s.x = m;
        } else if (diff == -3) {
            s.y = proc.apply(xor3, {x, s.y, m});
        } else if (diff == 1) {
            const auto p = proc.apply(two_where_3rd, {x, s.y, m});
            if (proc.solved() || p.fitness() == x.fitness() + 2) {
                s.x = p;
            } else {
                const auto r = proc.apply(complicated, {x, m, p});
                if (!proc.solved())
                    s.x = r.fitness() == x.fitness() + 2 ? r : proc.apply(xor3, {x, p, r});
            }
            if (!proc.solved())
                s.y = proc.apply(xor3, {s.x, s.y, m});
        } else if (diff == -1) {
            const auto p = proc.apply(one_where_3rd, {x, s.y, m});
            if (proc.solved() || p.fitness() == x.fitness() + 1) {
                s.x = p;
            } else {
                const auto r = proc.apply(one_where_2nd, {x, m, p});
                if (!proc.solved())
                    s.x = r.fitness() == x.fitness() + 1 ? r : proc.apply(xor3, {m, p, r});
            }
            if (!proc.solved())
                s.y = proc.apply(xor3, {s.x, s.y, m});
        } else {
            throw std::logic_error("solve_custom3: impossible fitness difference " + std::to_string(diff));
        }
        s.undecided -= 3;
        if (observer) {
            BlockTrace trace;
            trace.ell = 3;
            trace.arity = 3;
            trace.total_queries = proc.queries() - start;
            trace.terminated = proc.solved();
            observer(trace, s);
        }
    }
    if (!proc.solved())
        throw std::logic_error("solve_custom3: finished without querying the optimum");
    return proc.queries();
}

std::uint64_t solve_custom3(std::size_t n, RandomSource& rng)
{
    auto instance = OneMaxInstance::random(n, rng);
    return solve_custom3(instance, rng);
}

AlgoKind AlgoKind::generic(int k, SamplerMode mode, bool seeding)
{
    return AlgoKind{AlgoFamily::generic, k, mode, seeding};
}

AlgoKind AlgoKind::custom3()
{
    return AlgoKind{AlgoFamily::custom3, 3, SamplerMode::hack, false};
}

AlgoKind AlgoKind::binary_baseline()
{
    return AlgoKind{AlgoFamily::binary_baseline, 2, SamplerMode::hack, false};
}

std::string AlgoKind::id() const
{
    switch (family) {
    case AlgoFamily::generic:
        return seeding ? "generic" : "generic-noseed";
    case AlgoFamily::custom3:
        return "custom3";
    case AlgoFamily::binary_baseline:
        return "binary";
    }
    return "unknown";
}

std::string AlgoKind::mode_label() const
{
    return family == AlgoFamily::generic ? to_string(mode) : "-";
}

int AlgoKind::arity() const noexcept
{
    switch (family) {
    case AlgoFamily::generic:
        return k;
    case AlgoFamily::custom3:
        return 3;
    case AlgoFamily::binary_baseline:
        return 2;
    }
    return 0;
}

std::uint64_t run_seed(std::uint64_t master_seed, const std::string& algo, int k, const std::string& mode,
                       std::size_t n, std::uint64_t run)
{
    const std::string cell = algo + '/' + std::to_string(k) + '/' + mode + '/' + std::to_string(n);
    return splitmix64(splitmix64(master_seed ^ stable_hash(cell)) + run);
}

RunRecord run_algorithm(const AlgoKind& algo, std::size_t n, std::uint64_t run, std::uint64_t master_seed)
{
    if (n == 0)
        throw std::invalid_argument("run_algorithm: n must be positive");
    RunRecord record;
    record.algo = algo.id();
    record.k = algo.arity();
    record.mode = algo.mode_label();
    record.n = n;
    record.run = run;
    record.seed = run_seed(master_seed, record.algo, record.k, record.mode, n, run);

    RandomSource rng(record.seed);
    switch (algo.family) {
    case AlgoFamily::generic:
        record.queries = solve_generic(n, algo.k, algo.mode, algo.seeding, rng);
        break;
    case AlgoFamily::custom3:
        record.queries = solve_custom3(n, rng);
        break;
    case AlgoFamily::binary_baseline:
        throw UnsupportedAlgorithm("binary baseline is not available in this build");
    }
    return record;
}

} // namespace ubb
