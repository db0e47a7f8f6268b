#pragma once

#include "ubb/blackbox.hpp"
#include "ubb/frame.hpp"
#include "ubb/processor.hpp"
#include "ubb/samplers.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ubb {

/// Bits where x and y differ are already correct in x; b counts the rest.
struct SolverState {
    EvaluatedPoint x;
    EvaluatedPoint y;
    std::size_t undecided = 0;
};

/// Query bookkeeping for one block of the generic solver.
struct BlockTrace {
    std::size_t ell = 0;
    int arity = 0;
    std::uint64_t frame_queries = 0;   // y0 and the coordinates actually built
    bool frame_complete = false;       // all k - 1 coordinates were queried
    std::uint64_t sampler_queries = 0; // T
    std::uint64_t adopt_queries = 0;   // 0 when the block optimum was already queried
    std::uint64_t update_queries = 0;
    std::uint64_t total_queries = 0;
    bool terminated = false;           // the run hit its optimum inside this block
};

using BlockObserver = std::function<void(const BlockTrace&, const SolverState&)>;

struct GenericOptions {
    int k = 3;
    SamplerMode mode = SamplerMode::hack;
    /// Feed x, y0 and the coordinates to the sampler, and adopt any of them
    /// that already scores l on the block.
    bool seeding = true;
    /// Also stop sampling as soon as a sampled probe scores l. Off by default:
    /// the sampler then runs until one candidate remains and x_new is queried.
    bool sampler_shortcut = false;
    ConsistencyOptions consistency;
};

std::uint64_t solve_generic(OneMaxInstance& instance, const GenericOptions& options, RandomSource& rng,
                            const BlockObserver& observer = {});
std::uint64_t solve_generic(std::size_t n, int k, SamplerMode mode, bool seeding, RandomSource& rng);

/// Ternary solver on 3-bit blocks, branching on fitness(m) - fitness(x).
/// The observer sees each 3-bit block (ell = 3, arity = 3, total_queries).
std::uint64_t solve_custom3(OneMaxInstance& instance, RandomSource& rng, const BlockObserver& observer = {});
std::uint64_t solve_custom3(std::size_t n, RandomSource& rng);

class UnsupportedAlgorithm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class AlgoFamily { generic, custom3, binary_baseline };

struct AlgoKind {
    AlgoFamily family = AlgoFamily::generic;
    int k = 3;
    SamplerMode mode = SamplerMode::hack;
    bool seeding = true;

    static AlgoKind generic(int k, SamplerMode mode, bool seeding = true);
    static AlgoKind custom3();
    static AlgoKind binary_baseline();

    /// CSV algo column: generic, generic-noseed, custom3, binary.
    std::string id() const;
    /// CSV mode column: pure, hack, or "-" when the family has no sampler.
    std::string mode_label() const;
    int arity() const noexcept;

    friend bool operator==(const AlgoKind&, const AlgoKind&) = default;
};

struct RunRecord {
    std::string algo;
    int k = 0;
    std::string mode;
    std::size_t n = 0;
    std::uint64_t run = 0;
    std::uint64_t seed = 0;
    std::uint64_t queries = 0;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// Seed of one run; a function of (master seed, algo, k, mode, n, run) only.
std::uint64_t run_seed(std::uint64_t master_seed, const std::string& algo, int k, const std::string& mode,
                       std::size_t n, std::uint64_t run);

/// Throws UnsupportedAlgorithm for the binary baseline and for generic k
/// beyond the consistency engine's block length.
RunRecord run_algorithm(const AlgoKind& algo, std::size_t n, std::uint64_t run, std::uint64_t master_seed);

} // namespace ubb
