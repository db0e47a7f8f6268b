#pragma once

#include "ubb/processor.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ubb {

/// Any k-ary variation operator on raw strings, unbiased or not. Used to
/// run OperatorSpecs and hand-written negative controls through one checker.
using RawOperator = std::function<BitString(std::span<const BitString> args, RandomSource& rng)>;

enum class Transformation { flip_mask, permutation };

const char* to_string(Transformation t) noexcept;

struct Comparison {
    Transformation kind = Transformation::flip_mask;
    std::size_t sample = 0;
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
    bool exact = false;
    bool passed = true;
};

struct VerifierConfig {
    std::size_t n = 8;
    std::size_t trials = 100000;
    /// Number of (argument tuple, transformation) draws per invariance kind.
    std::size_t invariance_samples = 3;
    double alpha = 1e-3;
};

struct UnbiasednessReport {
    std::string name;
    int arity = 0;
    VerifierConfig config;
    double corrected_alpha = 0.0;
    std::vector<Comparison> comparisons;
    bool passed = true;
};

/// One two-sample comparison: `trials` draws of op(args) against `trials`
/// draws of op(pi(args) ^ mask) mapped back through the inverse transform.
/// perm[i] is the destination of position i.
Comparison compare_transformed(const RawOperator& op, std::span<const BitString> args,
                               std::span<const std::size_t> perm, const BitString& mask,
                               std::size_t trials, double alpha, RandomSource& rng);

/// Checks invariance under xor masks and under position permutations for
/// random argument tuples. Significance alpha is Bonferroni-corrected over
/// all comparisons made.
UnbiasednessReport verify_unbiasedness(const OperatorSpec& op, const VerifierConfig& config, RandomSource& rng);
UnbiasednessReport verify_unbiasedness(const std::string& name, int arity, const RawOperator& op,
                                       const VerifierConfig& config, RandomSource& rng);

RawOperator as_raw(const OperatorSpec& op);

std::string format_report(const UnbiasednessReport& report);
/// One "VERIFY <op> <kind>#<i> PASS|FAIL ..." line per comparison.
std::vector<std::string> report_lines(const UnbiasednessReport& report);

} // namespace ubb
