#pragma once

#include "ubb/bitstring.hpp"
#include "ubb/blackbox.hpp"
#include "ubb/random.hpp"

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ubb {

using Count = std::int64_t;

/// Maps group sizes <n_0, ..., n_{2^{k-1}-1}> to flip counts <d_0, ...>.
/// May consume randomness; must not look at anything but the sizes.
using OperatorMapping = std::function<std::vector<Count>(std::span<const Count> sizes, RandomSource& rng)>;

/// A k-ary unbiased operator in canonical form. The only way to vary points.
class OperatorSpec {
public:
    OperatorSpec(std::string name, int arity, OperatorMapping mapping);

    const std::string& name() const noexcept { return name_; }
    int arity() const noexcept { return arity_; }
    std::size_t group_count() const noexcept { return std::size_t{1} << (arity_ - 1); }

    /// Evaluates the mapping and checks 0 <= d_j <= n_j; violations throw
    /// ContractViolation instead of being clamped.
    std::vector<Count> flips(std::span<const Count> sizes, RandomSource& rng) const;

private:
    std::string name_;
    int arity_;
    OperatorMapping mapping_;
};

inline constexpr int max_supported_arity = 16;

/// Position i (0-based) belongs to group j = sum_{t>=1} 2^{t-1} [a_0[i] != a_t[i]].
struct GroupPartition {
    int arity = 0;
    std::vector<std::uint16_t> group_of;
    std::vector<Count> sizes;

    std::vector<std::size_t> members(std::size_t group) const;
};

GroupPartition partition_groups(std::span<const BitString* const> args);
GroupPartition partition_groups(std::span<const BitString> args);

/// Flips, in a copy of args[0], d_j positions drawn uniformly from each group
/// S_j (partial Fisher-Yates per group).
BitString apply_operator(const OperatorSpec& op, std::span<const BitString* const> args, RandomSource& rng);
BitString apply_operator(const OperatorSpec& op, std::span<const BitString> args, RandomSource& rng);

/// Binds an instance and a random stream; every new point is produced by an
/// OperatorSpec and queried immediately.
class Processor {
public:
    Processor(OneMaxInstance& instance, RandomSource& rng, int max_arity = max_supported_arity);

    /// The 0-ary operator: uniform random string, queried.
    EvaluatedPoint random_point();
    EvaluatedPoint apply(const OperatorSpec& op, std::span<const EvaluatedPoint> args);
    EvaluatedPoint apply(const OperatorSpec& op, std::initializer_list<EvaluatedPoint> args)
    {
        return apply(op, std::span<const EvaluatedPoint>(args.begin(), args.size()));
    }

    /// Group sizes n_j for the given arguments; costs no query.
    std::vector<Count> group_sizes(std::span<const EvaluatedPoint> args) const;

    std::size_t n() const noexcept { return instance_->n(); }
    bool solved() const noexcept { return instance_->solved(); }
    std::uint64_t queries() const noexcept { return instance_->query_count(); }
    int max_arity() const noexcept { return max_arity_; }
    int max_arity_used() const noexcept { return max_arity_used_; }
    RandomSource& rng() noexcept { return *rng_; }

private:
    OneMaxInstance* instance_;
    RandomSource* rng_;
    int max_arity_;
    int max_arity_used_ = 0;
};

} // namespace ubb
