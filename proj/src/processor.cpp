#include "ubb/processor.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ubb {

OperatorSpec::OperatorSpec(std::string name, int arity, OperatorMapping mapping)
    : name_(std::move(name)), arity_(arity), mapping_(std::move(mapping))
{
    if (arity_ < 1 || arity_ > max_supported_arity)
        throw std::invalid_argument("OperatorSpec '" + name_ + "': arity " + std::to_string(arity_) +
                                    " outside [1, " + std::to_string(max_supported_arity) + "]");
    if (!mapping_)
        throw std::invalid_argument("OperatorSpec '" + name_ + "': empty mapping");
}

std::vector<Count> OperatorSpec::flips(std::span<const Count> sizes, RandomSource& rng) const
{
    if (sizes.size() != group_count())
        throw std::invalid_argument("OperatorSpec '" + name_ + "': expected " + std::to_string(group_count()) +
                                    " group sizes, got " + std::to_string(sizes.size()));
    auto d = mapping_(sizes, rng);
    if (d.size() != sizes.size())
        throw ContractViolation("OperatorSpec '" + name_ + "': mapping returned " + std::to_string(d.size()) +
                                " flip counts for " + std::to_string(sizes.size()) + " groups");
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] < 0 || d[j] > sizes[j])
            throw ContractViolation("OperatorSpec '" + name_ + "': d_" + std::to_string(j) + " = " +
                                    std::to_string(d[j]) + " outside [0, " + std::to_string(sizes[j]) + "]");
    return d;
}

std::vector<std::size_t> GroupPartition::members(std::size_t group) const
{
    std::vector<std::size_t> out;
    out.reserve(group < sizes.size() ? static_cast<std::size_t>(sizes[group]) : 0);
    for (std::size_t i = 0; i < group_of.size(); ++i)
        if (group_of[i] == group)
            out.push_back(i);
    return out;
}

GroupPartition partition_groups(std::span<const BitString* const> args)
{
    if (args.empty())
        throw std::invalid_argument("partition_groups: empty argument list");
    if (args.size() > static_cast<std::size_t>(max_supported_arity))
        throw std::invalid_argument("partition_groups: too many arguments");
    const BitString& first = *args[0];
    for (const BitString* a : args)
        if (a->size() != first.size())
            throw std::invalid_argument("partition_groups: argument lengths differ");

    GroupPartition out;
    out.arity = static_cast<int>(args.size());
    out.sizes.assign(std::size_t{1} << (args.size() - 1), 0);
    out.group_of.assign(first.size(), 0);

    const auto words = first.words();
    std::vector<std::uint64_t> diff(args.size());
    for (std::size_t w = 0; w < words.size(); ++w) {
        for (std::size_t t = 1; t < args.size(); ++t)
            diff[t] = words[w] ^ args[t]->words()[w];
        const std::size_t base = w * 64;
        const std::size_t limit = std::min<std::size_t>(64, first.size() - base);
        for (std::size_t b = 0; b < limit; ++b) {
            std::uint16_t j = 0;
            for (std::size_t t = 1; t < args.size(); ++t)
                j |= static_cast<std::uint16_t>(((diff[t] >> b) & 1U) << (t - 1));
            out.group_of[base + b] = j;
            ++out.sizes[j];
        }
    }
    return out;
}

GroupPartition partition_groups(std::span<const BitString> args)
{
    std::vector<const BitString*> ptrs;
    ptrs.reserve(args.size());
    for (const auto& a : args)
        ptrs.push_back(&a);
    return partition_groups(ptrs);
}

BitString apply_operator(const OperatorSpec& op, std::span<const BitString* const> args, RandomSource& rng)
{
    if (static_cast<int>(args.size()) != op.arity())
        throw std::invalid_argument("apply_operator: '" + op.name() + "' has arity " + std::to_string(op.arity()) +
                                    ", got " + std::to_string(args.size()) + " arguments");
    const GroupPartition partition = partition_groups(args);
    const std::vector<Count> d = op.flips(partition.sizes, rng);

    std::vector<std::vector<std::size_t>> pools(d.size());
    bool any = false;
    for (std::size_t j = 0; j < d.size(); ++j)
        if (d[j] > 0) {
            pools[j].reserve(static_cast<std::size_t>(partition.sizes[j]));
            any = true;
        }
    BitString out(*args[0]);
    if (!any)
        return out;
    for (std::size_t i = 0; i < partition.group_of.size(); ++i) {
        const auto j = partition.group_of[i];
        if (d[j] > 0)
            pools[j].push_back(i);
    }
    for (std::size_t j = 0; j < d.size(); ++j) {
        auto& pool = pools[j];
        const auto take = static_cast<std::size_t>(d[j]);
        for (std::size_t t = 0; t < take; ++t) {
            const std::size_t pick = t + static_cast<std::size_t>(rng.below(pool.size() - t));
            std::swap(pool[t], pool[pick]);
            out.flip(pool[t]);
        }
    }
    return out;
}

BitString apply_operator(const OperatorSpec& op, std::span<const BitString> args, RandomSource& rng)
{
    std::vector<const BitString*> ptrs;
    ptrs.reserve(args.size());
    for (const auto& a : args)
        ptrs.push_back(&a);
    return apply_operator(op, ptrs, rng);
}

Processor::Processor(OneMaxInstance& instance, RandomSource& rng, int max_arity)
    : instance_(&instance), rng_(&rng), max_arity_(max_arity)
{
    if (max_arity_ < 0 || max_arity_ > max_supported_arity)
        throw std::invalid_argument("Processor: unsupported arity limit " + std::to_string(max_arity_));
}

EvaluatedPoint Processor::random_point()
{
    return instance_->query(random_bitstring(instance_->n(), *rng_));
}

EvaluatedPoint Processor::apply(const OperatorSpec& op, std::span<const EvaluatedPoint> args)
{
    if (op.arity() > max_arity_)
        throw ContractViolation("Processor: operator '" + op.name() + "' of arity " + std::to_string(op.arity()) +
                                " exceeds the limit " + std::to_string(max_arity_));
    std::vector<const BitString*> ptrs;
    ptrs.reserve(args.size());
    for (const auto& p : args)
        ptrs.push_back(&detail::PointAccess::bits(p));
    BitString next = apply_operator(op, ptrs, *rng_);
    max_arity_used_ = std::max(max_arity_used_, op.arity());
    return instance_->query(std::move(next));
}

std::vector<Count> Processor::group_sizes(std::span<const EvaluatedPoint> args) const
{
    std::vector<const BitString*> ptrs;
    ptrs.reserve(args.size());
    for (const auto& p : args)
        ptrs.push_back(&detail::PointAccess::bits(p));
    return partition_groups(ptrs).sizes;
}

} // namespace ubb
