#include "ubb/blackbox.hpp"

#include "ubb/random.hpp"

namespace ubb {

const BitString& detail::PointAccess::bits(const EvaluatedPoint& p)
{
    if (!p.bits_)
        throw std::invalid_argument("EvaluatedPoint: empty handle");
    return *p.bits_;
}

OneMaxInstance::OneMaxInstance(BitString target, InstanceOptions options)
    : target_(std::move(target)), options_(options)
{
    if (target_.empty())
        throw std::invalid_argument("OneMaxInstance: n must be positive");
}

OneMaxInstance OneMaxInstance::random(std::size_t n, RandomSource& rng, InstanceOptions options)
{
    return OneMaxInstance(random_bitstring(n, rng), options);
}

EvaluatedPoint OneMaxInstance::query(BitString x)
{
    if (x.size() != target_.size())
        throw std::invalid_argument("OneMaxInstance::query: length " + std::to_string(x.size()) +
                                    " does not match n = " + std::to_string(target_.size()));
    if (ledger_.solved)
        throw ContractViolation("OneMaxInstance::query: instance already solved");
    const int f = static_cast<int>(match_count(x, target_));
    ++ledger_.query_count;
    if (f > ledger_.best_fitness)
        ledger_.best_fitness = f;
    if (static_cast<std::size_t>(f) == target_.size())
        ledger_.solved = true;
    return EvaluatedPoint(std::make_shared<const BitString>(std::move(x)), f, next_id_++);
}

const BitString& OneMaxInstance::peek_target() const
{
    if (!options_.white_box)
        throw std::logic_error("OneMaxInstance::peek_target: white-box access is disabled");
    return target_;
}

const BitString& OneMaxInstance::peek_bits(const EvaluatedPoint& p) const
{
    if (!options_.white_box)
        throw std::logic_error("OneMaxInstance::peek_bits: white-box access is disabled");
    return detail::PointAccess::bits(p);
}

} // namespace ubb
