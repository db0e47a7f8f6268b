#pragma once

#include "ubb/bitstring.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>

namespace ubb {

class OneMaxInstance;

namespace detail {
struct PointAccess;
}

/// Raised when an algorithm breaks the query contract (querying a solved
/// instance, operator emitting impossible flip counts, arity overrun).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Handle to a queried search point. Algorithms see the fitness and the
/// handle identity only; the bits stay behind detail::PointAccess.
class EvaluatedPoint {
public:
    EvaluatedPoint() = default;

    int fitness() const noexcept { return fitness_; }
    std::uint64_t id() const noexcept { return id_; }
    std::size_t length() const noexcept { return bits_ ? bits_->size() : 0; }
    bool valid() const noexcept { return bits_ != nullptr; }

    friend bool operator==(const EvaluatedPoint& a, const EvaluatedPoint& b) noexcept
    {
        return a.id_ == b.id_ && a.bits_ == b.bits_;
    }

private:
    friend class OneMaxInstance;
    friend struct detail::PointAccess;

    EvaluatedPoint(std::shared_ptr<const BitString> bits, int fitness, std::uint64_t id)
        : bits_(std::move(bits)), fitness_(fitness), id_(id)
    {
    }

    std::shared_ptr<const BitString> bits_;
    int fitness_ = -1;
    std::uint64_t id_ = 0;
};

namespace detail {
/// Used by the operator processor, which needs positions to apply operators.
struct PointAccess {
    static const BitString& bits(const EvaluatedPoint& p);
};
} // namespace detail

struct QueryLedger {
    std::uint64_t query_count = 0;
    bool solved = false;
    int best_fitness = -1;
};

struct InstanceOptions {
    /// Enables peek_target / peek_bits. Benchmark code leaves this off.
    bool white_box = false;
};

/// Hidden OneMax_z: fitness(x) = |{i : x_i = z_i}|.
class OneMaxInstance {
public:
    OneMaxInstance(BitString target, InstanceOptions options = {});
    static OneMaxInstance random(std::size_t n, RandomSource& rng, InstanceOptions options = {});

    std::size_t n() const noexcept { return target_.size(); }
    const QueryLedger& ledger() const noexcept { return ledger_; }
    std::uint64_t query_count() const noexcept { return ledger_.query_count; }
    bool solved() const noexcept { return ledger_.solved; }

    /// Counts one query. Querying once solved is a ContractViolation.
    EvaluatedPoint query(BitString x);

    const BitString& peek_target() const;
    const BitString& peek_bits(const EvaluatedPoint& p) const;

private:
    BitString target_;
    InstanceOptions options_;
    QueryLedger ledger_;
    std::uint64_t next_id_ = 1;
};

} // namespace ubb
