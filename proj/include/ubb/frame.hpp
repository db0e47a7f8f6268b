#pragma once

#include "ubb/processor.hpp"
#include "ubb/samplers.hpp"

#include <functional>
#include <vector>

namespace ubb {

/// Smallest arity whose coordinate system covers a block of `ell` bits:
/// 1 + ceil(log2(ell + 1)).
int arity_for_block(std::size_t ell);

/// y0 = FlipEllSame(x, y): flips `ell` positions drawn uniformly from those
/// where x and y agree. One query.
EvaluatedPoint choose_block(Processor& proc, const EvaluatedPoint& x, const EvaluatedPoint& y, std::size_t ell);

/// Queries y_1..y_{k-1}, y_i = FlipUpperHalf(x, y0, ..., y_{i-1}). Stops early
/// when `stop` accepts the freshly queried point, or when the instance is
/// solved, so the result may hold fewer than k - 1 points.
std::vector<EvaluatedPoint> build_coordinates(Processor& proc, const EvaluatedPoint& x, const EvaluatedPoint& y0,
                                              int k, const std::function<bool(const EvaluatedPoint&)>& stop = {});

/// fitness(y0) - fitness(x) = +l means every block bit was wrong in x, so y0
/// is the block optimum; -l means x already is.
enum class BlockShortcut { none, base_optimal, block_optimal };
BlockShortcut detect_shortcut(const EvaluatedPoint& x, const EvaluatedPoint& y0, std::size_t ell);

/// (fitness(x) + fitness(y0) - ell) / 2: the fitness contributed by bits
/// outside the block. Throws if the parity is off.
int block_delta(const EvaluatedPoint& x, const EvaluatedPoint& y0, std::size_t ell);

/// The virtual coordinate system over the `ell` positions where x and y0
/// differ. Relative to (x, y_1, ..., y_{k-1}) every block position sits in
/// its own group j >= 1; g lists those groups in increasing order and gives
/// the bijection w <-> operator <0, w_{h(1)}, ..., w_{h(j)}, ...>.
class CoordinateFrame {
public:
    CoordinateFrame(const Processor& proc, EvaluatedPoint x, EvaluatedPoint y0, std::vector<EvaluatedPoint> coords);

    std::size_t ell() const noexcept { return ell_; }
    int arity() const noexcept { return static_cast<int>(coords_.size()) + 1; }
    int delta() const noexcept { return delta_; }
    const EvaluatedPoint& base() const noexcept { return x_; }
    const EvaluatedPoint& block() const noexcept { return y0_; }
    std::span<const EvaluatedPoint> coordinates() const noexcept { return coords_; }

    /// g(t) for t = 1..ell (index t - 1).
    std::span<const int> injection() const noexcept { return g_; }
    /// h(j); 0 when group j is empty.
    int inverse(std::size_t group) const { return h_.at(group); }

    OperatorSpec virtual_operator(const BitString& w) const;
    /// One query: x with exactly the block positions selected by w flipped.
    EvaluatedPoint query_virtual(Processor& proc, const BitString& w) const;

    /// fitness(p) - delta, in [0..ell] for points that equal x off the block.
    int effective_fitness(const EvaluatedPoint& p) const noexcept { return p.fitness() - delta_; }

    /// w-image of coordinate y_i (1-based): bit t set iff bit i-1 of g(t) is set.
    BitString coordinate_image(std::size_t i) const;

    /// Free constraints from x (w = 0^l), y0 (w = 1^l) and every y_i.
    std::vector<Constraint> seed_constraints() const;

private:
    EvaluatedPoint x_;
    EvaluatedPoint y0_;
    std::vector<EvaluatedPoint> coords_;
    std::size_t ell_ = 0;
    int delta_ = 0;
    std::vector<int> g_;
    std::vector<int> h_;
};

} // namespace ubb
