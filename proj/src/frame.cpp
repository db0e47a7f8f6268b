#include "ubb/frame.hpp"

#include "ubb/operators.hpp"

#include <stdexcept>
#include <string>

namespace ubb {

int arity_for_block(std::size_t ell)
{
    if (ell == 0)
        throw std::invalid_argument("arity_for_block: empty block");
    int bits = 0;
    while ((std::size_t{1} << bits) < ell + 1)
        ++bits;
    return 1 + bits;
}

EvaluatedPoint choose_block(Processor& proc, const EvaluatedPoint& x, const EvaluatedPoint& y, std::size_t ell)
{
    const EvaluatedPoint args[] = {x, y};
    const auto sizes = proc.group_sizes(args);
    if (sizes[0] < static_cast<Count>(ell))
        throw std::invalid_argument("choose_block: only " + std::to_string(sizes[0]) +
                                    " undecided positions, block needs " + std::to_string(ell));
    return proc.apply(ops::flip_ell_same(static_cast<Count>(ell)), args);
}

std::vector<EvaluatedPoint> build_coordinates(Processor& proc, const EvaluatedPoint& x, const EvaluatedPoint& y0,
                                              int k, const std::function<bool(const EvaluatedPoint&)>& stop)
{
    const EvaluatedPoint pair[] = {x, y0};
    const auto ell = static_cast<std::size_t>(proc.group_sizes(pair)[1]);
    if (k < 3 || ell < 2 || ell < (std::size_t{1} << (k - 2)) || ell > (std::size_t{1} << (k - 1)) - 1)
        throw std::invalid_argument("build_coordinates: block of " + std::to_string(ell) +
                                    " bits is outside the range supported by arity " + std::to_string(k));
    std::vector<EvaluatedPoint> args{x, y0};
    std::vector<EvaluatedPoint> coords;
    for (int i = 1; i <= k - 1; ++i) {
        EvaluatedPoint yi = proc.apply(ops::flip_upper_half(i + 1), args);
        coords.push_back(yi);
        if (proc.solved() || (stop && stop(yi)))
            break;
        args.push_back(std::move(yi));
    }
    return coords;
}

BlockShortcut detect_shortcut(const EvaluatedPoint& x, const EvaluatedPoint& y0, std::size_t ell)
{
    const int gain = y0.fitness() - x.fitness();
    if (gain == static_cast<int>(ell))
        return BlockShortcut::block_optimal;
    if (gain == -static_cast<int>(ell))
        return BlockShortcut::base_optimal;
    return BlockShortcut::none;
}

int block_delta(const EvaluatedPoint& x, const EvaluatedPoint& y0, std::size_t ell)
{
    const int twice = x.fitness() + y0.fitness() - static_cast<int>(ell);
    if (twice % 2 != 0 || twice < 0)
        throw std::logic_error("block_delta: fitness(x) + fitness(y0) - l = " + std::to_string(twice) +
                               " is not a non-negative even number");
    return twice / 2;
}

CoordinateFrame::CoordinateFrame(const Processor& proc, EvaluatedPoint x, EvaluatedPoint y0,
                                 std::vector<EvaluatedPoint> coords)
    : x_(std::move(x)), y0_(std::move(y0)), coords_(std::move(coords))
{
    if (coords_.empty())
        throw std::invalid_argument("CoordinateFrame: no coordinates");
    const EvaluatedPoint pair[] = {x_, y0_};
    ell_ = static_cast<std::size_t>(proc.group_sizes(pair)[1]);
    delta_ = block_delta(x_, y0_, ell_);

    std::vector<EvaluatedPoint> args{x_};
    args.insert(args.end(), coords_.begin(), coords_.end());
    const auto sizes = proc.group_sizes(args);
    h_.assign(sizes.size(), 0);
    for (std::size_t j = 1; j < sizes.size(); ++j) {
        if (sizes[j] == 1) {
            g_.push_back(static_cast<int>(j));
            h_[j] = static_cast<int>(g_.size());
        } else if (sizes[j] != 0) {
            throw std::logic_error("CoordinateFrame: group " + std::to_string(j) + " holds " +
                                   std::to_string(sizes[j]) + " positions, expected at most one");
        }
    }
    if (g_.size() != ell_ || static_cast<std::size_t>(sizes[0]) != proc.n() - ell_)
        throw std::logic_error("CoordinateFrame: coordinates separate " + std::to_string(g_.size()) + " of " +
                               std::to_string(ell_) + " block positions");
}

OperatorSpec CoordinateFrame::virtual_operator(const BitString& w) const
{
    if (w.size() != ell_)
        throw std::invalid_argument("CoordinateFrame: probe of length " + std::to_string(w.size()) +
                                    ", block has " + std::to_string(ell_));
    // The flip counts are derived from the group sizes alone: the t-th
    // singleton group gets w_t, everything else 0.
    return OperatorSpec("Virtual", arity(), [w](std::span<const Count> sizes, RandomSource&) {
        std::vector<Count> d(sizes.size(), 0);
        std::size_t t = 0;
        for (std::size_t j = 1; j < sizes.size(); ++j)
            if (sizes[j] == 1 && t < w.size())
                d[j] = w.test(t++) ? 1 : 0;
        return d;
    });
}

EvaluatedPoint CoordinateFrame::query_virtual(Processor& proc, const BitString& w) const
{
    std::vector<EvaluatedPoint> args{x_};
    args.insert(args.end(), coords_.begin(), coords_.end());
    return proc.apply(virtual_operator(w), args);
}

BitString CoordinateFrame::coordinate_image(std::size_t i) const
{
    if (i == 0 || i > coords_.size())
        throw std::out_of_range("CoordinateFrame::coordinate_image: no coordinate " + std::to_string(i));
    BitString w(ell_);
    for (std::size_t t = 0; t < ell_; ++t)
        if ((g_[t] >> (i - 1)) & 1)
            w.set(t, true);
    return w;
}

std::vector<Constraint> CoordinateFrame::seed_constraints() const
{
    std::vector<Constraint> seeds;
    seeds.push_back({BitString(ell_), effective_fitness(x_)});
    seeds.push_back({BitString::ones(ell_), effective_fitness(y0_)});
    for (std::size_t i = 1; i <= coords_.size(); ++i)
        seeds.push_back({coordinate_image(i), effective_fitness(coords_[i - 1])});
    return seeds;
}

} // namespace ubb
