#include "ubb/operators.hpp"

#include <algorithm>
#include <string>

namespace ubb::ops {

namespace {

OperatorSpec fixed(std::string name, int arity, std::vector<Count> d)
{
    return OperatorSpec(std::move(name), arity, [d = std::move(d)](std::span<const Count>, RandomSource&) { return d; });
}

} // namespace

OperatorSpec single_bit_mutation()
{
    return fixed("SingleBitMutation", 1, {1});
}

OperatorSpec inversion()
{
    return OperatorSpec("Inversion", 1, [](std::span<const Count> n, RandomSource&) { return std::vector<Count>{n[0]}; });
}

OperatorSpec standard_bit_mutation()
{
    return OperatorSpec("StandardBitMutation", 1, [](std::span<const Count> n, RandomSource& rng) {
        const double p = n[0] > 0 ? 1.0 / static_cast<double>(n[0]) : 0.0;
        return std::vector<Count>{static_cast<Count>(rng.binomial(static_cast<std::uint64_t>(n[0]), p))};
    });
}

OperatorSpec uniform_crossover()
{
    return OperatorSpec("UniformCrossover", 2, [](std::span<const Count> n, RandomSource& rng) {
        return std::vector<Count>{static_cast<Count>(rng.binomial(static_cast<std::uint64_t>(n[0]), 0.5)),
                                  static_cast<Count>(rng.binomial(static_cast<std::uint64_t>(n[1]), 0.5))};
    });
}

OperatorSpec flip_one_differing()
{
    return fixed("FlipOneDiffering", 2, {0, 1});
}

OperatorSpec same_x(Count x)
{
    return fixed("Same" + std::to_string(x), 2, {x, 0});
}

OperatorSpec flip_ell_same(Count ell)
{
    return OperatorSpec("FlipEllSame(" + std::to_string(ell) + ")", 2, [ell](std::span<const Count> n, RandomSource&) {
        return std::vector<Count>{std::min(ell, n[0]), 0};
    });
}

OperatorSpec flip_one_where_same()
{
    return fixed("FlipOneWhereSame", 2, {1, 0});
}

OperatorSpec flip_upper_half(int arity)
{
    return OperatorSpec("FlipUpperHalf/" + std::to_string(arity), arity, [](std::span<const Count> n, RandomSource&) {
        std::vector<Count> d(n.size(), 0);
        for (std::size_t j = 1; j < n.size(); ++j)
            d[j] = (n[j] + 1) / 2;
        return d;
    });
}

OperatorSpec one_where_equal()
{
    return fixed("OneWhereEqual", 3, {1, 0, 0, 0});
}

OperatorSpec one_where_2nd_differs()
{
    return fixed("OneWhere2ndDiffers", 3, {0, 1, 0, 0});
}

OperatorSpec one_where_3rd_differs()
{
    return fixed("OneWhere3rdDiffers", 3, {0, 0, 1, 0});
}

OperatorSpec two_where_3rd_differs()
{
    return fixed("TwoWhere3rdDiffers", 3, {0, 0, 2, 0});
}

OperatorSpec complicated()
{
    return OperatorSpec("Complicated", 3, [](std::span<const Count> n, RandomSource&) {
        return std::vector<Count>{0, n[1], 0, 1};
    });
}

OperatorSpec xor3()
{
    return OperatorSpec("Xor3", 3, [](std::span<const Count> n, RandomSource&) {
        return std::vector<Count>{0, n[1], n[2], 0};
    });
}

std::vector<OperatorSpec> catalog()
{
    return {
        single_bit_mutation(),
        inversion(),
        standard_bit_mutation(),
        uniform_crossover(),
        flip_one_differing(),
        same_x(1),
        same_x(2),
        same_x(3),
        flip_ell_same(3),
        flip_one_where_same(),
        flip_upper_half(2),
        flip_upper_half(3),
        flip_upper_half(4),
        one_where_equal(),
        one_where_2nd_differs(),
        one_where_3rd_differs(),
        two_where_3rd_differs(),
        complicated(),
        xor3(),
    };
}

} // namespace ubb::ops
