#pragma once

#include "ubb/processor.hpp"

#include <vector>

namespace ubb::ops {

// Unary.
OperatorSpec single_bit_mutation();   // <n> -> <1>
OperatorSpec inversion();             // <n> -> <n>
OperatorSpec standard_bit_mutation(); // <n> -> <Bin(n, 1/n)>

// Binary.
OperatorSpec uniform_crossover();     // <n0, n1> -> <Bin(n0, 1/2), Bin(n1, 1/2)>
OperatorSpec flip_one_differing();    // <n0, n1> -> <0, 1>
OperatorSpec same_x(Count x);         // <n0, n1> -> <x, 0>
OperatorSpec flip_ell_same(Count ell);// <n0, n1> -> <min(ell, n0), 0>
OperatorSpec flip_one_where_same();   // <n0, n1> -> <1, 0>

/// <n0, n1, ..., nj, ...> -> <0, ceil(n1/2), ..., ceil(nj/2), ...>
OperatorSpec flip_upper_half(int arity);

// Ternary operators of the custom k = 3 solver.
OperatorSpec one_where_equal();       // <1, 0, 0, 0>
OperatorSpec one_where_2nd_differs(); // <0, 1, 0, 0>
OperatorSpec one_where_3rd_differs(); // <0, 0, 1, 0>
OperatorSpec two_where_3rd_differs(); // <0, 0, 2, 0>
OperatorSpec complicated();           // <0, n1, 0, 1>
OperatorSpec xor3();                  // <0, n1, n2, 0>: bitwise a ^ b ^ c

/// Every operator above with representative parameters.
std::vector<OperatorSpec> catalog();

} // namespace ubb::ops
