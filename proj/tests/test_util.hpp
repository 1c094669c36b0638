#pragma once

// Shared fixtures: the running seven-point example configuration and its
// known exponent data.

#include "hypalg/geometry.hpp"
#include "hypalg/rational.hpp"

namespace hypalg::testutil {

// Seven points in Z^5: the five unit vectors, one mixed-sign point, and zero.
inline std::vector<IVec> example1_points()
{
    return {
        {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0},
        {0, 0, 0, 0, 1}, {9, 1, -5, -3, -2}, {0, 0, 0, 0, 0},
    };
}

inline LatticeConfig example1_config()
{
    return lift_config(example1_points());
}

inline IVec example1_gamma()
{
    return {9, 1, -5, -3, -2, -1, 1};
}

// The admissible exponent vector supported on points 1..6.
inline QVec example1_v()
{
    return {Rat(0), Rat(-7, 9), Rat(-1, 9), Rat(-2, 3), Rat(-4, 9), Rat(-2, 9), Rat(-7, 9)};
}

}  // namespace hypalg::testutil
