#pragma once

#include <nclab/point_set.hpp>

#include <random>

namespace testing_support {

using nclab::Point;
using nclab::PointSet;

/// Each point of [n] kept independently with probability p.
inline PointSet random_subset(Point n, double p, std::mt19937_64 & rng)
{
    std::bernoulli_distribution keep(p);
    PointSet s(n);
    for (Point x = 1; x <= n; ++x)
        if (keep(rng))
            s.insert(x);
    return s;
}

inline Point uniform(Point lo, Point hi, std::mt19937_64 & rng) { return std::uniform_int_distribution<Point>(lo, hi)(rng); }

} // namespace testing_support
