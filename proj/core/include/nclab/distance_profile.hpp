#pragma once

#include <nclab/point_set.hpp>

#include <cstdint>
#include <vector>

namespace nclab {

/// counts[d] = |A ∩ (A - d)| for every d in [0, n - 1]; counts[0] = |A|.
///
/// Sparse sets are counted pairwise, small boards by shifted intersections, and large dense
/// sets through an FFT autocorrelation whose result is rounded to the nearest integer.
std::vector<std::uint64_t> distance_counts(const PointSet & a);

/// Reference implementation: one shifted intersection per distance.
std::vector<std::uint64_t> distance_counts_direct(const PointSet & a);

/// FFT route only, exposed for benchmarking and cross-checks.
std::vector<std::uint64_t> distance_counts_fft(const PointSet & a);

} // namespace nclab
