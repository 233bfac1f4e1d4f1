#pragma once

#include <nclab/point_set.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nclab {

/// H(x; d_1, ..., d_k) = { x + sum of any subset of the sides }. Sides need not be distinct.
struct CubeSpec {
    Point x = 1;
    std::vector<Point> sides;

    int dimension() const noexcept { return static_cast<int>(sides.size()); }
    bool operator==(const CubeSpec &) const = default;
};

/// The (deduplicated) point set of a cube on a board of size n. Throws OutOfRange if any
/// subset sum leaves [1, n].
PointSet cube_points(const CubeSpec & c, Point n);

/// True iff all 2^k subset sums of the sides are distinct. Stops at the first collision.
bool is_nondegenerate(std::span<const Point> sides);

/// All base points x with H(x; sides) ⊆ s, computed as k successive steps T -> T ∩ (T - d).
PointSet cube_bases(const PointSet & s, std::span<const Point> sides);

/// Smallest base point of a cube with these sides inside s.
std::optional<Point> contains_cube(const PointSet & s, std::span<const Point> sides);

struct SearchLimits {
    /// Abort once this much wall time has elapsed.
    std::optional<std::chrono::duration<double>> time_limit;
};

enum class SearchStatus { found, none, aborted };

struct CubeSearchResult {
    SearchStatus status = SearchStatus::none;
    /// Lexicographically smallest side vector, smallest base for it.
    std::optional<CubeSpec> witness;
    std::uint64_t nodes = 0;
};

/// Exhaustive depth-first search for a non-degenerate k-dimensional cube inside s.
///
/// Sides are chosen in increasing order while the set of admissible base points shrinks by
/// T -> T ∩ (T - d). A branch is cut when the new side collides with an existing subset sum,
/// when T can no longer hold the 2^(k-j) points the remaining sub-cube needs, or when the
/// remaining strictly increasing sides cannot fit inside the span of T.
CubeSearchResult find_nondegenerate_cube(const PointSet & s, int k, SearchLimits limits = {});

/// Each point of [n] goes to one of r classes uniformly and independently.
std::vector<PointSet> random_partition(Point n, int r, std::uint64_t seed);

/// log2 of the first-moment bound n^(k+1) 2^(-2^k) on full-size k-cubes in a random half of [n].
double log2_expected_cube_count(Point n, int k);
/// The bound itself; underflows to 0 for tiny values, use the log form when that matters.
double expected_cube_count(Point n, int k);

struct PartitionCertificate {
    Point n = 0;
    int k = 0;
    std::vector<PointSet> classes;
    /// Every class was searched to completion and none holds a non-degenerate k-cube.
    bool exhaustive = false;
    bool aborted = false;
    std::optional<std::size_t> witness_class;
    std::optional<CubeSpec> witness;
    std::uint64_t nodes = 0;
};

/// Throws OutOfRange unless the classes partition [n].
PartitionCertificate certify_partition(std::vector<PointSet> classes, int k, SearchLimits limits = {});

/// {"n", "k", "class", "witness": {"x", "sides"} | null, "exhaustive"}
nlohmann::json certificate_to_json(const PartitionCertificate & c);
nlohmann::json cube_to_json(const std::optional<CubeSpec> & c);

/// Whether s contains a cube of dimension k, degenerate cubes included.
bool contains_any_cube(const PointSet & s, int k);

struct RamseyResult {
    /// h(k, r) when it is at most n_max.
    std::optional<Point> value;
    /// A longest r-colouring (colours 0..r-1) of [m] with no monochromatic k-cube found by the search.
    std::vector<int> longest_free_colouring;
    std::uint64_t nodes = 0;
};

/// Least n <= n_max such that every r-colouring of [n] has a monochromatic k-cube (degenerate
/// cubes count). Colourings are extended one point at a time, colours are introduced in order
/// of first use, and a branch dies as soon as the newest point completes a monochromatic cube.
/// n_max is limited to 64.
RamseyResult hilbert_ramsey_number(int k, int r, Point n_max);

} // namespace nclab
