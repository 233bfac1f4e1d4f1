#pragma once

#include <nclab/game.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace nclab {

struct SolverConfig {
    /// Largest span (max - min + 1) of a position the solver accepts; also the largest n for solve().
    Point cap = 18;
};

struct SolveReport {
    Point n = 0;
    int value = 0;
    Transcript principal_line;
    std::size_t states_visited = 0;
    std::chrono::duration<double> elapsed{};
};

/// Exact game values by memoized minimax over unclaimed sets.
///
///   V(∅) = 0
///   V(A) = 1                                         if no distance occurs inside A
///   V(A) = 1 + max_d min_C V(A \ C)                  otherwise
///
/// where d ranges over distances occurring in A and C over the maximal independent sets of
/// G_d[A]. Values depend only on the shape of A, so the memo is keyed on A translated to start
/// at 1 and reduced modulo reflection. All public members are serialized by an internal mutex.
class Solver {
public:
    explicit Solver(SolverConfig config = {});

    Point cap() const noexcept { return config_.cap; }

    /// Throws CapacityError when the span of a exceeds the cap.
    int value_of(const PointSet & a);

    /// Smallest distance achieving the value of a. Throws NoMove for an empty set.
    Distance optimal_namer_move(const PointSet & a);

    /// Lexicographically smallest maximal independent set of G_d[A] minimizing the value of the rest.
    PointSet optimal_claimer_move(const PointSet & a, Distance d);

    /// Value of [n] and a principal line built by replaying optimal moves from both sides.
    SolveReport solve(Point n);

    /// Number of canonical positions evaluated so far.
    std::size_t states_visited() const;

private:
    using Mask = std::uint64_t;

    Mask to_mask(const PointSet & a, Point & offset) const;
    int value(Mask m);
    int best_reply_value(Mask m, int d, int stop_at);

    SolverConfig config_;
    mutable std::mutex mutex_;
    std::unordered_map<Mask, std::uint8_t> memo_;
};

/// Calls visit on every maximal independent set of G_d[A], built as the cross product of the
/// maximal independent sets of each path component. Enumeration stops when visit returns false.
void for_each_maximal_independent_set(const PointSet & a, Distance d, const std::function<bool(const PointSet &)> & visit);

std::vector<PointSet> maximal_independent_sets(const PointSet & a, Distance d);

} // namespace nclab
