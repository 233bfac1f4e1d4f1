#pragma once

#include <nclab/game.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nclab {

class Solver;

// ---------------------------------------------------------------------------
// Single-move rules

/// Maximum independent set of G_d[A]: alternate vertices along each path, starting at its smallest element.
PointSet greedy_claimer_move(const PointSet & a, Distance d);

/// The distance occurring most often inside A (smallest such d on ties); d = 1 when |A| = 1.
/// Throws NoMove for an empty set.
Distance greedy_namer_move(const PointSet & a);

/// { x in A : x + d not in A }; leaves A ∩ (A - d) unclaimed.
PointSet lazy_claimer_move(const PointSet & a, Distance d);

// ---------------------------------------------------------------------------
// Dyadic distance buckets: D_1 = {1, 2}, D_i = [2^(i-1) + 1, 2^i] for i >= 2.

int bucket_of(Distance d);

/// Points x in [n] whose block index floor((x - 1) / 2^(i-1)) is congruent to j mod 3.
/// Each class is d-free for every d in bucket i; the three classes partition [n].
PointSet block_class(int bucket, int j, Point n);

/// ceil(log2 log2 n + 2 log2 log2 log2 n), clamped below at 2.
int composed_dimension(Point n);

/// (4k - 1) * 3 + 1: the composed claimer's worst case with 4k master rounds and 3 rounds per bucket.
std::size_t composed_round_bound(int k);

/// Seeded 64-bit generator used by every randomized component.
using Rng = std::mt19937_64;
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

// ---------------------------------------------------------------------------
// Namers

class GreedyNamer final : public Namer {
public:
    Distance name(const PointSet & unclaimed, const Transcript & history) override;
    std::string describe() const override { return "greedy"; }
};

class RepeatNamer final : public Namer {
public:
    explicit RepeatNamer(Distance d) :
        d_(d)
    {
    }
    Distance name(const PointSet & unclaimed, const Transcript & history) override;
    std::string describe() const override;

private:
    Distance d_;
};

/// Names 1, 2, 4, ... and then n - 1 forever once the powers run off the board.
class DoublingNamer final : public Namer {
public:
    Distance name(const PointSet & unclaimed, const Transcript & history) override;
    std::string describe() const override { return "doubling"; }

private:
    Point next_ = 1;
};

class RandomNamer final : public Namer {
public:
    explicit RandomNamer(std::uint64_t seed);
    Distance name(const PointSet & unclaimed, const Transcript & history) override;
    std::string describe() const override;

private:
    std::uint64_t seed_;
    Rng rng_;
};

class OptimalNamer final : public Namer {
public:
    explicit OptimalNamer(std::shared_ptr<Solver> solver);
    Distance name(const PointSet & unclaimed, const Transcript & history) override;
    std::string describe() const override { return "optimal"; }

private:
    std::shared_ptr<Solver> solver_;
};

// ---------------------------------------------------------------------------
// Claimers

class GreedyClaimer final : public Claimer {
public:
    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override { return "greedy"; }
};

class LazyClaimer final : public Claimer {
public:
    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override { return "lazy"; }
};

/// Answers the j-th distance seen from bucket i with block_class(i, j). Wins within 3 rounds
/// whenever Namer keeps to a single bucket.
class BlockClaimer final : public Claimer {
public:
    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override { return "block"; }

private:
    std::map<int, int> progress_;
};

/// Lazy play over a fixed partition, one class at a time: on each named d the current class's
/// virtual set V answers with {x in V : x + d not in V} restricted to the unclaimed points.
/// A class with no cube of dimension k is exhausted within k rounds.
class PartitionLazyClaimer final : public Claimer {
public:
    explicit PartitionLazyClaimer(std::vector<PointSet> classes);
    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override { return "partition-lazy"; }

    std::size_t current_class() const noexcept { return current_; }

private:
    std::vector<PointSet> virtual_;
    std::size_t current_ = 0;
};

/// The composed claimer.
///
/// A random bipartition [n] = A0 ∪ B0 is drawn once. The first distance Namer names from a
/// bucket is routed to the master strategy: lazy play on a virtual copy of A0 for 2k such
/// moves, then on a virtual copy of B0. Later distances from an already seen bucket i are
/// answered with block_class(i, j) for the bucket's j-th repeat. Every claim is the virtual
/// claim intersected with the live unclaimed set, so it is always legal.
///
/// If a virtual side is still live after its 2k master moves the lazy rule keeps running on
/// it and bound_violated() is raised.
class ComposedClaimer final : public Claimer {
public:
    ComposedClaimer(Point n, std::uint64_t seed, std::optional<int> k = std::nullopt);
    /// Uses the given bipartition instead of sampling one.
    ComposedClaimer(PointSet side_a, PointSet side_b, int k);

    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override;
    std::optional<std::size_t> round_bound() const override { return composed_round_bound(k_); }
    bool bound_violated() const override { return violated_; }

    int k() const noexcept { return k_; }
    const PointSet & side_a() const noexcept { return side_a_; }
    const PointSet & side_b() const noexcept { return side_b_; }
    const PointSet & virtual_a() const noexcept { return virtual_a_; }
    const PointSet & virtual_b() const noexcept { return virtual_b_; }
    std::size_t master_moves() const noexcept { return moves_a_ + moves_b_; }
    std::size_t master_moves_a() const noexcept { return moves_a_; }
    std::size_t master_moves_b() const noexcept { return moves_b_; }
    /// Block moves used in the bucket so far, or nullopt if the bucket was never named.
    std::optional<int> bucket_progress(int bucket) const;
    const std::map<int, int> & buckets() const noexcept { return progress_; }

private:
    PointSet master_move(const PointSet & unclaimed, Distance d);

    Point n_;
    int k_;
    std::optional<std::uint64_t> seed_;
    PointSet side_a_, side_b_;
    PointSet virtual_a_, virtual_b_;
    std::size_t moves_a_ = 0, moves_b_ = 0;
    std::map<int, int> progress_;
    bool violated_ = false;
};

class OptimalClaimer final : public Claimer {
public:
    explicit OptimalClaimer(std::shared_ptr<Solver> solver);
    PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) override;
    std::string describe() const override { return "optimal"; }

private:
    std::shared_ptr<Solver> solver_;
};

// ---------------------------------------------------------------------------
// Strategy specifiers: "name" or "name:key=value,key=value".

struct StrategySpec {
    std::string kind;
    std::map<std::string, std::string> params;

    std::string to_string() const;
};

StrategySpec parse_strategy_spec(const std::string & text);

struct StrategyContext {
    Point n = 0;
    /// Used by randomized strategies whose spec carries no explicit seed.
    std::uint64_t seed = 0;
    /// Shared solver for "optimal"; created on demand when null.
    std::shared_ptr<Solver> solver;
};

std::unique_ptr<Namer> make_namer(const std::string & spec, const StrategyContext & ctx);
std::unique_ptr<Claimer> make_claimer(const std::string & spec, const StrategyContext & ctx);

} // namespace nclab
