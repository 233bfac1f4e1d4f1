#pragma once

#include <nclab/point_set.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace nclab {

/// A distance named by Namer. Valid on a board of size n when 1 <= d <= max(1, n - 1).
class Distance {
public:
    constexpr explicit Distance(Point d) noexcept :
        d_(d)
    {
    }

    constexpr Point value() const noexcept { return d_; }

    constexpr auto operator<=>(const Distance &) const = default;

private:
    Point d_;
};

/// Largest nameable distance. A one-point board still admits d = 1 so that a round can be played.
constexpr Point max_distance(Point n) noexcept { return n > 1 ? n - 1 : 1; }

/// Throws InvalidDistance unless d is valid on a board of size n.
void check_distance(Distance d, Point n);

struct Round {
    Distance d;
    PointSet claimed;

    bool operator==(const Round &) const = default;
};

struct Transcript {
    Point n = 0;
    std::vector<Round> rounds;
    bool terminal = false;

    /// |A_0|, |A_1|, ..., |A_k| obtained by replaying the claims from [n].
    std::vector<std::size_t> unclaimed_sizes() const;

    bool operator==(const Transcript &) const = default;
};

/// True iff no two members of s differ by d.
bool is_d_free(const PointSet & s, Distance d);

/// Maximal arithmetic progressions of step d inside a, ordered by their smallest element.
std::vector<std::vector<Point>> path_components(const PointSet & a, Distance d);

/// a \ c after checking that c is a legal claim (c ⊆ a and c is d-free). Throws IllegalClaim.
PointSet apply_round(const PointSet & a, Distance d, const PointSet & c);

struct ValidationResult {
    bool ok = true;
    /// Zero-based index of the first offending round; equal to rounds.size() when only the terminal flag is wrong.
    std::optional<std::size_t> first_bad_round;
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

ValidationResult validate_transcript(const Transcript & t);

class Namer {
public:
    virtual ~Namer() = default;
    virtual Distance name(const PointSet & unclaimed, const Transcript & history) = 0;
    virtual std::string describe() const = 0;
};

class Claimer {
public:
    virtual ~Claimer() = default;
    virtual PointSet claim(const PointSet & unclaimed, const Transcript & history, Distance d) = 0;
    virtual std::string describe() const = 0;

    /// Proven worst-case game length for this claimer, when one is known.
    virtual std::optional<std::size_t> round_bound() const { return std::nullopt; }
    /// Set when the claimer observed its own guarantee failing during the game.
    virtual bool bound_violated() const { return false; }
};

/// 4 * (floor(log2 n) + 2).
std::size_t default_round_cap(Point n);

struct GameOptions {
    /// 0 selects default_round_cap(n).
    std::size_t round_cap = 0;
};

/// Runs Namer against Claimer on [n] until the board is covered or the round cap is hit.
/// Every move is validated; an illegal move raises StrategyFault naming the offender.
Transcript play_game(Namer & namer, Claimer & claimer, Point n, GameOptions options = {});

} // namespace nclab
