#include <nclab/game.hpp>

#include <nclab/errors.hpp>

#include <bit>

namespace nclab {

void check_distance(Distance d, Point n)
{
    if (d.value() < 1 || d.value() > max_distance(n))
        throw InvalidDistance("distance " + std::to_string(d.value()) + " outside [1, " + std::to_string(max_distance(n)) + "]");
}

std::vector<std::size_t> Transcript::unclaimed_sizes() const
{
    std::vector<std::size_t> sizes;
    sizes.reserve(rounds.size() + 1);
    auto remaining = static_cast<std::size_t>(n);
    sizes.push_back(remaining);
    for (const auto & r : rounds) {
        remaining -= r.claimed.size();
        sizes.push_back(remaining);
    }
    return sizes;
}

bool is_d_free(const PointSet & s, Distance d)
{
    check_distance(d, s.board_size());
    return s.pairs_at_distance(d.value()) == 0;
}

std::vector<std::vector<Point>> path_components(const PointSet & a, Distance d)
{
    check_distance(d, a.board_size());
    std::vector<std::vector<Point>> paths;
    const Point step = d.value();
    a.for_each([&](Point x) {
        if (a.contains(x - step))
            return;
        auto & path = paths.emplace_back();
        for (Point y = x; a.contains(y); y += step)
            path.push_back(y);
    });
    return paths;
}

PointSet apply_round(const PointSet & a, Distance d, const PointSet & c)
{
    check_distance(d, a.board_size());
    if (c.board_size() != a.board_size())
        throw IllegalClaim("claim is on a board of size " + std::to_string(c.board_size()) + ", expected " + std::to_string(a.board_size()));
    if (!c.is_subset_of(a))
        throw IllegalClaim("claim " + (c - a).to_string() + " contains already claimed points");
    if (!is_d_free(c, d))
        throw IllegalClaim("claim contains two points at distance " + std::to_string(d.value()));
    return a - c;
}

ValidationResult validate_transcript(const Transcript & t)
{
    ValidationResult result;
    if (t.n < 1 && !t.rounds.empty()) {
        result.ok = false;
        result.first_bad_round = 0;
        result.reason = "board size must be positive";
        return result;
    }
    PointSet remaining = PointSet::full(t.n);
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        if (remaining.empty()) {
            result = {false, i, "round played after the board was covered"};
            return result;
        }
        try {
            remaining = apply_round(remaining, t.rounds[i].d, t.rounds[i].claimed);
        }
        catch (const Error & e) {
            result = {false, i, e.what()};
            return result;
        }
    }
    bool covered = remaining.empty();
    if (!t.rounds.empty() && covered != t.terminal) {
        result = {false, t.rounds.size(), covered ? "board covered but terminal flag unset" : "terminal flag set but points remain"};
        return result;
    }
    if (t.rounds.empty() && t.terminal && t.n > 0)
        result = {false, 0, "terminal flag set but no rounds were played"};
    return result;
}

std::size_t default_round_cap(Point n)
{
    auto log2n = n > 1 ? static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(n)) - 1) : 0;
    return 4 * (log2n + 2);
}

Transcript play_game(Namer & namer, Claimer & claimer, Point n, GameOptions options)
{
    if (n < 1)
        throw OutOfRange("board size must be positive");
    const std::size_t cap = options.round_cap ? options.round_cap : default_round_cap(n);

    Transcript t;
    t.n = n;
    PointSet remaining = PointSet::full(n);
    while (!remaining.empty() && t.rounds.size() < cap) {
        const std::size_t round = t.rounds.size() + 1;

        std::optional<Distance> d;
        try {
            d = namer.name(remaining, t);
            check_distance(*d, n);
        }
        catch (const StrategyFault &) {
            throw;
        }
        catch (const Error & e) {
            throw StrategyFault("namer", namer.describe(), round, e.what());
        }

        PointSet claim;
        try {
            claim = claimer.claim(remaining, t, *d);
            remaining = apply_round(remaining, *d, claim);
        }
        catch (const StrategyFault &) {
            throw;
        }
        catch (const Error & e) {
            throw StrategyFault("claimer", claimer.describe(), round, e.what());
        }
        t.rounds.push_back({*d, std::move(claim)});
    }
    t.terminal = remaining.empty();
    return t;
}

} // namespace nclab
