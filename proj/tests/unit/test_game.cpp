#include <doctest.h>

#include "helpers.hpp"

#include <nclab/errors.hpp>
#include <nclab/game.hpp>
#include <nclab/json.hpp>
#include <nclab/strategies.hpp>

#include <algorithm>
#include <filesystem>

using namespace nclab;
using testing_support::random_subset;
using testing_support::uniform;

TEST_CASE("point set basics")
{
    PointSet s(10, {1, 3, 10});
    CHECK(s.size() == 3);
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK_FALSE(s.contains(0));
    CHECK_FALSE(s.contains(11));
    CHECK(*s.min() == 1);
    CHECK(*s.max() == 10);
    CHECK(s.to_string() == "{1,3,10}");
    CHECK_THROWS_AS(s.insert(11), OutOfRange);
    CHECK_THROWS_AS(s.insert(0), OutOfRange);
    s.erase(3);
    CHECK(s.points() == std::vector<Point>{1, 10});
    CHECK(PointSet(5).empty());
    CHECK_FALSE(PointSet(5).min());
    CHECK(PointSet::interval(10, 3, 5) == PointSet(10, {3, 4, 5}));
    CHECK_THROWS_AS(PointSet(4) | PointSet(5), OutOfRange);
}

TEST_CASE("shifts match pointwise definitions across word boundaries")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Point n = uniform(1, 300, rng);
        const PointSet a = random_subset(n, 0.4, rng);
        const Point d = uniform(0, n + 5, rng);
        PointSet down(n), up(n);
        std::size_t pairs = 0;
        for (Point x : a.points()) {
            if (x - d >= 1)
                down.insert(x - d);
            if (x + d <= n)
                up.insert(x + d);
            if (d > 0 && a.contains(x + d))
                ++pairs;
        }
        CHECK(a.shifted_down(d) == down);
        CHECK(a.shifted_up(d) == up);
        if (d > 0)
            CHECK(a.pairs_at_distance(d) == pairs);
    }
}

TEST_CASE("is_d_free")
{
    CHECK(is_d_free(PointSet(8, {1, 3, 5, 8}), Distance(1)));
    CHECK(is_d_free(PointSet(8), Distance(3)));
    CHECK_FALSE(is_d_free(PointSet(8, {2, 5}), Distance(3)));
    CHECK_THROWS_AS(is_d_free(PointSet(8, {2, 5}), Distance(0)), InvalidDistance);
    CHECK_THROWS_AS(is_d_free(PointSet(8, {2, 5}), Distance(8)), InvalidDistance);
}

TEST_CASE("path components")
{
    using Paths = std::vector<std::vector<Point>>;
    CHECK(path_components(PointSet::full(5), Distance(2)) == Paths{{1, 3, 5}, {2, 4}});
    CHECK(path_components(PointSet(5, {1, 2, 4, 5}), Distance(3)) == Paths{{1, 4}, {2, 5}});
    CHECK(path_components(PointSet(8, {7}), Distance(1)) == Paths{{7}});

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const Point n = uniform(2, 200, rng);
        const PointSet a = random_subset(n, 0.5, rng);
        const Distance d(uniform(1, n - 1, rng));
        std::vector<Point> all;
        for (const auto & path : path_components(a, d)) {
            for (std::size_t i = 1; i < path.size(); ++i)
                REQUIRE(path[i] - path[i - 1] == d.value());
            REQUIRE_FALSE(a.contains(path.front() - d.value()));
            REQUIRE_FALSE(a.contains(path.back() + d.value()));
            all.insert(all.end(), path.begin(), path.end());
        }
        std::sort(all.begin(), all.end());
        CHECK(all == a.points());
    }
}

TEST_CASE("apply_round")
{
    CHECK(apply_round(PointSet::full(8), Distance(1), PointSet(8, {1, 3, 5, 8})) == PointSet(8, {2, 4, 6, 7}));
    CHECK(apply_round(PointSet(8, {2, 4, 6, 7}), Distance(2), PointSet(8, {2, 6, 7})) == PointSet(8, {4}));
    CHECK(apply_round(PointSet(8, {4}), Distance(1), PointSet(8, {4})).empty());
    CHECK_THROWS_AS(apply_round(PointSet(8, {2, 4}), Distance(1), PointSet(8, {3})), IllegalClaim);
    CHECK_THROWS_AS(apply_round(PointSet(8, {2, 4}), Distance(2), PointSet(8, {2, 4})), IllegalClaim);
    CHECK(apply_round(PointSet(8, {2, 4}), Distance(2), PointSet(8)) == PointSet(8, {2, 4}));
}

TEST_CASE("apply_round fuzz: legal claims shrink by |C|, illegal ones are rejected")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Point n = uniform(2, 120, rng);
        const PointSet a = random_subset(n, 0.6, rng);
        const Distance d(uniform(1, n - 1, rng));
        const PointSet c = random_subset(n, 0.3, rng);
        bool legal = c.is_subset_of(a);
        for (Point x : c.points())
            legal = legal && !c.contains(x + d.value());
        if (legal) {
            const PointSet rest = apply_round(a, d, c);
            CHECK(rest.size() == a.size() - c.size());
            CHECK(is_d_free(c, d));
        }
        else {
            CHECK_THROWS_AS(apply_round(a, d, c), IllegalClaim);
        }
    }
}

namespace {
    Transcript sample_line()
    {
        Transcript t;
        t.n = 8;
        t.rounds = {{Distance(1), PointSet(8, {1, 3, 5, 8})}, {Distance(2), PointSet(8, {2, 6, 7})}, {Distance(1), PointSet(8, {4})}};
        t.terminal = true;
        return t;
    }
}

TEST_CASE("validate_transcript")
{
    CHECK(validate_transcript(sample_line()));

    auto bad = sample_line();
    bad.rounds[1].claimed = PointSet(8, {2, 4, 6});
    const auto r = validate_transcript(bad);
    CHECK_FALSE(r);
    CHECK(r.first_bad_round == 1U);

    Transcript empty;
    empty.n = 1;
    CHECK(validate_transcript(empty));

    auto unfinished = sample_line();
    unfinished.terminal = false;
    const auto u = validate_transcript(unfinished);
    CHECK_FALSE(u);
    CHECK(u.first_bad_round == 3U);

    auto extra = sample_line();
    extra.rounds.push_back({Distance(1), PointSet(8)});
    CHECK(validate_transcript(extra).first_bad_round == 3U);
}

TEST_CASE("transcript JSON round trip")
{
    const auto t = sample_line();
    const auto j = transcript_to_json(t);
    CHECK(j.dump() == R"({"n":8,"rounds":[{"claimed":[1,3,5,8],"d":1},{"claimed":[2,6,7],"d":2},{"claimed":[4],"d":1}],"terminal":true})");
    CHECK(transcript_from_json(j) == t);

    const auto path = std::filesystem::temp_directory_path() / "nclab_transcript_test.json";
    write_transcript(path, t);
    CHECK(read_transcript(path) == t);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(transcript_from_json(nlohmann::json::parse(R"({"n":8})")), Error);
    CHECK_THROWS_AS(transcript_from_json(nlohmann::json::parse(R"({"n":8,"rounds":[{"d":1,"claimed":[9]}],"terminal":false})")), OutOfRange);
}

namespace {
    class FixedNamer final : public Namer {
    public:
        explicit FixedNamer(Point d) :
            d_(d)
        {
        }
        Distance name(const PointSet &, const Transcript &) override { return Distance(d_); }
        std::string describe() const override { return "fixed"; }

    private:
        Point d_;
    };

    class GreedyCheater final : public Claimer {
    public:
        PointSet claim(const PointSet & a, const Transcript & h, Distance) override
        {
            if (h.rounds.size() == 1)
                return a;
            return PointSet(a.board_size(), {*a.min()});
        }
        std::string describe() const override { return "cheater"; }
    };

    class Passer final : public Claimer {
    public:
        PointSet claim(const PointSet & a, const Transcript &, Distance) override { return PointSet(a.board_size()); }
        std::string describe() const override { return "passer"; }
    };

    /// Claims one random unclaimed point per round.
    class OnePoint final : public Claimer {
    public:
        explicit OnePoint(std::uint64_t seed) :
            rng_(seed)
        {
        }
        PointSet claim(const PointSet & a, const Transcript &, Distance) override
        {
            const auto pts = a.points();
            return PointSet(a.board_size(), {pts[rng_() % pts.size()]});
        }
        std::string describe() const override { return "one-point"; }

    private:
        std::mt19937_64 rng_;
    };
}

TEST_CASE("play_game")
{
    SUBCASE("lazy claimer against d = 1 on [4]")
    {
        RepeatNamer namer(Distance(1));
        LazyClaimer claimer;
        const auto t = play_game(namer, claimer, 4);
        CHECK(t.terminal);
        REQUIRE(t.rounds.size() == 4);
        CHECK(t.rounds[0].claimed == PointSet(4, {4}));
        CHECK(t.rounds[1].claimed == PointSet(4, {3}));
        CHECK(t.rounds[2].claimed == PointSet(4, {2}));
        CHECK(t.rounds[3].claimed == PointSet(4, {1}));
    }
    SUBCASE("greedy against greedy on [2]")
    {
        GreedyNamer namer;
        GreedyClaimer claimer;
        CHECK(play_game(namer, claimer, 2).rounds.size() == 2);
    }
    SUBCASE("a one-point claimer finishes within n rounds when the cap is n")
    {
        for (Point n : {1, 5, 17, 40}) {
            RandomNamer namer(n);
            OnePoint claimer(n);
            GameOptions opts;
            opts.round_cap = static_cast<std::size_t>(n);
            const auto t = play_game(namer, claimer, n, opts);
            CHECK(t.terminal);
            CHECK(t.rounds.size() == static_cast<std::size_t>(n));
            CHECK(validate_transcript(t));
        }
    }
    SUBCASE("faults name the offender and round")
    {
        FixedNamer namer(1);
        GreedyCheater claimer;
        try {
            play_game(namer, claimer, 6);
            FAIL("expected a fault");
        }
        catch (const StrategyFault & f) {
            CHECK(f.role() == "claimer");
            CHECK(f.strategy() == "cheater");
            CHECK(f.round() == 2);
        }
        FixedNamer bad_namer(6);
        try {
            play_game(bad_namer, claimer, 6);
            FAIL("expected a fault");
        }
        catch (const StrategyFault & f) {
            CHECK(f.role() == "namer");
            CHECK(f.round() == 1);
        }
    }
    SUBCASE("the round cap stops a passing claimer")
    {
        FixedNamer namer(1);
        Passer claimer;
        const auto t = play_game(namer, claimer, 16);
        CHECK_FALSE(t.terminal);
        CHECK(t.rounds.size() == default_round_cap(16));
        CHECK(default_round_cap(16) == 24);
        CHECK(validate_transcript(t));
    }
    SUBCASE("a one-point board")
    {
        GreedyNamer namer;
        GreedyClaimer claimer;
        const auto t = play_game(namer, claimer, 1);
        CHECK(t.terminal);
        CHECK(t.rounds.size() == 1);
    }
}
