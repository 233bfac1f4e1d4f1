#include <doctest.h>

#include <nclab/errors.hpp>
#include <nclab/experiments.hpp>
#include <nclab/strategies.hpp>

#include <sstream>

using namespace nclab;

TEST_CASE("greedy against greedy on [16] takes 5 rounds")
{
    const auto records = run_matchup("greedy", "greedy", {16}, {1, 2, 3});
    REQUIRE(records.size() == 1);
    CHECK(records[0].rounds == 5);
    CHECK(records[0].terminal);
    CHECK(records[0].flags.round_bound == 5U);
    CHECK(records[0].flags.ok());
}

TEST_CASE("repeat namer against block claimer")
{
    const auto records = run_matchup("repeat:d=1", "block", {100}, {0});
    REQUIRE(records.size() == 1);
    CHECK(records[0].rounds <= 3);
}

TEST_CASE("doubling against composed stays within the composed bound")
{
    std::vector<std::uint64_t> seeds(100);
    for (std::uint64_t i = 0; i < seeds.size(); ++i)
        seeds[i] = i;
    const auto records = run_matchup("doubling", "composed", {1 << 16}, seeds);
    CHECK(records.size() == 100);
    for (const auto & r : records) {
        CHECK(r.terminal);
        CHECK(r.rounds <= 12 * 8 + 1);
        CHECK(r.flags.ok());
    }
}

TEST_CASE("records are sorted, reproducible and carry valid transcripts")
{
    MatchOptions opts;
    opts.keep_transcripts = true;
    opts.threads = 3;
    const auto a = run_matchup("random", "greedy", {64, 16}, {3, 1, 2}, opts);
    const auto b = run_matchup("random", "greedy", {64, 16}, {3, 1, 2}, opts);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].transcript == b[i].transcript);
        CHECK(validate_transcript(*a[i].transcript));
        CHECK(a[i].per_round_sizes.size() == a[i].rounds);
    }
    CHECK(a[0].n == 16);
    CHECK(a[0].seed == 1);
    CHECK(a[5].n == 64);
    CHECK(a[5].seed == 3);
}

TEST_CASE("check_bounds")
{
    const auto greedy = run_matchup("random", "greedy", {1024}, {1, 2, 3, 4, 5});
    for (const auto & r : greedy)
        CHECK(r.rounds <= 11);
    CHECK(check_bounds(greedy).ok());
    CHECK(check_bounds(greedy).greedy_claimer_checked == 5);

    const auto growth = run_matchup("greedy", "greedy", {1 << 16}, {0});
    const auto report = check_bounds(growth);
    CHECK(report.ok());
    CHECK(report.growth_rounds_checked > 0);

    const auto composed = run_matchup("doubling", "composed", {1 << 20}, {0, 1});
    for (const auto & r : composed) {
        CHECK(r.flags.round_bound == 106U);
        CHECK(r.rounds <= 106);
    }

    MatchRecord fake;
    fake.n = 1024;
    fake.namer_spec = "greedy";
    fake.claimer_spec = "greedy";
    fake.rounds = 12;
    fake.terminal = true;
    evaluate_bounds(fake, std::nullopt, false);
    const auto bad = check_bounds({fake});
    CHECK_FALSE(bad.ok());
    REQUIRE(bad.violations.size() == 1);
}

TEST_CASE("growth inequality flags a namer-side shortfall")
{
    MatchRecord r;
    r.n = 1000;
    r.namer_spec = "greedy";
    r.claimer_spec = "lazy";
    r.per_round_sizes = {1, 0};
    r.rounds = 2;
    r.terminal = true;
    evaluate_bounds(r, std::nullopt, false);
    CHECK(r.flags.growth_rounds_checked == 1);
    CHECK(r.flags.growth_violations == 1);
    CHECK(greedy_namer_growth_floor(1000, 1000) == doctest::Approx(247.5));
}

TEST_CASE("growth tables")
{
    const auto g = growth_table("greedy", "greedy", {1 << 4, 1 << 8, 1 << 16}, {0});
    REQUIRE(g.rows.size() == 3);
    CHECK(g.rows[0].median_rounds < g.rows[1].median_rounds);
    CHECK(g.rows[1].median_rounds < g.rows[2].median_rounds);

    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
    const auto c = growth_table("doubling", "composed", {1 << 4, 1 << 8, 1 << 16}, seeds);
    for (const auto & row : c.rows) {
        const double ll = std::log2(std::log2(static_cast<double>(row.n)));
        CHECK(row.median_rounds >= 2);
        CHECK(row.median_rounds <= 12.5 * ll + 4);
    }

    const auto single = growth_table("greedy", "lazy", {32}, {7});
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].runs == 1);
    CHECK(single.rows[0].min_rounds == single.rows[0].max_rounds);
    CHECK(growth_report_to_json(single)["rows"].size() == 1);
}

TEST_CASE("csv output")
{
    const auto records = run_matchup("greedy", "greedy", {16}, {0});
    std::ostringstream out;
    write_csv(out, records);
    CHECK(out.str() == "n,seed,namer,claimer,rounds,bound,bound_ok\n16,0,greedy,greedy,5,5,true\n");
}

TEST_CASE("input guards")
{
    CHECK_THROWS_AS(run_matchup("greedy", "greedy", {(Point{1} << 24) + 1}, {0}), CapacityError);
    CHECK_THROWS_AS(run_matchup("greedy", "greedy", {0}, {0}), OutOfRange);
    CHECK_THROWS_AS(run_matchup("greedy", "greedy", {16}, {}), OutOfRange);
    CHECK_THROWS_AS(run_matchup("bogus", "greedy", {16}, {0}), SpecError);
    CHECK(is_randomized("random"));
    CHECK_FALSE(is_randomized("random:seed=4"));
    CHECK(is_randomized("composed"));
    CHECK_FALSE(is_randomized("greedy"));
}
