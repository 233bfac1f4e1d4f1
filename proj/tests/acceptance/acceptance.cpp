// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the number of failures.

#include "helpers.hpp"
#include "oracles.hpp"

#include <nclab/cubes.hpp>
#include <nclab/experiments.hpp>
#include <nclab/solver.hpp>
#include <nclab/strategies.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace nclab;
using Clock = std::chrono::steady_clock;
using Seconds = std::chrono::duration<double>;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(const std::string & name, double time_limit_s, const std::function<Outcome()> & body)
{
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    }
    catch (const std::exception & e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = Seconds(Clock::now() - start).count();
    if (elapsed > time_limit_s) {
        o.pass = false;
        o.detail += " (time limit " + std::to_string(time_limit_s) + " s exceeded)";
    }
    if (!o.pass)
        ++failures;
    std::printf("%s  %-34s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), elapsed, o.detail.c_str());
    std::fflush(stdout);
}

std::vector<std::uint64_t> seed_range(std::uint64_t count)
{
    std::vector<std::uint64_t> s(count);
    for (std::uint64_t i = 0; i < count; ++i)
        s[i] = i;
    return s;
}

std::vector<Point> powers_of_two(int lo, int hi)
{
    std::vector<Point> out;
    for (int e = lo; e <= hi; ++e)
        out.push_back(Point{1} << e);
    return out;
}

} // namespace

int main()
{
    criterion("solver ground truth n=8", 10, [] {
        Solver solver;
        const auto report = solver.solve(8);
        const bool valid = static_cast<bool>(validate_transcript(report.principal_line));
        std::ostringstream d;
        d << "value " << report.value << ", line of " << report.principal_line.rounds.size() << " rounds, valid=" << valid;
        return Outcome{report.value == 3 && report.principal_line.rounds.size() == 3 && report.principal_line.terminal && valid, d.str()};
    });

    criterion("solver vs brute force n<=8", 300, [] {
        Solver solver;
        std::mt19937_64 rng(2024);
        int compared = 0, mismatches = 0;
        for (Point n = 1; n <= 8; ++n) {
            oracle::BruteForceGame brute(n);
            ++compared;
            if (solver.value_of(PointSet::full(n)) != brute.value((oracle::Mask{1} << n) - 1))
                ++mismatches;
        }
        for (int i = 0; i < 200; ++i) {
            const Point n = testing_support::uniform(1, 8, rng);
            const PointSet a = testing_support::random_subset(n, 0.6, rng);
            oracle::BruteForceGame brute(n);
            ++compared;
            if (solver.value_of(a) != brute.value(oracle::mask_of(a)))
                ++mismatches;
        }
        return Outcome{mismatches == 0, std::to_string(compared) + " positions, " + std::to_string(mismatches) + " mismatches"};
    });

    criterion("greedy claimer <= 1 + log2 n", 120, [] {
        const auto grid = powers_of_two(4, 20);
        std::size_t games = 0, violations = 0;
        for (const std::string namer : {"greedy", "doubling", "random", "repeat:d=1", "repeat:d=3"}) {
            const auto records = run_matchup(namer, "greedy", grid, seed_range(10));
            games += records.size();
            for (const auto & r : records)
                if (!r.terminal || r.rounds > greedy_round_bound(r.n))
                    ++violations;
        }
        const auto optimal = run_matchup("optimal", "greedy", {16}, {0});
        games += optimal.size();
        for (const auto & r : optimal)
            if (!r.terminal || r.rounds > greedy_round_bound(r.n))
                ++violations;
        return Outcome{violations == 0, std::to_string(games) + " games, " + std::to_string(violations) + " violations"};
    });

    criterion("greedy namer growth n=2^16", 120, [] {
        std::size_t checked = 0, violations = 0, games = 0;
        for (const std::string claimer : {"greedy", "lazy", "block", "composed"}) {
            const auto records = run_matchup("greedy", claimer, {1 << 16}, seed_range(30));
            games += records.size();
            for (const auto & r : records) {
                checked += r.flags.growth_rounds_checked;
                violations += r.flags.growth_violations;
            }
        }
        return Outcome{violations == 0 && checked > 0,
            std::to_string(games) + " games, " + std::to_string(checked) + " rounds checked, " + std::to_string(violations) + " violations"};
    });

    criterion("lazy play equals cube bases", 600, [] {
        std::mt19937_64 rng(77);
        int mismatches = 0;
        for (int i = 0; i < 1000; ++i) {
            const Point n = testing_support::uniform(2, 4096, rng);
            const PointSet a0 = testing_support::random_subset(n, testing_support::uniform(50, 99, rng) / 100.0, rng);
            const int k = static_cast<int>(testing_support::uniform(1, 6, rng));
            std::vector<Point> ds;
            for (int j = 0; j < k; ++j)
                ds.push_back(testing_support::uniform(1, std::max<Point>(1, std::min<Point>(n - 1, 64)), rng));
            PointSet a = a0;
            for (Point d : ds)
                a = apply_round(a, Distance(d), lazy_claimer_move(a, Distance(d)));
            const auto formula = oracle::lazy_intersection(a0.points(), ds);
            const bool same_formula = a.points() == std::vector<Point>(formula.begin(), formula.end());
            const bool same_bases = a == cube_bases(a0, ds);
            if (!same_formula || !same_bases || contains_cube(a0, ds) != a.min())
                ++mismatches;
        }
        return Outcome{mismatches == 0, "1000 cases, " + std::to_string(mismatches) + " mismatches"};
    });

    criterion("spaced sides are non-degenerate", 60, [] {
        std::mt19937_64 rng(5);
        int failures_seen = 0;
        for (int i = 0; i < 10000; ++i) {
            const int k = static_cast<int>(testing_support::uniform(1, 20, rng));
            std::vector<Point> sides{testing_support::uniform(1, 1000, rng)};
            while (static_cast<int>(sides.size()) < k)
                sides.push_back(2 * sides.back() + testing_support::uniform(0, sides.back(), rng));
            std::shuffle(sides.begin(), sides.end(), rng);
            if (!is_nondegenerate(sides))
                ++failures_seen;
        }
        return Outcome{failures_seen == 0, "10000 side vectors, " + std::to_string(failures_seen) + " degenerate"};
    });

    criterion("random halves of [4096] lack 8-cubes", 100 * 600, [] {
        constexpr int trials = 100;
        constexpr int required = 95;
        int certified = 0, witnesses = 0, aborted = 0;
        double slowest = 0;
        for (int seed = 0; seed < trials; ++seed) {
            SearchLimits limits;
            limits.time_limit = Seconds(600);
            const auto start = Clock::now();
            const auto cert = certify_partition(random_partition(4096, 2, static_cast<std::uint64_t>(seed)), 8, limits);
            slowest = std::max(slowest, Seconds(Clock::now() - start).count());
            certified += cert.exhaustive;
            witnesses += cert.witness.has_value();
            aborted += cert.aborted;
        }
        std::ostringstream d;
        d << certified << "/" << trials << " certified, " << witnesses << " witnesses, " << aborted << " aborted, slowest " << slowest << " s";
        return Outcome{certified >= required && slowest < 600, d.str()};
    });

    criterion("composed claimer bound", 600, [] {
        const std::vector<Point> grid{1 << 12, 1 << 16, 1 << 20};
        std::size_t games = 0, violations = 0, flags = 0, worst = 0;
        for (const std::string namer : {"greedy", "doubling", "random", "repeat:d=1"}) {
            const auto records = run_matchup(namer, "composed", grid, seed_range(30));
            games += records.size();
            for (const auto & r : records) {
                const auto bound = composed_round_bound(composed_dimension(r.n));
                worst = std::max(worst, r.rounds);
                if (!r.terminal || r.rounds > bound)
                    ++violations;
                if (r.flags.claimer_flagged)
                    ++flags;
            }
        }
        std::ostringstream d;
        d << games << " games, " << violations << " over bound, " << flags << " flagged, longest " << worst << " rounds";
        return Outcome{violations == 0 && flags == 0 && games == 360, d.str()};
    });

    criterion("block claimer vs a fixed distance", 120, [] {
        std::mt19937_64 rng(31);
        std::size_t games = 0, longest = 0, failures_seen = 0;
        for (int e = 1; e <= 16; ++e) {
            const Point n = Point{1} << e;
            std::vector<Point> ds;
            for (int i = 1; (Point{1} << (i - 1)) < n; ++i) {
                const Point lo = i == 1 ? 1 : (Point{1} << (i - 1)) + 1;
                const Point hi = std::min<Point>(Point{1} << i, n - 1);
                if (lo > hi)
                    continue;
                ds.insert(ds.end(), {lo, hi, testing_support::uniform(lo, hi, rng)});
            }
            for (Point d : ds) {
                RepeatNamer namer{Distance(d)};
                BlockClaimer claimer;
                const auto t = play_game(namer, claimer, n);
                ++games;
                longest = std::max(longest, t.rounds.size());
                if (!t.terminal || t.rounds.size() > 3 || !validate_transcript(t))
                    ++failures_seen;
            }
        }
        return Outcome{failures_seen == 0, std::to_string(games) + " games, longest " + std::to_string(longest) + " rounds"};
    });

    criterion("Ramsey micro-values", 1800, [] {
        std::ostringstream d;
        bool ok = true;
        for (int r = 1; r <= 5; ++r) {
            const auto h = hilbert_ramsey_number(1, r, 64);
            const auto brute = oracle::ramsey_number(1, r, r + 2);
            ok = ok && h.value == r + 1 && brute == r + 1;
        }
        const auto brute22 = oracle::ramsey_number(2, 2, 64);
        const auto search22 = hilbert_ramsey_number(2, 2, 64);
        ok = ok && brute22 && *brute22 <= 64 && search22.value == brute22;
        d << "h(1,r)=r+1 for r<=5: " << (ok ? "yes" : "no") << ", h(2,2)=" << (brute22 ? std::to_string(*brute22) : "none")
          << " (brute force), " << (search22.value ? std::to_string(*search22.value) : "none") << " (search)";
        return Outcome{ok, d.str()};
    });

    criterion("log log growth shape", 600, [] {
        const std::vector<Point> grid{1 << 4, 1 << 8, 1 << 16, 1 << 20};
        const auto greedy = growth_table("greedy", "greedy", grid, {0});
        const auto composed = growth_table("doubling", "composed", grid, seed_range(30));
        auto nondecreasing = [](const GrowthReport & g) {
            for (std::size_t i = 1; i < g.rows.size(); ++i)
                if (g.rows[i].median_rounds < g.rows[i - 1].median_rounds)
                    return false;
            return true;
        };
        bool below = true;
        std::ostringstream d;
        d << "greedy medians";
        for (const auto & row : greedy.rows)
            d << ' ' << row.median_rounds;
        d << "; composed medians";
        for (const auto & row : composed.rows) {
            d << ' ' << row.median_rounds;
            below = below && row.median_rounds <= static_cast<double>(composed_round_bound(composed_dimension(row.n)));
        }
        d << "; fit c=" << composed.fit.c << " slope=" << composed.fit.slope << " intercept=" << composed.fit.intercept;
        return Outcome{nondecreasing(greedy) && nondecreasing(composed) && below, d.str()};
    });

    std::printf("%d failing criteria\n", failures);
    return failures;
}
