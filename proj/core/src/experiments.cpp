#include <nclab/experiments.hpp>

#include <nclab/errors.hpp>
#include <nclab/solver.hpp>
#include <nclab/strategies.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

namespace nclab {

bool is_randomized(const std::string & spec)
{
    const auto parsed = parse_strategy_spec(spec);
    return (parsed.kind == "random" || parsed.kind == "composed") && !parsed.params.contains("seed");
}

std::size_t greedy_round_bound(Point n)
{
    return n > 0 ? static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(n))) : 0;
}

double greedy_namer_growth_floor(std::size_t unclaimed, Point n)
{
    const double alpha = static_cast<double>(unclaimed) / static_cast<double>(n);
    return 0.99 * alpha * alpha * static_cast<double>(n) / 4.0;
}

void evaluate_bounds(MatchRecord & record, std::optional<std::size_t> claimer_round_bound, bool claimer_flagged)
{
    BoundFlags flags;
    flags.claimer_flagged = claimer_flagged;
    const auto claimer = parse_strategy_spec(record.claimer_spec).kind;
    if (claimer == "greedy")
        flags.round_bound = greedy_round_bound(record.n);
    else if (claimer_round_bound)
        flags.round_bound = claimer_round_bound;
    if (flags.round_bound)
        flags.round_bound_ok = record.terminal && record.rounds <= *flags.round_bound;

    if (parse_strategy_spec(record.namer_spec).kind == "greedy") {
        std::size_t before = static_cast<std::size_t>(record.n);
        for (std::size_t after : record.per_round_sizes) {
            if (before >= 100) {
                ++flags.growth_rounds_checked;
                if (static_cast<double>(after) < greedy_namer_growth_floor(before, record.n))
                    ++flags.growth_violations;
            }
            before = after;
        }
    }
    record.flags = flags;
}

namespace {
    MatchRecord play_cell(const std::string & namer_spec, const std::string & claimer_spec, Point n, std::uint64_t seed,
        const MatchOptions & options, const std::shared_ptr<Solver> & solver)
    {
        StrategyContext ctx{n, seed, solver};
        auto namer = make_namer(namer_spec, ctx);
        auto claimer = make_claimer(claimer_spec, ctx);

        GameOptions game;
        game.round_cap = options.round_cap;
        if (!game.round_cap) {
            game.round_cap = default_round_cap(n);
            if (auto b = claimer->round_bound())
                game.round_cap = std::max(game.round_cap, *b + 1);
        }
        Transcript t = play_game(*namer, *claimer, n, game);
        if (auto v = validate_transcript(t); !v)
            throw InvariantViolation("engine produced an invalid transcript: " + v.reason);

        MatchRecord r;
        r.n = n;
        r.namer_spec = namer_spec;
        r.claimer_spec = claimer_spec;
        r.seed = seed;
        r.rounds = t.rounds.size();
        auto sizes = t.unclaimed_sizes();
        r.per_round_sizes.assign(sizes.begin() + 1, sizes.end());
        r.terminal = t.terminal;
        evaluate_bounds(r, claimer->round_bound(), claimer->bound_violated());
        if (options.keep_transcripts)
            r.transcript = std::move(t);
        return r;
    }
}

std::vector<MatchRecord> run_matchup(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<Point> & n_list,
    const std::vector<std::uint64_t> & seeds, const MatchOptions & options)
{
    if (seeds.empty())
        throw OutOfRange("at least one seed is required");
    for (Point n : n_list) {
        if (n < 1)
            throw OutOfRange("board sizes must be positive");
        if (n > max_batch_board)
            throw CapacityError("n = " + std::to_string(n) + " exceeds the batch limit of 2^24");
    }
    // Surface spec errors before any work is scheduled.
    parse_strategy_spec(namer_spec);
    parse_strategy_spec(claimer_spec);

    const bool randomized = is_randomized(namer_spec) || is_randomized(claimer_spec);
    std::vector<std::pair<Point, std::uint64_t>> cells;
    for (Point n : n_list) {
        if (randomized)
            for (auto s : seeds)
                cells.emplace_back(n, s);
        else
            cells.emplace_back(n, seeds.front());
    }

    const bool needs_solver = parse_strategy_spec(namer_spec).kind == "optimal" || parse_strategy_spec(claimer_spec).kind == "optimal";
    auto solver = needs_solver ? std::make_shared<Solver>() : nullptr;

    std::vector<MatchRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                records[i] = play_cell(namer_spec, claimer_spec, cells[i].first, cells[i].second, options, solver);
            }
            catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = cells.size();
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));
    if (threads <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    std::sort(records.begin(), records.end(), [](const MatchRecord & a, const MatchRecord & b) {
        return std::tie(a.n, a.seed) < std::tie(b.n, b.seed);
    });
    return records;
}

BoundReport check_bounds(const std::vector<MatchRecord> & records)
{
    BoundReport report;
    report.records = records.size();
    for (const auto & r : records) {
        auto fail = [&](std::string detail) {
            report.violations.push_back({r.n, r.seed, r.namer_spec, r.claimer_spec, std::move(detail)});
        };
        const auto claimer = parse_strategy_spec(r.claimer_spec).kind;
        if (claimer == "greedy")
            ++report.greedy_claimer_checked;
        if (claimer == "composed")
            ++report.composed_checked;
        report.growth_rounds_checked += r.flags.growth_rounds_checked;

        if (r.flags.round_bound && !r.flags.round_bound_ok)
            fail("took " + std::to_string(r.rounds) + " rounds" + (r.terminal ? "" : " without finishing") + ", bound is "
                + std::to_string(*r.flags.round_bound));
        if (r.flags.claimer_flagged)
            fail("claimer flagged its lazy phase as bound-violating");
        if (r.flags.growth_violations)
            fail(std::to_string(r.flags.growth_violations) + " rounds below the greedy Namer growth floor");
    }
    return report;
}

namespace {
    double median(std::vector<std::size_t> v)
    {
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        if (m == 0)
            return 0;
        return m % 2 ? static_cast<double>(v[m / 2]) : (static_cast<double>(v[m / 2 - 1]) + static_cast<double>(v[m / 2])) / 2.0;
    }

    double loglog(Point n) { return n > 2 ? std::log2(std::log2(static_cast<double>(n))) : 0.0; }
}

GrowthReport summarize(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<MatchRecord> & records)
{
    GrowthReport report;
    report.namer_spec = namer_spec;
    report.claimer_spec = claimer_spec;

    std::vector<Point> ns;
    for (const auto & r : records)
        ns.push_back(r.n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    for (Point n : ns) {
        GrowthRow row;
        row.n = n;
        std::vector<std::size_t> rounds;
        for (const auto & r : records)
            if (r.n == n) {
                rounds.push_back(r.rounds);
                row.round_bound = r.flags.round_bound;
            }
        row.runs = rounds.size();
        row.median_rounds = median(rounds);
        row.min_rounds = *std::min_element(rounds.begin(), rounds.end());
        row.max_rounds = *std::max_element(rounds.begin(), rounds.end());
        report.rows.push_back(row);
    }

    double sxx = 0, sxy = 0, sx = 0, sy = 0;
    const auto m = static_cast<double>(report.rows.size());
    for (const auto & row : report.rows) {
        const double x = loglog(row.n);
        sxx += x * x;
        sxy += x * row.median_rounds;
        sx += x;
        sy += row.median_rounds;
    }
    GrowthFit & fit = report.fit;
    fit.c = sxx > 0 ? sxy / sxx : 0;
    const double denom = m * sxx - sx * sx;
    if (m >= 2 && std::abs(denom) > 1e-12) {
        fit.slope = (m * sxy - sx * sy) / denom;
        fit.intercept = (sy - fit.slope * sx) / m;
    }
    else {
        fit.slope = fit.c;
        fit.intercept = 0;
    }
    for (const auto & row : report.rows)
        fit.residuals.push_back(row.median_rounds - fit.c * loglog(row.n));
    return report;
}

GrowthReport growth_table(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<Point> & n_grid,
    const std::vector<std::uint64_t> & seeds, const MatchOptions & options)
{
    return summarize(namer_spec, claimer_spec, run_matchup(namer_spec, claimer_spec, n_grid, seeds, options));
}

void write_csv(std::ostream & out, const std::vector<MatchRecord> & records)
{
    out << "n,seed,namer,claimer,rounds,bound,bound_ok\n";
    auto quote = [](const std::string & s) { return s.find(',') == std::string::npos ? s : '"' + s + '"'; };
    for (const auto & r : records) {
        out << r.n << ',' << r.seed << ',' << quote(r.namer_spec) << ',' << quote(r.claimer_spec) << ',' << r.rounds << ',';
        if (r.flags.round_bound)
            out << *r.flags.round_bound;
        out << ',' << (r.flags.ok() ? "true" : "false") << '\n';
    }
}

nlohmann::json growth_report_to_json(const GrowthReport & report)
{
    auto rows = nlohmann::json::array();
    for (const auto & r : report.rows) {
        nlohmann::json row = {{"n", r.n}, {"runs", r.runs}, {"median_rounds", r.median_rounds}, {"min_rounds", r.min_rounds},
            {"max_rounds", r.max_rounds}, {"log2_log2_n", loglog(r.n)}};
        row["bound"] = r.round_bound ? nlohmann::json(*r.round_bound) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return {
        {"namer", report.namer_spec},
        {"claimer", report.claimer_spec},
        {"rows", rows},
        {"fit",
            {{"c", report.fit.c}, {"slope", report.fit.slope}, {"intercept", report.fit.intercept}, {"residuals", report.fit.residuals}}},
    };
}

nlohmann::json bound_report_to_json(const BoundReport & report)
{
    auto violations = nlohmann::json::array();
    for (const auto & v : report.violations)
        violations.push_back({{"n", v.n}, {"seed", v.seed}, {"namer", v.namer_spec}, {"claimer", v.claimer_spec}, {"detail", v.detail}});
    return {{"records", report.records}, {"greedy_claimer_checked", report.greedy_claimer_checked},
        {"composed_checked", report.composed_checked}, {"growth_rounds_checked", report.growth_rounds_checked}, {"violations", violations},
        {"ok", report.ok()}};
}

} // namespace nclab
