#pragma once

#include <nclab/game.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nclab {

/// Largest board the batch harness accepts (dense bit arrays of 2^24 points).
inline constexpr Point max_batch_board = Point{1} << 24;

struct BoundFlags {
    /// Claimer-side round bound that applies to this matchup, if any.
    std::optional<std::size_t> round_bound;
    bool round_bound_ok = true;
    /// Claimer reported its own guarantee failing (composed fallback).
    bool claimer_flagged = false;
    /// Greedy Namer per-round growth inequality: rounds with |A| >= 100 that were checked.
    std::size_t growth_rounds_checked = 0;
    std::size_t growth_violations = 0;

    bool ok() const noexcept { return round_bound_ok && !claimer_flagged && growth_violations == 0; }
};

struct MatchRecord {
    Point n = 0;
    std::string namer_spec;
    std::string claimer_spec;
    std::uint64_t seed = 0;
    std::size_t rounds = 0;
    /// |A_1|, ..., |A_rounds|: unclaimed points after each round.
    std::vector<std::size_t> per_round_sizes;
    bool terminal = false;
    BoundFlags flags;
    /// Kept only when MatchOptions::keep_transcripts is set.
    std::optional<Transcript> transcript;
};

struct MatchOptions {
    /// 0 selects max(default_round_cap(n), claimer round bound + 1).
    std::size_t round_cap = 0;
    bool keep_transcripts = false;
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// True for specs whose play depends on the match seed (random namer, composed claimer without an explicit seed).
bool is_randomized(const std::string & spec);

/// One record per (n, seed), sorted by n then seed. Deterministic pairs run once per n with the
/// first seed. Strategy faults propagate with full context.
std::vector<MatchRecord> run_matchup(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<Point> & n_list,
    const std::vector<std::uint64_t> & seeds, const MatchOptions & options = {});

/// 1 + floor(log2 n).
std::size_t greedy_round_bound(Point n);

/// Next-round lower bound 0.99 (|A|/n)^2 n / 4 for a round that starts with |A| unclaimed points.
double greedy_namer_growth_floor(std::size_t unclaimed, Point n);

/// Fills record.flags from its sizes and specs. claimer_round_bound is the claimer's own proven bound, if any.
void evaluate_bounds(MatchRecord & record, std::optional<std::size_t> claimer_round_bound, bool claimer_flagged);

struct BoundViolation {
    Point n = 0;
    std::uint64_t seed = 0;
    std::string namer_spec;
    std::string claimer_spec;
    std::string detail;
};

struct BoundReport {
    std::size_t records = 0;
    std::size_t greedy_claimer_checked = 0;
    std::size_t composed_checked = 0;
    std::size_t growth_rounds_checked = 0;
    std::vector<BoundViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

BoundReport check_bounds(const std::vector<MatchRecord> & records);

struct GrowthRow {
    Point n = 0;
    std::size_t runs = 0;
    double median_rounds = 0;
    std::size_t min_rounds = 0;
    std::size_t max_rounds = 0;
    std::optional<std::size_t> round_bound;
};

struct GrowthFit {
    /// rounds ≈ c * log2 log2 n, least squares through the origin.
    double c = 0;
    /// rounds ≈ intercept + slope * log2 log2 n.
    double slope = 0;
    double intercept = 0;
    /// Median minus c * log2 log2 n, one per row.
    std::vector<double> residuals;
};

struct GrowthReport {
    std::string namer_spec;
    std::string claimer_spec;
    std::vector<GrowthRow> rows;
    GrowthFit fit;
};

GrowthReport growth_table(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<Point> & n_grid,
    const std::vector<std::uint64_t> & seeds, const MatchOptions & options = {});
GrowthReport summarize(const std::string & namer_spec, const std::string & claimer_spec, const std::vector<MatchRecord> & records);

/// Header `n,seed,namer,claimer,rounds,bound,bound_ok` followed by one row per record.
void write_csv(std::ostream & out, const std::vector<MatchRecord> & records);
nlohmann::json growth_report_to_json(const GrowthReport & report);
nlohmann::json bound_report_to_json(const BoundReport & report);

} // namespace nclab
