#include <nclab/solver.hpp>

#include <nclab/errors.hpp>

#include <algorithm>
#include <bit>
#include <climits>

namespace nclab {

namespace {
    using Mask = std::uint64_t;

    constexpr Mask bit(int i) { return Mask{1} << i; }

    Mask reflect(Mask m, int span)
    {
        Mask r = 0;
        while (m) {
            int i = std::countr_zero(m);
            r |= bit(span - 1 - i);
            m &= m - 1;
        }
        return r;
    }

    /// a precedes b in the lexicographic order of their sorted point lists (same origin, neither a prefix of the other).
    bool lex_less(Mask a, Mask b)
    {
        Mask diff = a ^ b;
        return diff && (a & (diff & -diff));
    }

    Mask canonical(Mask m)
    {
        m >>= std::countr_zero(m);
        const int span = std::bit_width(m);
        Mask r = reflect(m, span);
        return lex_less(r, m) ? r : m;
    }

    /// Maximal independent sets of one path: selected indices start at 0 or 1, advance by 2 or 3,
    /// and stop at m - 2 or m - 1.
    void path_sets(const std::vector<int> & verts, std::vector<Mask> & out)
    {
        const int m = static_cast<int>(verts.size());
        auto rec = [&](auto & self, int i, Mask acc) -> void {
            acc |= bit(verts[static_cast<std::size_t>(i)]);
            if (i >= m - 2)
                out.push_back(acc);
            if (i + 2 < m)
                self(self, i + 2, acc);
            if (i + 3 < m)
                self(self, i + 3, acc);
        };
        rec(rec, 0, 0);
        if (m > 1)
            rec(rec, 1, 0);
    }

    struct Components {
        Mask isolated = 0;
        std::vector<std::vector<Mask>> paths;
    };

    Components components_of(Mask m, int d)
    {
        Components c;
        const Mask has_prev = d < 64 ? (m << d) : 0;
        const Mask has_next = d < 64 ? (m >> d) : 0;
        c.isolated = m & ~has_prev & ~has_next;
        Mask starts = m & ~has_prev & has_next;
        std::vector<int> verts;
        while (starts) {
            int s = std::countr_zero(starts);
            starts &= starts - 1;
            verts.clear();
            for (int v = s; v < 64 && (m & bit(v)); v += d)
                verts.push_back(v);
            path_sets(verts, c.paths.emplace_back());
        }
        return c;
    }

    template <typename F>
    bool cross_product(const std::vector<std::vector<Mask>> & paths, std::size_t idx, Mask acc, F & visit)
    {
        if (idx == paths.size())
            return visit(acc);
        for (Mask s : paths[idx])
            if (!cross_product(paths, idx + 1, acc | s, visit))
                return false;
        return true;
    }

    template <typename F>
    void for_each_mis(Mask m, int d, F && visit)
    {
        Components c = components_of(m, d);
        cross_product(c.paths, 0, c.isolated, visit);
    }
}

void for_each_maximal_independent_set(const PointSet & a, Distance d, const std::function<bool(const PointSet &)> & visit)
{
    check_distance(d, a.board_size());
    // Enumerate path by path on explicit point lists so any board size works.
    std::vector<std::vector<PointSet>> per_path;
    PointSet base(a.board_size());
    const Point step = d.value();
    a.for_each([&](Point x) {
        if (a.contains(x - step))
            return;
        if (!a.contains(x + step)) {
            base.insert(x);
            return;
        }
        std::vector<Point> verts;
        for (Point y = x; a.contains(y); y += step)
            verts.push_back(y);
        auto & sets = per_path.emplace_back();
        const int m = static_cast<int>(verts.size());
        auto rec = [&](auto & self, int i, PointSet acc) -> void {
            acc.insert(verts[static_cast<std::size_t>(i)]);
            if (i >= m - 2)
                sets.push_back(acc);
            if (i + 2 < m)
                self(self, i + 2, acc);
            if (i + 3 < m)
                self(self, i + 3, acc);
        };
        rec(rec, 0, PointSet(a.board_size()));
        rec(rec, 1, PointSet(a.board_size()));
    });

    auto rec = [&](auto & self, std::size_t idx, const PointSet & acc) -> bool {
        if (idx == per_path.size())
            return visit(acc);
        for (const auto & s : per_path[idx])
            if (!self(self, idx + 1, acc | s))
                return false;
        return true;
    };
    rec(rec, 0, base);
}

std::vector<PointSet> maximal_independent_sets(const PointSet & a, Distance d)
{
    std::vector<PointSet> out;
    for_each_maximal_independent_set(a, d, [&](const PointSet & s) {
        out.push_back(s);
        return true;
    });
    return out;
}

Solver::Solver(SolverConfig config) :
    config_(config)
{
    if (config_.cap < 1 || config_.cap > 64)
        throw CapacityError("solver cap must lie in [1, 64]");
}

std::size_t Solver::states_visited() const
{
    std::lock_guard lock(mutex_);
    return memo_.size();
}

Solver::Mask Solver::to_mask(const PointSet & a, Point & offset) const
{
    auto lo = a.min();
    if (!lo) {
        offset = 1;
        return 0;
    }
    auto hi = *a.max();
    if (hi - *lo + 1 > config_.cap)
        throw CapacityError("position spans " + std::to_string(hi - *lo + 1) + " points; solver cap is " + std::to_string(config_.cap));
    offset = *lo;
    Mask m = 0;
    a.for_each([&](Point x) { m |= bit(static_cast<int>(x - *lo)); });
    return m;
}

int Solver::best_reply_value(Mask m, int d, int stop_at)
{
    int best = INT_MAX;
    for_each_mis(m, d, [&](Mask claim) {
        best = std::min(best, value(m & ~claim));
        return best > stop_at && best > 1;
    });
    return best;
}

int Solver::value(Mask m)
{
    if (!m)
        return 0;
    const Mask c = canonical(m);
    if (auto it = memo_.find(c); it != memo_.end())
        return it->second;

    const int span = std::bit_width(c);
    // Halving bound: greedy claiming finishes within 1 + floor(log2 |A|) rounds.
    const int upper = std::bit_width(static_cast<unsigned>(std::popcount(c)));
    int best = 1;
    for (int d = 1; d < span && best < upper; ++d) {
        if (!(c & (c >> d)))
            continue;
        best = std::max(best, 1 + best_reply_value(c, d, best - 1));
    }
    memo_.emplace(c, static_cast<std::uint8_t>(best));
    return best;
}

int Solver::value_of(const PointSet & a)
{
    std::lock_guard lock(mutex_);
    Point offset;
    return value(to_mask(a, offset));
}

Distance Solver::optimal_namer_move(const PointSet & a)
{
    std::lock_guard lock(mutex_);
    Point offset;
    const Mask m = to_mask(a, offset);
    if (!m)
        throw NoMove("no distance to name on an empty position");
    const int v = value(m);
    const int span = std::bit_width(m);
    for (int d = 1; d < span; ++d) {
        if (!(m & (m >> d)))
            continue;
        if (1 + best_reply_value(m, d, -1) == v)
            return Distance(d);
    }
    return Distance(1);
}

PointSet Solver::optimal_claimer_move(const PointSet & a, Distance d)
{
    check_distance(d, a.board_size());
    std::lock_guard lock(mutex_);
    Point offset;
    const Mask m = to_mask(a, offset);
    if (!m)
        return PointSet(a.board_size());
    if (d.value() >= static_cast<Point>(std::bit_width(m)))
        return a;

    int best = INT_MAX;
    Mask best_claim = 0;
    for_each_mis(m, static_cast<int>(d.value()), [&](Mask claim) {
        int v = value(m & ~claim);
        if (v < best || (v == best && lex_less(claim, best_claim))) {
            best = v;
            best_claim = claim;
        }
        return true;
    });

    PointSet out(a.board_size());
    while (best_claim) {
        out.insert(offset + std::countr_zero(best_claim));
        best_claim &= best_claim - 1;
    }
    return out;
}

SolveReport Solver::solve(Point n)
{
    if (n < 1)
        throw OutOfRange("board size must be positive");
    if (n > config_.cap)
        throw CapacityError("n = " + std::to_string(n) + " exceeds solver cap " + std::to_string(config_.cap));

    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    report.n = n;
    report.value = value_of(PointSet::full(n));

    Transcript & line = report.principal_line;
    line.n = n;
    PointSet remaining = PointSet::full(n);
    while (!remaining.empty()) {
        Distance d = optimal_namer_move(remaining);
        PointSet claim = optimal_claimer_move(remaining, d);
        remaining = apply_round(remaining, d, claim);
        line.rounds.push_back({d, std::move(claim)});
    }
    line.terminal = true;
    report.states_visited = states_visited();
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

} // namespace nclab
