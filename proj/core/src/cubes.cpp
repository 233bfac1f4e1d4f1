#include <nclab/cubes.hpp>

#include <nclab/errors.hpp>
#include <nclab/strategies.hpp>

#include <algorithm>
#include <bit>
#include <cmath>

namespace nclab {

PointSet cube_points(const CubeSpec & c, Point n)
{
    std::vector<Point> sums{0};
    for (Point d : c.sides) {
        if (d < 1)
            throw OutOfRange("cube sides must be positive");
        const std::size_t m = sums.size();
        for (std::size_t i = 0; i < m; ++i)
            sums.push_back(sums[i] + d);
        std::sort(sums.begin(), sums.end());
        sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
    }
    PointSet out(n);
    for (Point s : sums) {
        const Point x = c.x + s;
        if (x < 1 || x > n)
            throw OutOfRange("cube point " + std::to_string(x) + " outside [1, " + std::to_string(n) + "]");
        out.insert(x);
    }
    return out;
}

bool is_nondegenerate(std::span<const Point> sides)
{
    std::vector<Point> sums{0}, shifted, merged;
    for (Point d : sides) {
        shifted.resize(sums.size());
        std::transform(sums.begin(), sums.end(), shifted.begin(), [d](Point s) { return s + d; });
        merged.resize(2 * sums.size());
        std::merge(sums.begin(), sums.end(), shifted.begin(), shifted.end(), merged.begin());
        if (std::adjacent_find(merged.begin(), merged.end()) != merged.end())
            return false;
        sums.swap(merged);
    }
    return true;
}

PointSet cube_bases(const PointSet & s, std::span<const Point> sides)
{
    PointSet t = s;
    for (Point d : sides) {
        if (d < 1)
            throw OutOfRange("cube sides must be positive");
        t &= t.shifted_down(d);
    }
    return t;
}

std::optional<Point> contains_cube(const PointSet & s, std::span<const Point> sides)
{
    return cube_bases(s, sides).min();
}

namespace {
    class NondegenerateSearch {
    public:
        NondegenerateSearch(int k, SearchLimits limits) :
            k_(k),
            start_(std::chrono::steady_clock::now()),
            limits_(limits)
        {
        }

        CubeSearchResult run(const PointSet & s)
        {
            PointSet sums(s.board_size());
            if (s.board_size() > 0)
                sums.insert(1);
            result_.status = SearchStatus::none;
            if (s.size() >= (std::size_t{1} << std::min(k_, 62)))
                dfs(0, s, sums, 0);
            return std::move(result_);
        }

    private:
        bool out_of_time()
        {
            if (!limits_.time_limit || (result_.nodes & 1023) != 0)
                return false;
            return std::chrono::steady_clock::now() - start_ > *limits_.time_limit;
        }

        // Returns true when the search should stop (witness found or aborted).
        bool dfs(int depth, const PointSet & t, const PointSet & sums, Point last)
        {
            if (depth == k_) {
                result_.status = SearchStatus::found;
                result_.witness = CubeSpec{*t.min(), sides_};
                return true;
            }
            ++result_.nodes;
            if (out_of_time()) {
                result_.status = SearchStatus::aborted;
                return true;
            }

            const Point remaining = k_ - depth;
            const std::size_t need = std::size_t{1} << (remaining - 1);
            const Point lo_pt = *t.min();
            const Point span = *t.max() - lo_pt;
            const Point lo = last + 1;
            const Point hi = (span - remaining * (remaining - 1) / 2) / remaining;
            if (hi < lo)
                return false;

            auto try_side = [&](Point d) {
                PointSet shifted = sums.shifted_up(d);
                if (shifted.intersects(sums))
                    return false;
                PointSet next = t & t.shifted_down(d);
                sides_.push_back(d);
                bool stop = dfs(depth + 1, next, sums | shifted, d);
                sides_.pop_back();
                return stop;
            };

            const auto size = static_cast<double>(t.size());
            const double pair_cost = size * size * static_cast<double>(hi) / static_cast<double>(std::max<Point>(span, 1));
            const double shift_cost = static_cast<double>(hi - lo + 1) * static_cast<double>(t.words().size());

            if (pair_cost < shift_cost) {
                const auto pts = t.points();
                std::vector<std::uint32_t> counts(static_cast<std::size_t>(hi - lo + 1), 0);
                for (std::size_t i = 0; i < pts.size(); ++i) {
                    auto first = std::lower_bound(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1, pts.end(), pts[i] + lo);
                    for (auto it = first; it != pts.end() && *it - pts[i] <= hi; ++it)
                        ++counts[static_cast<std::size_t>(*it - pts[i] - lo)];
                }
                for (Point d = lo; d <= hi; ++d)
                    if (counts[static_cast<std::size_t>(d - lo)] >= need && try_side(d))
                        return true;
            }
            else {
                for (Point d = lo; d <= hi; ++d)
                    if (t.pairs_at_distance(d) >= need && try_side(d))
                        return true;
            }
            return false;
        }

        int k_;
        std::chrono::steady_clock::time_point start_;
        SearchLimits limits_;
        std::vector<Point> sides_;
        CubeSearchResult result_;
    };
}

CubeSearchResult find_nondegenerate_cube(const PointSet & s, int k, SearchLimits limits)
{
    if (k < 1)
        throw OutOfRange("cube dimension must be at least 1");
    if (k > 62)
        return {};
    return NondegenerateSearch(k, limits).run(s);
}

std::vector<PointSet> random_partition(Point n, int r, std::uint64_t seed)
{
    if (r < 2)
        throw OutOfRange("a partition needs at least two classes");
    std::vector<PointSet> classes(static_cast<std::size_t>(r), PointSet(n));
    Rng rng = make_rng(seed, 0);
    for (Point x = 1; x <= n; ++x) {
        const std::uint64_t c = ((rng() >> 32) * static_cast<std::uint64_t>(r)) >> 32;
        classes[c].insert(x);
    }
    return classes;
}

double log2_expected_cube_count(Point n, int k)
{
    return (k + 1) * std::log2(static_cast<double>(n)) - std::exp2(k);
}

double expected_cube_count(Point n, int k)
{
    return std::exp2(log2_expected_cube_count(n, k));
}

PartitionCertificate certify_partition(std::vector<PointSet> classes, int k, SearchLimits limits)
{
    if (classes.empty())
        throw OutOfRange("no classes to certify");
    const Point n = classes.front().board_size();
    PointSet seen(n);
    for (const auto & c : classes) {
        if (c.board_size() != n)
            throw OutOfRange("classes live on different boards");
        if (c.intersects(seen))
            throw OutOfRange("classes overlap");
        seen |= c;
    }
    if (seen != PointSet::full(n))
        throw OutOfRange("classes do not cover [n]");

    PartitionCertificate cert;
    cert.n = n;
    cert.k = k;
    cert.classes = std::move(classes);
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < cert.classes.size(); ++i) {
        SearchLimits left = limits;
        if (limits.time_limit)
            left.time_limit = *limits.time_limit - (std::chrono::steady_clock::now() - start);
        auto r = find_nondegenerate_cube(cert.classes[i], k, left);
        cert.nodes += r.nodes;
        if (r.status == SearchStatus::aborted) {
            cert.aborted = true;
            return cert;
        }
        if (r.status == SearchStatus::found) {
            cert.witness_class = i;
            cert.witness = std::move(r.witness);
            return cert;
        }
    }
    cert.exhaustive = true;
    return cert;
}

nlohmann::json cube_to_json(const std::optional<CubeSpec> & c)
{
    if (!c)
        return nullptr;
    return {{"x", c->x}, {"sides", c->sides}};
}

nlohmann::json certificate_to_json(const PartitionCertificate & c)
{
    nlohmann::json j = {
        {"n", c.n},
        {"k", c.k},
        {"class", c.witness_class ? nlohmann::json(*c.witness_class) : nlohmann::json(nullptr)},
        {"witness", cube_to_json(c.witness)},
        {"exhaustive", c.exhaustive},
    };
    j["classes"] = c.classes.size();
    j["aborted"] = c.aborted;
    j["nodes"] = c.nodes;
    return j;
}

namespace {
    using Mask = std::uint64_t;

    bool any_cube(Mask t, int remaining, Point last)
    {
        if (remaining == 0)
            return t != 0;
        if (!t)
            return false;
        const int span = std::bit_width(t) - 1 - std::countr_zero(t);
        for (Point d = std::max<Point>(last, 1); d * remaining <= span; ++d) {
            Mask next = t & (t >> d);
            if (next && any_cube(next, remaining - 1, d))
                return true;
        }
        return false;
    }

    Mask to_mask(const PointSet & s)
    {
        Mask m = 0;
        s.for_each([&](Point x) { m |= Mask{1} << (x - 1); });
        return m;
    }

    class RamseySearch {
    public:
        RamseySearch(int k, int r, Point n_max) :
            k_(k),
            r_(r),
            n_max_(n_max),
            classes_(static_cast<std::size_t>(r), 0)
        {
        }

        RamseyResult run()
        {
            colouring_.reserve(static_cast<std::size_t>(n_max_));
            const bool reached = dfs(0, 0);
            if (!reached)
                result_.value = static_cast<Point>(result_.longest_free_colouring.size()) + 1;
            return std::move(result_);
        }

    private:
        bool dfs(Point placed, int used)
        {
            ++result_.nodes;
            if (colouring_.size() > result_.longest_free_colouring.size())
                result_.longest_free_colouring = colouring_;
            if (placed == n_max_)
                return true;
            const Mask point = Mask{1} << placed;
            for (int c = 0; c < std::min(used + 1, r_); ++c) {
                auto & cls = classes_[static_cast<std::size_t>(c)];
                cls |= point;
                if (!any_cube(cls, k_, 1)) {
                    colouring_.push_back(c);
                    if (dfs(placed + 1, std::max(used, c + 1)))
                        return true;
                    colouring_.pop_back();
                }
                cls &= ~point;
            }
            return false;
        }

        int k_;
        int r_;
        Point n_max_;
        std::vector<Mask> classes_;
        std::vector<int> colouring_;
        RamseyResult result_;
    };
}

bool contains_any_cube(const PointSet & s, int k)
{
    if (k < 0)
        throw OutOfRange("cube dimension must be nonnegative");
    if (s.board_size() <= 64)
        return any_cube(to_mask(s), k, 1);

    auto rec = [&](auto & self, const PointSet & t, int remaining, Point last) -> bool {
        if (remaining == 0)
            return !t.empty();
        auto lo = t.min();
        if (!lo)
            return false;
        const Point span = *t.max() - *lo;
        for (Point d = last; d * remaining <= span; ++d) {
            PointSet next = t & t.shifted_down(d);
            if (!next.empty() && self(self, next, remaining - 1, d))
                return true;
        }
        return false;
    };
    return rec(rec, s, k, 1);
}

RamseyResult hilbert_ramsey_number(int k, int r, Point n_max)
{
    if (k < 1 || r < 1)
        throw OutOfRange("h(k, r) needs k >= 1 and r >= 1");
    if (n_max < 1 || n_max > 64)
        throw CapacityError("Ramsey search supports n_max in [1, 64]");
    return RamseySearch(k, r, n_max).run();
}

} // namespace nclab
