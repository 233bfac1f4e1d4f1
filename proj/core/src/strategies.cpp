#include <nclab/strategies.hpp>

#include <nclab/cubes.hpp>
#include <nclab/distance_profile.hpp>
#include <nclab/errors.hpp>
#include <nclab/solver.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace nclab {

PointSet greedy_claimer_move(const PointSet & a, Distance d)
{
    check_distance(d, a.board_size());
    const Point step = d.value();
    // even_run holds the points at an even offset from the start of their path.
    PointSet even_run(a.board_size());
    a.for_each([&](Point x) {
        if (!even_run.contains(x - step))
            even_run.insert(x);
    });
    return even_run;
}

Distance greedy_namer_move(const PointSet & a)
{
    const std::size_t m = a.size();
    if (m == 0)
        throw NoMove("greedy namer has nothing to name on an empty set");
    if (m == 1)
        return Distance(1);
    const auto counts = distance_counts(a);
    Point best = 1;
    for (Point d = 2; d <= max_distance(a.board_size()) && d < static_cast<Point>(counts.size()); ++d)
        if (counts[static_cast<std::size_t>(d)] > counts[static_cast<std::size_t>(best)])
            best = d;
    return Distance(best);
}

PointSet lazy_claimer_move(const PointSet & a, Distance d)
{
    check_distance(d, a.board_size());
    return a - a.shifted_down(d.value());
}

int bucket_of(Distance d)
{
    if (d.value() < 1)
        throw InvalidDistance("distance must be positive");
    if (d.value() <= 2)
        return 1;
    return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(d.value() - 1)));
}

PointSet block_class(int bucket, int j, Point n)
{
    if (bucket < 1 || bucket > 62)
        throw OutOfRange("bucket index " + std::to_string(bucket) + " out of range");
    if (j < 0 || j > 2)
        throw OutOfRange("block class must be 0, 1 or 2");
    const Point block = Point{1} << (bucket - 1);
    PointSet s(n);
    for (Point start = 1 + j * block; start <= n; start += 3 * block)
        for (Point x = start; x < start + block && x <= n; ++x)
            s.insert(x);
    return s;
}

int composed_dimension(Point n)
{
    if (n < 4)
        return 2;
    const double ll = std::log2(std::log2(static_cast<double>(n)));
    const double lll = ll > 0 ? std::log2(ll) : 0.0;
    if (lll <= 0)
        return 2;
    return std::max(2, static_cast<int>(std::ceil(ll + 2 * lll - 1e-9)));
}

std::size_t composed_round_bound(int k)
{
    return static_cast<std::size_t>(4 * k - 1) * 3 + 1;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream)
{
    // splitmix64 finalizer decorrelates nearby seeds and streams.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return Rng(z);
}

// ---------------------------------------------------------------------------

Distance GreedyNamer::name(const PointSet & unclaimed, const Transcript &)
{
    return greedy_namer_move(unclaimed);
}

Distance RepeatNamer::name(const PointSet &, const Transcript &)
{
    return d_;
}

std::string RepeatNamer::describe() const
{
    return "repeat:d=" + std::to_string(d_.value());
}

Distance DoublingNamer::name(const PointSet & unclaimed, const Transcript &)
{
    const Point limit = max_distance(unclaimed.board_size());
    Point d = std::min(next_, limit);
    if (next_ <= limit)
        next_ *= 2;
    return Distance(d);
}

RandomNamer::RandomNamer(std::uint64_t seed) :
    seed_(seed),
    rng_(make_rng(seed, 1))
{
}

Distance RandomNamer::name(const PointSet & unclaimed, const Transcript &)
{
    const auto limit = static_cast<std::uint64_t>(max_distance(unclaimed.board_size()));
    return Distance(static_cast<Point>(1 + rng_() % limit));
}

std::string RandomNamer::describe() const
{
    return "random:seed=" + std::to_string(seed_);
}

OptimalNamer::OptimalNamer(std::shared_ptr<Solver> solver) :
    solver_(std::move(solver))
{
}

Distance OptimalNamer::name(const PointSet & unclaimed, const Transcript &)
{
    return solver_->optimal_namer_move(unclaimed);
}

// ---------------------------------------------------------------------------

PointSet GreedyClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    return greedy_claimer_move(unclaimed, d);
}

PointSet LazyClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    return lazy_claimer_move(unclaimed, d);
}

PointSet BlockClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    const int bucket = bucket_of(d);
    int & j = progress_[bucket];
    if (j > 2)
        throw InvariantViolation("bucket " + std::to_string(bucket) + " already used all three block classes");
    return block_class(bucket, j++, unclaimed.board_size()) & unclaimed;
}

PartitionLazyClaimer::PartitionLazyClaimer(std::vector<PointSet> classes) :
    virtual_(std::move(classes))
{
}

PointSet PartitionLazyClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    while (current_ < virtual_.size() && !virtual_[current_].intersects(unclaimed))
        ++current_;
    if (current_ == virtual_.size())
        return PointSet(unclaimed.board_size());
    PointSet & v = virtual_[current_];
    PointSet keep = v & v.shifted_down(d.value());
    PointSet taken = (v - keep) & unclaimed;
    v = std::move(keep);
    return taken;
}

// ---------------------------------------------------------------------------

ComposedClaimer::ComposedClaimer(Point n, std::uint64_t seed, std::optional<int> k) :
    n_(n),
    k_(k ? *k : composed_dimension(n)),
    seed_(seed)
{
    if (k_ < 1)
        throw SpecError("composed claimer needs k >= 1");
    auto classes = random_partition(n, 2, seed);
    side_a_ = std::move(classes[0]);
    side_b_ = std::move(classes[1]);
    virtual_a_ = side_a_;
    virtual_b_ = side_b_;
}

ComposedClaimer::ComposedClaimer(PointSet side_a, PointSet side_b, int k) :
    n_(side_a.board_size()),
    k_(k),
    side_a_(std::move(side_a)),
    side_b_(std::move(side_b))
{
    if (k_ < 1)
        throw SpecError("composed claimer needs k >= 1");
    if (side_a_.intersects(side_b_) || (side_a_ | side_b_) != PointSet::full(n_))
        throw SpecError("composed claimer needs a bipartition of [n]");
    virtual_a_ = side_a_;
    virtual_b_ = side_b_;
}

std::string ComposedClaimer::describe() const
{
    std::string s = "composed:k=" + std::to_string(k_);
    if (seed_)
        s += ",seed=" + std::to_string(*seed_);
    return s;
}

std::optional<int> ComposedClaimer::bucket_progress(int bucket) const
{
    auto it = progress_.find(bucket);
    if (it == progress_.end())
        return std::nullopt;
    return it->second;
}

PointSet ComposedClaimer::master_move(const PointSet & unclaimed, Distance d)
{
    const auto phase = static_cast<std::size_t>(2 * k_);
    const bool a_live = virtual_a_.intersects(unclaimed);
    bool use_a = moves_a_ < phase || a_live;
    if (use_a && moves_a_ >= phase)
        violated_ = true;
    if (!use_a && moves_b_ >= phase && virtual_b_.intersects(unclaimed))
        violated_ = true;

    PointSet & v = use_a ? virtual_a_ : virtual_b_;
    ++(use_a ? moves_a_ : moves_b_);
    PointSet keep = v & v.shifted_down(d.value());
    PointSet taken = (v - keep) & unclaimed;
    v = std::move(keep);
    return taken;
}

PointSet ComposedClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    check_distance(d, n_);
    const int bucket = bucket_of(d);
    auto [it, first_time] = progress_.try_emplace(bucket, 0);
    if (first_time)
        return master_move(unclaimed, d);
    if (it->second > 2)
        throw InvariantViolation("bucket " + std::to_string(bucket) + " named again after all three block classes were claimed");
    return block_class(bucket, it->second++, n_) & unclaimed;
}

OptimalClaimer::OptimalClaimer(std::shared_ptr<Solver> solver) :
    solver_(std::move(solver))
{
}

PointSet OptimalClaimer::claim(const PointSet & unclaimed, const Transcript &, Distance d)
{
    return solver_->optimal_claimer_move(unclaimed, d);
}

// ---------------------------------------------------------------------------

std::string StrategySpec::to_string() const
{
    std::string s = kind;
    char sep = ':';
    for (const auto & [k, v] : params) {
        s += sep + k + "=" + v;
        sep = ',';
    }
    return s;
}

StrategySpec parse_strategy_spec(const std::string & text)
{
    StrategySpec spec;
    auto colon = text.find(':');
    spec.kind = text.substr(0, colon);
    if (spec.kind.empty())
        throw SpecError("empty strategy specifier");
    if (colon == std::string::npos)
        return spec;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw SpecError("malformed parameter '" + item + "' in strategy '" + text + "'");
        spec.params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return spec;
}

namespace {
    std::uint64_t parse_u64(const StrategySpec & spec, const std::string & key)
    {
        const std::string & v = spec.params.at(key);
        try {
            std::size_t used = 0;
            auto x = std::stoull(v, &used);
            if (used != v.size())
                throw std::invalid_argument(v);
            return x;
        }
        catch (const std::exception &) {
            throw SpecError("parameter " + key + "=" + v + " of '" + spec.kind + "' is not a nonnegative integer");
        }
    }

    void allow_params(const StrategySpec & spec, std::initializer_list<const char *> keys)
    {
        for (const auto & [k, v] : spec.params)
            if (std::find_if(keys.begin(), keys.end(), [&](const char * key) { return k == key; }) == keys.end())
                throw SpecError("unknown parameter '" + k + "' for strategy '" + spec.kind + "'");
    }

    std::uint64_t seed_of(const StrategySpec & spec, const StrategyContext & ctx)
    {
        return spec.params.contains("seed") ? parse_u64(spec, "seed") : ctx.seed;
    }

    std::shared_ptr<Solver> solver_for(const StrategySpec & spec, const StrategyContext & ctx)
    {
        SolverConfig config;
        if (spec.params.contains("cap"))
            config.cap = static_cast<Point>(parse_u64(spec, "cap"));
        auto solver = ctx.solver && !spec.params.contains("cap") ? ctx.solver : std::make_shared<Solver>(config);
        if (ctx.n > solver->cap())
            throw CapacityError("optimal play needs n <= " + std::to_string(solver->cap()) + ", got " + std::to_string(ctx.n));
        return solver;
    }

    [[noreturn]] void human_unavailable()
    {
        throw SpecError("the 'human' strategy is only available through the play service");
    }
}

std::unique_ptr<Namer> make_namer(const std::string & text, const StrategyContext & ctx)
{
    const StrategySpec spec = parse_strategy_spec(text);
    if (spec.kind == "greedy") {
        allow_params(spec, {});
        return std::make_unique<GreedyNamer>();
    }
    if (spec.kind == "repeat") {
        allow_params(spec, {"d"});
        Distance d(spec.params.contains("d") ? static_cast<Point>(parse_u64(spec, "d")) : 1);
        if (ctx.n > 0)
            check_distance(d, ctx.n);
        return std::make_unique<RepeatNamer>(d);
    }
    if (spec.kind == "doubling") {
        allow_params(spec, {});
        return std::make_unique<DoublingNamer>();
    }
    if (spec.kind == "random") {
        allow_params(spec, {"seed"});
        return std::make_unique<RandomNamer>(seed_of(spec, ctx));
    }
    if (spec.kind == "optimal") {
        allow_params(spec, {"cap"});
        return std::make_unique<OptimalNamer>(solver_for(spec, ctx));
    }
    if (spec.kind == "human")
        human_unavailable();
    throw SpecError("unknown namer strategy '" + text + "'");
}

std::unique_ptr<Claimer> make_claimer(const std::string & text, const StrategyContext & ctx)
{
    const StrategySpec spec = parse_strategy_spec(text);
    if (spec.kind == "greedy") {
        allow_params(spec, {});
        return std::make_unique<GreedyClaimer>();
    }
    if (spec.kind == "lazy") {
        allow_params(spec, {});
        return std::make_unique<LazyClaimer>();
    }
    if (spec.kind == "block") {
        allow_params(spec, {});
        return std::make_unique<BlockClaimer>();
    }
    if (spec.kind == "composed") {
        allow_params(spec, {"k", "seed"});
        std::optional<int> k;
        if (spec.params.contains("k") && spec.params.at("k") != "auto")
            k = static_cast<int>(parse_u64(spec, "k"));
        return std::make_unique<ComposedClaimer>(ctx.n, seed_of(spec, ctx), k);
    }
    if (spec.kind == "optimal") {
        allow_params(spec, {"cap"});
        return std::make_unique<OptimalClaimer>(solver_for(spec, ctx));
    }
    if (spec.kind == "human")
        human_unavailable();
    throw SpecError("unknown claimer strategy '" + text + "'");
}

} // namespace nclab
