#include <nclab_service/session.hpp>

#include <nclab/errors.hpp>
#include <nclab/json.hpp>
#include <nclab/strategies.hpp>

#include <cstdio>
#include <random>

namespace nclab::service {

using nlohmann::json;

std::string to_string(Phase p)
{
    switch (p) {
    case Phase::awaiting_name:
        return "awaiting-name";
    case Phase::awaiting_claim:
        return "awaiting-claim";
    case Phase::finished:
        return "finished";
    }
    return "unknown";
}

std::string to_string(Role r) { return r == Role::namer ? "namer" : "claimer"; }

json error_message(const std::string & code, const std::string & detail)
{
    return {{"type", "error"}, {"code", code}, {"detail", detail}};
}

namespace {
    /// Thrown inside a step to abort it with a protocol error and no state change.
    struct Reject {
        std::string code;
        std::string detail;
    };

    Point integer_field(const json & message, const char * key)
    {
        auto it = message.find(key);
        if (it == message.end() || !it->is_number_integer())
            throw Reject{"bad_message", std::string("field '") + key + "' must be an integer"};
        return it->get<Point>();
    }
}

Session::Session(std::string id, Point n, Role human, std::string engine_spec, std::uint64_t seed, std::shared_ptr<Solver> solver) :
    id_(std::move(id)),
    n_(n),
    human_(human),
    engine_spec_(std::move(engine_spec)),
    unclaimed_(PointSet::full(n))
{
    history_.n = n;
    StrategyContext ctx{n, seed, std::move(solver)};
    if (human_ == Role::namer)
        engine_claimer_ = make_claimer(engine_spec_, ctx);
    else
        engine_namer_ = make_namer(engine_spec_, ctx);
}

json Session::state_message() const
{
    json j = {
        {"type", "state"},
        {"session", id_},
        {"n", n_},
        {"unclaimed", points_to_json(unclaimed_)},
        {"history", rounds_to_json(history_)},
        {"phase", to_string(phase_)},
        {"role", to_string(human_)},
        {"engine", engine_spec_},
    };
    if (pending_)
        j["d"] = pending_->value();
    return j;
}

std::vector<json> Session::open()
{
    std::vector<json> out;
    if (human_ == Role::claimer)
        engine_names(out);
    out.insert(out.begin(), state_message());
    return out;
}

void Session::engine_names(std::vector<json> & out)
{
    const Distance d = engine_namer_->name(unclaimed_, history_);
    check_distance(d, n_);
    pending_ = d;
    phase_ = Phase::awaiting_claim;
    out.push_back({{"type", "named"}, {"d", d.value()}});
}

void Session::finish_round(Distance d, const PointSet & claim)
{
    unclaimed_ = apply_round(unclaimed_, d, claim);
    history_.rounds.push_back({d, claim});
    pending_.reset();
    if (unclaimed_.empty()) {
        phase_ = Phase::finished;
        history_.terminal = true;
    }
    else {
        phase_ = Phase::awaiting_name;
    }
}

std::vector<json> Session::on_name(const json & message)
{
    if (human_ != Role::namer || phase_ != Phase::awaiting_name)
        throw Reject{"wrong_phase", "a name message is not expected in phase " + to_string(phase_)};
    const Distance d(integer_field(message, "d"));
    try {
        check_distance(d, n_);
    }
    catch (const InvalidDistance & e) {
        throw Reject{"illegal_distance", e.what()};
    }

    PointSet claim(n_);
    try {
        claim = engine_claimer_->claim(unclaimed_, history_, d);
        apply_round(unclaimed_, d, claim);
    }
    catch (const Error & e) {
        throw Reject{"engine_error", e.what()};
    }

    std::vector<json> out;
    finish_round(d, claim);
    out.push_back({{"type", "claimed"}, {"points", points_to_json(claim)}});
    out.push_back(state_message());
    if (phase_ == Phase::finished)
        out.push_back({{"type", "end"}, {"rounds", history_.rounds.size()}});
    return out;
}

std::vector<json> Session::on_claim(const json & message)
{
    if (human_ != Role::claimer || phase_ != Phase::awaiting_claim)
        throw Reject{"wrong_phase", "a claim message is not expected in phase " + to_string(phase_)};
    auto it = message.find("points");
    if (it == message.end() || !it->is_array())
        throw Reject{"bad_message", "field 'points' must be an array of integers"};

    const Distance d = *pending_;
    PointSet claim(n_);
    try {
        claim = points_from_json(*it, n_);
        apply_round(unclaimed_, d, claim);
    }
    catch (const Error & e) {
        throw Reject{"illegal_claim", e.what()};
    }

    // Snapshot so a failing engine leaves the session as it was.
    const PointSet before = unclaimed_;
    const Transcript history_before = history_;
    std::vector<json> out;
    finish_round(d, claim);
    if (phase_ == Phase::finished) {
        out.push_back(state_message());
        out.push_back({{"type", "end"}, {"rounds", history_.rounds.size()}});
        return out;
    }
    try {
        engine_names(out);
    }
    catch (const Error & e) {
        unclaimed_ = before;
        history_ = history_before;
        pending_ = d;
        phase_ = Phase::awaiting_claim;
        throw Reject{"engine_error", e.what()};
    }
    out.insert(out.begin(), state_message());
    return out;
}

std::vector<json> Session::step(const json & message)
{
    try {
        const std::string type = message.value("type", "");
        if (type == "name")
            return on_name(message);
        if (type == "claim")
            return on_claim(message);
        throw Reject{"bad_message", "unexpected message type '" + type + "'"};
    }
    catch (const Reject & r) {
        return {error_message(r.code, r.detail)};
    }
}

SessionManager::SessionManager(SessionConfig config) :
    config_(std::move(config))
{
    if (!config_.solver)
        config_.solver = std::make_shared<Solver>();
}

std::string SessionManager::default_engine(Point n) const { return n <= config_.solver->cap() ? "optimal" : "composed"; }

std::shared_ptr<Session> SessionManager::find(const std::string & id) const
{
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionManager::session_count() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::string SessionManager::fresh_id()
{
    static thread_local std::mt19937_64 gen{std::random_device{}()};
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(gen()));
    return buf;
}

void SessionManager::persist(const Session & s) const
{
    if (!config_.out_dir)
        return;
    std::filesystem::create_directories(*config_.out_dir);
    write_transcript(*config_.out_dir / (s.id() + ".json"), s.history());
}

std::vector<json> SessionManager::create(std::string & bound_session, const json & message)
{
    try {
        const Point n = integer_field(message, "n");
        if (n < 1)
            throw Reject{"bad_message", "n must be positive"};
        if (n > config_.max_board)
            throw Reject{"board_too_large", "live play is limited to n <= " + std::to_string(config_.max_board)};
        const std::string role = message.value("role", "");
        if (role != "namer" && role != "claimer")
            throw Reject{"bad_message", "role must be \"namer\" or \"claimer\""};
        std::string engine = default_engine(n);
        if (auto it = message.find("engine"); it != message.end() && !it->is_null()) {
            if (!it->is_string())
                throw Reject{"bad_message", "engine must be a strategy string"};
            engine = it->get<std::string>();
        }
        std::uint64_t seed = std::random_device{}();
        if (auto it = message.find("seed"); it != message.end()) {
            if (!it->is_number_integer() || (!it->is_number_unsigned() && it->get<std::int64_t>() < 0))
                throw Reject{"bad_message", "seed must be a nonnegative integer"};
            seed = it->get<std::uint64_t>();
        }

        std::shared_ptr<Session> s;
        try {
            s = std::make_shared<Session>(fresh_id(), n, role == "namer" ? Role::namer : Role::claimer, engine, seed, config_.solver);
        }
        catch (const CapacityError & e) {
            throw Reject{"board_too_large", e.what()};
        }
        catch (const Error & e) {
            throw Reject{"engine_error", e.what()};
        }

        std::vector<json> out;
        {
            std::lock_guard session_lock(s->mutex_);
            try {
                out = s->open();
            }
            catch (const Error & e) {
                throw Reject{"engine_error", e.what()};
            }
            out.front()["seed"] = seed;
        }
        {
            std::lock_guard lock(mutex_);
            sessions_.emplace(s->id(), s);
        }
        bound_session = s->id();
        return out;
    }
    catch (const Reject & r) {
        return {error_message(r.code, r.detail)};
    }
}

std::vector<json> SessionManager::handle(std::string & bound_session, const json & message)
{
    if (!message.is_object())
        return {error_message("bad_message", "messages must be JSON objects")};
    const auto type_it = message.find("type");
    if (type_it == message.end() || !type_it->is_string())
        return {error_message("bad_message", "missing string field 'type'")};
    const std::string type = type_it->get<std::string>();

    if (type == "create")
        return create(bound_session, message);
    if (type == "resume") {
        auto id = message.find("session");
        if (id == message.end() || !id->is_string())
            return {error_message("bad_message", "field 'session' must be a string")};
        auto s = find(id->get<std::string>());
        if (!s)
            return {error_message("session_not_found", "no session " + id->get<std::string>())};
        bound_session = s->id();
        std::lock_guard lock(s->mutex_);
        return {s->state_message()};
    }
    if (type != "name" && type != "claim")
        return {error_message("bad_message", "unknown message type '" + type + "'")};

    auto s = find(bound_session);
    if (!s)
        return {error_message("session_not_found", bound_session.empty() ? "no session is bound to this connection" : "no session " + bound_session)};
    std::lock_guard lock(s->mutex_);
    const bool was_finished = s->phase() == Phase::finished;
    auto out = s->step(message);
    if (!was_finished && s->phase() == Phase::finished) {
        try {
            persist(*s);
        }
        catch (const std::exception & e) {
            out.push_back(error_message("persist_failed", e.what()));
        }
    }
    return out;
}

std::vector<std::string> SessionManager::handle_text(std::string & bound_session, const std::string & text)
{
    std::vector<json> replies;
    json message = json::parse(text, nullptr, false);
    if (message.is_discarded())
        replies.push_back(error_message("bad_message", "frame is not valid JSON"));
    else
        replies = handle(bound_session, message);
    std::vector<std::string> out;
    out.reserve(replies.size());
    for (const auto & r : replies)
        out.push_back(r.dump());
    return out;
}

} // namespace nclab::service
