#pragma once

#include <nclab/game.hpp>
#include <nclab/solver.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nclab::service {

enum class Phase { awaiting_name, awaiting_claim, finished };
enum class Role { namer, claimer };

std::string to_string(Phase p);
std::string to_string(Role r);

struct SessionConfig {
    /// Largest board a live session may use.
    Point max_board = 512;
    /// Finished transcripts are written to <out_dir>/<session id>.json when set.
    std::optional<std::filesystem::path> out_dir;
    /// Shared by every session whose engine is "optimal".
    std::shared_ptr<Solver> solver;
};

/// One live game between a human and an engine strategy.
class Session {
public:
    Session(std::string id, Point n, Role human, std::string engine_spec, std::uint64_t seed, std::shared_ptr<Solver> solver);

    const std::string & id() const noexcept { return id_; }
    Point n() const noexcept { return n_; }
    Role human_role() const noexcept { return human_; }
    const std::string & engine_spec() const noexcept { return engine_spec_; }
    Phase phase() const noexcept { return phase_; }
    const PointSet & unclaimed() const noexcept { return unclaimed_; }
    const Transcript & history() const noexcept { return history_; }
    std::optional<Distance> pending_distance() const noexcept { return pending_; }

    /// Messages emitted when the session opens (state, plus the engine's first name for a human Claimer).
    std::vector<nlohmann::json> open();
    /// One client message in, outbound messages out. Illegal input yields a single error message
    /// and leaves the session untouched.
    std::vector<nlohmann::json> step(const nlohmann::json & message);

    nlohmann::json state_message() const;

private:
    std::vector<nlohmann::json> on_name(const nlohmann::json & message);
    std::vector<nlohmann::json> on_claim(const nlohmann::json & message);
    void finish_round(Distance d, const PointSet & claim);
    void engine_names(std::vector<nlohmann::json> & out);

    std::string id_;
    Point n_;
    Role human_;
    std::string engine_spec_;
    std::unique_ptr<Namer> engine_namer_;
    std::unique_ptr<Claimer> engine_claimer_;
    PointSet unclaimed_;
    Transcript history_;
    Phase phase_ = Phase::awaiting_name;
    std::optional<Distance> pending_;

    friend class SessionManager;
    std::mutex mutex_;
};

nlohmann::json error_message(const std::string & code, const std::string & detail);

/// Routes protocol messages to sessions. A connection is bound to at most one session at a time;
/// the caller keeps the bound id and passes it back on every message.
///
/// Client messages:
///   {"type":"create","n":int,"role":"namer"|"claimer","engine"?:spec,"seed"?:int}
///   {"type":"resume","session":id}
///   {"type":"name","d":int}
///   {"type":"claim","points":[int]}
/// Server messages: state, named, claimed, end, error.
class SessionManager {
public:
    explicit SessionManager(SessionConfig config = {});

    std::vector<nlohmann::json> handle(std::string & bound_session, const nlohmann::json & message);
    /// Same as handle for raw text frames; malformed JSON becomes a bad_message error.
    std::vector<std::string> handle_text(std::string & bound_session, const std::string & text);

    /// Engine used when a create message names none: optimal up to the solver cap, composed above.
    std::string default_engine(Point n) const;

    std::shared_ptr<Session> find(const std::string & id) const;
    std::size_t session_count() const;

private:
    std::vector<nlohmann::json> create(std::string & bound_session, const nlohmann::json & message);
    std::string fresh_id();
    void persist(const Session & s) const;

    SessionConfig config_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

} // namespace nclab::service
