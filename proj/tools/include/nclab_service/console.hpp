#pragma once

#include <nclab_service/session.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace nclab::service {

struct ConsoleOptions {
    Point n = 8;
    Role human = Role::namer;
    /// Empty selects SessionManager::default_engine.
    std::string engine;
    std::optional<std::uint64_t> seed;
};

/// Plays one session on a text stream. A human Namer types a distance per line, a human Claimer
/// types the claimed points separated by spaces or commas (an empty line claims nothing).
/// "quit" abandons the game. Returns 0 when the game finished, 1 otherwise.
int run_console_play(std::istream & in, std::ostream & out, SessionManager & sessions, const ConsoleOptions & options);

} // namespace nclab::service
