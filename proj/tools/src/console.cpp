#include <nclab_service/console.hpp>

#include <istream>
#include <ostream>
#include <sstream>

namespace nclab::service {

using nlohmann::json;

namespace {
    std::string join(const json & points)
    {
        std::string s = "{";
        for (std::size_t i = 0; i < points.size(); ++i)
            s += (i ? "," : "") + std::to_string(points[i].get<Point>());
        return s + "}";
    }

    /// Prints replies and reports whether the game has ended.
    bool show(std::ostream & out, const std::vector<json> & replies)
    {
        bool ended = false;
        for (const auto & r : replies) {
            const std::string type = r.at("type");
            if (type == "state")
                out << "unclaimed " << join(r.at("unclaimed")) << "  (round " << r.at("history").size() + 1 << ")\n";
            else if (type == "named")
                out << "engine names d = " << r.at("d").get<Point>() << '\n';
            else if (type == "claimed")
                out << "engine claims " << join(r.at("points")) << '\n';
            else if (type == "end") {
                out << "board covered after " << r.at("rounds").get<std::size_t>() << " rounds\n";
                ended = true;
            }
            else if (type == "error")
                out << "rejected (" << r.at("code").get<std::string>() << "): " << r.at("detail").get<std::string>() << '\n';
        }
        return ended;
    }
}

int run_console_play(std::istream & in, std::ostream & out, SessionManager & sessions, const ConsoleOptions & options)
{
    json create = {{"type", "create"}, {"n", options.n}, {"role", to_string(options.human)}};
    if (!options.engine.empty())
        create["engine"] = options.engine;
    if (options.seed)
        create["seed"] = *options.seed;

    std::string bound;
    auto replies = sessions.handle(bound, create);
    if (bound.empty()) {
        show(out, replies);
        return 1;
    }
    out << "session " << bound << ": you are " << to_string(options.human) << " against " << sessions.find(bound)->engine_spec() << '\n';
    if (show(out, replies))
        return 0;

    std::string line;
    while (true) {
        out << (options.human == Role::namer ? "d> " : "claim> ") << std::flush;
        if (!std::getline(in, line) || line == "quit")
            return 1;
        json message;
        if (options.human == Role::namer) {
            std::istringstream is(line);
            Point d = 0;
            if (!(is >> d)) {
                out << "enter a distance\n";
                continue;
            }
            message = {{"type", "name"}, {"d", d}};
        }
        else {
            for (char & c : line)
                if (c == ',' || c == '{' || c == '}')
                    c = ' ';
            std::istringstream is(line);
            auto points = json::array();
            Point x = 0;
            while (is >> x)
                points.push_back(x);
            if (!is.eof()) {
                out << "enter points as integers\n";
                continue;
            }
            message = {{"type", "claim"}, {"points", points}};
        }
        if (show(out, sessions.handle(bound, message)))
            return 0;
    }
}

} // namespace nclab::service
