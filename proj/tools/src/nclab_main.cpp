#include <nclab/cubes.hpp>
#include <nclab/errors.hpp>
#include <nclab/experiments.hpp>
#include <nclab/json.hpp>
#include <nclab/solver.hpp>
#include <nclab/strategies.hpp>
#include <nclab_service/console.hpp>
#include <nclab_service/server.hpp>

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace nclab;

namespace {

constexpr int exit_usage = 2;
constexpr int exit_capacity = 3;

struct UsageError : Error {
    using Error::Error;
};

/// One integer term: "N" or "B^E".
std::int64_t parse_term(const std::string & s)
{
    try {
        std::size_t pos = 0;
        if (auto caret = s.find('^'); caret != std::string::npos) {
            const std::int64_t base = std::stoll(s.substr(0, caret));
            const std::int64_t exp = std::stoll(s.substr(caret + 1), &pos);
            if (pos != s.size() - caret - 1 || exp < 0 || exp > 62)
                throw UsageError("bad power '" + s + "'");
            std::int64_t v = 1;
            for (std::int64_t i = 0; i < exp; ++i)
                v *= base;
            return v;
        }
        const std::int64_t v = std::stoll(s, &pos);
        if (pos != s.size())
            throw UsageError("bad integer '" + s + "'");
        return v;
    }
    catch (const std::logic_error &) {
        throw UsageError("bad integer '" + s + "'");
    }
}

/// Comma-separated terms, each "N", "B^E" or an inclusive range "A..B".
std::vector<std::int64_t> parse_list(const std::string & text)
{
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const auto lo = parse_term(item.substr(0, dots));
            const auto hi = parse_term(item.substr(dots + 2));
            if (hi < lo)
                throw UsageError("empty range '" + item + "'");
            for (auto v = lo; v <= hi; ++v)
                out.push_back(v);
        }
        else {
            out.push_back(parse_term(item));
        }
    }
    if (out.empty())
        throw UsageError("empty list '" + text + "'");
    return out;
}

void write_json_file(const std::string & path, const nlohmann::json & j)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

std::string cube_text(const CubeSpec & c)
{
    std::string s = "H(" + std::to_string(c.x) + ";";
    for (std::size_t i = 0; i < c.sides.size(); ++i)
        s += (i ? "," : " ") + std::to_string(c.sides[i]);
    return s + ")";
}

std::vector<PointSet> named_partition(const std::string & spec, Point n)
{
    const auto parsed = parse_strategy_spec(spec);
    if (parsed.kind == "odd-even") {
        PointSet odd(n), even(n);
        for (Point x = 1; x <= n; ++x)
            (x % 2 ? odd : even).insert(x);
        return {odd, even};
    }
    if (parsed.kind == "random") {
        std::uint64_t seed = 0;
        int r = 2;
        for (const auto & [k, v] : parsed.params) {
            if (k == "seed")
                seed = static_cast<std::uint64_t>(parse_term(v));
            else if (k == "r")
                r = static_cast<int>(parse_term(v));
            else
                throw UsageError("unknown partition parameter '" + k + "'");
        }
        return random_partition(n, r, seed);
    }
    throw UsageError("unknown partition '" + spec + "' (expected odd-even or random:seed=S[,r=R])");
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Namer-Claimer game laboratory"};
    app.require_subcommand(1);

    // solve
    auto * solve = app.add_subcommand("solve", "Exact game value of [n] with a principal line");
    Point solve_n = 0;
    Point solve_cap = SolverConfig{}.cap;
    std::string solve_json;
    solve->add_option("--n", solve_n, "Board size")->required();
    solve->add_option("--cap", solve_cap, "Largest board the solver accepts (at most 64)");
    solve->add_option("--json", solve_json, "Write the report as JSON");

    // simulate
    auto * simulate = app.add_subcommand("simulate", "Batch matchups with bound checks");
    std::string sim_namer = "greedy", sim_claimer = "greedy", sim_grid = "2^4,2^8,2^12,2^16", sim_seeds = "0..9";
    std::string sim_csv, sim_report;
    unsigned sim_threads = 0;
    simulate->add_option("--namer", sim_namer, "Namer spec");
    simulate->add_option("--claimer", sim_claimer, "Claimer spec");
    simulate->add_option("--n-grid", sim_grid, "Board sizes, e.g. 2^4,2^8 or 16,256");
    simulate->add_option("--seeds", sim_seeds, "Seeds, e.g. 0..29 or 1,5,9");
    simulate->add_option("--csv", sim_csv, "Per-game CSV output");
    simulate->add_option("--report", sim_report, "Growth and bound report as JSON");
    simulate->add_option("--threads", sim_threads, "Worker threads (0 = all cores)");

    // cubes
    auto * cubes = app.add_subcommand("cubes", "Hilbert cube tools");
    cubes->require_subcommand(1);
    auto * certify = cubes->add_subcommand("certify", "Search every class of a partition for a non-degenerate k-cube");
    Point cert_n = 0;
    int cert_k = 0;
    std::string cert_classes = "random:seed=0", cert_json;
    double cert_limit = 0;
    certify->add_option("--n", cert_n, "Board size")->required();
    certify->add_option("--k", cert_k, "Cube dimension")->required();
    certify->add_option("--classes", cert_classes, "odd-even or random:seed=S[,r=R]");
    certify->add_option("--time-limit", cert_limit, "Seconds before the search aborts (0 = none)");
    certify->add_option("--json", cert_json, "Write the certificate as JSON");

    auto * find = cubes->add_subcommand("find", "Find a non-degenerate k-cube inside a set");
    Point find_n = 0;
    int find_k = 0;
    std::string find_set;
    find->add_option("--n", find_n, "Board size")->required();
    find->add_option("--k", find_k, "Cube dimension")->required();
    find->add_option("--set", find_set, "Points of the set, e.g. 1,3,5..9 (default: all of [n])");

    auto * count = cubes->add_subcommand("count", "First-moment bound on k-cubes in a random half of [n]");
    Point count_n = 0;
    int count_k = 0;
    count->add_option("--n", count_n, "Board size")->required();
    count->add_option("--k", count_k, "Cube dimension")->required();

    // ramsey
    auto * ramsey = app.add_subcommand("ramsey", "Hilbert cube Ramsey number h(k, r) by exhaustive colouring search");
    int ram_k = 1, ram_r = 2;
    Point ram_max = 64;
    ramsey->add_option("--k", ram_k, "Cube dimension")->required();
    ramsey->add_option("--r", ram_r, "Number of colours")->required();
    ramsey->add_option("--n-max", ram_max, "Largest board searched (at most 64)");

    // play
    auto * play = app.add_subcommand("play", "Play a game on the console against an engine");
    Point play_n = 8;
    std::string play_role = "namer", play_engine, play_out;
    std::optional<std::uint64_t> play_seed;
    play->add_option("--n", play_n, "Board size");
    play->add_option("--role", play_role, "Your side")->check(CLI::IsMember({"namer", "claimer"}));
    play->add_option("--engine", play_engine, "Engine spec (default: optimal when solvable, else composed)");
    play->add_option("--seed", play_seed, "Engine seed");
    play->add_option("--out-dir", play_out, "Directory for the finished transcript");

    // serve
    auto * serve = app.add_subcommand("serve", "WebSocket session service");
    service::ServerOptions srv;
    std::string srv_out = "transcripts";
    serve->add_option("--port", srv.port, "TCP port (0 = ephemeral)");
    serve->add_option("--address", srv.address, "Listen address");
    serve->add_option("--threads", srv.threads, "I/O threads");
    serve->add_option("--out-dir", srv_out, "Directory for finished transcripts");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*solve) {
            Solver solver(SolverConfig{solve_cap});
            const auto report = solver.solve(solve_n);
            std::cout << "value " << report.value << '\n';
            for (std::size_t i = 0; i < report.principal_line.rounds.size(); ++i) {
                const auto & r = report.principal_line.rounds[i];
                std::cout << "round " << i + 1 << ": d = " << r.d.value() << ", claim " << r.claimed.to_string() << '\n';
            }
            std::cout << "states " << report.states_visited << ", " << report.elapsed.count() << " s\n";
            if (!solve_json.empty())
                write_json_file(solve_json, {{"n", report.n}, {"value", report.value},
                    {"principal_line", transcript_to_json(report.principal_line)}, {"states_visited", report.states_visited},
                    {"elapsed_seconds", report.elapsed.count()}});
            return 0;
        }
        if (*simulate) {
            std::vector<std::uint64_t> seeds;
            for (auto s : parse_list(sim_seeds)) {
                if (s < 0)
                    throw UsageError("seeds must be nonnegative");
                seeds.push_back(static_cast<std::uint64_t>(s));
            }
            MatchOptions opts;
            opts.threads = sim_threads;
            const auto records = run_matchup(sim_namer, sim_claimer, parse_list(sim_grid), seeds, opts);
            const auto growth = summarize(sim_namer, sim_claimer, records);
            const auto bounds = check_bounds(records);
            for (const auto & row : growth.rows) {
                std::cout << "n=" << row.n << " runs=" << row.runs << " median=" << row.median_rounds << " min=" << row.min_rounds
                          << " max=" << row.max_rounds;
                if (row.round_bound)
                    std::cout << " bound=" << *row.round_bound;
                std::cout << '\n';
            }
            std::cout << "fit: rounds ~ " << growth.fit.c << " * log2 log2 n\n";
            for (const auto & v : bounds.violations)
                std::cout << "violation n=" << v.n << " seed=" << v.seed << ": " << v.detail << '\n';
            std::cout << (bounds.ok() ? "bounds ok" : "bound violations found") << '\n';
            if (!sim_csv.empty()) {
                std::ofstream csv(sim_csv);
                if (!csv)
                    throw Error("cannot open " + sim_csv + " for writing");
                write_csv(csv, records);
            }
            if (!sim_report.empty())
                write_json_file(sim_report, {{"growth", growth_report_to_json(growth)}, {"bounds", bound_report_to_json(bounds)}});
            return bounds.ok() ? 0 : 1;
        }
        if (*certify) {
            SearchLimits limits;
            if (cert_limit > 0)
                limits.time_limit = std::chrono::duration<double>(cert_limit);
            const auto cert = certify_partition(named_partition(cert_classes, cert_n), cert_k, limits);
            if (!cert_json.empty())
                write_json_file(cert_json, certificate_to_json(cert));
            if (cert.exhaustive) {
                std::cout << "certified: no class contains a non-degenerate " << cert_k << "-cube (" << cert.nodes << " nodes)\n";
                return 0;
            }
            if (cert.aborted) {
                std::cout << "aborted after " << cert.nodes << " nodes\n";
                return 1;
            }
            std::cout << "failed: class " << *cert.witness_class << " contains " << cube_text(*cert.witness) << '\n';
            return 1;
        }
        if (*find) {
            PointSet s = PointSet::full(find_n);
            if (!find_set.empty()) {
                s = PointSet(find_n);
                for (auto x : parse_list(find_set))
                    s.insert(x);
            }
            const auto r = find_nondegenerate_cube(s, find_k);
            if (r.witness)
                std::cout << cube_text(*r.witness) << " -> " << cube_points(*r.witness, find_n).to_string() << '\n';
            else
                std::cout << "none (" << r.nodes << " nodes)\n";
            return r.witness ? 0 : 1;
        }
        if (*count) {
            std::cout << "log2 E = " << log2_expected_cube_count(count_n, count_k) << '\n';
            std::cout << "E = " << expected_cube_count(count_n, count_k) << '\n';
            return 0;
        }
        if (*ramsey) {
            const auto r = hilbert_ramsey_number(ram_k, ram_r, ram_max);
            if (r.value)
                std::cout << *r.value << '\n';
            else
                std::cout << "> " << ram_max << '\n';
            return 0;
        }
        if (*play) {
            service::SessionConfig cfg;
            if (!play_out.empty())
                cfg.out_dir = play_out;
            service::SessionManager sessions(cfg);
            service::ConsoleOptions opts;
            opts.n = play_n;
            opts.human = play_role == "namer" ? service::Role::namer : service::Role::claimer;
            opts.engine = play_engine;
            opts.seed = play_seed;
            return service::run_console_play(std::cin, std::cout, sessions, opts);
        }
        if (*serve) {
            service::SessionConfig cfg;
            cfg.out_dir = srv_out;
            // Block the signals before the I/O threads exist so only sigwait sees them.
            sigset_t set;
            sigemptyset(&set);
            sigaddset(&set, SIGINT);
            sigaddset(&set, SIGTERM);
            pthread_sigmask(SIG_BLOCK, &set, nullptr);
            service::PlayServer server(std::make_shared<service::SessionManager>(cfg), srv);
            const auto port = server.start();
            std::cout << "listening on " << srv.address << ':' << port << std::endl;
            int sig = 0;
            sigwait(&set, &sig);
            server.stop();
            return 0;
        }
    }
    catch (const UsageError & e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const SpecError & e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const CapacityError & e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return exit_capacity;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
