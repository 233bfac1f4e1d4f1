#include <nclab/json.hpp>

#include <nclab/errors.hpp>

#include <fstream>

namespace nclab {

nlohmann::json points_to_json(const PointSet & s)
{
    auto arr = nlohmann::json::array();
    s.for_each([&](Point x) { arr.push_back(x); });
    return arr;
}

PointSet points_from_json(const nlohmann::json & j, Point n)
{
    if (!j.is_array())
        throw Error("point list must be a JSON array");
    PointSet s(n);
    for (const auto & v : j) {
        if (!v.is_number_integer())
            throw Error("point list entries must be integers");
        s.insert(v.get<Point>());
    }
    return s;
}

nlohmann::json rounds_to_json(const Transcript & t)
{
    auto rounds = nlohmann::json::array();
    for (const auto & r : t.rounds)
        rounds.push_back({{"d", r.d.value()}, {"claimed", points_to_json(r.claimed)}});
    return rounds;
}

nlohmann::json transcript_to_json(const Transcript & t)
{
    return {{"n", t.n}, {"rounds", rounds_to_json(t)}, {"terminal", t.terminal}};
}

Transcript transcript_from_json(const nlohmann::json & j)
{
    try {
        Transcript t;
        t.n = j.at("n").get<Point>();
        if (t.n < 0)
            throw Error("n must be nonnegative");
        for (const auto & r : j.at("rounds"))
            t.rounds.push_back({Distance(r.at("d").get<Point>()), points_from_json(r.at("claimed"), t.n)});
        t.terminal = j.at("terminal").get<bool>();
        return t;
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(std::string("malformed transcript: ") + e.what());
    }
}

void write_transcript(const std::filesystem::path & path, const Transcript & t)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << transcript_to_json(t).dump() << '\n';
}

Transcript read_transcript(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    }
    catch (const nlohmann::json::exception & e) {
        throw Error(path.string() + ": " + e.what());
    }
    return transcript_from_json(j);
}

} // namespace nclab
