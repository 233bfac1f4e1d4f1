#pragma once

#include <nclab/game.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>

namespace nclab {

/// Sorted ascending list of 1-indexed points.
nlohmann::json points_to_json(const PointSet & s);
/// Parses a point list onto a board of size n. Throws OutOfRange for points outside [1, n].
PointSet points_from_json(const nlohmann::json & j, Point n);

/// {"n": int, "rounds": [{"d": int, "claimed": [int, ...]}], "terminal": bool}
nlohmann::json transcript_to_json(const Transcript & t);
nlohmann::json rounds_to_json(const Transcript & t);
/// Structural parse only; legality is checked by validate_transcript.
Transcript transcript_from_json(const nlohmann::json & j);

void write_transcript(const std::filesystem::path & path, const Transcript & t);
Transcript read_transcript(const std::filesystem::path & path);

} // namespace nclab
