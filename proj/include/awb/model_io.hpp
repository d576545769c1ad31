#pragma once

// JSON model files:
//   { "atoms": [..], "agents": [..], "worlds": [..],
//     "valuation": { atom: [world] },
//     "indistinguishability": { agent: [[world]] },
//     "awareness": { agent: { world: [atom] } } }

#include <filesystem>
#include <string>

#include <json.hpp>

#include "awb/model.hpp"

namespace awb {

// Throws InputError on unknown keys, duplicate names, references to
// undeclared names or a wrong JSON shape. Does not run validate().
EpistemicModel model_from_json(const nlohmann::json& j);
EpistemicModel parse_model(const std::string& text);
EpistemicModel load_model(const std::filesystem::path& path);

nlohmann::json model_to_json(const EpistemicModel& m);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

}  // namespace awb
