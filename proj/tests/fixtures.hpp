#pragma once

#include <string>

#include "awb/model_io.hpp"

namespace fixtures {

inline awb::EpistemicModel load(const std::string& name) { return awb::load_model(std::string(AWB_DATA) + "/" + name); }
inline awb::EpistemicModel m1() { return load("M1.json"); }
inline awb::EpistemicModel m2() { return load("M2.json"); }

}  // namespace fixtures
