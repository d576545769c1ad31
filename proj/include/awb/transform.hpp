#pragma once

// Construction of the quotient structure of a constant-awareness model: one
// space per subset of atoms, holding the classes of worlds that agree on it.

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "awb/hms.hpp"
#include "awb/model.hpp"

namespace awb {

struct TransformOptions {
  // 2^max_atoms spaces are built eagerly.
  std::size_t max_atoms = 12;
};

inline constexpr std::size_t kHardMaxTransformAtoms = 24;

// Throws PreconditionError when m is invalid, its awareness varies across
// worlds, or it has more atoms than the cap.
HmsStructure hms_transform(const EpistemicModel& m, const TransformOptions& options = {});

// [w]_phi. The structure must be the transform of m.
StateId locate(const EpistemicModel& m, const HmsStructure& s, WorldIndex w, Vocab phi);
StateId locate(const EpistemicModel& m, const HmsStructure& s, std::string_view world, const AtomSet& phi);

std::vector<StateId> lambda_star(const HmsStructure& s, std::size_t agent, StateId x);
Vocab alpha_star(const HmsStructure& s, std::size_t agent, StateId x);

// Byte-stable JSON rendering: spaces keyed by space_key, states as
// {"rep", "members"}, plus "lambda", "alpha" and "valuation" sections.
nlohmann::json dump_json(const HmsStructure& s);

// "4 spaces, sizes 1/2/1/2" (spaces in bitmask order).
std::string summary(const HmsStructure& s);

}  // namespace awb
