#pragma once

// Quotient state-space structures of the HMS kind, their events, the
// awareness and implicit-knowledge event operators, and satisfaction for the
// HMS formula fragment.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "awb/formula.hpp"
#include "awb/model.hpp"

namespace awb {

using ClassIndex = std::uint32_t;
using ClassSet = std::vector<ClassIndex>;  // sorted, no duplicates

struct StateId {
  Vocab space;
  ClassIndex index;

  friend auto operator<=>(const StateId&, const StateId&) = default;
};

struct HmsState {
  WorldIndex rep;     // least member
  WorldSet members;
  Vocab label;        // atoms of the space that hold at every member
};

struct HmsSpace {
  Vocab vocab;
  std::vector<HmsState> states;
  std::vector<ClassIndex> class_of_world;
  // down[k], for atom k in vocab: projection of each state onto the space
  // vocab \ {k}. Empty for atoms outside vocab.
  std::vector<std::vector<ClassIndex>> down;
};

// Spaces are indexed by their vocabulary bitmask, so spaces[v].vocab == v and
// the top space is spaces.back().
struct HmsStructure {
  std::vector<std::string> atoms;
  std::vector<std::string> agents;
  std::vector<std::string> worlds;
  std::vector<HmsSpace> spaces;
  // lambda[agent][space][state]: possibility set, classes of the same space.
  std::vector<std::vector<std::vector<ClassSet>>> lambda;
  // alpha[agent][space][state]: vocabulary of the subjective space.
  std::vector<std::vector<std::vector<Vocab>>> alpha;

  Vocab top() const { return static_cast<Vocab>(spaces.size() - 1); }
  const HmsSpace& space(Vocab v) const;
  const HmsState& state(StateId x) const;
  bool has_state(StateId x) const;
  std::size_t state_count() const;
  std::vector<StateId> all_states() const;

  std::size_t atom_index(std::string_view name) const;
  std::size_t agent_index(std::string_view name) const;
  Vocab vocab_of(const AtomSet& names) const;

  // m^{x.space}_{to}, composed from single-atom edges in ascending atom order.
  StateId project(StateId x, Vocab to) const;
  // [w]_P belongs to v*(p): p is in the state's space and holds there.
  bool in_valuation(std::size_t atom, StateId x) const;
  std::vector<StateId> lambda_of(std::size_t agent, StateId x) const;
  Vocab alpha_of(std::size_t agent, StateId x) const { return alpha[agent][x.space][x.index]; }

  // "p,q" with atom names sorted; "" for the empty vocabulary.
  std::string space_key(Vocab v) const;
  // "{p,q}:1"
  std::string state_name(StateId x) const;
  // Inverse of state_name; also accepts the bare "p,q:1" form.
  StateId parse_state(std::string_view text) const;
};

// A W_{base_vocab}-based event. Its extension is the up-closure of base
// through the projections.
struct Event {
  Vocab base_vocab;
  ClassSet base;

  friend bool operator==(const Event&, const Event&) = default;
};

enum class ImplicitVariant {
  // Union of every possibility set of the base space contained in the event.
  CellUnion,
  // States whose own possibility set is contained in the event.
  Pointwise,
};

const char* to_string(ImplicitVariant v);

void check_event(const HmsStructure& s, const Event& e);

std::vector<StateId> extension(const HmsStructure& s, const Event& e);
bool event_contains(const HmsStructure& s, const Event& e, StateId x);

Event event_not(const Event& e, const HmsStructure& s);
Event event_and(const Event& e1, const Event& e2, const HmsStructure& s);
Event event_atom(const HmsStructure& s, std::string_view atom);
Event aware_event(const HmsStructure& s, std::size_t agent, const Event& e);
Event implicit_event(const HmsStructure& s, std::size_t agent, const Event& e,
                     ImplicitVariant variant = ImplicitVariant::CellUnion);

Event truth_set(const HmsStructure& s, const Prop& p);
Event truth_set(const HmsStructure& s, const HmsFormula& f,
                ImplicitVariant variant = ImplicitVariant::CellUnion);
bool sat_hms(const HmsStructure& s, StateId x, const HmsFormula& f,
             ImplicitVariant variant = ImplicitVariant::CellUnion);

}  // namespace awb
