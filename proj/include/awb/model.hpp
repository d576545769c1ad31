#pragma once

// Epistemic models with awareness: worlds, per-agent indistinguishability
// partitions, per-agent awareness functions and a valuation.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "awb/formula.hpp"

namespace awb {

// Bit k set means atom k (in the model's declared order) is a member.
using Vocab = std::uint64_t;
using WorldIndex = std::size_t;
using WorldSet = std::vector<WorldIndex>;  // sorted, no duplicates

inline constexpr std::size_t kMaxModelAtoms = 64;

inline constexpr bool vocab_contains(Vocab outer, Vocab inner) { return (inner & ~outer) == 0; }
inline constexpr Vocab vocab_bit(std::size_t atom) { return Vocab{1} << atom; }

// Canonical partition of the worlds 0..n-1: members sorted, blocks ordered by
// their least member.
struct Partition {
  std::vector<WorldSet> blocks;
  std::vector<std::size_t> block_of;

  // Builds the canonical partition grouping worlds with equal keys.
  template <typename Key>
  static Partition by_key(const std::vector<Key>& keys);

  const WorldSet& block_containing(WorldIndex w) const { return blocks[block_of[w]]; }
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct EpistemicModel {
  std::vector<std::string> atoms;
  std::vector<std::string> agents;
  std::vector<std::string> worlds;
  // Per world, the atoms true there. Atoms never listed are false everywhere.
  std::vector<Vocab> valuation;
  // Per agent, the declared blocks of ~_i. Worlds left out of every block are
  // singleton blocks.
  std::vector<std::vector<WorldSet>> indist;
  // Per agent, per world.
  std::vector<std::vector<Vocab>> awareness;

  EpistemicModel() = default;
  // Empty valuation, identity indistinguishability, empty awareness.
  EpistemicModel(std::vector<std::string> atom_names, std::vector<std::string> agent_names,
                 std::vector<std::string> world_names);

  std::size_t atom_index(std::string_view name) const;
  std::size_t agent_index(std::string_view name) const;
  WorldIndex world_index(std::string_view name) const;
  Vocab vocab_of(const AtomSet& names) const;
  AtomSet atom_names(Vocab v) const;
  Vocab all_atoms() const;

  bool holds(std::size_t atom, WorldIndex w) const { return (valuation[w] >> atom) & 1U; }

  friend bool operator==(const EpistemicModel&, const EpistemicModel&) = default;
};

struct Violation {
  enum class Kind { Empty, Naming, Range, Partition, AwarenessInvariance };
  Kind kind;
  std::string message;
};

std::vector<Violation> validate(const EpistemicModel& m);

// ~_i as a partition. Requires a model without partition violations.
Partition indist_partition(const EpistemicModel& m, std::size_t agent);

Partition a_equiv(const EpistemicModel& m, std::size_t agent);
Partition a_equiv(const EpistemicModel& m, std::string_view agent);

Partition phi_equiv(const EpistemicModel& m, Vocab phi);
Partition phi_equiv(const EpistemicModel& m, const AtomSet& phi);

// Worlds reachable from w by A-equivalence for the agent, then ~_i, then
// A-equivalence again.
WorldSet reach_composed(const EpistemicModel& m, std::size_t agent, WorldIndex w);
WorldSet reach_composed(const EpistemicModel& m, std::string_view agent, std::string_view world);

bool sat_prop(const EpistemicModel& m, WorldIndex w, const Prop& p);
bool sat_ail(const EpistemicModel& m, WorldIndex w, const AilFormula& f);
bool sat_ail(const EpistemicModel& m, std::string_view world, const AilFormula& f);

// Plain I_i: truth at every ~_i-neighbour. The awareness fragment has no bare
// I_i, so this is only used for cross-checks.
bool sat_implicit_bare(const EpistemicModel& m, WorldIndex w, std::size_t agent, const Prop& body);

bool constant_awareness(const EpistemicModel& m);

// True for propositional formulas, and for modal ones exactly when the body's
// atoms equal the agent's awareness set at w.
bool a_condition(const AilFormula& f, const EpistemicModel& m, WorldIndex w);
bool a_condition(const AilFormula& f, const EpistemicModel& m, std::string_view world);

// Throws ModelError when f mentions an undeclared atom or agent.
void check_declared(const EpistemicModel& m, const AilFormula& f);

template <typename Key>
Partition Partition::by_key(const std::vector<Key>& keys) {
  Partition p;
  p.block_of.assign(keys.size(), 0);
  std::vector<std::size_t> first;  // least member of each block
  for (WorldIndex w = 0; w < keys.size(); ++w) {
    std::size_t b = 0;
    for (; b < first.size(); ++b) {
      if (keys[first[b]] == keys[w]) break;
    }
    if (b == first.size()) {
      first.push_back(w);
      p.blocks.emplace_back();
    }
    p.blocks[b].push_back(w);
    p.block_of[w] = b;
  }
  return p;
}

}  // namespace awb
