#include "awb/model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "awb/errors.hpp"

namespace awb {

namespace {

template <typename Names>
std::size_t index_in(const Names& names, std::string_view name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ModelError(std::string("unknown ") + what + " '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

std::string join_worlds(const EpistemicModel& m, const WorldSet& ws) {
  std::string out = "{";
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (k) out += ",";
    out += ws[k] < m.worlds.size() ? m.worlds[ws[k]] : "#" + std::to_string(ws[k]);
  }
  return out + "}";
}

void check_unique(const std::vector<std::string>& names, const char* what,
                  std::vector<Violation>& out) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      out.push_back({Violation::Kind::Naming, std::string("duplicate ") + what + " '" + n + "'"});
    }
  }
}

}  // namespace

bool Partition::refines(const Partition& coarser) const {
  if (block_of.size() != coarser.block_of.size()) return false;
  for (const auto& block : blocks) {
    for (WorldIndex w : block) {
      if (coarser.block_of[w] != coarser.block_of[block.front()]) return false;
    }
  }
  return true;
}

EpistemicModel::EpistemicModel(std::vector<std::string> atom_names,
                               std::vector<std::string> agent_names,
                               std::vector<std::string> world_names)
    : atoms(std::move(atom_names)), agents(std::move(agent_names)), worlds(std::move(world_names)) {
  valuation.assign(worlds.size(), 0);
  indist.assign(agents.size(), {});
  awareness.assign(agents.size(), std::vector<Vocab>(worlds.size(), 0));
}

std::size_t EpistemicModel::atom_index(std::string_view name) const {
  return index_in(atoms, name, "atom");
}

std::size_t EpistemicModel::agent_index(std::string_view name) const {
  return index_in(agents, name, "agent");
}

WorldIndex EpistemicModel::world_index(std::string_view name) const {
  return index_in(worlds, name, "world");
}

Vocab EpistemicModel::vocab_of(const AtomSet& names) const {
  Vocab v = 0;
  for (const auto& n : names) v |= vocab_bit(atom_index(n));
  return v;
}

AtomSet EpistemicModel::atom_names(Vocab v) const {
  AtomSet out;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if ((v >> k) & 1U) out.insert(atoms[k]);
  }
  return out;
}

Vocab EpistemicModel::all_atoms() const {
  return atoms.size() >= kMaxModelAtoms ? ~Vocab{0} : vocab_bit(atoms.size()) - 1;
}

std::vector<Violation> validate(const EpistemicModel& m) {
  std::vector<Violation> out;
  if (m.worlds.empty()) out.push_back({Violation::Kind::Empty, "model has no worlds"});
  if (m.atoms.size() > kMaxModelAtoms) {
    out.push_back({Violation::Kind::Range, "more than " + std::to_string(kMaxModelAtoms) + " atoms"});
    return out;
  }
  check_unique(m.atoms, "atom", out);
  check_unique(m.agents, "agent", out);
  check_unique(m.worlds, "world", out);
  for (const auto& a : m.atoms) {
    if (!is_valid_atom_name(a)) out.push_back({Violation::Kind::Naming, "invalid atom name '" + a + "'"});
  }
  for (const auto& a : m.agents) {
    if (!is_valid_agent_name(a)) out.push_back({Violation::Kind::Naming, "invalid agent name '" + a + "'"});
  }
  for (const auto& w : m.worlds) {
    if (w.empty()) out.push_back({Violation::Kind::Naming, "empty world name"});
  }

  const std::size_t n = m.worlds.size();
  const Vocab all = m.all_atoms();
  if (m.valuation.size() != n || m.indist.size() != m.agents.size() ||
      m.awareness.size() != m.agents.size()) {
    out.push_back({Violation::Kind::Range, "valuation/indistinguishability/awareness tables have the wrong size"});
    return out;
  }
  for (WorldIndex w = 0; w < n; ++w) {
    if (!vocab_contains(all, m.valuation[w])) {
      out.push_back({Violation::Kind::Range, "valuation at world " + m.worlds[w] + " uses undeclared atoms"});
    }
  }

  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    const std::string& agent = m.agents[i];
    if (m.awareness[i].size() != n) {
      out.push_back({Violation::Kind::Range, "awareness of agent " + agent + " does not cover every world"});
      continue;
    }
    for (WorldIndex w = 0; w < n; ++w) {
      if (!vocab_contains(all, m.awareness[i][w])) {
        out.push_back({Violation::Kind::Range,
                       "awareness of agent " + agent + " at world " + m.worlds[w] + " uses undeclared atoms"});
      }
    }

    std::vector<int> owner(n, -1);
    bool partition_ok = true;
    for (std::size_t b = 0; b < m.indist[i].size(); ++b) {
      const WorldSet& block = m.indist[i][b];
      if (block.empty()) {
        out.push_back({Violation::Kind::Partition, "agent " + agent + " has an empty indistinguishability block"});
        partition_ok = false;
      }
      for (WorldIndex w : block) {
        if (w >= n) {
          out.push_back({Violation::Kind::Range, "agent " + agent + " block mentions an undeclared world"});
          partition_ok = false;
          continue;
        }
        if (owner[w] != -1) {
          out.push_back({Violation::Kind::Partition,
                         "agent " + agent + ": world " + m.worlds[w] + " appears in overlapping blocks " +
                             join_worlds(m, m.indist[i][static_cast<std::size_t>(owner[w])]) + " and " +
                             join_worlds(m, block)});
          partition_ok = false;
          continue;
        }
        owner[w] = static_cast<int>(b);
      }
    }
    if (!partition_ok) continue;

    for (const WorldSet& block : m.indist[i]) {
      for (WorldIndex w : block) {
        if (m.awareness[i][w] != m.awareness[i][block.front()]) {
          out.push_back({Violation::Kind::AwarenessInvariance,
                         "awareness of agent " + agent + " differs inside block " + join_worlds(m, block) +
                             " (worlds " + m.worlds[block.front()] + " and " + m.worlds[w] + ")"});
          break;
        }
      }
    }
  }
  return out;
}

Partition indist_partition(const EpistemicModel& m, std::size_t agent) {
  const std::size_t n = m.worlds.size();
  // Key each world by the least member of its declared block.
  std::vector<WorldIndex> key(n);
  for (WorldIndex w = 0; w < n; ++w) key[w] = w;
  for (const WorldSet& block : m.indist.at(agent)) {
    if (block.empty()) continue;
    const WorldIndex least = *std::min_element(block.begin(), block.end());
    for (WorldIndex w : block) key[w] = least;
  }
  return Partition::by_key(key);
}

Partition a_equiv(const EpistemicModel& m, std::size_t agent) {
  const auto& aware = m.awareness.at(agent);
  std::vector<std::pair<Vocab, Vocab>> key(m.worlds.size());
  for (WorldIndex w = 0; w < key.size(); ++w) key[w] = {aware[w], m.valuation[w] & aware[w]};
  return Partition::by_key(key);
}

Partition a_equiv(const EpistemicModel& m, std::string_view agent) {
  return a_equiv(m, m.agent_index(agent));
}

Partition phi_equiv(const EpistemicModel& m, Vocab phi) {
  std::vector<Vocab> key(m.worlds.size());
  for (WorldIndex w = 0; w < key.size(); ++w) key[w] = m.valuation[w] & phi;
  return Partition::by_key(key);
}

Partition phi_equiv(const EpistemicModel& m, const AtomSet& phi) { return phi_equiv(m, m.vocab_of(phi)); }

WorldSet reach_composed(const EpistemicModel& m, std::size_t agent, WorldIndex w) {
  if (w >= m.worlds.size()) throw ModelError("unknown world #" + std::to_string(w));
  const Partition approx = a_equiv(m, agent);
  const Partition indist = indist_partition(m, agent);
  std::vector<bool> hit_indist(indist.blocks.size(), false);
  for (WorldIndex x : approx.block_containing(w)) hit_indist[indist.block_of[x]] = true;
  std::vector<bool> hit_approx(approx.blocks.size(), false);
  for (std::size_t b = 0; b < indist.blocks.size(); ++b) {
    if (!hit_indist[b]) continue;
    for (WorldIndex y : indist.blocks[b]) hit_approx[approx.block_of[y]] = true;
  }
  WorldSet out;
  for (WorldIndex v = 0; v < m.worlds.size(); ++v) {
    if (hit_approx[approx.block_of[v]]) out.push_back(v);
  }
  return out;
}

WorldSet reach_composed(const EpistemicModel& m, std::string_view agent, std::string_view world) {
  return reach_composed(m, m.agent_index(agent), m.world_index(world));
}

bool sat_prop(const EpistemicModel& m, WorldIndex w, const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Atom: return m.holds(m.atom_index(p.name()), w);
    case Prop::Kind::Not: return !sat_prop(m, w, p.child());
    case Prop::Kind::And: return sat_prop(m, w, p.lhs()) && sat_prop(m, w, p.rhs());
  }
  return false;
}

void check_declared(const EpistemicModel& m, const AilFormula& f) {
  for (const auto& a : atoms_of(f)) m.atom_index(a);
  if (f.kind != AilFormula::Kind::Prop) m.agent_index(f.agent);
}

bool sat_ail(const EpistemicModel& m, WorldIndex w, const AilFormula& f) {
  if (w >= m.worlds.size()) throw ModelError("unknown world #" + std::to_string(w));
  check_declared(m, f);
  switch (f.kind) {
    case AilFormula::Kind::Prop:
      return sat_prop(m, w, f.body);
    case AilFormula::Kind::Aware: {
      const std::size_t i = m.agent_index(f.agent);
      return vocab_contains(m.awareness[i][w], m.vocab_of(atoms_of(f.body)));
    }
    case AilFormula::Kind::BoxIBox: {
      const WorldSet reach = reach_composed(m, m.agent_index(f.agent), w);
      return std::all_of(reach.begin(), reach.end(), [&](WorldIndex v) { return sat_prop(m, v, f.body); });
    }
  }
  return false;
}

bool sat_ail(const EpistemicModel& m, std::string_view world, const AilFormula& f) {
  return sat_ail(m, m.world_index(world), f);
}

bool sat_implicit_bare(const EpistemicModel& m, WorldIndex w, std::size_t agent, const Prop& body) {
  const Partition indist = indist_partition(m, agent);
  const WorldSet& block = indist.block_containing(w);
  return std::all_of(block.begin(), block.end(), [&](WorldIndex v) { return sat_prop(m, v, body); });
}

bool constant_awareness(const EpistemicModel& m) {
  for (const auto& per_world : m.awareness) {
    if (std::adjacent_find(per_world.begin(), per_world.end(), std::not_equal_to<>()) != per_world.end()) {
      return false;
    }
  }
  return true;
}

bool a_condition(const AilFormula& f, const EpistemicModel& m, WorldIndex w) {
  if (w >= m.worlds.size()) throw ModelError("unknown world #" + std::to_string(w));
  check_declared(m, f);
  if (f.kind == AilFormula::Kind::Prop) return true;
  return m.vocab_of(atoms_of(f.body)) == m.awareness[m.agent_index(f.agent)][w];
}

bool a_condition(const AilFormula& f, const EpistemicModel& m, std::string_view world) {
  return a_condition(f, m, m.world_index(world));
}

}  // namespace awb
