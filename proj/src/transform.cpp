#include "awb/transform.hpp"

#include <algorithm>
#include <unordered_map>

#include "awb/errors.hpp"

namespace awb {

using nlohmann::json;

namespace {

void check_premise(const EpistemicModel& m, const TransformOptions& options) {
  const auto violations = validate(m);
  if (!violations.empty()) {
    throw PreconditionError("transform inapplicable: invalid model: " + violations.front().message);
  }
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    for (WorldIndex w = 1; w < m.worlds.size(); ++w) {
      if (m.awareness[i][w] != m.awareness[i][0]) {
        throw PreconditionError("transform inapplicable: awareness of agent " + m.agents[i] +
                                " is not constant (worlds " + m.worlds[0] + " and " + m.worlds[w] + " differ)");
      }
    }
  }
  const std::size_t cap = std::min(options.max_atoms, kHardMaxTransformAtoms);
  if (m.atoms.size() > cap) {
    throw PreconditionError("transform inapplicable: " + std::to_string(m.atoms.size()) + " atoms exceed the cap of " +
                            std::to_string(cap) + " (2^atoms spaces are built)");
  }
}

HmsSpace quotient(const EpistemicModel& m, Vocab vocab) {
  HmsSpace sp;
  sp.vocab = vocab;
  sp.class_of_world.resize(m.worlds.size());
  std::unordered_map<Vocab, ClassIndex> by_row;
  for (WorldIndex w = 0; w < m.worlds.size(); ++w) {
    const Vocab row = m.valuation[w] & vocab;
    auto [it, inserted] = by_row.try_emplace(row, static_cast<ClassIndex>(sp.states.size()));
    if (inserted) sp.states.push_back({w, {}, row});
    sp.states[it->second].members.push_back(w);
    sp.class_of_world[w] = it->second;
  }
  return sp;
}

void sort_unique(ClassSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

}  // namespace

HmsStructure hms_transform(const EpistemicModel& m, const TransformOptions& options) {
  check_premise(m, options);

  HmsStructure s;
  s.atoms = m.atoms;
  s.agents = m.agents;
  s.worlds = m.worlds;
  const std::size_t n_spaces = std::size_t{1} << m.atoms.size();
  const Vocab top = static_cast<Vocab>(n_spaces - 1);

  s.spaces.reserve(n_spaces);
  for (Vocab v = 0; v < n_spaces; ++v) s.spaces.push_back(quotient(m, v));

  for (Vocab v = 0; v < n_spaces; ++v) {
    HmsSpace& sp = s.spaces[v];
    sp.down.assign(m.atoms.size(), {});
    for (std::size_t k = 0; k < m.atoms.size(); ++k) {
      if (!(v >> k & 1U)) continue;
      const HmsSpace& below = s.spaces[v & ~vocab_bit(k)];
      for (const HmsState& st : sp.states) sp.down[k].push_back(below.class_of_world[st.rep]);
    }
  }

  s.lambda.assign(m.agents.size(), {});
  s.alpha.assign(m.agents.size(), {});
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    auto& lam = s.lambda[i];
    lam.resize(n_spaces);
    for (Vocab v = 0; v < n_spaces; ++v) lam[v].resize(s.spaces[v].states.size());

    // Top space: [v] is possible at [w] when some members are ~_i-related.
    const HmsSpace& top_space = s.spaces[top];
    for (const WorldSet& block : indist_partition(m, i).blocks) {
      ClassSet cells;
      for (WorldIndex u : block) cells.push_back(top_space.class_of_world[u]);
      sort_unique(cells);
      for (ClassIndex c : cells) lam[top][c].insert(lam[top][c].end(), cells.begin(), cells.end());
    }
    for (auto& cell : lam[top]) sort_unique(cell);

    // Every other space receives the projection of the top correspondence,
    // collected over all top states lying above each state.
    for (Vocab v = 0; v < top; ++v) {
      const HmsSpace& sp = s.spaces[v];
      for (ClassIndex y = 0; y < top_space.states.size(); ++y) {
        const ClassIndex x = sp.class_of_world[top_space.states[y].rep];
        for (ClassIndex z : lam[top][y]) lam[v][x].push_back(sp.class_of_world[top_space.states[z].rep]);
      }
      for (auto& cell : lam[v]) sort_unique(cell);
    }

    const Vocab aware = m.worlds.empty() ? 0 : m.awareness[i][0];
    auto& al = s.alpha[i];
    al.resize(n_spaces);
    for (Vocab v = 0; v < n_spaces; ++v) al[v].assign(s.spaces[v].states.size(), aware & v);
  }
  return s;
}

StateId locate(const EpistemicModel& m, const HmsStructure& s, WorldIndex w, Vocab phi) {
  if (w >= m.worlds.size()) throw ModelError("unknown world #" + std::to_string(w));
  const HmsSpace& sp = s.space(phi);
  return {phi, sp.class_of_world.at(w)};
}

StateId locate(const EpistemicModel& m, const HmsStructure& s, std::string_view world, const AtomSet& phi) {
  return locate(m, s, m.world_index(world), m.vocab_of(phi));
}

std::vector<StateId> lambda_star(const HmsStructure& s, std::size_t agent, StateId x) {
  if (agent >= s.agents.size()) throw ModelError("unknown agent #" + std::to_string(agent));
  return s.lambda_of(agent, x);
}

Vocab alpha_star(const HmsStructure& s, std::size_t agent, StateId x) {
  if (agent >= s.agents.size()) throw ModelError("unknown agent #" + std::to_string(agent));
  if (!s.has_state(x)) throw ModelError("unknown state");
  return s.alpha_of(agent, x);
}

json dump_json(const HmsStructure& s) {
  json spaces = json::object();
  json lambda = json::object();
  json alpha = json::object();
  json valuation = json::object();
  for (const auto& a : s.agents) {
    lambda[a] = json::object();
    alpha[a] = json::object();
  }
  for (const auto& p : s.atoms) valuation[p] = json::object();

  for (Vocab v = 0; v < s.spaces.size(); ++v) {
    const std::string key = s.space_key(v);
    const HmsSpace& sp = s.spaces[v];
    json states = json::array();
    for (const HmsState& st : sp.states) {
      json members = json::array();
      for (WorldIndex w : st.members) members.push_back(s.worlds[w]);
      states.push_back({{"rep", s.worlds[st.rep]}, {"members", members}});
    }
    spaces[key] = states;
    for (std::size_t i = 0; i < s.agents.size(); ++i) {
      json cells = json::array();
      json subjective = json::array();
      for (ClassIndex c = 0; c < sp.states.size(); ++c) {
        cells.push_back(s.lambda[i][v][c]);
        subjective.push_back(s.space_key(s.alpha[i][v][c]));
      }
      lambda[s.agents[i]][key] = cells;
      alpha[s.agents[i]][key] = subjective;
    }
    for (std::size_t p = 0; p < s.atoms.size(); ++p) {
      if (!(v >> p & 1U)) continue;
      json holds = json::array();
      for (ClassIndex c = 0; c < sp.states.size(); ++c) {
        if (s.in_valuation(p, {v, c})) holds.push_back(c);
      }
      valuation[s.atoms[p]][key] = holds;
    }
  }
  return {{"atoms", s.atoms}, {"agents", s.agents}, {"spaces", spaces},
          {"lambda", lambda}, {"alpha", alpha},     {"valuation", valuation}};
}

std::string summary(const HmsStructure& s) {
  std::string out = std::to_string(s.spaces.size()) + (s.spaces.size() == 1 ? " space" : " spaces") + ", sizes ";
  for (std::size_t v = 0; v < s.spaces.size(); ++v) {
    if (v) out += '/';
    out += std::to_string(s.spaces[v].states.size());
  }
  return out;
}

}  // namespace awb
