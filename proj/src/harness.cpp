#include "awb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>
#include <thread>

#include "awb/errors.hpp"
#include "awb/transform.hpp"

namespace awb {

namespace {

const std::vector<std::string> kAtomNames = {"p", "q", "r", "s", "t", "u", "v", "x", "y", "z"};

std::string atom_name(std::size_t k) { return k < kAtomNames.size() ? kAtomNames[k] : "p" + std::to_string(k); }

std::string agent_name(std::size_t k) {
  return k < 26 ? std::string(1, static_cast<char>('a' + k)) : "ag" + std::to_string(k);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ImplicitVariant other(ImplicitVariant v) {
  return v == ImplicitVariant::CellUnion ? ImplicitVariant::Pointwise : ImplicitVariant::CellUnion;
}

Prop random_prop(Rng& rng, const std::vector<std::string>& atoms, std::size_t depth) {
  const std::uint64_t r = depth == 0 ? 0 : rng.below(10);
  if (r < 4) return Prop::atom(atoms[rng.below(atoms.size())]);
  if (r < 7) return Prop::negation(random_prop(rng, atoms, depth - 1));
  auto lhs = random_prop(rng, atoms, depth - 1);
  return Prop::conjunction(std::move(lhs), random_prop(rng, atoms, depth - 1));
}

// A body mentioning exactly `atoms`, each at least once.
Prop covering_prop(Rng& rng, std::vector<std::string> atoms) {
  std::vector<Prop> parts;
  for (auto& a : atoms) {
    auto p = Prop::atom(std::move(a));
    parts.push_back(rng.coin() ? Prop::negation(std::move(p)) : std::move(p));
  }
  while (parts.size() > 1) {
    const auto i = rng.below(parts.size());
    Prop lhs = parts[i];
    parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
    const auto j = rng.below(parts.size());
    Prop rhs = parts[j];
    switch (rng.below(3)) {
      case 0: parts[j] = Prop::conjunction(std::move(lhs), std::move(rhs)); break;
      case 1: parts[j] = Prop::disjunction(std::move(lhs), std::move(rhs)); break;
      default: parts[j] = Prop::implication(std::move(lhs), std::move(rhs)); break;
    }
  }
  return parts.front();
}

std::string world_name(const EpistemicModel& m, WorldIndex w) {
  return w < m.worlds.size() ? m.worlds[w] : "#" + std::to_string(w);
}

Verdict pass(std::string id) { return {std::move(id), Verdict::Status::Pass, {}, std::nullopt}; }
Verdict skip(std::string id, std::string why) { return {std::move(id), Verdict::Status::Skip, std::move(why), std::nullopt}; }

std::string class_set_string(const ClassSet& set) {
  std::string out = "{";
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(set[k]);
  }
  return out + "}";
}

}  // namespace

void check_config(const TrialConfig& cfg) {
  if (cfg.max_worlds == 0 || cfg.max_atoms == 0 || cfg.max_agents == 0) {
    throw std::invalid_argument("size bounds must be at least 1");
  }
  if (cfg.max_atoms > TransformOptions{}.max_atoms) {
    throw std::invalid_argument("max_atoms exceeds the transform cap of " +
                                std::to_string(TransformOptions{}.max_atoms));
  }
}

std::uint64_t Rng::below(std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  std::uint64_t r = 0;
  do {
    r = engine_();
  } while (r < threshold);
  return r % n;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
  return splitmix64(master ^ splitmix64(trial));
}

EpistemicModel gen_model(Rng& rng, const TrialConfig& cfg) {
  const std::size_t n_worlds = 1 + rng.below(cfg.max_worlds);
  const std::size_t n_atoms = 1 + rng.below(cfg.max_atoms);
  const std::size_t n_agents = 1 + rng.below(cfg.max_agents);
  std::vector<std::string> atoms, agents, worlds;
  for (std::size_t k = 0; k < n_atoms; ++k) atoms.push_back(atom_name(k));
  for (std::size_t k = 0; k < n_agents; ++k) agents.push_back(agent_name(k));
  for (std::size_t k = 0; k < n_worlds; ++k) worlds.push_back("w" + std::to_string(k + 1));
  EpistemicModel m(std::move(atoms), std::move(agents), std::move(worlds));

  for (WorldIndex w = 0; w < n_worlds; ++w) {
    for (std::size_t p = 0; p < n_atoms; ++p) {
      if (rng.coin()) m.valuation[w] |= vocab_bit(p);
    }
  }
  for (std::size_t i = 0; i < n_agents; ++i) {
    // Fibres of a random map into k labels; not uniform over partitions.
    const std::size_t k = 1 + rng.below(n_worlds);
    std::vector<WorldSet> fibres(k);
    for (WorldIndex w = 0; w < n_worlds; ++w) fibres[rng.below(k)].push_back(w);
    for (auto& f : fibres) {
      if (!f.empty()) m.indist[i].push_back(std::move(f));
    }
    std::sort(m.indist[i].begin(), m.indist[i].end());
    Vocab aware = 0;
    for (std::size_t p = 0; p < n_atoms; ++p) {
      if (rng.coin()) aware |= vocab_bit(p);
    }
    m.awareness[i].assign(n_worlds, aware);
  }
  return m;
}

GeneratedFormula gen_formula(Rng& rng, const EpistemicModel& m, WorldIndex w, bool require_a_condition,
                             std::size_t max_depth) {
  const auto kind = rng.below(3);
  const std::size_t agent = rng.below(m.agents.size());
  if (kind == 0) return {AilFormula::prop(random_prop(rng, m.atoms, max_depth))};

  auto make = [&](Prop body) {
    return kind == 1 ? AilFormula::aware(m.agents[agent], std::move(body))
                     : AilFormula::box_i_box(m.agents[agent], std::move(body));
  };
  if (!require_a_condition) return {make(random_prop(rng, m.atoms, max_depth))};

  const Vocab aware = m.awareness[agent][w];
  if (aware == 0) return {AilFormula::prop(random_prop(rng, m.atoms, max_depth)), true, false};
  const AtomSet wanted = m.atom_names(aware);
  const std::vector<std::string> pool(wanted.begin(), wanted.end());
  for (int attempt = 0; attempt < 32; ++attempt) {
    Prop body = random_prop(rng, pool, max_depth);
    if (atoms_of(body) == wanted) return {make(std::move(body))};
  }
  return {make(covering_prop(rng, pool)), false, true};
}

Verdict check_theorem1(const EpistemicModel& m, const HmsStructure& s, WorldIndex w, const AilFormula& f,
                       ImplicitVariant variant, bool waive_preconditions) {
  std::string id = "theorem1";
  if (!waive_preconditions) {
    if (!validate(m).empty()) return skip(id, "invalid model");
    if (!constant_awareness(m)) return skip(id, "awareness is not constant");
    if (!a_condition(f, m, w)) return skip(id, "A-condition fails at " + world_name(m, w));
  }
  const bool ail = sat_ail(m, w, f);
  const HmsFormula hf = translate(f);
  const StateId x = locate(m, s, w, m.vocab_of(atoms_of(f)));
  const bool hms = sat_hms(s, x, hf, variant);
  if (ail == hms) return pass(id);

  Counterexample cx;
  cx.model = m;
  cx.world = world_name(m, w);
  cx.formula = print(f);
  cx.ail = ail;
  cx.hms = hms;
  cx.state = s.state_name(x);
  cx.detail = std::string("AIL ") + (ail ? "true" : "false") + " at " + cx.world + ", HMS " +
              (hms ? "true" : "false") + " for " + print(hf) + " at " + cx.state + " (" + to_string(variant) + ")";
  Verdict v{id, Verdict::Status::Fail, cx.detail, std::move(cx)};
  return v;
}

Verdict check_theorem1(const EpistemicModel& m, WorldIndex w, const AilFormula& f, ImplicitVariant variant,
                       bool waive_preconditions) {
  try {
    const HmsStructure s = hms_transform(m);
    return check_theorem1(m, s, w, f, variant, waive_preconditions);
  } catch (const PreconditionError& e) {
    return skip("theorem1", e.what());
  }
}

bool sat_hms_direct(const HmsStructure& s, StateId x, const HmsFormula& f, ImplicitVariant variant) {
  std::function<bool(StateId, const Prop&)> prop = [&](StateId y, const Prop& p) -> bool {
    switch (p.kind()) {
      case Prop::Kind::Atom: return s.in_valuation(s.atom_index(p.name()), y);
      case Prop::Kind::Not:
        return vocab_contains(y.space, s.vocab_of(atoms_of(p.child()))) && !prop(y, p.child());
      case Prop::Kind::And: return prop(y, p.lhs()) && prop(y, p.rhs());
    }
    return false;
  };
  const Vocab base = s.vocab_of(atoms_of(f.body));
  switch (f.kind) {
    case HmsFormula::Kind::Prop:
      return prop(x, f.body);
    case HmsFormula::Kind::Aware:
      return vocab_contains(x.space, base) && vocab_contains(s.alpha_of(s.agent_index(f.agent), x), base);
    case HmsFormula::Kind::Implicit: {
      if (!vocab_contains(x.space, base)) return false;
      const std::size_t i = s.agent_index(f.agent);
      const StateId y = s.project(x, base);
      auto cell_inside = [&](StateId u) {
        const auto cell = s.lambda_of(i, u);
        return std::all_of(cell.begin(), cell.end(), [&](StateId z) { return prop(z, f.body); });
      };
      if (variant == ImplicitVariant::Pointwise) return cell_inside(y);
      for (ClassIndex u = 0; u < s.spaces[base].states.size(); ++u) {
        const auto& cell = s.lambda[i][base][u];
        if (std::binary_search(cell.begin(), cell.end(), y.index) && cell_inside({base, u})) return true;
      }
      return false;
    }
  }
  return false;
}

Verdict check_lemma2(const HmsStructure& s, const HmsFormula& f, ImplicitVariant variant) {
  const std::string id = "lemma2";
  const Vocab base_vocab = s.vocab_of(atoms_of(f));
  const Event e = truth_set(s, f, variant);
  std::vector<StateId> raw;
  for (const StateId& x : s.all_states()) {
    if (sat_hms_direct(s, x, f, variant)) raw.push_back(x);
  }
  std::vector<StateId> up;
  for (const StateId& x : s.all_states()) {
    if (!vocab_contains(x.space, base_vocab)) continue;
    const StateId y = s.project(x, base_vocab);
    if (std::binary_search(raw.begin(), raw.end(), y)) up.push_back(x);
  }
  std::string problem;
  if (e.base_vocab != base_vocab) {
    problem = "truth set is based on {" + s.space_key(e.base_vocab) + "}, expected {" + s.space_key(base_vocab) + "}";
  } else if (raw != up) {
    problem = "satisfying states are not the up-closure of their {" + s.space_key(base_vocab) + "} slice";
  } else if (raw != extension(s, e)) {
    problem = "satisfying states differ from the extension of the truth-set event";
  }
  if (problem.empty()) return pass(id);
  Counterexample cx;
  cx.formula = print(f);
  cx.detail = problem + " for " + cx.formula;
  Verdict v{id, Verdict::Status::Fail, cx.detail, std::move(cx)};
  return v;
}

Verdict check_lemma1(const HmsStructure& s, const EpistemicModel* source) {
  std::vector<std::string> issues;
  auto issue = [&](std::string text) {
    if (issues.size() < 8) issues.push_back(std::move(text));
  };
  const std::size_t n_atoms = s.atoms.size();
  const std::size_t n_worlds = s.worlds.size();
  if (s.spaces.size() != (std::size_t{1} << n_atoms)) issue("space count is not 2^|atoms|");

  // Spaces: non-empty quotients of the worlds, pairwise distinct labels.
  for (Vocab v = 0; v < s.spaces.size(); ++v) {
    const HmsSpace& sp = s.spaces[v];
    const std::string key = "{" + s.space_key(v) + "}";
    if (sp.vocab != v) issue("space " + key + " is stored under the wrong vocabulary");
    if (sp.states.empty()) issue("space " + key + " is empty");
    if (sp.states.size() > n_worlds || (std::popcount(v) < 63 && sp.states.size() > (std::size_t{1} << std::popcount(v)))) {
      issue("space " + key + " exceeds min(|W|, 2^|vocab|) states");
    }
    if (sp.class_of_world.size() != n_worlds) {
      issue("space " + key + " does not classify every world");
      continue;
    }
    std::vector<int> seen(n_worlds, -1);
    for (ClassIndex c = 0; c < sp.states.size(); ++c) {
      const HmsState& st = sp.states[c];
      const std::string name = s.state_name({v, c});
      if (st.members.empty()) {
        issue("state " + name + " has no members");
        continue;
      }
      if (st.rep != st.members.front() || !std::is_sorted(st.members.begin(), st.members.end())) {
        issue("state " + name + " is not in canonical form");
      }
      if (!vocab_contains(v, st.label)) issue("state " + name + " labels atoms outside its space");
      for (WorldIndex w : st.members) {
        if (w >= n_worlds) {
          issue("state " + name + " has an undeclared member");
          continue;
        }
        if (seen[w] != -1) issue("world " + s.worlds[w] + " lies in two states of " + key);
        seen[w] = static_cast<int>(c);
        if (sp.class_of_world[w] != c) issue("class table of " + key + " disagrees with state " + name);
        if (source && (source->valuation[w] & v) != st.label) {
          issue("valuation of " + name + " is not well defined: member " + s.worlds[w] + " disagrees");
        }
      }
      for (ClassIndex d = 0; d < c; ++d) {
        if (sp.states[d].label == st.label) issue("states " + s.state_name({v, d}) + " and " + name + " coincide");
      }
    }
    if (std::count(seen.begin(), seen.end(), -1) != 0) issue("states of " + key + " do not cover every world");
  }
  if (!issues.empty()) {
    Verdict v{"lemma1", Verdict::Status::Fail, issues.front(), std::nullopt};
    return v;
  }

  // Single-atom projection edges: members are carried into the target class.
  for (Vocab v = 0; v < s.spaces.size(); ++v) {
    const HmsSpace& sp = s.spaces[v];
    for (std::size_t k = 0; k < n_atoms; ++k) {
      if (!(v >> k & 1U)) continue;
      const Vocab to = v & ~vocab_bit(k);
      const std::string edge = "m^{" + s.space_key(v) + "}_{" + s.space_key(to) + "}";
      if (sp.down.size() <= k || sp.down[k].size() != sp.states.size()) {
        issue("projection edge " + edge + " is missing");
        continue;
      }
      std::vector<bool> hit(s.spaces[to].states.size(), false);
      for (ClassIndex c = 0; c < sp.states.size(); ++c) {
        const ClassIndex target = sp.down[k][c];
        if (target >= hit.size()) {
          issue("projection edge " + edge + " sends " + s.state_name({v, c}) + " out of range");
          continue;
        }
        hit[target] = true;
        const WorldSet& into = s.spaces[to].states[target].members;
        for (WorldIndex w : sp.states[c].members) {
          if (!std::binary_search(into.begin(), into.end(), w)) {
            issue("projection edge " + edge + " sends " + s.state_name({v, c}) + " to " +
                  s.state_name({to, target}) + ", which does not contain member " + s.worlds[w]);
            break;
          }
        }
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) issue("projection edge " + edge + " is not surjective");
    }
  }
  if (!issues.empty()) {
    Verdict v{"lemma1", Verdict::Status::Fail, issues.front(), std::nullopt};
    return v;
  }

  // Identity, coherence of composites and surjectivity of every projection.
  for (Vocab phi = 0; phi < s.spaces.size(); ++phi) {
    for (ClassIndex c = 0; c < s.spaces[phi].states.size(); ++c) {
      const StateId x{phi, c};
      if (s.project(x, phi) != x) issue("m^{" + s.space_key(phi) + "} is not the identity");
    }
    for (Vocab psi = phi;; psi = (psi - 1) & phi) {
      std::vector<bool> hit(s.spaces[psi].states.size(), false);
      for (ClassIndex c = 0; c < s.spaces[phi].states.size(); ++c) {
        const StateId x{phi, c};
        const StateId y = s.project(x, psi);
        hit[y.index] = true;
        for (Vocab ups = psi;; ups = (ups - 1) & psi) {
          if (s.project(y, ups) != s.project(x, ups)) {
            issue("projections {" + s.space_key(phi) + "} -> {" + s.space_key(psi) + "} -> {" + s.space_key(ups) +
                  "} do not compose at " + s.state_name(x));
          }
          if (ups == 0) break;
        }
      }
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        issue("projection m^{" + s.space_key(phi) + "}_{" + s.space_key(psi) + "} is not surjective");
      }
      if (psi == 0) break;
    }
  }

  // Possibility correspondences and subjective spaces.
  const Vocab top = s.top();
  if (s.lambda.size() != s.agents.size() || s.alpha.size() != s.agents.size()) issue("agent tables have the wrong size");
  for (std::size_t i = 0; i < s.agents.size() && issues.empty(); ++i) {
    const std::string& agent = s.agents[i];
    const Vocab aware = source ? source->awareness[i].front() : s.alpha[i][top].front();
    for (Vocab v = 0; v < s.spaces.size(); ++v) {
      const std::size_t n = s.spaces[v].states.size();
      if (s.lambda[i][v].size() != n || s.alpha[i][v].size() != n) {
        issue("tables of agent " + agent + " do not cover {" + s.space_key(v) + "}");
        continue;
      }
      for (ClassIndex c = 0; c < n; ++c) {
        const ClassSet& cell = s.lambda[i][v][c];
        const std::string name = s.state_name({v, c});
        if (cell.empty()) issue("Lambda_" + agent + "(" + name + ") is empty");
        if (!std::is_sorted(cell.begin(), cell.end()) || (!cell.empty() && cell.back() >= n)) {
          issue("Lambda_" + agent + "(" + name + ") leaves its space");
        }
        if (!std::binary_search(cell.begin(), cell.end(), c)) issue("Lambda_" + agent + " is not reflexive at " + name);
        if (v == top) {
          for (ClassIndex d : cell) {
            if (d < n && !std::binary_search(s.lambda[i][v][d].begin(), s.lambda[i][v][d].end(), c)) {
              issue("Lambda_" + agent + " is not symmetric between " + name + " and " + s.state_name({v, d}));
            }
          }
        }
        if (s.alpha[i][v][c] != (aware & v)) {
          issue("alpha_" + agent + "(" + name + ") is {" + s.space_key(s.alpha[i][v][c]) + "}, expected {" +
                s.space_key(aware & v) + "}");
        }
      }
    }
  }
  if (!issues.empty()) {
    Verdict v{"lemma1", Verdict::Status::Fail, issues.front(), std::nullopt};
    return v;
  }
  return pass("lemma1");
}

Verdict compare_variants(const HmsStructure& s, std::size_t agent, const Event& e) {
  const Event cells = implicit_event(s, agent, e, ImplicitVariant::CellUnion);
  const Event points = implicit_event(s, agent, e, ImplicitVariant::Pointwise);
  if (cells == points) return pass("variants.agree");
  std::string detail;
  if (!std::includes(cells.base.begin(), cells.base.end(), points.base.begin(), points.base.end())) {
    detail = "pointwise base is not contained in the cell-union base; ";
  }
  const auto& lam = s.lambda[agent][e.base_vocab];
  for (ClassIndex c : cells.base) {
    if (std::binary_search(points.base.begin(), points.base.end(), c)) continue;
    for (ClassIndex u = 0; u < lam.size(); ++u) {
      if (std::binary_search(lam[u].begin(), lam[u].end(), c) &&
          std::includes(e.base.begin(), e.base.end(), lam[u].begin(), lam[u].end())) {
        detail += s.state_name({e.base_vocab, c}) + " enters through the cell " + class_set_string(lam[u]) + " of " +
                  s.state_name({e.base_vocab, u}) + " while its own cell " + class_set_string(lam[c]) +
                  " leaves the event";
        break;
      }
    }
    break;
  }
  Counterexample cx;
  cx.detail = "agent " + s.agents[agent] + ": " + detail;
  Verdict v{"variants.agree", Verdict::Status::Fail, cx.detail, std::move(cx)};
  return v;
}

Verdict check_lambda_commutation(const HmsStructure& s) {
  for (std::size_t i = 0; i < s.agents.size(); ++i) {
    for (Vocab v = 0; v < s.spaces.size(); ++v) {
      for (std::size_t k = 0; k < s.atoms.size(); ++k) {
        if (!(v >> k & 1U)) continue;
        const Vocab to = v & ~vocab_bit(k);
        for (ClassIndex c = 0; c < s.spaces[v].states.size(); ++c) {
          ClassSet image;
          for (ClassIndex d : s.lambda[i][v][c]) image.push_back(s.spaces[v].down[k][d]);
          std::sort(image.begin(), image.end());
          image.erase(std::unique(image.begin(), image.end()), image.end());
          const ClassIndex below = s.spaces[v].down[k][c];
          if (image != s.lambda[i][to][below]) {
            Counterexample cx;
            cx.detail = "agent " + s.agents[i] + ": projecting Lambda(" + s.state_name({v, c}) + ") to {" +
                        s.space_key(to) + "} gives " + class_set_string(image) + " but Lambda(" +
                        s.state_name({to, below}) + ") = " + class_set_string(s.lambda[i][to][below]);
            Verdict out{"lambda.commutation", Verdict::Status::Fail, cx.detail, std::move(cx)};
            return out;
          }
        }
      }
    }
  }
  return pass("lambda.commutation");
}

bool operator==(const ConjectureTally& a, const ConjectureTally& b) {
  if (a.pass != b.pass || a.fail != b.fail || a.skip != b.skip || a.exploratory != b.exploratory ||
      a.counterexamples.size() != b.counterexamples.size()) {
    return false;
  }
  for (std::size_t k = 0; k < a.counterexamples.size(); ++k) {
    if (counterexample_to_json(a.counterexamples[k]) != counterexample_to_json(b.counterexamples[k])) return false;
  }
  return true;
}

bool Report::failed() const {
  return std::any_of(conjectures.begin(), conjectures.end(),
                     [](const auto& kv) { return !kv.second.exploratory && kv.second.fail > 0; });
}

std::vector<ShrinkCase> shrink_candidates(const ShrinkCase& c) {
  std::vector<ShrinkCase> out;
  const EpistemicModel& m = c.model;
  const AtomSet used_atoms = atoms_of(c.formula);

  for (WorldIndex j = 0; j < m.worlds.size() && m.worlds.size() > 1; ++j) {
    if (j == c.world) continue;
    ShrinkCase next = c;
    EpistemicModel& n = next.model;
    n.worlds.erase(n.worlds.begin() + static_cast<std::ptrdiff_t>(j));
    n.valuation.erase(n.valuation.begin() + static_cast<std::ptrdiff_t>(j));
    for (auto& per_world : n.awareness) per_world.erase(per_world.begin() + static_cast<std::ptrdiff_t>(j));
    for (auto& blocks : n.indist) {
      std::vector<WorldSet> kept;
      for (auto& block : blocks) {
        WorldSet b;
        for (WorldIndex w : block) {
          if (w != j) b.push_back(w > j ? w - 1 : w);
        }
        if (!b.empty()) kept.push_back(std::move(b));
      }
      blocks = std::move(kept);
    }
    if (next.world > j) --next.world;
    out.push_back(std::move(next));
  }

  for (std::size_t i = 0; i < m.agents.size() && m.agents.size() > 1; ++i) {
    if (c.formula.kind != AilFormula::Kind::Prop && c.formula.agent == m.agents[i]) continue;
    ShrinkCase next = c;
    next.model.agents.erase(next.model.agents.begin() + static_cast<std::ptrdiff_t>(i));
    next.model.indist.erase(next.model.indist.begin() + static_cast<std::ptrdiff_t>(i));
    next.model.awareness.erase(next.model.awareness.begin() + static_cast<std::ptrdiff_t>(i));
    out.push_back(std::move(next));
  }

  for (std::size_t p = 0; p < m.atoms.size() && m.atoms.size() > 1; ++p) {
    if (used_atoms.count(m.atoms[p])) continue;
    ShrinkCase next = c;
    EpistemicModel& n = next.model;
    n.atoms.erase(n.atoms.begin() + static_cast<std::ptrdiff_t>(p));
    const Vocab low = vocab_bit(p) - 1;
    auto repack = [&](Vocab v) { return (v & low) | ((v >> 1) & ~low); };
    for (auto& row : n.valuation) row = repack(row);
    for (auto& per_world : n.awareness) {
      for (auto& a : per_world) a = repack(a);
    }
    out.push_back(std::move(next));
  }

  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    for (std::size_t b = 0; b < m.indist[i].size(); ++b) {
      if (m.indist[i][b].size() < 2) continue;
      for (std::size_t k = 0; k < m.indist[i][b].size(); ++k) {
        ShrinkCase next = c;
        auto& block = next.model.indist[i][b];
        block.erase(block.begin() + static_cast<std::ptrdiff_t>(k));
        out.push_back(std::move(next));
      }
    }
    for (std::size_t p = 0; p < m.atoms.size(); ++p) {
      if (m.awareness[i].empty() || !(m.awareness[i].front() >> p & 1U)) continue;
      ShrinkCase next = c;
      for (auto& a : next.model.awareness[i]) a &= ~vocab_bit(p);
      out.push_back(std::move(next));
    }
  }

  if (c.formula.kind != AilFormula::Kind::Prop) {
    ShrinkCase next = c;
    next.formula = AilFormula::prop(c.formula.body);
    out.push_back(std::move(next));
  }
  // Replace one node of the body by one of its children.
  std::function<void(const Prop&, const std::function<Prop(Prop)>&)> visit =
      [&](const Prop& p, const std::function<Prop(Prop)>& rebuild) {
        auto emit = [&](const Prop& replacement) {
          ShrinkCase next = c;
          next.formula.body = rebuild(replacement);
          out.push_back(std::move(next));
        };
        switch (p.kind()) {
          case Prop::Kind::Atom: break;
          case Prop::Kind::Not:
            emit(p.child());
            visit(p.child(), [&](Prop x) { return rebuild(Prop::negation(std::move(x))); });
            break;
          case Prop::Kind::And:
            emit(p.lhs());
            emit(p.rhs());
            visit(p.lhs(), [&](Prop x) { return rebuild(Prop::conjunction(std::move(x), p.rhs())); });
            visit(p.rhs(), [&](Prop x) { return rebuild(Prop::conjunction(p.lhs(), std::move(x))); });
            break;
        }
      };
  visit(c.formula.body, [](Prop x) { return x; });
  return out;
}

namespace {

struct TrialOutcome {
  std::optional<ShrinkCase> generated;
  std::vector<Verdict> verdicts;
  bool prop_fallback = false;
  bool covering_fallback = false;
};

std::vector<std::string> conjecture_ids(const TrialConfig& cfg) {
  std::vector<std::string> ids = {"lemma1", "theorem1", "lemma2", "variants.agree", "lambda.commutation"};
  if (cfg.both_variants) {
    ids.push_back(std::string("theorem1.") + to_string(other(cfg.variant)));
    ids.push_back("theorem1.variant_sensitive");
  }
  return ids;
}

bool is_exploratory(const std::string& id) {
  return id == "variants.agree" || id == "lambda.commutation" || id == "theorem1.variant_sensitive";
}

// Runs one conjecture on one case. `prebuilt` is the transform of c.model
// when the caller already has it.
Verdict evaluate(const std::string& id, const ShrinkCase& c, const HmsStructure* prebuilt, const TrialConfig& cfg) {
  const bool waive = !cfg.require_a_condition;
  if (!validate(c.model).empty() || !constant_awareness(c.model)) return skip(id, "model outside the premise");
  std::optional<HmsStructure> built;
  if (!prebuilt) {
    try {
      built = hms_transform(c.model);
    } catch (const PreconditionError& e) {
      return skip(id, e.what());
    }
    prebuilt = &*built;
  }
  const HmsStructure& s = *prebuilt;
  Verdict v;
  if (id == "lemma1") {
    v = check_lemma1(s, &c.model);
  } else if (id == "theorem1") {
    v = check_theorem1(c.model, s, c.world, c.formula, cfg.variant, waive);
  } else if (id == "lemma2") {
    v = check_lemma2(s, translate(c.formula), cfg.variant);
  } else if (id == "variants.agree") {
    const std::size_t agent = c.formula.kind == AilFormula::Kind::Prop ? 0 : s.agent_index(c.formula.agent);
    v = compare_variants(s, agent, truth_set(s, c.formula.body));
  } else if (id == "lambda.commutation") {
    v = check_lambda_commutation(s);
  } else if (id == "theorem1.variant_sensitive") {
    const Verdict a = check_theorem1(c.model, s, c.world, c.formula, cfg.variant, waive);
    const Verdict b = check_theorem1(c.model, s, c.world, c.formula, other(cfg.variant), waive);
    if (a.status == Verdict::Status::Skip) return skip(id, a.detail);
    if (a.status == b.status) return pass(id);
    v = a.failed() ? a : b;
    v.status = Verdict::Status::Fail;
    v.detail = "theorem outcome depends on the variant: " + v.detail;
  } else {
    v = check_theorem1(c.model, s, c.world, c.formula, other(cfg.variant), waive);
  }
  v.conjecture = id;
  if (v.failed()) {
    if (!v.counterexample) v.counterexample = Counterexample{};
    Counterexample& cx = *v.counterexample;
    cx.model = c.model;
    cx.world = world_name(c.model, c.world);
    if (cx.formula.empty() && id != "lemma1" && id != "lambda.commutation") cx.formula = print(c.formula);
    if (cx.detail.empty()) cx.detail = v.detail;
  }
  return v;
}

TrialOutcome run_trial(const TrialConfig& cfg, std::size_t trial, const std::vector<std::string>& ids) {
  TrialOutcome out;
  Rng rng(trial_seed(cfg.seed, trial));
  EpistemicModel model = gen_model(rng, cfg);
  const WorldIndex world = rng.below(model.worlds.size());
  GeneratedFormula gf = gen_formula(rng, model, world, cfg.require_a_condition, cfg.max_depth);
  out.generated = ShrinkCase{std::move(model), world, std::move(gf.formula)};
  const ShrinkCase& c = *out.generated;
  out.prop_fallback = gf.prop_fallback;
  out.covering_fallback = gf.covering_fallback;

  std::optional<HmsStructure> s;
  try {
    s = hms_transform(c.model);
  } catch (const PreconditionError& e) {
    // Generated models always meet the premise; report it against lemma1.
    Verdict v{"lemma1", Verdict::Status::Fail, e.what(), Counterexample{}};
    v.counterexample->model = c.model;
    v.counterexample->detail = e.what();
    out.verdicts.push_back(std::move(v));
    return out;
  }
  for (const auto& id : ids) out.verdicts.push_back(evaluate(id, c, &*s, cfg));
  return out;
}

}  // namespace

Report run_suite(const TrialConfig& cfg) {
  check_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto ids = conjecture_ids(cfg);

  std::vector<TrialOutcome> outcomes(cfg.trials);
  std::size_t n_threads = cfg.threads ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  n_threads = std::min<std::size_t>(n_threads, std::max<std::size_t>(1, cfg.trials / 64));
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < n_threads; ++t) {
      workers.emplace_back([&, t] {
        for (std::size_t k = t; k < cfg.trials; k += n_threads) outcomes[k] = run_trial(cfg, k, ids);
      });
    }
  }

  Report r;
  r.config = cfg;
  for (const auto& id : ids) r.conjectures[id].exploratory = is_exploratory(id);
  r.generator["prop_fallback"] = 0;
  r.generator["covering_fallback"] = 0;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const TrialOutcome& o = outcomes[k];
    r.generator["prop_fallback"] += o.prop_fallback;
    r.generator["covering_fallback"] += o.covering_fallback;
    for (const Verdict& v : o.verdicts) {
      ConjectureTally& t = r.conjectures[v.conjecture];
      switch (v.status) {
        case Verdict::Status::Pass: ++t.pass; break;
        case Verdict::Status::Skip: ++t.skip; break;
        case Verdict::Status::Fail: {
          ++t.fail;
          if (t.counterexamples.size() >= cfg.max_counterexamples || !v.counterexample) break;
          const Counterexample& raw = *v.counterexample;
          const ShrinkCase& start_case = *o.generated;
          const ShrinkCase small = shrink(start_case, [&](const ShrinkCase& cand) {
            return evaluate(v.conjecture, cand, nullptr, cfg).failed();
          });
          Verdict again = evaluate(v.conjecture, small, nullptr, cfg);
          Counterexample cx = again.counterexample.value_or(raw);
          cx.trial = k;
          cx.trial_seed = trial_seed(cfg.seed, k);
          cx.shrunk = !(small.model == start_case.model && small.formula == start_case.formula);
          t.counterexamples.push_back(std::move(cx));
          break;
        }
      }
    }
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace awb
