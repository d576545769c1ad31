#include "awb/hms.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "awb/errors.hpp"

namespace awb {

namespace {

bool contains(const ClassSet& set, ClassIndex c) { return std::binary_search(set.begin(), set.end(), c); }

bool subset(const ClassSet& inner, const ClassSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

template <typename Names>
std::size_t index_in(const Names& names, std::string_view name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw ModelError(std::string("unknown ") + what + " '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

const char* to_string(ImplicitVariant v) {
  return v == ImplicitVariant::CellUnion ? "cell-union" : "pointwise";
}

const HmsSpace& HmsStructure::space(Vocab v) const {
  if (v >= spaces.size()) throw ModelError("vocabulary is not a subset of the structure's atoms");
  return spaces[v];
}

const HmsState& HmsStructure::state(StateId x) const {
  if (!has_state(x)) throw ModelError("unknown state");
  return spaces[x.space].states[x.index];
}

bool HmsStructure::has_state(StateId x) const {
  return x.space < spaces.size() && x.index < spaces[x.space].states.size();
}

std::size_t HmsStructure::state_count() const {
  std::size_t n = 0;
  for (const auto& sp : spaces) n += sp.states.size();
  return n;
}

std::vector<StateId> HmsStructure::all_states() const {
  std::vector<StateId> out;
  for (Vocab v = 0; v < spaces.size(); ++v) {
    for (ClassIndex c = 0; c < spaces[v].states.size(); ++c) out.push_back({v, c});
  }
  return out;
}

std::size_t HmsStructure::atom_index(std::string_view name) const { return index_in(atoms, name, "atom"); }

std::size_t HmsStructure::agent_index(std::string_view name) const { return index_in(agents, name, "agent"); }

Vocab HmsStructure::vocab_of(const AtomSet& names) const {
  Vocab v = 0;
  for (const auto& n : names) v |= vocab_bit(atom_index(n));
  return v;
}

StateId HmsStructure::project(StateId x, Vocab to) const {
  if (!has_state(x)) throw ModelError("unknown state");
  if (!vocab_contains(x.space, to)) throw ModelError("projection target is not a subvocabulary");
  Vocab remove = x.space & ~to;
  while (remove != 0) {
    const auto k = static_cast<std::size_t>(std::countr_zero(remove));
    x = {x.space & ~vocab_bit(k), spaces[x.space].down[k][x.index]};
    remove &= remove - 1;
  }
  return x;
}

bool HmsStructure::in_valuation(std::size_t atom, StateId x) const {
  return (x.space >> atom & 1U) && (state(x).label >> atom & 1U);
}

std::vector<StateId> HmsStructure::lambda_of(std::size_t agent, StateId x) const {
  if (!has_state(x)) throw ModelError("unknown state");
  std::vector<StateId> out;
  for (ClassIndex c : lambda.at(agent)[x.space][x.index]) out.push_back({x.space, c});
  return out;
}

std::string HmsStructure::space_key(Vocab v) const {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (v >> k & 1U) names.push_back(atoms[k]);
  }
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (k) out += ',';
    out += names[k];
  }
  return out;
}

std::string HmsStructure::state_name(StateId x) const {
  return "{" + space_key(x.space) + "}:" + std::to_string(x.index);
}

StateId HmsStructure::parse_state(std::string_view text) const {
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) throw ModelError("state id must look like {p,q}:0");
  std::string_view vocab = text.substr(0, colon);
  if (vocab.size() >= 2 && vocab.front() == '{' && vocab.back() == '}') vocab = vocab.substr(1, vocab.size() - 2);
  Vocab v = 0;
  while (!vocab.empty()) {
    const auto comma = vocab.find(',');
    std::string_view name = vocab.substr(0, comma);
    while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    v |= vocab_bit(atom_index(name));
    if (comma == std::string_view::npos) break;
    vocab.remove_prefix(comma + 1);
  }
  const std::string_view num = text.substr(colon + 1);
  ClassIndex index = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), index);
  if (ec != std::errc() || ptr != num.data() + num.size()) throw ModelError("bad state index in '" + std::string(text) + "'");
  StateId x{v, index};
  if (!has_state(x)) throw ModelError("unknown state '" + std::string(text) + "'");
  return x;
}

void check_event(const HmsStructure& s, const Event& e) {
  if (e.base_vocab >= s.spaces.size()) throw ModelError("event/structure mismatch: base vocabulary not declared");
  const std::size_t n = s.spaces[e.base_vocab].states.size();
  for (std::size_t k = 0; k < e.base.size(); ++k) {
    if (e.base[k] >= n || (k > 0 && e.base[k - 1] >= e.base[k])) {
      throw ModelError("event/structure mismatch: base is not a sorted set of states of its space");
    }
  }
}

std::vector<StateId> extension(const HmsStructure& s, const Event& e) {
  check_event(s, e);
  std::vector<StateId> out;
  if (e.base.empty()) return out;
  for (Vocab v = 0; v < s.spaces.size(); ++v) {
    if (!vocab_contains(v, e.base_vocab)) continue;
    for (ClassIndex c = 0; c < s.spaces[v].states.size(); ++c) {
      if (contains(e.base, s.project({v, c}, e.base_vocab).index)) out.push_back({v, c});
    }
  }
  return out;
}

bool event_contains(const HmsStructure& s, const Event& e, StateId x) {
  if (!vocab_contains(x.space, e.base_vocab)) return false;
  return contains(e.base, s.project(x, e.base_vocab).index);
}

Event event_not(const Event& e, const HmsStructure& s) {
  check_event(s, e);
  Event out{e.base_vocab, {}};
  const auto n = static_cast<ClassIndex>(s.spaces[e.base_vocab].states.size());
  for (ClassIndex c = 0; c < n; ++c) {
    if (!contains(e.base, c)) out.base.push_back(c);
  }
  return out;
}

Event event_and(const Event& e1, const Event& e2, const HmsStructure& s) {
  check_event(s, e1);
  check_event(s, e2);
  Event out{e1.base_vocab | e2.base_vocab, {}};
  const auto n = static_cast<ClassIndex>(s.spaces[out.base_vocab].states.size());
  for (ClassIndex c = 0; c < n; ++c) {
    const StateId x{out.base_vocab, c};
    if (contains(e1.base, s.project(x, e1.base_vocab).index) && contains(e2.base, s.project(x, e2.base_vocab).index)) {
      out.base.push_back(c);
    }
  }
  return out;
}

Event event_atom(const HmsStructure& s, std::string_view atom) {
  const std::size_t p = s.atom_index(atom);
  Event out{vocab_bit(p), {}};
  const auto& sp = s.spaces[out.base_vocab];
  for (ClassIndex c = 0; c < sp.states.size(); ++c) {
    if (sp.states[c].label >> p & 1U) out.base.push_back(c);
  }
  return out;
}

Event aware_event(const HmsStructure& s, std::size_t agent, const Event& e) {
  check_event(s, e);
  Event out{e.base_vocab, {}};
  const auto n = static_cast<ClassIndex>(s.spaces[e.base_vocab].states.size());
  for (ClassIndex c = 0; c < n; ++c) {
    if (vocab_contains(s.alpha_of(agent, {e.base_vocab, c}), e.base_vocab)) out.base.push_back(c);
  }
  return out;
}

Event implicit_event(const HmsStructure& s, std::size_t agent, const Event& e, ImplicitVariant variant) {
  check_event(s, e);
  const auto& cells = s.lambda.at(agent)[e.base_vocab];
  Event out{e.base_vocab, {}};
  for (ClassIndex c = 0; c < cells.size(); ++c) {
    if (!subset(cells[c], e.base)) continue;
    if (variant == ImplicitVariant::Pointwise) {
      out.base.push_back(c);
    } else {
      out.base.insert(out.base.end(), cells[c].begin(), cells[c].end());
    }
  }
  std::sort(out.base.begin(), out.base.end());
  out.base.erase(std::unique(out.base.begin(), out.base.end()), out.base.end());
  return out;
}

Event truth_set(const HmsStructure& s, const Prop& p) {
  switch (p.kind()) {
    case Prop::Kind::Atom: return event_atom(s, p.name());
    case Prop::Kind::Not: return event_not(truth_set(s, p.child()), s);
    case Prop::Kind::And: return event_and(truth_set(s, p.lhs()), truth_set(s, p.rhs()), s);
  }
  return {};
}

Event truth_set(const HmsStructure& s, const HmsFormula& f, ImplicitVariant variant) {
  Event body = truth_set(s, f.body);
  switch (f.kind) {
    case HmsFormula::Kind::Prop: return body;
    case HmsFormula::Kind::Aware: return aware_event(s, s.agent_index(f.agent), body);
    case HmsFormula::Kind::Implicit: return implicit_event(s, s.agent_index(f.agent), body, variant);
  }
  return body;
}

bool sat_hms(const HmsStructure& s, StateId x, const HmsFormula& f, ImplicitVariant variant) {
  if (!s.has_state(x)) throw ModelError("unknown state");
  return event_contains(s, truth_set(s, f, variant), x);
}

}  // namespace awb
