#include "awb/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "awb/errors.hpp"

namespace awb {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {"atoms", "agents", "worlds", "valuation", "indistinguishability",
                                          "awareness"};

const json& require(const json& j, const char* key, json::value_t type) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing key '") + key + "'");
  if (it->type() != type) throw InputError(std::string("key '") + key + "' has the wrong type");
  return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError(where + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::string> unique_names(const json& j, const char* key) {
  auto names = string_list(j, std::string("'") + key + "'");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) throw InputError(std::string("duplicate entry '") + n + "' in '" + key + "'");
  }
  return names;
}

template <typename F>
auto resolve(F&& lookup, const std::string& name) {
  try {
    return lookup(name);
  } catch (const ModelError& e) {
    throw InputError(e.what());
  }
}

}  // namespace

EpistemicModel model_from_json(const json& j) {
  if (!j.is_object()) throw InputError("model must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.count(key)) throw InputError("unknown key '" + key + "'");
  }
  EpistemicModel m(unique_names(require(j, "atoms", json::value_t::array), "atoms"),
                   unique_names(require(j, "agents", json::value_t::array), "agents"),
                   unique_names(require(j, "worlds", json::value_t::array), "worlds"));
  for (const auto& a : m.atoms) {
    if (!is_valid_atom_name(a)) throw InputError("invalid atom name '" + a + "'");
  }
  for (const auto& a : m.agents) {
    if (!is_valid_agent_name(a)) throw InputError("invalid agent name '" + a + "'");
  }
  if (m.atoms.size() > kMaxModelAtoms) {
    throw InputError("at most " + std::to_string(kMaxModelAtoms) + " atoms are supported");
  }

  auto atom = [&](const std::string& n) { return m.atom_index(n); };
  auto agent = [&](const std::string& n) { return m.agent_index(n); };
  auto world = [&](const std::string& n) { return m.world_index(n); };

  if (j.contains("valuation")) {
    const json& val = require(j, "valuation", json::value_t::object);
    for (const auto& [name, ws] : val.items()) {
      const std::size_t p = resolve(atom, name);
      for (const auto& w : string_list(ws, "valuation of '" + name + "'")) {
        m.valuation[resolve(world, w)] |= vocab_bit(p);
      }
    }
  }

  if (j.contains("indistinguishability")) {
    const json& ind = require(j, "indistinguishability", json::value_t::object);
    for (const auto& [name, blocks] : ind.items()) {
      const std::size_t i = resolve(agent, name);
      if (!blocks.is_array()) throw InputError("indistinguishability of '" + name + "' must be a list of blocks");
      for (const auto& block : blocks) {
        WorldSet ws;
        for (const auto& w : string_list(block, "block of '" + name + "'")) ws.push_back(resolve(world, w));
        std::sort(ws.begin(), ws.end());
        m.indist[i].push_back(std::move(ws));
      }
    }
  }

  if (j.contains("awareness")) {
    const json& aw = require(j, "awareness", json::value_t::object);
    for (const auto& [name, per_world] : aw.items()) {
      const std::size_t i = resolve(agent, name);
      if (!per_world.is_object()) throw InputError("awareness of '" + name + "' must map worlds to atom lists");
      for (const auto& [wname, atoms] : per_world.items()) {
        const WorldIndex w = resolve(world, wname);
        for (const auto& a : string_list(atoms, "awareness of '" + name + "' at '" + wname + "'")) {
          m.awareness[i][w] |= vocab_bit(resolve(atom, a));
        }
      }
    }
  }
  return m;
}

EpistemicModel parse_model(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError("JSON syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
                     e.what());
  }
  return model_from_json(j);
}

EpistemicModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read model file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

json model_to_json(const EpistemicModel& m) {
  json j;
  j["atoms"] = m.atoms;
  j["agents"] = m.agents;
  j["worlds"] = m.worlds;
  json val = json::object();
  for (std::size_t p = 0; p < m.atoms.size(); ++p) {
    json ws = json::array();
    for (WorldIndex w = 0; w < m.worlds.size(); ++w) {
      if (m.holds(p, w)) ws.push_back(m.worlds[w]);
    }
    val[m.atoms[p]] = ws;
  }
  j["valuation"] = val;
  json ind = json::object();
  json aw = json::object();
  for (std::size_t i = 0; i < m.agents.size(); ++i) {
    json blocks = json::array();
    for (const auto& block : indist_partition(m, i).blocks) {
      json b = json::array();
      for (WorldIndex w : block) b.push_back(m.worlds[w]);
      blocks.push_back(b);
    }
    ind[m.agents[i]] = blocks;
    json per_world = json::object();
    for (WorldIndex w = 0; w < m.worlds.size(); ++w) {
      json atoms = json::array();
      for (const auto& a : m.atom_names(m.awareness[i][w])) atoms.push_back(a);
      per_world[m.worlds[w]] = atoms;
    }
    aw[m.agents[i]] = per_world;
  }
  j["indistinguishability"] = ind;
  j["awareness"] = aw;
  return j;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
  }
}

}  // namespace awb
