#include <cstdio>
#include <sstream>

#include "awb/harness.hpp"
#include "awb/model_io.hpp"

namespace awb {

using nlohmann::json;

json counterexample_to_json(const Counterexample& c) {
  json j = {{"trial", c.trial},   {"trial_seed", c.trial_seed}, {"model", model_to_json(c.model)},
            {"world", c.world},   {"formula", c.formula},       {"state", c.state},
            {"detail", c.detail}, {"shrunk", c.shrunk}};
  j["ail"] = c.ail ? json(*c.ail) : json(nullptr);
  j["hms"] = c.hms ? json(*c.hms) : json(nullptr);
  return j;
}

Counterexample counterexample_from_json(const json& j) {
  Counterexample c;
  c.trial = j.at("trial").get<std::size_t>();
  c.trial_seed = j.at("trial_seed").get<std::uint64_t>();
  c.model = model_from_json(j.at("model"));
  c.world = j.at("world").get<std::string>();
  c.formula = j.at("formula").get<std::string>();
  c.state = j.at("state").get<std::string>();
  c.detail = j.at("detail").get<std::string>();
  c.shrunk = j.at("shrunk").get<bool>();
  if (!j.at("ail").is_null()) c.ail = j.at("ail").get<bool>();
  if (!j.at("hms").is_null()) c.hms = j.at("hms").get<bool>();
  return c;
}

json report_to_json(const Report& r, bool include_timing) {
  const TrialConfig& c = r.config;
  json config = {{"seed", c.seed},
                 {"trials", c.trials},
                 {"max_worlds", c.max_worlds},
                 {"max_atoms", c.max_atoms},
                 {"max_agents", c.max_agents},
                 {"max_depth", c.max_depth},
                 {"variant", to_string(c.variant)},
                 {"both_variants", c.both_variants},
                 {"require_a_condition", c.require_a_condition},
                 {"max_counterexamples", c.max_counterexamples}};
  json conjectures = json::object();
  for (const auto& [id, t] : r.conjectures) {
    json cxs = json::array();
    for (const auto& cx : t.counterexamples) cxs.push_back(counterexample_to_json(cx));
    conjectures[id] = {{"pass", t.pass},
                       {"fail", t.fail},
                       {"skip", t.skip},
                       {"exploratory", t.exploratory},
                       {"counterexamples", cxs}};
  }
  json j = {{"config", config}, {"conjectures", conjectures}, {"generator", r.generator}};
  if (include_timing) j["elapsed_ms"] = static_cast<std::int64_t>(r.elapsed_ms);
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  const json& c = j.at("config");
  r.config.seed = c.at("seed").get<std::uint64_t>();
  r.config.trials = c.at("trials").get<std::size_t>();
  r.config.max_worlds = c.at("max_worlds").get<std::size_t>();
  r.config.max_atoms = c.at("max_atoms").get<std::size_t>();
  r.config.max_agents = c.at("max_agents").get<std::size_t>();
  r.config.max_depth = c.at("max_depth").get<std::size_t>();
  r.config.variant =
      c.at("variant").get<std::string>() == "pointwise" ? ImplicitVariant::Pointwise : ImplicitVariant::CellUnion;
  r.config.both_variants = c.at("both_variants").get<bool>();
  r.config.require_a_condition = c.at("require_a_condition").get<bool>();
  r.config.max_counterexamples = c.at("max_counterexamples").get<std::size_t>();
  for (const auto& [id, t] : j.at("conjectures").items()) {
    ConjectureTally tally;
    tally.pass = t.at("pass").get<std::size_t>();
    tally.fail = t.at("fail").get<std::size_t>();
    tally.skip = t.at("skip").get<std::size_t>();
    tally.exploratory = t.at("exploratory").get<bool>();
    for (const auto& cx : t.at("counterexamples")) tally.counterexamples.push_back(counterexample_from_json(cx));
    r.conjectures[id] = std::move(tally);
  }
  r.generator = j.at("generator").get<std::map<std::string, std::size_t>>();
  if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<double>();
  return r;
}

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  const TrialConfig& c = r.config;
  out << "seed " << c.seed << ", " << c.trials << " trials, bounds " << c.max_worlds << "/" << c.max_atoms << "/"
      << c.max_agents << " (worlds/atoms/agents), variant " << to_string(c.variant)
      << (c.both_variants ? " (both variants)" : "")
      << (c.require_a_condition ? ", A-condition required" : ", A-condition waived") << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-30s %8s %8s %8s\n", "conjecture", "pass", "fail", "skip");
  out << line;
  for (const auto& [id, t] : r.conjectures) {
    const std::string label = id + (t.exploratory ? " (exploratory)" : "");
    std::snprintf(line, sizeof line, "%-30s %8zu %8zu %8zu\n", label.c_str(), t.pass, t.fail, t.skip);
    out << line;
  }
  out << "\ngenerator:";
  for (const auto& [k, v] : r.generator) out << " " << k << "=" << v;
  out << "\n";
  for (const auto& [id, t] : r.conjectures) {
    for (const auto& cx : t.counterexamples) {
      out << "\n[" << id << "] trial " << cx.trial << (cx.shrunk ? " (shrunk)" : "") << ": " << cx.detail << "\n";
      if (!cx.formula.empty()) out << "  formula: " << cx.formula << " at " << cx.world << "\n";
      out << "  model: " << model_to_json(cx.model).dump() << "\n";
    }
  }
  out << "\nelapsed: " << static_cast<long long>(r.elapsed_ms) << " ms\n";
  return out.str();
}

}  // namespace awb
