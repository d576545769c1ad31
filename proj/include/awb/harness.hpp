#pragma once

// Randomised checking of the structural lemmas and the truth-preservation
// theorem for the transform + translation pair.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "awb/formula.hpp"
#include "awb/hms.hpp"
#include "awb/model.hpp"

namespace awb {

struct TrialConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t max_worlds = 6;
  std::size_t max_atoms = 4;
  std::size_t max_agents = 3;
  std::size_t max_depth = 3;
  ImplicitVariant variant = ImplicitVariant::CellUnion;
  bool both_variants = false;
  bool require_a_condition = true;
  std::size_t max_counterexamples = 5;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

// Throws std::invalid_argument for zero bounds or max_atoms above the
// transform cap.
void check_config(const TrialConfig& cfg);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial);

// Constant-awareness model within the configured bounds.
EpistemicModel gen_model(Rng& rng, const TrialConfig& cfg);

struct GeneratedFormula {
  AilFormula formula;
  // A modal formula was requested but the agent is aware of nothing, so a
  // propositional formula was produced instead.
  bool prop_fallback = false;
  // Random bodies missed the awareness set too often and the body was built
  // by combining every awareness atom directly.
  bool covering_fallback = false;
};

GeneratedFormula gen_formula(Rng& rng, const EpistemicModel& m, WorldIndex w, bool require_a_condition,
                             std::size_t max_depth = 3);

struct Counterexample {
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  EpistemicModel model;
  std::string world;
  std::string formula;
  std::optional<bool> ail;
  std::optional<bool> hms;
  std::string state;
  std::string detail;
  bool shrunk = false;
};

struct Verdict {
  std::string conjecture;
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  std::string detail;
  std::optional<Counterexample> counterexample;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }
};

// Compares satisfaction of f at w with satisfaction of translate(f) at
// [w]_{At(f)} in s. Skips when the premises fail, unless waived.
Verdict check_theorem1(const EpistemicModel& m, const HmsStructure& s, WorldIndex w, const AilFormula& f,
                       ImplicitVariant variant = ImplicitVariant::CellUnion, bool waive_preconditions = false);
// Builds the transform itself; a model outside the premise is a skip unless
// waived, in which case a failed transform is also a skip.
Verdict check_theorem1(const EpistemicModel& m, WorldIndex w, const AilFormula& f,
                       ImplicitVariant variant = ImplicitVariant::CellUnion, bool waive_preconditions = false);

// State-by-state satisfaction of an HMS formula that walks the formula over
// each state and never builds an Event.
bool sat_hms_direct(const HmsStructure& s, StateId x, const HmsFormula& f,
                    ImplicitVariant variant = ImplicitVariant::CellUnion);

Verdict check_lemma2(const HmsStructure& s, const HmsFormula& f,
                     ImplicitVariant variant = ImplicitVariant::CellUnion);

// Structural battery. With a source model the awareness and valuation tables
// are also checked against it.
Verdict check_lemma1(const HmsStructure& s, const EpistemicModel* source = nullptr);

Verdict compare_variants(const HmsStructure& s, std::size_t agent, const Event& e);

// Does projecting Lambda commute with Lambda on every pair of spaces?
Verdict check_lambda_commutation(const HmsStructure& s);

struct ConjectureTally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
  // Exploratory tallies are reported but never make a run fail.
  bool exploratory = false;
  std::vector<Counterexample> counterexamples;

  friend bool operator==(const ConjectureTally&, const ConjectureTally&);
};

struct Report {
  TrialConfig config;
  std::map<std::string, ConjectureTally> conjectures;
  std::map<std::string, std::size_t> generator;
  double elapsed_ms = 0;

  bool failed() const;
};

Report run_suite(const TrialConfig& cfg);

// Greedy shrinking: drops worlds, agents, atoms and block memberships and
// replaces the formula body by sub-formulas while `still_fails` holds.
struct ShrinkCase {
  EpistemicModel model;
  WorldIndex world;
  AilFormula formula;
};
template <typename Pred>
ShrinkCase shrink(ShrinkCase c, Pred still_fails);
std::vector<ShrinkCase> shrink_candidates(const ShrinkCase& c);

nlohmann::json counterexample_to_json(const Counterexample& c);
Counterexample counterexample_from_json(const nlohmann::json& j);
// elapsed_ms is only emitted with include_timing, so the default rendering is
// byte-identical across runs.
nlohmann::json report_to_json(const Report& r, bool include_timing = false);
Report report_from_json(const nlohmann::json& j);
std::string report_to_text(const Report& r);

template <typename Pred>
ShrinkCase shrink(ShrinkCase c, Pred still_fails) {
  bool progress = true;
  for (std::size_t round = 0; progress && round < 1000; ++round) {
    progress = false;
    for (auto& candidate : shrink_candidates(c)) {
      if (still_fails(candidate)) {
        c = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return c;
}

}  // namespace awb
