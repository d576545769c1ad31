// awb: model checking, transforming and translating awareness formulas, and
// randomised verification of the translation.
//
// Exit codes: 0 success / formula true, 1 formula false, 2 input error,
// 3 precondition violation, 4 conjecture failure.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "awb/errors.hpp"
#include "awb/formula.hpp"
#include "awb/harness.hpp"
#include "awb/hms.hpp"
#include "awb/model.hpp"
#include "awb/model_io.hpp"
#include "awb/transform.hpp"

namespace {

enum Exit : int { kOk = 0, kFalse = 1, kInput = 2, kPrecondition = 3, kConjecture = 4 };

std::string world_list(const awb::EpistemicModel& m, const awb::WorldSet& ws) {
  std::string out = "{";
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (k) out += ",";
    out += m.worlds[ws[k]];
  }
  return out + "}";
}

std::string class_list(const awb::HmsStructure& s, const awb::Event& e) {
  std::string out = "{";
  for (std::size_t k = 0; k < e.base.size(); ++k) {
    if (k) out += ",";
    out += s.state_name({e.base_vocab, e.base[k]});
  }
  return out + "}";
}

// Loads and validates; violations are input errors.
awb::EpistemicModel load_valid_model(const std::string& path) {
  awb::EpistemicModel m = awb::load_model(path);
  const auto violations = awb::validate(m);
  if (!violations.empty()) {
    std::string msg = "invalid model:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw awb::InputError(msg);
  }
  return m;
}

struct CheckArgs {
  std::string model;
  std::string formula;
  std::string world;
  std::string lang = "ail";
  std::string hms_state;
  bool verbose = false;
};

int run_check(const CheckArgs& a) {
  const awb::EpistemicModel m = load_valid_model(a.model);
  if (a.lang == "ail") {
    const awb::AilFormula f = awb::parse_ail(a.formula);
    if (a.world.empty()) throw awb::InputError("--world is required");
    const awb::WorldIndex w = m.world_index(a.world);
    const bool value = awb::sat_ail(m, w, f);
    std::cout << (value ? "true" : "false") << "\n";
    if (a.verbose) {
      if (f.kind == awb::AilFormula::Kind::BoxIBox) {
        std::cout << "reach " << world_list(m, awb::reach_composed(m, m.agent_index(f.agent), w)) << "\n";
      } else if (f.kind == awb::AilFormula::Kind::Aware) {
        const auto i = m.agent_index(f.agent);
        std::cout << "awareness of " << f.agent << " at " << a.world << ": {";
        bool first = true;
        for (const auto& p : m.atom_names(m.awareness[i][w])) {
          std::cout << (first ? "" : ",") << p;
          first = false;
        }
        std::cout << "}\n";
      }
    }
    return value ? kOk : kFalse;
  }

  const awb::HmsFormula f = awb::parse_hms(a.formula);
  if (!awb::constant_awareness(m)) {
    std::cerr << "error: transform inapplicable: awareness varies across worlds\n";
    return kPrecondition;
  }
  const awb::HmsStructure s = awb::hms_transform(m);
  awb::StateId x{};
  if (!a.hms_state.empty()) {
    x = s.parse_state(a.hms_state);
  } else {
    if (a.world.empty()) throw awb::InputError("--world or --hms-state is required");
    x = awb::locate(m, s, m.world_index(a.world), s.vocab_of(awb::atoms_of(f)));
  }
  const bool value = awb::sat_hms(s, x, f);
  std::cout << (value ? "true" : "false") << "\n";
  if (a.verbose) {
    const awb::Event e = awb::truth_set(s, f);
    std::cout << "state " << s.state_name(x) << "\n";
    std::cout << "truth-set base " << class_list(s, e) << "\n";
  }
  return value ? kOk : kFalse;
}

int run_transform(const std::string& model, const std::string& dump, std::size_t max_atoms) {
  const awb::EpistemicModel m = load_valid_model(model);
  const awb::HmsStructure s = awb::hms_transform(m, awb::TransformOptions{max_atoms});
  if (!dump.empty()) awb::write_file_atomically(dump, awb::dump_json(s).dump(2) + "\n");
  std::cout << awb::summary(s) << "\n";
  return kOk;
}

int run_verify(const awb::TrialConfig& cfg, const std::string& format, const std::string& output, bool timing) {
  const awb::Report r = awb::run_suite(cfg);
  const std::string text =
      format == "json" ? awb::report_to_json(r, timing).dump(2) + "\n" : awb::report_to_text(r);
  if (output.empty()) {
    std::cout << text;
  } else {
    awb::write_file_atomically(output, text);
  }
  return r.failed() ? kConjecture : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking and HMS-transform tooling for awareness-based epistemic logic"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a formula on a model");
  check_cmd->add_option("model", check.model, "Model file (JSON)")->required();
  check_cmd->add_option("--formula,-f", check.formula, "Formula text")->required();
  check_cmd->add_option("--world,-w", check.world, "Evaluation world");
  check_cmd->add_option("--lang", check.lang, "Formula language")->check(CLI::IsMember({"ail", "hms"}));
  check_cmd->add_option("--hms-state", check.hms_state, "Explicit HMS state, e.g. {p,q}:0");
  check_cmd->add_flag("-v,--verbose", check.verbose, "Print the reach set or truth-set base");

  std::string transform_model, dump_path;
  std::size_t max_atoms = awb::TransformOptions{}.max_atoms;
  auto* transform_cmd = app.add_subcommand("transform", "Build the HMS-transform of a model");
  transform_cmd->add_option("model", transform_model, "Model file (JSON)")->required();
  transform_cmd->add_option("--dump", dump_path, "Write the structure as JSON");
  transform_cmd->add_option("--max-atoms", max_atoms, "Atom cap (2^atoms spaces are built)")
      ->check(CLI::Range(std::size_t{0}, awb::kHardMaxTransformAtoms));

  std::string translate_formula;
  auto* translate_cmd = app.add_subcommand("translate", "Translate an awareness formula into the HMS fragment");
  translate_cmd->add_option("--formula,-f", translate_formula, "Formula text")->required();

  awb::TrialConfig cfg;
  cfg.trials = 1000;
  std::string format = "text", output;
  bool no_a_condition = false, timing = false;
  auto* verify_cmd = app.add_subcommand("verify", "Randomised check of the lemmas and the translation theorem");
  verify_cmd->add_option("--seed", cfg.seed, "Master seed")->envname("AWB_SEED");
  verify_cmd->add_option("--trials", cfg.trials, "Number of trials");
  verify_cmd->add_flag("--both-variants", cfg.both_variants, "Also check the pointwise implicit operator");
  verify_cmd->add_flag("--no-a-condition", no_a_condition, "Draw formulas without the A-condition");
  verify_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--output,-o", output, "Write the report to a file");
  verify_cmd->add_flag("--timing", timing, "Include elapsed_ms in the JSON report");
  verify_cmd->add_option("--max-worlds", cfg.max_worlds, "Largest generated model")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-atoms", cfg.max_atoms, "Most atoms per generated model")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--max-agents", cfg.max_agents, "Most agents per generated model")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*check_cmd) return run_check(check);
    if (*transform_cmd) return run_transform(transform_model, dump_path, max_atoms);
    if (*translate_cmd) {
      std::cout << awb::print(awb::translate(awb::parse_ail(translate_formula))) << "\n";
      return kOk;
    }
    if (*verify_cmd) {
      cfg.require_a_condition = !no_a_condition;
      awb::check_config(cfg);
      return run_verify(cfg, format, output, timing);
    }
  } catch (const awb::ParseError& e) {
    std::cerr << "error: formula " << e.what() << "\n";
    return kInput;
  } catch (const awb::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const awb::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const awb::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
