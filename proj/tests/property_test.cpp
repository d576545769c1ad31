// Properties checked on the brute-force evaluator alone, independently of the
// optimised transform.

#include <gtest/gtest.h>

#include "awb/harness.hpp"
#include "oracle.hpp"

using namespace awb;

namespace {

struct Instance {
  EpistemicModel m;
  WorldIndex w;
  AilFormula f;
};

Instance draw(std::uint64_t seed, std::uint64_t t, bool require_a_condition) {
  TrialConfig cfg;
  Rng rng(trial_seed(seed, t));
  EpistemicModel m = gen_model(rng, cfg);
  const WorldIndex w = rng.below(m.worlds.size());
  AilFormula f = gen_formula(rng, m, w, require_a_condition).formula;
  return {std::move(m), w, std::move(f)};
}

bool oracle_hms(const EpistemicModel& m, WorldIndex w, const AilFormula& f, ImplicitVariant variant) {
  const oracle::Structure o = oracle::build(m);
  const Vocab phi = oracle::vocab_of(m, atoms_of(f));
  return oracle::truth(o, translate(f), variant).count(o.class_of(phi, w)) > 0;
}

// Is the relation x ~ y iff y in lambda(x) transitive on the space?
bool lambda_transitive(const oracle::Structure& o, std::size_t agent, Vocab phi) {
  for (const auto& x : o.spaces.at(phi)) {
    const auto cell = o.lambda(agent, x);
    for (const auto& y : cell) {
      for (const auto& z : o.lambda(agent, y)) {
        if (!cell.count(z)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(OracleTruthPreservation, PointwiseVariantPreservesTruth) {
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const Instance in = draw(21, t, true);
    if (!a_condition(in.f, in.m, in.w)) continue;
    ASSERT_EQ(oracle::sat_ail(in.m, in.w, in.f), oracle_hms(in.m, in.w, in.f, ImplicitVariant::Pointwise))
        << print(in.f);
  }
}

// Cell-union and pointwise can only disagree on a space where the projected
// Lambda is not transitive.
TEST(OracleTruthPreservation, VariantsAgreeOnTransitiveSpaces) {
  std::size_t divergent = 0;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    const Instance in = draw(22, t, true);
    if (in.f.kind != AilFormula::Kind::BoxIBox) continue;
    const oracle::Structure o = oracle::build(in.m);
    const HmsFormula h = translate(in.f);
    const bool same = oracle::truth(o, h, ImplicitVariant::CellUnion) == oracle::truth(o, h, ImplicitVariant::Pointwise);
    if (same) continue;
    ++divergent;
    const std::size_t i = oracle::agent_of(in.m, in.f.agent);
    ASSERT_FALSE(lambda_transitive(o, i, oracle::vocab_of(in.m, atoms_of(in.f))));
  }
  RecordProperty("divergent", static_cast<int>(divergent));
}

TEST(OracleTruthPreservation, ACondition) {
  // Without the A-condition the biconditional fails somewhere.
  std::size_t failures = 0;
  for (std::uint64_t t = 0; t < 2000 && failures == 0; ++t) {
    const Instance in = draw(23, t, false);
    failures += oracle::sat_ail(in.m, in.w, in.f) != oracle_hms(in.m, in.w, in.f, ImplicitVariant::Pointwise);
  }
  EXPECT_GT(failures, 0U);
}

TEST(OracleStructure, SizeLawAndLambdaShape) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    const Instance in = draw(24, t, false);
    const oracle::Structure o = oracle::build(in.m);
    EXPECT_EQ(o.spaces.at(0).size(), 1U);
    for (const auto& [phi, states] : o.spaces) {
      const std::size_t bound = std::min<std::size_t>(in.m.worlds.size(), std::size_t{1} << std::popcount(phi));
      ASSERT_LE(states.size(), bound);
      for (std::size_t i = 0; i < in.m.agents.size(); ++i) {
        for (const auto& x : states) {
          const auto cell = o.lambda(i, x);
          ASSERT_TRUE(cell.count(x));
          for (const auto& y : cell) {
            ASSERT_EQ(y.first, phi);
            if (phi == o.top()) ASSERT_TRUE(o.lambda(i, y).count(x));
          }
        }
      }
    }
  }
}
