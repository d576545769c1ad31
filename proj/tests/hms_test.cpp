#include <gtest/gtest.h>

#include "awb/errors.hpp"
#include "awb/harness.hpp"
#include "awb/hms.hpp"
#include "awb/transform.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace awb;

namespace {

// Spaces of T1/T2 by bitmask: p is bit 0, q is bit 1.
constexpr Vocab E = 0, P = 1, Q = 2, PQ = 3;

struct T1 : ::testing::Test {
  EpistemicModel m = fixtures::m1();
  HmsStructure s = hms_transform(m);
  StateId c0{E, 0}, a1{P, 0}, a2{P, 1}, b1{Q, 0}, d1{PQ, 0}, d2{PQ, 1};
};

struct T2 : ::testing::Test {
  EpistemicModel m = fixtures::m2();
  HmsStructure s = hms_transform(m);
  StateId b1{Q, 0}, b2{Q, 1};
};

std::vector<StateId> sorted(std::vector<StateId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

// The oracle reproduces the T1 values before the optimised code is trusted.
TEST(Oracle, T1Values) {
  const auto m = fixtures::m1();
  const auto o = oracle::build(m);
  EXPECT_EQ(o.spaces.at(E).size(), 1U);
  EXPECT_EQ(o.spaces.at(P).size(), 2U);
  EXPECT_EQ(o.spaces.at(Q).size(), 1U);
  EXPECT_EQ(o.spaces.at(PQ).size(), 2U);
  const oracle::State a1{P, {0}}, a2{P, {1}}, b1{Q, {0, 1}}, d1{PQ, {0}}, d2{PQ, {1}};
  EXPECT_EQ(o.up_closure(P, {a1}), (oracle::StateSet{a1, d1}));
  EXPECT_EQ(o.lambda(0, d1), (oracle::StateSet{d1, d2}));
  EXPECT_EQ(o.lambda(0, a1), (oracle::StateSet{a1, a2}));
  EXPECT_EQ(o.alpha(0, d1), P);
  EXPECT_EQ(o.alpha(0, b1), E);
  EXPECT_TRUE(oracle::truth(o, parse_hms("I[a] p"), ImplicitVariant::CellUnion).empty());
  EXPECT_EQ(oracle::truth(o, parse_hms("A[a] p"), ImplicitVariant::CellUnion), (oracle::StateSet{a1, a2, d1, d2}));
  EXPECT_EQ(oracle::truth(o, parse_hms("q"), ImplicitVariant::CellUnion), (oracle::StateSet{b1, d1, d2}));
  EXPECT_EQ(oracle::truth(o, parse_hms("p & q"), ImplicitVariant::CellUnion), (oracle::StateSet{d1}));

  const auto m2 = fixtures::m2();
  const auto o2 = oracle::build(m2);
  const oracle::State t2b1{Q, {0}};
  EXPECT_EQ(o2.lambda(0, t2b1), (oracle::StateSet{t2b1}));
  EXPECT_TRUE(oracle::truth(o2, parse_hms("I[a] q"), ImplicitVariant::CellUnion).count(t2b1));
}

TEST_F(T1, Shape) {
  EXPECT_EQ(summary(s), "4 spaces, sizes 1/2/1/2");
  EXPECT_EQ(s.state(a1).members, WorldSet{0});
  EXPECT_EQ(s.state(a2).members, WorldSet{1});
  EXPECT_EQ(s.state(b1).members, (WorldSet{0, 1}));
  EXPECT_EQ(s.state(d1).members, WorldSet{0});
  EXPECT_EQ(s.state_name(d2), "{p,q}:1");
  EXPECT_EQ(s.parse_state("{p,q}:1"), d2);
  EXPECT_EQ(s.parse_state("p,q:1"), d2);
  EXPECT_EQ(s.parse_state("{}:0"), c0);
  EXPECT_THROW(s.parse_state("{p}:5"), ModelError);
  EXPECT_THROW(s.parse_state("{r}:0"), ModelError);
}

TEST_F(T1, Extension) {
  EXPECT_EQ(sorted(extension(s, {P, {0}})), (std::vector<StateId>{a1, d1}));
  EXPECT_EQ(extension(s, {E, {0}}).size(), 6U);
  EXPECT_TRUE(extension(s, {P, {}}).empty());
}

TEST_F(T1, EventAlgebra) {
  const Event a1e{P, {0}};
  EXPECT_EQ(event_not(a1e, s), (Event{P, {1}}));
  EXPECT_EQ(event_not(event_not(a1e, s), s), a1e);
  EXPECT_EQ(event_not(Event{E, {0}}, s), (Event{E, {}}));
  EXPECT_EQ(event_and(a1e, Event{Q, {0}}, s), (Event{PQ, {0}}));
  EXPECT_EQ(event_and(a1e, a1e, s), a1e);
  EXPECT_EQ(event_and(a1e, event_not(a1e, s), s), (Event{P, {}}));
  EXPECT_THROW(check_event(s, Event{P, {7}}), ModelError);
}

TEST_F(T1, Atoms) {
  EXPECT_EQ(event_atom(s, "p"), (Event{P, {0}}));
  EXPECT_EQ(sorted(extension(s, event_atom(s, "p"))), (std::vector<StateId>{a1, d1}));
  EXPECT_EQ(event_atom(s, "q"), (Event{Q, {0}}));
  EXPECT_EQ(sorted(extension(s, event_atom(s, "q"))), (std::vector<StateId>{b1, d1, d2}));
  EXPECT_THROW(event_atom(s, "r"), ModelError);
}

TEST(Events, AtomFalseEverywhere) {
  EpistemicModel m({"p"}, {"a"}, {"w1"});
  const auto s = hms_transform(m);
  EXPECT_EQ(event_atom(s, "p"), (Event{1, {}}));
}

TEST_F(T1, AwareAndImplicit) {
  EXPECT_EQ(aware_event(s, 0, event_atom(s, "p")), (Event{P, {0, 1}}));
  EXPECT_EQ(sorted(extension(s, aware_event(s, 0, event_atom(s, "p")))), (std::vector<StateId>{a1, a2, d1, d2}));
  EXPECT_EQ(aware_event(s, 0, event_atom(s, "q")), (Event{Q, {}}));
  EXPECT_EQ(aware_event(s, 0, Event{E, {}}), (Event{E, {0}}));
  EXPECT_EQ(implicit_event(s, 0, Event{P, {0}}, ImplicitVariant::CellUnion), (Event{P, {}}));
  EXPECT_EQ(implicit_event(s, 0, Event{P, {0}}, ImplicitVariant::Pointwise), (Event{P, {}}));
  for (auto variant : {ImplicitVariant::CellUnion, ImplicitVariant::Pointwise}) {
    EXPECT_EQ(implicit_event(s, 0, Event{PQ, {0, 1}}, variant), (Event{PQ, {0, 1}}));
  }
}

TEST_F(T1, TruthAndSat) {
  EXPECT_EQ(truth_set(s, parse_hms("I[a] p")), (Event{P, {}}));
  EXPECT_EQ(truth_set(s, parse_hms("A[a] p")), (Event{P, {0, 1}}));
  EXPECT_EQ(truth_set(s, parse_hms("q")), (Event{Q, {0}}));
  EXPECT_FALSE(sat_hms(s, a1, parse_hms("I[a] p")));
  EXPECT_TRUE(sat_hms(s, d1, parse_hms("p & q")));
  EXPECT_THROW(sat_hms(s, StateId{P, 9}, parse_hms("p")), ModelError);
  EXPECT_THROW(truth_set(s, parse_hms("I[b] p")), ModelError);
}

TEST_F(T1, Locate) {
  EXPECT_EQ(locate(m, s, "w1", AtomSet{"p"}), a1);
  EXPECT_EQ(locate(m, s, "w2", AtomSet{}), c0);
  EXPECT_EQ(locate(m, s, "w1", AtomSet{"p", "q"}), d1);
  EXPECT_THROW(locate(m, s, "w5", AtomSet{}), ModelError);
  EXPECT_THROW(locate(m, s, "w1", AtomSet{"r"}), ModelError);
}

TEST_F(T1, LambdaAndAlpha) {
  EXPECT_EQ(sorted(lambda_star(s, 0, d1)), (std::vector<StateId>{d1, d2}));
  EXPECT_EQ(lambda_star(s, 0, c0), std::vector<StateId>{c0});
  EXPECT_EQ(alpha_star(s, 0, d1), P);
  EXPECT_EQ(alpha_star(s, 0, b1), E);
  EXPECT_THROW(alpha_star(s, 0, StateId{P, 4}), ModelError);
}

TEST_F(T2, Values) {
  EXPECT_EQ(s.state(b1).members, WorldSet{0});
  EXPECT_EQ(s.state(b2).members, WorldSet{1});
  for (const StateId x : s.all_states()) EXPECT_EQ(lambda_star(s, 0, x), std::vector<StateId>{x});
  EXPECT_EQ(implicit_event(s, 0, Event{Q, {0}}), (Event{Q, {0}}));
  EXPECT_TRUE(sat_hms(s, b1, parse_hms("I[a] q")));
}

TEST(Transform, FullAwarenessAlphaIsIdentity) {
  auto m = fixtures::m1();
  m.awareness[0] = {0b11, 0b11};
  const auto s = hms_transform(m);
  for (const StateId x : s.all_states()) EXPECT_EQ(alpha_star(s, 0, x), x.space);
}

TEST(Transform, SingleWorld) {
  EpistemicModel m({"p", "q"}, {"a"}, {"w1"});
  const auto s = hms_transform(m);
  for (const auto& sp : s.spaces) EXPECT_EQ(sp.states.size(), 1U);
}

TEST(Transform, Preconditions) {
  auto m = fixtures::m1();
  m.awareness[0][1] = 0b11;
  try {
    hms_transform(m);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("transform inapplicable"), std::string::npos);
  }
  EpistemicModel wide(std::vector<std::string>(13, ""), {"a"}, {"w1"});
  for (std::size_t k = 0; k < 13; ++k) wide.atoms[k] = "p" + std::to_string(k);
  EXPECT_THROW(hms_transform(wide), PreconditionError);
  EXPECT_NO_THROW(hms_transform(wide, TransformOptions{13}));
}

TEST(Transform, DumpIsStable) {
  const auto m = fixtures::m1();
  const std::string a = dump_json(hms_transform(m)).dump(2);
  const std::string b = dump_json(hms_transform(m)).dump(2);
  EXPECT_EQ(a, b);
  const auto j = dump_json(hms_transform(m));
  EXPECT_EQ(j["spaces"]["p,q"][0]["rep"], "w1");
  EXPECT_EQ(j["alpha"]["a"]["p,q"][0], "p");
  EXPECT_EQ(j["valuation"]["q"]["q"], nlohmann::json::array({0}));
}

// Optimised structure, events and satisfaction against the oracle on random
// instances, for both implicit variants.
TEST(HmsProperty, AgreesWithOracle) {
  TrialConfig cfg;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng(trial_seed(11, t));
    const EpistemicModel m = gen_model(rng, cfg);
    const HmsStructure s = hms_transform(m);
    const oracle::Structure o = oracle::build(m);
    for (const StateId x : s.all_states()) {
      ASSERT_EQ(o.class_of(x.space, s.state(x).rep), oracle::name(s, x));
      for (Vocab to = x.space;; to = (to - 1) & x.space) {
        ASSERT_EQ(oracle::name(s, s.project(x, to)), o.project(oracle::name(s, x), to));
        if (to == 0) break;
      }
      for (std::size_t i = 0; i < m.agents.size(); ++i) {
        ASSERT_EQ(oracle::names(s, lambda_star(s, i, x)), o.lambda(i, oracle::name(s, x)));
        ASSERT_EQ(alpha_star(s, i, x), o.alpha(i, oracle::name(s, x)));
      }
    }
    const WorldIndex w = rng.below(m.worlds.size());
    const HmsFormula f = translate(gen_formula(rng, m, w, rng.coin()).formula);
    for (auto variant : {ImplicitVariant::CellUnion, ImplicitVariant::Pointwise}) {
      const Event e = truth_set(s, f, variant);
      ASSERT_EQ(e.base_vocab, s.vocab_of(atoms_of(f)));
      ASSERT_EQ(oracle::names(s, extension(s, e)), oracle::truth(o, f, variant)) << print(f);
    }
  }
}

TEST(HmsProperty, EventLaws) {
  TrialConfig cfg;
  for (std::uint64_t t = 0; t < 300; ++t) {
    Rng rng(trial_seed(12, t));
    const EpistemicModel m = gen_model(rng, cfg);
    const HmsStructure s = hms_transform(m);
    const WorldIndex w = rng.below(m.worlds.size());
    const Event e1 = truth_set(s, gen_formula(rng, m, w, false).formula.body);
    const Event e2 = truth_set(s, gen_formula(rng, m, w, false).formula.body);
    const Event meet = event_and(e1, e2, s);
    const Event nmeet = event_not(meet, s);
    ClassSet complement;
    for (ClassIndex c = 0; c < s.space(meet.base_vocab).states.size(); ++c) {
      if (!std::binary_search(meet.base.begin(), meet.base.end(), c)) complement.push_back(c);
    }
    ASSERT_EQ(nmeet.base, complement);
    for (std::size_t i = 0; i < m.agents.size(); ++i) {
      const Event cu = implicit_event(s, i, e1, ImplicitVariant::CellUnion);
      const Event pw = implicit_event(s, i, e1, ImplicitVariant::Pointwise);
      ASSERT_TRUE(std::includes(cu.base.begin(), cu.base.end(), pw.base.begin(), pw.base.end()));
    }
    // Prop satisfaction only depends on the representative's row.
    const Prop body = gen_formula(rng, m, w, false).formula.body;
    for (const StateId x : s.all_states()) {
      if (!vocab_contains(x.space, s.vocab_of(atoms_of(body)))) continue;
      ASSERT_EQ(sat_hms(s, x, HmsFormula::prop(body)), sat_prop(m, s.state(x).rep, body));
    }
  }
}
