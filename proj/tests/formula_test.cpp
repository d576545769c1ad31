#include <gtest/gtest.h>

#include "awb/formula.hpp"
#include "awb/harness.hpp"

using namespace awb;

namespace {

Prop p() { return Prop::atom("p"); }
Prop q() { return Prop::atom("q"); }

std::string parse_error(std::string_view text, bool hms = false) {
  try {
    if (hms) {
      parse_hms(text);
    } else {
      parse_ail(text);
    }
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, PropositionalAil) {
  EXPECT_EQ(parse_ail("p & ~q"), AilFormula::prop(Prop::conjunction(p(), Prop::negation(q()))));
}

TEST(Parse, BoxIBox) {
  EXPECT_EQ(parse_ail("X[a] I[a] X[a] p"), AilFormula::box_i_box("a", p()));
}

TEST(Parse, AgentMismatch) {
  EXPECT_NE(parse_error("X[a] I[b] X[a] p").find("agent mismatch in [≈]I[≈] pattern"), std::string::npos);
}

TEST(Parse, Nesting) {
  EXPECT_NE(parse_error("A[a] I[a] p").find("modal nesting not in L*_AIL"), std::string::npos);
  EXPECT_NE(parse_error("A[a] A[a] p").find("modal nesting not in L*_AIL"), std::string::npos);
  EXPECT_NE(parse_error("p & A[a] p").find("L*_AIL"), std::string::npos);
  EXPECT_NE(parse_error("~A[a] p").find("L*_AIL"), std::string::npos);
}

TEST(Parse, HmsDesugarsDisjunction) {
  EXPECT_EQ(parse_hms("I[a] (p | q)"),
            HmsFormula::implicit("a", Prop::negation(Prop::conjunction(Prop::negation(p()), Prop::negation(q())))));
  EXPECT_EQ(parse_hms("A[a] p"), HmsFormula::aware("a", p()));
}

TEST(Parse, HmsRejectsComposedOperator) {
  EXPECT_NE(parse_error("X[a] I[a] X[a] p", true).find("operator not in L*_HMS"), std::string::npos);
}

TEST(Parse, AilRejectsBareImplicit) {
  EXPECT_NE(parse_error("I[a] p").find("L*_AIL"), std::string::npos);
}

TEST(Parse, Arrows) {
  EXPECT_EQ(parse_prop("p -> q"), Prop::negation(Prop::conjunction(p(), Prop::negation(q()))));
  EXPECT_EQ(parse_prop("p <-> q"), Prop::conjunction(Prop::implication(p(), q()), Prop::implication(q(), p())));
}

TEST(Parse, SyntaxErrorsCarryPositions) {
  try {
    parse_ail("p &\n  & q");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2U);
    EXPECT_EQ(e.column(), 3U);
    EXPECT_NE(e.detail().find("syntax error"), std::string::npos);
  }
  EXPECT_THROW(parse_ail(""), ParseError);
  EXPECT_THROW(parse_ail("(p & q"), ParseError);
  EXPECT_THROW(parse_ail("p q"), ParseError);
  EXPECT_THROW(parse_ail("X[a] I[a] p"), ParseError);
  EXPECT_THROW(parse_ail("A[] p"), ParseError);
  EXPECT_THROW(parse_prop("A[a] p"), ParseError);
  EXPECT_THROW(parse_prop("P"), ParseError);
}

TEST(Print, Examples) {
  EXPECT_EQ(print(AilFormula::box_i_box("a", p())), "X[a] I[a] X[a] p");
  EXPECT_EQ(print(AilFormula::prop(Prop::conjunction(p(), Prop::negation(q())))), "p & ~q");
  EXPECT_EQ(print(HmsFormula::implicit("a", p())), "I[a] p");
  EXPECT_EQ(print(HmsFormula::implicit("a", Prop::conjunction(p(), q()))), "I[a] (p & q)");
  EXPECT_EQ(print(Prop::conjunction(p(), Prop::conjunction(q(), p()))), "p & (q & p)");
  EXPECT_EQ(print(Prop::conjunction(Prop::conjunction(p(), q()), p())), "p & q & p");
}

TEST(AtomsOf, Examples) {
  EXPECT_EQ(atoms_of(Prop::conjunction(p(), Prop::negation(q()))), (AtomSet{"p", "q"}));
  EXPECT_EQ(atoms_of(AilFormula::aware("a", p())), AtomSet{"p"});
  EXPECT_EQ(atoms_of(AilFormula::box_i_box("a", Prop::conjunction(p(), p()))), AtomSet{"p"});
}

TEST(Translate, Examples) {
  const Prop pq = Prop::conjunction(p(), q());
  EXPECT_EQ(translate(AilFormula::box_i_box("a", pq)), HmsFormula::implicit("a", pq));
  EXPECT_EQ(translate(AilFormula::prop(p())), HmsFormula::prop(p()));
  EXPECT_EQ(translate(AilFormula::aware("a", Prop::negation(p()))), HmsFormula::aware("a", Prop::negation(p())));
}

TEST(Names, Validity) {
  EXPECT_TRUE(is_valid_atom_name("p"));
  EXPECT_TRUE(is_valid_atom_name("rain_2X"));
  EXPECT_FALSE(is_valid_atom_name("P"));
  EXPECT_FALSE(is_valid_atom_name("2p"));
  EXPECT_FALSE(is_valid_atom_name(""));
  EXPECT_TRUE(is_valid_agent_name("Alice_1"));
  EXPECT_FALSE(is_valid_agent_name(""));
  EXPECT_FALSE(is_valid_agent_name("a-b"));
}

// parse(print(f)) == f and translate keeps the atom set, over random formulas.
TEST(FormulaProperty, RoundTripAndTranslate) {
  TrialConfig cfg;
  cfg.max_atoms = 4;
  for (std::uint64_t t = 0; t < 2000; ++t) {
    Rng rng(trial_seed(99, t));
    const EpistemicModel m = gen_model(rng, cfg);
    const WorldIndex w = rng.below(m.worlds.size());
    const AilFormula f = gen_formula(rng, m, w, rng.coin(), 4).formula;
    const std::string text = print(f);
    ASSERT_EQ(parse_ail(text), f) << text;
    const HmsFormula h = translate(f);
    ASSERT_EQ(parse_hms(print(h)), h);
    ASSERT_EQ(atoms_of(h), atoms_of(f));
    ASSERT_EQ(h.body, f.body);
    ASSERT_EQ(static_cast<int>(h.kind), static_cast<int>(f.kind));
  }
}
