#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <folab/classify.hpp>
#include <folab/formula.hpp>
#include <folab/gallery.hpp>
#include <folab/syntax.hpp>

using namespace folab;

namespace {

bool member(const std::string& text, FragmentId id) {
  return fragment_membership(parse(text), id).member;
}

std::string why(const std::string& text, FragmentId id) {
  MembershipResult r = fragment_membership(parse(text), id);
  REQUIRE_FALSE(r.member);
  return r.reason;
}

}  // namespace

TEST_CASE("level sets") {
  LevelSet f12 = LevelSet::finite({1, 2});
  LevelSet up2 = LevelSet::up_from(2);
  CHECK(f12.str() == "{1,2}");
  CHECK(up2.str() == "upward-closed-from(2)");
  CHECK(f12.contains(1));
  CHECK_FALSE(f12.contains(3));
  CHECK(up2.contains(2));
  CHECK(up2.contains(9));
  CHECK_FALSE(up2.contains(1));
  CHECK(LevelSet::finite({}).empty());
  CHECK_FALSE(up2.empty());

  CHECK(f12.intersect(up2) == LevelSet::finite({2}));
  CHECK(up2.intersect(LevelSet::up_from(4)) == LevelSet::up_from(4));
  CHECK(f12.intersect(LevelSet::finite({3})).empty());
  CHECK(LevelSet::finite({2, 5}).subset_of(up2));
  CHECK_FALSE(up2.subset_of(LevelSet::finite({2, 3, 4})));
  CHECK(LevelSet::up_from(4).subset_of(up2));
}

TEST_CASE("suffix and infix atom levels") {
  CHECK(fl_level(parse("P(x1)")) == LevelSet::finite({1}));
  CHECK(fl_level(parse("P(x2)")) == LevelSet::finite({2}));
  CHECK(fl_level(parse("R(x1,x2)")) == LevelSet::finite({2}));
  CHECK(fl_level(parse("R(x2,x3)")) == LevelSet::finite({3}));
  CHECK(fl_level(parse("R(x2,x1)")).empty());
  CHECK(fl_level(parse("R(x1,x3)")).empty());

  CHECK(ff_level(parse("R(x1,x2)")) == LevelSet::up_from(2));
  CHECK(ff_level(parse("R(x2,x1)")).empty());
  CHECK(ff_level(parse("S(x1,x2,x3)")) == LevelSet::up_from(3));
}

TEST_CASE("boolean nodes intersect levels, quantifiers shift them") {
  // conjunction at distinct levels has no common level
  CHECK(fl_level(parse("P(x1) & P(x2)")).empty());
  CHECK(ff_level(parse("P(x1) & P(x2)")) == LevelSet::up_from(2));
  CHECK(fl_level(parse("P(x2) & R(x1,x2)")) == LevelSet::finite({2}));
  CHECK(fl_level(parse("!P(x2)")) == LevelSet::finite({2}));
  CHECK(fl_level(parse("P(x1) -> P(x1)")) == LevelSet::finite({1}));

  // E x_{n+1} drops a level-(n+1) body to level n
  CHECK(fl_level(parse("E x2. R(x1,x2)")) == LevelSet::finite({1}));
  CHECK(fl_level(parse("E x1. E x2. R(x1,x2)")) == LevelSet::finite({0}));
  CHECK(fl_level(parse("A x3. R(x2,x3)")) == LevelSet::finite({2}));
  CHECK(ff_level(parse("E x3. S(x1,x2,x3)")) == LevelSet::finite({2}));
  // binder index absent from the body's levels
  CHECK(fl_level(parse("E x3. R(x1,x2)")).empty());

  // top and bottom level out: nothing survives a Boolean combination
  CHECK(fl_level(parse("true")).empty());
  CHECK(ff_level(parse("false")).empty());
}

TEST_CASE("membership verdicts for the bundled examples") {
  // two-element cycle: inside GFO, FO2, UNFO; outside FF
  std::string cycle = "E x1. E x2. (R(x1,x2) & R(x2,x1))";
  CHECK(member(cycle, FragmentId::GFO));
  CHECK(member(cycle, FragmentId::FO2));
  CHECK(member(cycle, FragmentId::UNFO));
  CHECK_FALSE(member(cycle, FragmentId::FF));

  // guard substitution drops the formula out of GFO
  CHECK(member("E x1. E x2. (R(x1,x2) & !S(x1,x2))", FragmentId::GFO));
  CHECK_FALSE(member("E x1. E x2. ((x1=x1 & x2=x2) & !S(x1,x2))", FragmentId::GFO));

  CHECK(why("P(x1) & P(x2)", FragmentId::FL) == "no common level");
}

TEST_CASE("two-variable fragment") {
  CHECK(member("A x1. E x2. (R(x1,x2) & A x1. R(x2,x1))", FragmentId::FO2));
  CHECK(member("P(x1) <-> Q(x2)", FragmentId::FO2));
  CHECK(why("R(x1,x2) & P(x3)", FragmentId::FO2) == "three variables");
  CHECK(why("S(x1,x2) & S(x1,x2) & T(x1,x1,x2)", FragmentId::FO2) ==
        "T/3 has arity greater than 2");
  CHECK(why("Z()", FragmentId::FO2) == "Z is a 0-ary symbol");
  // binder indices count even when the body ignores them
  CHECK_FALSE(member("E x3. R(x1,x2)", FragmentId::FO2));

  // membership is invariant under swapping the two indices throughout
  for (const std::string& text :
       {std::string("E x2. (R(x1,x2) & P(x2))"), std::string("x1=x2 | P(x2)")}) {
    Formula f = parse(text);
    VariableRenaming swap;
    swap.mapping = {{1, 2}, {2, 1}};
    Formula g = rename_free_vars(f, swap);
    CHECK(fragment_membership(f, FragmentId::FO2).member ==
          fragment_membership(g, FragmentId::FO2).member);
  }
}

TEST_CASE("guarded fragment grammar") {
  CHECK(member("true", FragmentId::GFO));
  CHECK(member("R(x1,x2)", FragmentId::GFO));
  CHECK(member("x1=x2", FragmentId::GFO));
  CHECK(member("!R(x1,x2)", FragmentId::GFO));  // negation is free in GFO
  CHECK(member("R(x1,x2) & (P(x1) | x1=x2)", FragmentId::GFO));
  // equality guards are legal
  CHECK(member("E x2. (x1=x2 & P(x2))", FragmentId::GFO));
  // a guard must cover every free variable of the guarded part
  CHECK_FALSE(member("E x2. (P(x2) & R(x1,x3))", FragmentId::GFO));
  // multi-variable exists chains share one guard
  CHECK(member("E x1. E x2. E x3. (T(x1,x2,x3) & R(x1,x3))", FragmentId::GFO));
  // body must literally be guard & formula
  CHECK(why("E x1. P(x1)", FragmentId::GFO) ==
        "quantified body P(x1) is not of the form guard & formula");
  CHECK(why("A x1. P(x1)", FragmentId::GFO) ==
        "universal quantifier is not in the grammar");
  CHECK(why("false", FragmentId::GFO) == "'false' is not in the grammar");
  CHECK(why("P(x1) -> Q(x1)", FragmentId::GFO) ==
        "implication is not in the grammar");
}

TEST_CASE("guarded-negation grammars") {
  CHECK(member("true", FragmentId::GNFO_PRIMITIVE));
  CHECK(member("E x2. (R(x1,x2) & !R(x2,x2))", FragmentId::GNFO_PRIMITIVE));
  CHECK(member("R(x1,x2) & !(R(x1,x2) & P(x1))", FragmentId::GNFO_PRIMITIVE));
  // equality guards negations too
  CHECK(member("x1=x1 & !P(x1)", FragmentId::GNFO_PRIMITIVE));
  CHECK_FALSE(member("!P(x1)", FragmentId::GNFO_PRIMITIVE));
  CHECK_FALSE(member("A x1. P(x1)", FragmentId::GNFO_PRIMITIVE));
  // guard must cover the negated part's free variables
  CHECK_FALSE(member("P(x1) & !R(x1,x2)", FragmentId::GNFO_PRIMITIVE));

  CHECK(member("E x1. E x2. (R(x1,x2) & x1=x2)", FragmentId::GNFO_UCQ));
  CHECK(member("(E x1. (P(x1) & Q(x1))) | (E x1. S(x1))", FragmentId::GNFO_UCQ));
  CHECK(member("E x2. (R(x1,x2) & !R(x2,x2))", FragmentId::GNFO_UCQ));
  CHECK_FALSE(member("true", FragmentId::GNFO_UCQ));
  CHECK_FALSE(member("E x1. (P(x1) | Q(x1))", FragmentId::GNFO_UCQ));

  // the substituted guard example stays outside both grammars
  Formula after = pristine_gallery().formula("gfo_subst_after");
  CHECK_FALSE(fragment_membership(after, FragmentId::GNFO_PRIMITIVE).member);
}

TEST_CASE("unary-negation fragment") {
  CHECK(member("!P(x1)", FragmentId::UNFO));
  CHECK(member("!(E x2. R(x1,x2))", FragmentId::UNFO));
  CHECK(member("!(A x1. P(x1))", FragmentId::UNFO) == false);  // no universals
  CHECK(why("!R(x1,x2)", FragmentId::UNFO) ==
        "negated subformula R(x1,x2) has 2 free variables");
  CHECK(member("E x1. (P(x1) & !Q(x1))", FragmentId::UNFO));
  CHECK(member("true", FragmentId::UNFO));
}

TEST_CASE("conjunctive-query shapes") {
  CHECK(member("R(x1,x2)", FragmentId::CQ));
  CHECK(member("E x1. E x2. (R(x1,x2) & x1=x2)", FragmentId::CQ));
  // quantifiers must be prenex
  CHECK_FALSE(member("E x1. (P(x1) & E x2. R(x1,x2))", FragmentId::CQ));
  CHECK_FALSE(member("true", FragmentId::CQ));

  CHECK(member("(E x1. (P(x1) & Q(x1))) | (E x1. S(x1))", FragmentId::UCQ));
  CHECK(member("R(x1,x2)", FragmentId::UCQ));
  CHECK_FALSE(member("E x1. (P(x1) | Q(x1))", FragmentId::UCQ));

  // existential conjunction is free-form: quantifiers may nest anywhere
  CHECK(member("E x1. (P(x1) & E x2. R(x1,x2))", FragmentId::EXISTS_AND));
  CHECK(member("x1=x2", FragmentId::EXISTS_AND));
  CHECK_FALSE(member("true", FragmentId::EXISTS_AND));
  CHECK_FALSE(member("P(x1) | Q(x1)", FragmentId::EXISTS_AND));
}

TEST_CASE("suffix levels are always a subset of infix levels") {
  for (const std::string& text : {
           std::string("P(x1)"),
           std::string("R(x1,x2) & P(x2)"),
           std::string("E x2. (R(x1,x2) | !P(x2))"),
           std::string("A x1. (P(x1) -> E x2. R(x1,x2))"),
           std::string("R(x2,x1)"),
           std::string("true | P(x1)"),
       }) {
    CAPTURE(text);
    Formula f = parse(text);
    CHECK(fl_level(f).subset_of(ff_level(f)));
  }
}

TEST_CASE("equality and second-order binders are outside the level grammars") {
  CHECK_THROWS_AS(fl_level(parse("x1=x2")), Error);
  CHECK_THROWS_AS(ff_level(parse("P(x1) & x1=x1")), Error);
  CHECK_THROWS_AS(fl_level(parse("E2 P/1. P(x1)")), Error);

  // membership converts the precondition failure into a plain rejection
  MembershipResult r = fragment_membership(parse("x1=x2"), FragmentId::FL);
  CHECK_FALSE(r.member);
  CHECK_FALSE(r.reason.empty());
  try {
    fragment_membership(parse("E2 P/1. P(x1)"), FragmentId::FL);
    FAIL("second-order binder must throw");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_construct);
  }
}

TEST_CASE("fragment names round-trip") {
  for (FragmentId id : all_fragments()) {
    CHECK(fragment_from_name(fragment_name(id)) == id);
  }
  CHECK_FALSE(fragment_from_name("NOPE").has_value());
}

TEST_CASE("classify_all") {
  ClassificationReport rep = classify_all(pristine_gallery().formula("psi0"));
  bool saw_fo2 = false, saw_fl = false;
  for (const auto& [id, res] : rep.fragments) {
    REQUIRE(res.has_value());  // first-order input: everything applicable
    if (id == FragmentId::FO2) {
      saw_fo2 = true;
      CHECK_FALSE(res->member);
      CHECK(res->reason == "three variables");
    }
    if (id == FragmentId::FL) {
      saw_fl = true;
      CHECK_FALSE(res->member);
    }
  }
  CHECK(saw_fo2);
  CHECK(saw_fl);
  CHECK(rep.gfv == 1);
  CHECK(rep.clean);

  // second-order input: every fragment becomes not-applicable
  ClassificationReport so = classify_all(parse("E2 P/1. P(x1)"));
  for (const auto& [id, res] : so.fragments) CHECK_FALSE(res.has_value());

  ClassificationReport tt = classify_all(parse("true"));
  for (const auto& [id, res] : tt.fragments) {
    if (id == FragmentId::GFO || id == FragmentId::GNFO_PRIMITIVE) {
      REQUIRE(res.has_value());
      CHECK(res->member);
    }
  }
  CHECK(tt.self_guarded == "sentence");

  // text rendering carries one line per fragment
  std::string text = classification_report_text(rep);
  CHECK(text.find("FO2: no (three variables)") != std::string::npos);
  CHECK(text.find("gfv: 1") != std::string::npos);
}
